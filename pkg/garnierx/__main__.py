from garnierx.main import main

raise SystemExit(main())
