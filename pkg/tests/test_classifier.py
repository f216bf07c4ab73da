from __future__ import annotations

from dataclasses import replace

import pandas as pd
import pytest

from garnierx.classifier.rows import UNCERTAIN, painleve_label, row_label, rows_frame, write_csv
from garnierx.classifier.search import (
    compare_with_table,
    enumerate_bases,
    max_cover_degree,
    partitions,
    search,
    search_base,
)
from garnierx.classifier.tables import CLASSIFICATION
from garnierx.errors import SearchBoundError, UnsupportedInputError
from garnierx.formal.calculus import chi_irr
from garnierx.formal.literal import format_formal_data, parse_formal_data
from garnierx.settings import load_settings, save_settings


def test_partitions():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions(0)) == [()]


def test_irregular_bases_include_the_degenerate_confluent_family(settings):
    seen = {format_formal_data(b.poles) for b in enumerate_bases("irregular", settings)}
    assert "(0,1/2; 1/3,0)" in seen
    assert "(0,1/2; 1/4,0)" in seen
    assert "(3/2; 0)" in seen
    # dihedral: reducible by the formal criterion
    assert "(0,1/2; 1/2,0)" not in seen


def test_logarithmic_bases(settings):
    seen = {format_formal_data(b.poles) for b in enumerate_bases("logarithmic", settings)}
    assert "(0,0,0; 1/2,1/3,theta)" in seen
    assert "(0,0,0; 1/2,theta1,theta2)" in seen


def test_degree_bound_from_euler_characteristic(airy_base):
    assert max_cover_degree(airy_base, 6) == 2


def test_airy_base_gives_painleve_ii(airy_base):
    rows = search_base(airy_base, "scattered", 6, 8)
    assert len(rows) == 1
    row = rows[0]
    assert str(row.passport) == "d=2; poles=[2]; free=simple*1"
    assert (row.T, row.B, row.genus) == (1, 1, 0)
    assert row.label == "P_II"
    assert format_formal_data(row.target) == "(3; 0)"


def test_labels():
    assert painleve_label(parse_formal_data("(1,1/2; 0,0)")) == "P_III^D7"
    assert row_label(1, parse_formal_data("(0,2; 1/3,1)")) == "P_IV"
    assert row_label(2, parse_formal_data("(0,1,1; 1/3,0,1)")) == "Gar2(0,1,1)"


def test_unknown_mode_and_bound(settings):
    with pytest.raises(UnsupportedInputError):
        search("wild", 4, settings)
    with pytest.raises(SearchBoundError):
        search("log", 9, settings)


def test_compare_with_table_reports_missing_rows():
    comparison = compare_with_table([], "scattered")
    assert len(comparison.missing) == 7
    assert not comparison.ok
    assert len(compare_with_table([], "scattered", max_degree=2).missing) == 3


def test_unmatched_rows_are_flagged(airy_base):
    row = search_base(airy_base, "scattered", 6, 8)[0]
    assert compare_with_table([row], "scattered", max_degree=2).rows[0].flags == ()
    odd = replace(row, degree=4)
    flagged = compare_with_table([odd], "scattered").rows[0]
    assert UNCERTAIN in flagged.flags


def test_csv_export(tmp_path, airy_base):
    rows = search_base(airy_base, "scattered", 6, 8)
    path = write_csv(rows, tmp_path / "out" / "rows.csv")
    df = pd.read_csv(path)
    assert list(df.columns) == list(rows_frame(rows).columns)
    assert df.loc[0, "label"] == "P_II"


def test_settings_file(tmp_path, settings):
    path = tmp_path / "settings.json"
    save_settings(path, replace(settings, max_degree=4, n_jobs=2))
    loaded = load_settings(path)
    assert loaded.max_degree == 4
    assert loaded.n_jobs == 2
    assert loaded.max_kappa == settings.max_kappa


@pytest.mark.slow
@pytest.mark.parametrize("mode, count", [("log", 5), ("scattered", 7), ("confluent", 3)])
def test_classification_reproduces_published_tables(mode, count, settings):
    rows = search(mode, settings=settings)
    comparison = compare_with_table(rows, mode)
    assert len(rows) == count
    assert comparison.ok
    assert len(CLASSIFICATION[mode]) == count
    for row in rows:
        assert row.genus == 0
        assert row.degree * abs(chi_irr(row.base)) <= 1


@pytest.mark.slow
def test_parallel_search_matches_serial(settings):
    serial = search("scattered", 4, settings)
    parallel = search("scattered", 4, replace(settings, n_jobs=2))
    assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]
