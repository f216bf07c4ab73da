"""Riemann existence check: permutation tuples with given cycle types, product one, transitive."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from garnierx.covers.passport import Partition, Passport
from garnierx.errors import SearchBoundError


MAX_DEGREE = 8


def _partition_key(part: Partition, d: int) -> int:
    # digit m holds m * (number of m-cycles) <= d, so base d + 1 is injective
    return sum(m * (d + 1) ** m for m in part)


def cycle_keys(perms: np.ndarray) -> np.ndarray:
    n, d = perms.shape
    idx = np.broadcast_to(np.arange(d), (n, d))
    cur = perms.copy()
    length = np.zeros((n, d), dtype=np.int64)
    for k in range(1, d + 1):
        hit = (cur == idx) & (length == 0)
        length[hit] = k
        cur = np.take_along_axis(perms, cur, axis=1)
    weights = (d + 1) ** np.arange(d + 1, dtype=np.int64)
    return weights[length].sum(axis=1)


@lru_cache(maxsize=None)
def symmetric_group(d: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(d))), dtype=np.int64)
    return perms, cycle_keys(perms)


@lru_cache(maxsize=None)
def conjugacy_class(d: int, part: Partition) -> np.ndarray:
    perms, keys = symmetric_group(d)
    return perms[keys == _partition_key(part, d)]


def _transitive(perms: list[np.ndarray], d: int) -> bool:
    parent = list(range(d))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in perms:
        for i, j in enumerate(p.tolist()):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    root = find(0)
    return all(find(i) == root for i in range(d))


def _search(classes: list[np.ndarray], keys: list[int], d: int) -> bool:
    """classes[0] is already fixed to one representative."""
    last_key = keys[-1]
    chosen = [classes[0][0]]

    def descend(level: int, partial: np.ndarray) -> bool:
        if level == len(classes) - 2:
            # vectorized: every candidate at this level, last factor forced
            members = classes[level]
            products = members[:, partial]
            ok = np.flatnonzero(cycle_keys(products) == last_key)
            for i in ok:
                if _transitive(chosen + [members[i]], d):
                    return True
            return False
        for member in classes[level]:
            chosen.append(member)
            if descend(level + 1, member[partial]):
                return True
            chosen.pop()
        return False

    return descend(1, chosen[0])


@lru_cache(maxsize=4096)
def _realizable(d: int, fibers: tuple[Partition, ...]) -> bool:
    if not fibers:
        return d == 1
    if len(fibers) == 1:
        return False
    if sum(d - len(f) for f in fibers) % 2:
        return False
    classes = [conjugacy_class(d, f) for f in fibers]
    by_size = sorted(range(len(fibers)), key=lambda i: -len(classes[i]))
    # largest class fixed, the next two vectorized and forced, the rest enumerated
    order = [by_size[0], *reversed(by_size[3:]), *by_size[1:3]]
    classes = [classes[i] for i in order]
    keys = [_partition_key(fibers[i], d) for i in order]
    if len(classes) == 2:
        rep = classes[0][0]
        inverse = np.argsort(rep)
        return bool(cycle_keys(inverse[None, :])[0] == keys[1]) and _transitive([rep], d)
    return _search(classes, keys, d)


def realizable(passport: Passport, bound: int = MAX_DEGREE) -> bool:
    d = passport.degree
    if d > bound:
        raise SearchBoundError(f"degree {d} is above the realizability bound {bound}")
    fibers = tuple(sorted(passport.nontrivial_fibers(), reverse=True))
    return _realizable(d, fibers)
