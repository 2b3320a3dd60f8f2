import random

import pytest

from shiftforge.cosets import (
    class_families,
    coset_law_check,
    follower_subgroup,
    predecessor_subgroup,
    tau_bijection,
)


def test_follower_subgroup_structure(z4):
    sub = follower_subgroup(z4, 1, 1, bound=16)
    assert sorted(sub.elements) == [(0,), (2,)]
    assert sub.contains((2,)) and not sub.contains((1,))
    g = sub.as_group()
    assert g.element_orders() == [1, 2]


def test_predecessor_subgroup(prufer):
    sub = predecessor_subgroup(prufer, 1, 1, bound=16)
    assert sub.elements == [((0, 1),)]


def test_coset_laws(z4, prufer, parity, z2_pairs, rng):
    for p in (z4, prufer, parity, z2_pairs):
        rep = coset_law_check(p, 1, 1, rng, n_triples=50, bound=16)
        assert rep["ok"], rep
        assert rep["triples_checked"] >= 50


def test_coset_laws_longer_blocks(parity, rng):
    rep = coset_law_check(parity, 2, 2, rng, n_triples=50, bound=16)
    assert rep["ok"], rep


def test_parity_class_counts(parity):
    assert class_families(parity, 1, 1, bound=16)["follower_count"] == 1
    for n, k, expected in ((1, 2, 2), (1, 3, 2), (2, 2, 4), (2, 3, 4), (3, 2, 4)):
        fam = class_families(parity, n, k, bound=16)
        assert fam["follower_count"] == expected, (n, k, fam["follower_count"])
        assert fam["followers_pairwise_disjoint"]


def test_prufer_class_sizes(prufer):
    fam = class_families(prufer, 1, 1, bound=16)
    sizes = {len(c["set"].elements) for c in fam["follower_classes"]}
    assert sizes == {2}
    pre_sizes = {len(c["set"].elements) for c in fam["predecessor_classes"]}
    assert pre_sizes == {1}


def test_tau_bijection(z4, parity, rng):
    for p, n, k in ((z4, 1, 1), (parity, 2, 2)):
        rep = tau_bijection(p, n, k, rng, bound=16)
        assert rep["ok"], rep
        assert rep["counts_match"]
