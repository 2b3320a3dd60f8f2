import math

import pytest

from shiftforge.errors import MixedAlphabet, ValidationError
from shiftforge.groups import FiniteCyclic, Integers, full_subgroup, hom_from_descriptor
from shiftforge.sequences import (
    Axis,
    BiInfinite,
    EmptySequence,
    FiniteOneSided,
    InfiniteOneSided,
    LeftRay,
    constant_sequence,
)
from shiftforge.shifts import (
    EdgeGraph,
    FullShift,
    MarkovCoset,
    PeriodicClosure,
    ProductShift,
    higher_block,
    shift_from_descriptor,
)


def test_z4_membership(z4):
    Z4 = z4.alphabet
    assert z4.contains(BiInfinite(Z4, [1, 3], [], [1, 3], 0))
    assert not z4.contains(BiInfinite(Z4, [1, 2], [], [1, 2], 0))
    # row-finite: no nonempty finite sequences
    assert not z4.contains(LeftRay(Z4, [1, 3], [], 0))
    assert z4.row_finite() and z4.column_finite()


def test_z4_empty_membership(z4):
    # the letter graph has essential out-degree 2, so the shift is an
    # infinite set of points and contains the empty sequence
    assert not z4.point_count_finite()
    assert z4.empty_in_shift()
    assert z4.contains(EmptySequence(Axis.TWO_SIDED, z4.alphabet))


def test_identity_shift_has_finitely_many_points():
    Z2 = FiniteCyclic(2)
    desc = {
        "kind": "markov_coset",
        "axis": "two_sided",
        "alphabet": {"kind": "finite_cyclic", "n": 2},
        "subgroup": {"kind": "builtin", "name": "trivial"},
        "hom": {"rule": "canonical_projection"},
    }
    p = shift_from_descriptor(desc)
    assert p.point_count_finite()
    assert not p.empty_in_shift()
    assert not p.contains(EmptySequence(Axis.TWO_SIDED, p.alphabet))


def test_parity_membership(parity):
    Z = parity.alphabet
    assert parity.m == 2
    assert parity.contains(BiInfinite(Z, [0, 1], [], [0, 1], 0))
    assert not parity.contains(BiInfinite(Z, [0, 0, 1], [], [0, 0, 1], 0))
    # finite sequences are members: followers are infinite
    assert parity.contains(LeftRay(Z, [1], [5], 0))
    assert not parity.contains(LeftRay(Z, [0], [5], 0))
    assert parity.contains(EmptySequence(Axis.TWO_SIDED, Z))


def test_prufer_membership(prufer):
    P = prufer.alphabet
    e = P.identity
    assert prufer.contains(BiInfinite(P, [e], [], [e], 0))
    # b must lie in half(a) * H
    assert prufer.window_allowed(((1, 1), (1, 2)))
    assert prufer.window_allowed(((1, 1), (3, 2)))
    assert not prufer.window_allowed(((1, 1), (1, 1)))


def test_follower_sets_z4(z4):
    res = z4.follower_set((1,), 1, 16)
    assert res.complete and sorted(res.elements) == [(1,), (3,)]
    pre = z4.predecessor_set((1,), 1, 16)
    assert pre.complete and sorted(pre.elements) == [(1,), (3,)]


def test_follower_sets_prufer(prufer):
    res = prufer.follower_set(((1, 1),), 1, 16)
    assert res.complete and sorted(res.elements) == [((1, 2),), ((3, 2),)]
    pre = prufer.predecessor_set((prufer.alphabet.identity,), 1, 16)
    assert pre.complete and pre.elements == [((0, 1),)]


def test_followers_infinite_flags(parity, z4, full_z_one_sided):
    assert parity.followers_infinite((1,))
    assert not z4.followers_infinite((1,))
    assert full_z_one_sided.followers_infinite((1,))


def test_classify(parity, z4, prufer, full_z2):
    assert parity.classify(bound=16)["m_step"] == 2
    assert z4.classify(bound=16)["m_step"] == 1
    assert prufer.classify(bound=16)["m_step"] == 1
    cls = full_z2.classify(bound=16)
    assert cls["m_step"] == 0 and cls["markov"]


def test_language(z4):
    blocks, complete = z4.language(2, 16)
    assert complete and len(blocks) == 8  # 4 letters x 2 followers


def test_higher_block_round_trip(parity):
    lifted, fwd, inv = higher_block(parity, 2)
    assert lifted.m == 1
    assert lifted.classify(bound=8)["markov"]
    Z = parity.alphabet
    x = BiInfinite(Z, [0, 1], [2, 1], [0, 1], 0)
    y = fwd.apply(x)
    assert lifted.contains(y, bound=8)
    assert inv.apply(y) == x


def test_product_shift(z4, full_z2):
    prod = ProductShift([z4, full_z2])
    a = prod.alphabet.first(4)
    assert prod.m == 1
    w = ((1, 0), (3, 1))
    assert prod.window_allowed(w)
    assert not prod.window_allowed(((1, 0), (2, 1)))


def test_edge_graph():
    g = EdgeGraph([["a", "u", "v"], ["b", "v", "u"], ["c", "u", "u"]], Axis.TWO_SIDED)
    assert g.window_allowed(("a", "b"))
    assert not g.window_allowed(("a", "c"))
    assert g.classify(bound=8)["m_step"] == 1


def test_periodic_closure_membership():
    pc = shift_from_descriptor({
        "kind": "periodic_closure",
        "axis": "two_sided",
        "alphabet": {"kind": "int"},
    })
    Z = pc.alphabet
    assert pc.contains(BiInfinite(Z, [1, 2], [], [1, 2], 0))
    assert not pc.contains(BiInfinite(Z, [1], [9], [1], 0))
    assert pc.contains(EmptySequence(Axis.TWO_SIDED, Z))
    assert pc.classify()["m_step"] is None


def test_mixed_alphabet_rejected(z4):
    other = constant_sequence(Axis.TWO_SIDED, FiniteCyclic(5), 1)
    with pytest.raises(MixedAlphabet):
        z4.contains(other)


def test_union_full_shift(union_groups):
    U = union_groups.alphabet
    x = FiniteOneSided(U, [U.first(3)[1], U.first(3)[2]])
    assert union_groups.contains(x)
    assert union_groups.contains(EmptySequence(Axis.ONE_SIDED, U))


def test_one_sided_full_finite_words(full_z_one_sided):
    Z = full_z_one_sided.alphabet
    assert full_z_one_sided.contains(FiniteOneSided(Z, [3, -1, 2]))
    assert full_z_one_sided.contains(InfiniteOneSided(Z, [5], [1, 2]))
