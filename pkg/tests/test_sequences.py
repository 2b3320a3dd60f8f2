import math

import pytest

from shiftforge.errors import ValidationError
from shiftforge.groups import FiniteCyclic, Integers
from shiftforge.sequences import (
    EMPTY,
    Axis,
    BiInfinite,
    Cylinder,
    EmptySequence,
    FiniteOneSided,
    InfiniteOneSided,
    LeftRay,
    agrees_up_to,
    blocks_of,
    complement_cylinder_contains,
    constant_sequence,
    identity_word,
    recode,
    sequence_from_json,
    zip_entrywise,
)

Z = Integers()
Z4 = FiniteCyclic(4)


def test_lengths():
    assert EmptySequence(Axis.TWO_SIDED, Z).length() == -math.inf
    assert FiniteOneSided(Z, [1, 2, 3]).length() == 3
    assert InfiniteOneSided(Z, [], [1]).length() == math.inf
    assert LeftRay(Z, [0], [], 5).length() == 5
    assert BiInfinite(Z, [1], [], [1], 0).length() == math.inf


def test_extensional_equality_across_forms():
    # a one-sided transient that matches the period collapses into it
    a = InfiniteOneSided(Z, [1, 2], [1, 2])
    b = InfiniteOneSided(Z, [], [1, 2])
    assert a == b
    # rotations with matching entries are equal
    c = InfiniteOneSided(Z, [1], [2, 1])
    d = InfiniteOneSided(Z, [], [1, 2])
    assert c == d


def test_biinfinite_canonical_phase():
    x = BiInfinite(Z, [2, 1], [], [2, 1], 7)
    y = BiInfinite(Z, [1, 2], [], [1, 2], 0)
    assert x == y
    # a genuine junction defect is not purely periodic
    z = BiInfinite(Z, [1, 2], [], [2, 1], 7)
    assert z != y


def test_left_ray_head_absorption():
    # end_index is the last occupied coordinate
    a = LeftRay(Z, [1, 2], [1, 2, 5], 3)
    b = LeftRay(Z, [1, 2], [5], 3)
    assert a == b
    assert a.entry(3) == 5 and a.entry(4) is EMPTY
    assert a.entry(2) == 2 and a.entry(1) == 1


def test_shifted():
    x = FiniteOneSided(Z, [1, 2, 3])
    assert x.shifted() == FiniteOneSided(Z, [2, 3])
    assert x.shifted(3) == EmptySequence(Axis.ONE_SIDED, Z)
    y = LeftRay(Z, [0], [7], 0)
    assert y.shifted().length() == -1
    assert y.shifted().entry(-1) == 7
    e = EmptySequence(Axis.TWO_SIDED, Z)
    assert e.shifted() == e


def test_zip_entrywise_absorbs():
    x = FiniteOneSided(Z, [1, 2, 3])
    y = FiniteOneSided(Z, [10, 20])
    z = zip_entrywise(x, y, Z.mul, Z)
    assert z == FiniteOneSided(Z, [11, 22])
    c = constant_sequence(Axis.ONE_SIDED, Z, 5)
    w = zip_entrywise(x, c, Z.mul, Z)
    assert w == FiniteOneSided(Z, [6, 7, 8])


def test_identity_word_and_constant():
    w = identity_word(Z4, 3)
    assert w.length() == 3 and all(w.entry(i) == 0 for i in range(3))
    c = constant_sequence(Axis.TWO_SIDED, Z4, 2)
    assert c.entry(-100) == 2 and c.entry(100) == 2


def test_recode_one_sided_memory_rejected():
    x = FiniteOneSided(Z, [1, 2, 3])
    with pytest.raises(ValidationError):
        recode(x, 1, 0, lambda w: w[0], Z)


def test_recode_window_sum():
    x = InfiniteOneSided(Z, [], [1, 2, 3])
    def rule(w):
        if EMPTY in w:
            return EMPTY
        return w[0] + w[1]
    y = recode(x, 0, 1, rule, Z)
    assert [y.entry(i) for i in range(4)] == [3, 5, 4, 3]


def test_blocks_of():
    x = FiniteOneSided(Z, [1, 2, 3])
    assert set(blocks_of(x, 2)) == {(1, 2), (2, 3)}


def test_agrees_and_cylinders():
    x = constant_sequence(Axis.TWO_SIDED, Z4, 1)
    y = BiInfinite(Z4, [1], [], [1], 0)
    assert agrees_up_to(y, x, 5)
    cyl = Cylinder(x, 3)
    assert cyl.contains(y)
    assert not complement_cylinder_contains(y, [x])


def test_sequence_json_round_trip():
    pts = [
        EmptySequence(Axis.TWO_SIDED, Z),
        BiInfinite(Z, [1, 2], [9], [3], 0),
        LeftRay(Z, [1], [4], 2),
    ]
    for x in pts:
        assert sequence_from_json(x.to_json(), Z, Axis.TWO_SIDED) == x
    f = FiniteOneSided(Z, [1, 2])
    assert sequence_from_json(f.to_json(), Z, Axis.ONE_SIDED) == f
