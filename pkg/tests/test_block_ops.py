import math
import random

import pytest

from shiftforge.blockops import (
    OneBlockOp,
    check_inverse_semigroup_axioms,
    classify_semigroup,
    continuity_check,
    induce_alphabet_op,
    inverse_and_idempotents,
    verify_closure,
)
from shiftforge.errors import ZeroDivisorDetected
from shiftforge.groups import FiniteCyclic, Integers
from shiftforge.sequences import (
    Axis,
    BiInfinite,
    EmptySequence,
    FiniteOneSided,
    LeftRay,
    constant_sequence,
)


def test_closure_holds(z4, prufer, parity, rng):
    for p in (z4, prufer, parity):
        op = OneBlockOp(p.alphabet)
        rep = verify_closure(p, op, rng, pair_samples=50, bound=16)
        assert rep["closed"], rep


def test_closure_fails_with_witness(broken, rng):
    op = OneBlockOp(broken.alphabet)
    rep = verify_closure(broken, op, rng, pair_samples=50, bound=16)
    assert not rep["closed"]
    w = rep["witness"]
    # the witness really is a violation: two allowed blocks, product not allowed
    assert broken.block_allowed(tuple(w["left"]))
    assert broken.block_allowed(tuple(w["right"]))
    assert not broken.block_allowed(tuple(w["product"]))


def test_inverse_and_idempotents():
    Z = Integers()
    op = OneBlockOp(Z)
    x = LeftRay(Z, [3], [5], 0)
    out = inverse_and_idempotents(op, x)
    assert out["is_identity_word"]
    assert out["idempotent"].length() == x.length()
    e = EmptySequence(Axis.TWO_SIDED, Z)
    assert inverse_and_idempotents(op, e)["is_identity_word"]


def test_classification(z4, parity, full_z_one_sided, union_groups):
    c = classify_semigroup(z4, OneBlockOp(z4.alphabet))
    assert c["structure"] == "inverse_monoid_with_zero"
    assert c["idempotents"] == "zero_and_e_inf"  # row finite, no finite points
    c2 = classify_semigroup(parity, OneBlockOp(parity.alphabet))
    assert c2["idempotents"] == "full_chain"
    c3 = classify_semigroup(full_z_one_sided, OneBlockOp(full_z_one_sided.alphabet))
    assert c3["structure"] == "inverse_monoid_with_zero"
    c4 = classify_semigroup(union_groups, OneBlockOp(union_groups.alphabet))
    assert c4["structure"] == "inverse_monoid_with_zero"


def test_group_case_one_sided_finite_letters():
    desc_alphabet = FiniteCyclic(3)
    from shiftforge.shifts import FullShift

    p = FullShift(desc_alphabet, Axis.ONE_SIDED)
    c = classify_semigroup(p, OneBlockOp(desc_alphabet))
    assert c["structure"] == "group"
    cont = continuity_check(p, OneBlockOp(desc_alphabet))
    assert cont["continuous"] is True


def test_continuity_dichotomy(z4, prufer, full_z_one_sided, union_groups, full_z2, rng):
    assert continuity_check(z4, OneBlockOp(z4.alphabet), rng)["continuous"] is False
    assert continuity_check(prufer, OneBlockOp(prufer.alphabet), rng)["continuous"] is False
    assert continuity_check(full_z2, OneBlockOp(full_z2.alphabet), rng)["continuous"] is False
    one_sided = continuity_check(full_z_one_sided, OneBlockOp(full_z_one_sided.alphabet), rng)
    assert one_sided["continuous"] is False
    assert one_sided["witness"]["kind"] == "identity_fiber"
    union = continuity_check(union_groups, OneBlockOp(union_groups.alphabet), rng)
    assert union["continuous"] is True
    assert all(s < math.inf for s in union["fiber_sizes"])


def test_two_sided_witness_shape(z4, rng):
    rep = continuity_check(z4, OneBlockOp(z4.alphabet), rng)
    assert rep["witness"]["kind"] in ("shifted_pair", "distinct_constants")


def test_axiom_suite(z4, prufer, parity, rng):
    for p in (z4, prufer, parity):
        rep = check_inverse_semigroup_axioms(p, OneBlockOp(p.alphabet), rng, n_checks=200)
        assert rep["ok"], rep
        assert rep["checks"] >= 200


def test_induce_alphabet_op():
    Z4 = FiniteCyclic(4)
    op = OneBlockOp(Z4)
    induced = induce_alphabet_op(op.apply, Z4, Axis.TWO_SIDED, bound=4)
    x = BiInfinite(Z4, [1, 3], [], [1, 3], 0)
    y = BiInfinite(Z4, [2], [], [2], 0)
    assert induced.apply(x, y) == op.apply(x, y)


def test_induce_rejects_zero_divisors():
    Z4 = FiniteCyclic(4)

    def bad_op(x, y):
        return EmptySequence(x.axis, Z4)

    with pytest.raises(ZeroDivisorDetected):
        induce_alphabet_op(bad_op, Z4, Axis.TWO_SIDED, bound=2)
