import random

import pytest

from shiftforge.blockops import OneBlockOp
from shiftforge.decomposition import (
    compute_H,
    decompose,
    follower_set_shift,
    is_fractal,
    phi_code,
    stage_fingerprint,
    theta_code,
)
from shiftforge.errors import HNotTrivial, ValidationError
from shiftforge.sampling import sample_sequences
from shiftforge.sequences import BiInfinite


def test_compute_H(z4, prufer, full_z2):
    assert sorted(compute_H(z4).elements) == [0, 2]
    assert compute_H(prufer).elements == [(0, 1)]
    assert sorted(compute_H(full_z2).elements) == [0, 1]


def test_theta_requires_trivial_intersection(z4):
    with pytest.raises(HNotTrivial):
        theta_code(z4)


def test_theta_on_prufer(prufer, rng):
    bar, fwd, inv = theta_code(prufer)
    G = prufer.alphabet
    letters = G.first(8)
    # the letter map is a homomorphism into the quotient
    Gb = bar.alphabet
    for a in letters[:5]:
        for b in letters[:5]:
            assert Gb.eq(fwd.rule((G.mul(a, b),)),
                         Gb.mul(fwd.rule((a,)), fwd.rule((b,))))
    # one step of memory inverts it along transitions
    for a in letters:
        for b in letters:
            if prufer.window_allowed((a, b)):
                assert G.eq(inv.rule((fwd.rule((a,)), fwd.rule((b,)))), b)


def test_phi_on_z4(z4):
    H = compute_H(z4)
    hat, full_h, fwd, inv, diamond = phi_code(z4, H)
    G = z4.alphabet
    assert full_h.alphabet.order() == 2
    assert hat.alphabet.order() == 2
    for a in G.first(4):
        pair = fwd.rule((a,))
        assert G.eq(inv.rule((pair,)), a)
        for b in G.first(4):
            assert fwd.rule((G.mul(a, b),)) == diamond(fwd.rule((a,)), fwd.rule((b,)))


def test_fingerprint_repeats_for_prufer(prufer):
    s0 = prufer
    s1 = follower_set_shift(s0)
    assert stage_fingerprint(s0) == stage_fingerprint(s1)


def test_is_fractal_reports(z4, prufer):
    rep = is_fractal(prufer)
    assert rep.kind == "fractal" and rep.self_similar_level == 1
    bad = is_fractal(z4)
    assert bad.kind == "non_fractal" and bad.failed_stage == 0 and bad.failed_size == 2


def test_decompose_z4_shape(z4):
    res = decompose(z4)
    assert res.phi_steps == 1 and res.theta_steps == 1
    assert res.factor_orders() == [2]
    assert res.fractal.alphabet.order() == 2
    F = res.fractal
    letters = F.alphabet.first(2)
    edges = [(a, b) for a in letters for b in letters if F.window_allowed((a, b))]
    assert edges == [(letters[0], letters[0]), (letters[1], letters[1])]
    # alphabet bookkeeping: 4 = 2 x 2
    assert z4.alphabet.order() == F.alphabet.order() * res.h_groups[0].order()


def test_decompose_round_trip_and_op(z4, rng):
    res = decompose(z4)
    op = OneBlockOp(z4.alphabet)
    pts = sample_sequences(z4, rng, 20)
    assert len(pts) >= 10
    for x in pts:
        y = res.forward.apply(x)
        assert res.codomain.contains(y)
        assert res.inverse.apply(y) == x
        assert res.forward.apply(x.shifted()) == y.shifted()
    for _ in range(10):
        x, y = rng.choice(pts), rng.choice(pts)
        lhs = res.forward.apply(op.apply(x, y))
        rhs = res.forward.apply(
            op.apply(res.inverse.apply(res.forward.apply(x)),
                     res.inverse.apply(res.forward.apply(y)))
        )
        assert lhs == rhs


def test_decompose_fractal_input_is_identity(prufer):
    res = decompose(prufer)
    assert res.phi_steps == 0 and res.theta_steps == 0
    assert res.factor_orders() == []
    P = prufer.alphabet
    x = BiInfinite(P, [P.identity], [], [P.identity], 0)
    assert res.forward.apply(x) == x


def test_decompose_full_shift(full_z2, rng):
    res = decompose(full_z2)
    assert res.factor_orders() == [2]
    assert res.fractal.alphabet.order() == 1
    for x in sample_sequences(full_z2, rng, 8):
        assert res.inverse.apply(res.forward.apply(x)) == x


def test_decompose_rejects_one_sided(full_z_one_sided):
    with pytest.raises(ValidationError):
        decompose(full_z_one_sided)
