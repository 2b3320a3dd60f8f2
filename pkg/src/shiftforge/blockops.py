"""One-block operations on shift spaces and their verification.

The operation of interest multiplies sequences entry by entry, with ø
absorbing.  Over a group alphabet this makes a closed shift space an
inverse monoid with zero (or, in the degenerate finite cases, a group);
the checks here classify which, verify closure of the sampled language,
and decide continuity of the operation by the alphabet-level criteria.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Optional

from .codes import one_block
from .errors import ZeroDivisorDetected
from .sequences import (
    EMPTY,
    Axis,
    BiInfinite,
    EmptySequence,
    FiniteOneSided,
    LeftRay,
    Sequence,
    constant_sequence,
    identity_word,
    zip_entrywise,
)
from .shifts import DEFAULT_BOUND, ShiftPresentation


@dataclass
class OneBlockOp:
    """Entrywise binary operation on sequences, induced by an alphabet
    operation.  ``letter_inv`` gives the entrywise involution (the
    group inverse, or the inverse within each component)."""

    alphabet: object
    letter_op: Optional[Callable] = None
    letter_inv: Optional[Callable] = None
    name: str = "entrywise"
    group_induced: Optional[bool] = None

    def __post_init__(self):
        if self.letter_op is None:
            self.letter_op = self.alphabet.mul
        if self.letter_inv is None:
            self.letter_inv = getattr(self.alphabet, "inv", None)
        if self.group_induced is None:
            self.group_induced = getattr(self.alphabet, "is_group", False)

    def combine(self, a, b):
        if a is EMPTY or b is EMPTY:
            return EMPTY
        return self.letter_op(a, b)

    def apply(self, x: Sequence, y: Sequence) -> Sequence:
        return zip_entrywise(x, y, self.letter_op, self.alphabet)

    def star(self, x: Sequence) -> Sequence:
        if self.letter_inv is None:
            raise ZeroDivisorDetected("no involution available for this operation")
        return one_block(self.letter_inv, self.alphabet).apply(x)

    def idempotent_of_length(self, axis: Axis, length) -> Sequence:
        e = self.alphabet.identity
        if length == -math.inf:
            return EmptySequence(axis, self.alphabet)
        if length == math.inf:
            return constant_sequence(axis, self.alphabet, e)
        if axis is Axis.ONE_SIDED:
            return identity_word(self.alphabet, length, axis)
        return LeftRay(self.alphabet, [e], [], length)


def apply_op(op: OneBlockOp, x: Sequence, y: Sequence) -> Sequence:
    return op.apply(x, y)


def verify_closure(p: ShiftPresentation, op: OneBlockOp, rng: random.Random,
                   pair_samples: int = 50, bound: int = 16) -> dict:
    """Check that products of admissible 2-blocks are admissible, on
    all pairs when the bounded language is small and on a seeded sample
    otherwise.  Returns a report with the first witness on failure."""
    blocks, complete = p.language(2, bound)
    pairs = [(u, v) for u in blocks for v in blocks]
    if len(pairs) > max(pair_samples, 1):
        pairs = rng.sample(pairs, max(pair_samples, 1))
    checked = 0
    for u, v in pairs:
        prod = tuple(op.combine(a, b) for a, b in zip(u, v))
        checked += 1
        if not p.block_allowed(prod):
            return {
                "closed": False,
                "pairs_checked": checked,
                "bound": bound,
                "language_complete": complete,
                "witness": {"left": list(u), "right": list(v), "product": list(prod)},
            }
    return {
        "closed": True,
        "pairs_checked": checked,
        "bound": bound,
        "language_complete": complete,
        "witness": None,
    }


def inverse_and_idempotents(op: OneBlockOp, x: Sequence) -> dict:
    """x*, the product x • x*, and whether it is the identity word of
    the same length as x."""
    xs = op.star(x)
    prod = op.apply(x, xs)
    expected = op.idempotent_of_length(x.axis, x.length())
    return {
        "star": xs,
        "idempotent": prod,
        "is_identity_word": prod == expected,
    }


def classify_semigroup(p: ShiftPresentation, op: OneBlockOp) -> dict:
    """Group versus inverse monoid with zero, plus the shape of the
    idempotent chain, from the alphabet and the point count."""
    letters_finite = p.alphabet.order() is not None
    if p.axis is Axis.ONE_SIDED:
        is_group = letters_finite
        reason = (
            "one-sided with finitely many letters"
            if is_group
            else "one-sided with infinitely many letters"
        )
    else:
        is_group = p.point_count_finite()
        reason = (
            "two-sided with finitely many points"
            if is_group
            else "two-sided with infinitely many points"
        )
    if is_group:
        idem = "e_inf_only"
    elif p.row_finite():
        # no nonempty finite sequences, so only the extreme idempotents
        idem = "zero_and_e_inf"
    else:
        idem = "full_chain"
    return {
        "structure": "group" if is_group else "inverse_monoid_with_zero",
        "idempotents": idem,
        "reason": reason,
        "zero_divisors": False,
    }


def continuity_check(p: ShiftPresentation, op: OneBlockOp,
                     rng: Optional[random.Random] = None,
                     bound: int = DEFAULT_BOUND) -> dict:
    """Decide continuity of the entrywise operation.

    Group-induced operations follow the exact dichotomy: continuous
    only one-sided over finitely many letters, or two-sided on a finite
    point set.  Operations exposing exact fiber finiteness (the union
    of finite groups) are decided fiberwise."""
    A = p.alphabet
    if op.group_induced:
        if p.axis is Axis.ONE_SIDED:
            if A.order() is not None:
                return {"continuous": True, "reason": "one-sided, finite letter set", "witness": None}
            fiber = [[A.to_json(b), A.to_json(A.inv(b))] for b in A.first(bound)]
            return {
                "continuous": False,
                "reason": "infinite fiber over the identity letter",
                "witness": {"kind": "identity_fiber", "pairs": fiber, "bound": bound},
            }
        if p.point_count_finite():
            return {"continuous": True, "reason": "two-sided, finitely many points", "witness": None}
        witness = _two_sided_witness(p, op, rng or random.Random(0), bound)
        return {
            "continuous": False,
            "reason": "two-sided with infinitely many points: shifted graphs of x • x* "
                      "approach the empty sequence while their products stay the identity ray",
            "witness": witness,
        }
    if hasattr(A, "fiber_is_finite"):
        letters = A.first(bound)
        if all(A.fiber_is_finite(a) for a in letters):
            sizes = [len(A.fiber(a, bound)) for a in letters]
            return {
                "continuous": True,
                "reason": "every fiber of the operation is finite",
                "witness": None,
                "fiber_sizes": sizes,
            }
        bad = next(a for a in letters if not A.fiber_is_finite(a))
        return {
            "continuous": False,
            "reason": "infinite fiber",
            "witness": {"kind": "fiber", "letter": A.to_json(bad)},
        }
    return {"continuous": None, "reason": "no exact criterion for this operation", "witness": None}


def _two_sided_witness(p, op, rng, bound):
    from .sampling import sample_sequences

    pts = sample_sequences(p, rng, 16)
    nonconst = next(
        (x for x in pts if x.length() == math.inf and not _is_constant(x)),
        None,
    )
    if nonconst is not None:
        return {
            "kind": "shifted_pair",
            "base": nonconst.to_json(),
            "note": "sigma^n of the pair (x, x*) leaves every cylinder, "
                    "but each product is the constant identity sequence",
        }
    consts = [x for x in pts if x.length() == math.inf and _is_constant(x)]
    return {
        "kind": "distinct_constants",
        "bases": [x.to_json() for x in consts[:8]],
        "note": "infinitely many constant points pair with their inverses; "
                "the pairs escape to the empty sequence, products stay the identity ray",
    }


def _is_constant(x: Sequence) -> bool:
    ls, pl, rs, pr = x.profile()
    ref = x.entry(rs)
    return all(
        a is not EMPTY and x.alphabet.eq(a, ref)
        for a in (x.entry(i) for i in range(ls - pl, rs + pr))
    )


def induce_alphabet_op(seq_op: Callable, alphabet, axis: Axis,
                       bound: int = 8, check_points=None) -> OneBlockOp:
    """Recover the letter operation from a black-box one-block sequence
    operation by evaluating it on constant sequences, then confirm the
    recovered table reproduces the operation on the given points."""
    letters = alphabet.first(bound)
    table = {}
    for a in letters:
        for b in letters:
            z = seq_op(constant_sequence(axis, alphabet, a),
                       constant_sequence(axis, alphabet, b))
            c = z.entry(0)
            if c is EMPTY:
                raise ZeroDivisorDetected(
                    f"letters {a!r} and {b!r} multiply to the empty letter"
                )
            table[(alphabet.encode(a), alphabet.encode(b))] = c

    def letter_op(a, b):
        key = (alphabet.encode(a), alphabet.encode(b))
        if key in table:
            return table[key]
        # outside the probed window fall back to probing once more
        z = seq_op(constant_sequence(axis, alphabet, a),
                   constant_sequence(axis, alphabet, b))
        c = z.entry(0)
        if c is EMPTY:
            raise ZeroDivisorDetected(f"letters {a!r} and {b!r} multiply to the empty letter")
        table[key] = c
        return c

    induced = OneBlockOp(alphabet, letter_op=letter_op,
                         letter_inv=getattr(alphabet, "inv", None),
                         name="induced", group_induced=getattr(alphabet, "is_group", False))
    for x, y in (check_points or []):
        if induced.apply(x, y) != seq_op(x, y):
            raise ZeroDivisorDetected(
                "recovered alphabet operation does not reproduce the sequence operation"
            )
    return induced


def check_inverse_semigroup_axioms(p: ShiftPresentation, op: OneBlockOp,
                                   rng: random.Random, n_checks: int = 200) -> dict:
    """Seeded axiom suite on sampled points: associativity, the
    involution laws, commuting idempotents, and the shift map acting as
    a homomorphism."""
    from .sampling import sample_sequences

    pts = sample_sequences(p, rng, max(8, n_checks // 8))
    if not pts:
        return {"ok": False, "checks": 0, "failure": "no points sampled"}
    checks = 0
    while checks < n_checks:
        x, y, z = (rng.choice(pts) for _ in range(3))
        assoc_l = op.apply(op.apply(x, y), z)
        assoc_r = op.apply(x, op.apply(y, z))
        if assoc_l != assoc_r:
            return {"ok": False, "checks": checks, "failure": "associativity",
                    "witness": [x.to_json(), y.to_json(), z.to_json()]}
        xs = op.star(x)
        if op.apply(op.apply(x, xs), x) != x or op.apply(op.apply(xs, x), xs) != xs:
            return {"ok": False, "checks": checks, "failure": "involution",
                    "witness": [x.to_json()]}
        ex = op.apply(x, xs)
        ey = op.apply(y, op.star(y))
        if op.apply(ex, ey) != op.apply(ey, ex):
            return {"ok": False, "checks": checks, "failure": "commuting_idempotents",
                    "witness": [x.to_json(), y.to_json()]}
        if op.apply(x, y).shifted() != op.apply(x.shifted(), y.shifted()):
            return {"ok": False, "checks": checks, "failure": "shift_homomorphism",
                    "witness": [x.to_json(), y.to_json()]}
        checks += 4
    return {"ok": True, "checks": checks, "failure": None}
