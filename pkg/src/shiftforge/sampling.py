"""Seeded generation of points of a shift space.

Points are built from the transition structure: closed walks become
periodic tails, open walks become transients or rays.  All randomness
comes from the caller's ``random.Random`` so runs are reproducible.
"""

from __future__ import annotations

import random

from .sequences import (
    Axis,
    BiInfinite,
    EmptySequence,
    FiniteOneSided,
    InfiniteOneSided,
    LeftRay,
    Sequence,
    constant_sequence,
)
from .shifts import MarkovCoset, ShiftPresentation


def candidate_followers(p: ShiftPresentation, tail, letter_bound: int) -> list:
    """Letters b that may extend the word ``tail`` (tail holds at least
    the last m letters of the context)."""
    if isinstance(p, MarkovCoset) and tail:
        G = p.alphabet
        rep = p.hom.rep(tail[-1])
        return [G.mul(rep, n) for n in p.subgroup.sample(letter_bound)]
    out = []
    for b in p.alphabet.first(letter_bound):
        if p.letter_allowed(b) and p.block_allowed(tuple(tail) + (b,)):
            out.append(b)
    return out


def cycle_valid(p: ShiftPresentation, cycle) -> bool:
    """Is the infinite repetition of ``cycle`` admissible?"""
    if any(not p.letter_allowed(a) for a in cycle):
        return False
    if p.m == 0:
        return True
    reps = cycle * (p.m // len(cycle) + 2)
    for i in range(len(cycle)):
        if not p.window_allowed(tuple(reps[i : i + p.m + 1])):
            return False
    return True


def find_cycles(p: ShiftPresentation, rng: random.Random, max_len: int = 6,
                tries: int = 40, letter_bound: int = 8) -> list:
    """Closed walks usable as periods, found by bounded random search."""
    cycles = []
    seen = set()
    starts = [a for a in p.alphabet.first(letter_bound) if p.letter_allowed(a)]
    for _ in range(tries):
        if not starts:
            break
        a = rng.choice(starts)
        walk = [a]
        length = rng.randint(1, max_len)
        ok = True
        for _ in range(length - 1):
            cands = candidate_followers(p, tuple(walk[-max(p.m, 1):]), letter_bound)
            if not cands:
                ok = False
                break
            walk.append(rng.choice(cands))
        if not ok:
            continue
        cyc = tuple(walk)
        if cycle_valid(p, list(cyc)):
            key = tuple(p.alphabet.encode(x) for x in cyc)
            if key not in seen:
                seen.add(key)
                cycles.append(cyc)
    # always try the identity loop; it is a cycle in every coset shift
    e = getattr(p.alphabet, "identity", None)
    if e is not None and cycle_valid(p, [e]):
        key = (p.alphabet.encode(e),)
        if key not in seen:
            cycles.append((e,))
    return cycles


def _walk_from(p, context, length, rng, letter_bound):
    walk = []
    ctx = list(context)
    for _ in range(length):
        cands = candidate_followers(p, tuple(ctx[-max(p.m, 1):]), letter_bound)
        if not cands:
            break
        b = rng.choice(cands)
        walk.append(b)
        ctx.append(b)
    return walk


def _can_append_cycle(p, context, cycle) -> bool:
    if p.m == 0:
        return cycle_valid(p, list(cycle))
    probe = tuple(context[-p.m:]) + tuple(cycle) * (p.m // len(cycle) + 2)
    return p.block_allowed(probe) and cycle_valid(p, list(cycle))


def sample_sequences(p: ShiftPresentation, rng: random.Random, count: int,
                     transient_max: int = 4, period_max: int = 6,
                     letter_bound: int = 8) -> list:
    """Up to ``count`` points of the presentation, mixing periodic,
    transient, finite, and empty shapes as the space allows."""
    A = p.alphabet
    cycles = find_cycles(p, rng, max_len=period_max, letter_bound=letter_bound)
    out = []

    if p.axis is Axis.TWO_SIDED and p.empty_in_shift():
        out.append(EmptySequence(p.axis, A))
    if p.axis is Axis.ONE_SIDED and A.order() is None:
        out.append(EmptySequence(p.axis, A))

    attempts = 0
    while len(out) < count and attempts < count * 20:
        attempts += 1
        if not cycles:
            break
        c1 = list(rng.choice(cycles))
        shape = rng.randrange(4)
        if p.axis is Axis.TWO_SIDED:
            if shape == 0:
                # purely periodic, random phase
                k = rng.randrange(len(c1))
                pat = c1[k:] + c1[:k]
                out.append(BiInfinite(A, pat, [], pat, 0))
            elif shape == 1:
                # periodic left tail, then the letters stop
                t = _walk_from(p, c1 * (p.m // len(c1) + 1), rng.randint(0, transient_max), rng, letter_bound)
                ray = LeftRay(A, c1, t, rng.randint(-2, 3))
                if p.contains(ray, bound=letter_bound):
                    out.append(ray)
            elif shape == 2:
                # transient between two periodic tails
                t = _walk_from(p, c1 * (p.m // len(c1) + 1), rng.randint(0, transient_max), rng, letter_bound)
                ctx = c1 * (p.m // len(c1) + 1) + t
                targets = [c for c in cycles if _can_append_cycle(p, ctx, c)]
                if targets:
                    c2 = list(rng.choice(targets))
                    out.append(BiInfinite(A, c1, t, c2, rng.randint(-2, 3)))
            else:
                out.append(constant_sequence(p.axis, A, c1[0]) if len(c1) == 1
                           else BiInfinite(A, c1, [], c1, rng.randint(-2, 3)))
        else:
            if shape == 0:
                out.append(InfiniteOneSided(A, [], c1))
            elif shape == 1:
                w = _walk_from(p, (), rng.randint(1, transient_max + 1), rng, letter_bound)
                if w and p.followers_infinite(tuple(w[-max(p.m, 1):])):
                    out.append(FiniteOneSided(A, w))
            else:
                t = _walk_from(p, (), rng.randint(0, transient_max), rng, letter_bound)
                ctx = tuple(t)
                if _can_append_cycle(p, ctx, tuple(c1)) if t else True:
                    if not t:
                        out.append(InfiniteOneSided(A, [], c1))
                    else:
                        out.append(InfiniteOneSided(A, t, c1))
    return out[:count]
