"""Compactified sequence spaces over a countable alphabet.

A sequence may stop: positions past its length hold the empty letter
(printed ø), and the empty letter absorbs everything to its right.  On
the two-sided axis a finite sequence is a left-infinite ray.  Infinite
tails are restricted to eventually periodic ones so that every value
has a finite normal form: primitive periods, minimal transients,
deterministic representation.

Lengths: the empty sequence has length -inf, infinite sequences +inf.
A one-sided finite sequence of n letters has length n; a two-sided ray
has length equal to the index of its last letter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from .errors import (
    IndexOutsideAxis,
    MixedAlphabet,
    MixedAxis,
    ParseError,
    ValidationError,
)
from .groups import DirectProduct

INF = math.inf
NEG_INF = -math.inf


class _EmptyLetter:
    __slots__ = ()

    def __repr__(self):
        return "ø"

    def __reduce__(self):
        return (_get_empty, ())


EMPTY = _EmptyLetter()


def _get_empty():
    return EMPTY


class Axis(Enum):
    ONE_SIDED = "one_sided"
    TWO_SIDED = "two_sided"


def _primitive(word):
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[:d] * (n // d):
            return word[:d]
    return word


def _rot_left(word):
    return word[1:] + word[:1]


def _rot_right(word):
    return word[-1:] + word[:-1]


class Sequence:
    """Base class; concrete variants below. Instances are immutable by
    convention: no method mutates, all derived values are new objects."""

    axis: Axis
    alphabet = None

    def length(self):
        raise NotImplementedError

    def entry(self, i):
        raise NotImplementedError

    def window(self, lo, hi):
        return tuple(self.entry(i) for i in range(lo, hi))

    def profile(self):
        """(Ls, Pl, Rs, Pr): entries are Pl-periodic below Ls and
        Pr-periodic at or above Rs (the right 'period' of a finite
        sequence is the constant ø)."""
        raise NotImplementedError

    def is_empty(self):
        return isinstance(self, EmptySequence)

    def shifted(self, steps: int = 1):
        """Apply the shift map ``steps`` times (steps >= 0)."""
        if steps < 0:
            raise ValidationError("the shift map is applied a nonnegative number of times")
        ls, pl, rs, pr = self.profile()
        return build_sequence(
            self.axis,
            self.alphabet,
            lambda i: self.entry(i + steps),
            ls - steps,
            pl,
            rs - steps,
            pr,
        )

    def _same_space(self, other):
        if self.axis is not other.axis:
            raise MixedAxis("sequences live on different axes")
        if self.alphabet.descriptor() != other.alphabet.descriptor():
            raise MixedAlphabet("sequences live over different alphabets")

    def __eq__(self, other):
        if not isinstance(other, Sequence):
            return NotImplemented
        self._same_space(other)
        if self.length() != other.length():
            return False
        ls1, pl1, rs1, pr1 = self.profile()
        ls2, pl2, rs2, pr2 = other.profile()
        lo = 0 if self.axis is Axis.ONE_SIDED else min(ls1, ls2) - math.lcm(pl1, pl2)
        hi = max(rs1, rs2) + math.lcm(pr1, pr2)
        return all(_letter_eq(self.alphabet, self.entry(i), other.entry(i))
                   for i in range(lo, hi))

    def __hash__(self):
        raise TypeError("sequences are compared extensionally; not hashable")

    def __repr__(self):
        ls, pl, rs, pr = self.profile()
        lo = 0 if self.axis is Axis.ONE_SIDED else ls - pl
        win = " ".join(repr(self.entry(i)) for i in range(lo, rs + pr))
        return f"<{type(self).__name__} [{lo}..{rs + pr}) {win}>"

    def to_json(self):
        raise NotImplementedError


def _letter_eq(alphabet, a, b):
    if a is EMPTY or b is EMPTY:
        return a is b
    return alphabet.eq(a, b)


class EmptySequence(Sequence):
    def __init__(self, axis: Axis, alphabet):
        self.axis = axis
        self.alphabet = alphabet

    def length(self):
        return NEG_INF

    def entry(self, i):
        if self.axis is Axis.ONE_SIDED and i < 0:
            raise IndexOutsideAxis(f"index {i} on the one-sided axis")
        return EMPTY

    def profile(self):
        return (0, 1, 0, 1)

    def to_json(self):
        return {"kind": "empty"}


class FiniteOneSided(Sequence):
    axis = Axis.ONE_SIDED

    def __init__(self, alphabet, word):
        if not word:
            raise ValidationError("use EmptySequence for the empty word")
        for a in word:
            alphabet.validate(a)
        self.alphabet = alphabet
        self.word = tuple(word)

    def length(self):
        return len(self.word)

    def entry(self, i):
        if i < 0:
            raise IndexOutsideAxis(f"index {i} on the one-sided axis")
        return self.word[i] if i < len(self.word) else EMPTY

    def profile(self):
        return (0, 1, len(self.word), 1)

    def to_json(self):
        A = self.alphabet
        return {"kind": "finite", "word": [A.to_json(a) for a in self.word]}


class InfiniteOneSided(Sequence):
    axis = Axis.ONE_SIDED

    def __init__(self, alphabet, transient, period):
        if not period:
            raise ValidationError("period must be nonempty")
        for a in list(transient) + list(period):
            alphabet.validate(a)
        period = _primitive(tuple(period))
        transient = tuple(transient)
        while transient and alphabet.eq(transient[-1], period[-1]):
            period = _rot_right(period)
            transient = transient[:-1]
        self.alphabet = alphabet
        self.transient = transient
        self.period = period

    def length(self):
        return INF

    def entry(self, i):
        if i < 0:
            raise IndexOutsideAxis(f"index {i} on the one-sided axis")
        t = len(self.transient)
        if i < t:
            return self.transient[i]
        return self.period[(i - t) % len(self.period)]

    def profile(self):
        return (0, 1, len(self.transient), len(self.period))

    def to_json(self):
        A = self.alphabet
        return {
            "kind": "periodic",
            "transient": [A.to_json(a) for a in self.transient],
            "period": [A.to_json(a) for a in self.period],
        }


class LeftRay(Sequence):
    """A two-sided sequence whose letters stop after ``end_index``; the
    left tail is eventually periodic."""

    axis = Axis.TWO_SIDED

    def __init__(self, alphabet, left_period, transient, end_index):
        if not left_period:
            raise ValidationError("left period must be nonempty")
        for a in list(left_period) + list(transient):
            alphabet.validate(a)
        lp = _primitive(tuple(left_period))
        tr = tuple(transient)
        while tr and alphabet.eq(tr[0], lp[0]):
            tr = tr[1:]
            lp = _rot_left(lp)
        self.alphabet = alphabet
        self.left_period = lp
        self.transient = tr
        self.end_index = end_index

    def length(self):
        return self.end_index

    def _transient_start(self):
        return self.end_index - len(self.transient) + 1

    def entry(self, i):
        if i > self.end_index:
            return EMPTY
        ts = self._transient_start()
        if i >= ts:
            return self.transient[i - ts]
        return self.left_period[(i - ts) % len(self.left_period)]

    def profile(self):
        return (self._transient_start(), len(self.left_period), self.end_index + 1, 1)

    def to_json(self):
        A = self.alphabet
        return {
            "kind": "left_ray",
            "left_period": [A.to_json(a) for a in self.left_period],
            "transient": [A.to_json(a) for a in self.transient],
            "end_index": self.end_index,
        }


class BiInfinite(Sequence):
    axis = Axis.TWO_SIDED

    def __init__(self, alphabet, left_period, center, right_period, base_index):
        if not left_period or not right_period:
            raise ValidationError("periods must be nonempty")
        for a in list(left_period) + list(center) + list(right_period):
            alphabet.validate(a)
        lp = _primitive(tuple(left_period))
        rp = _primitive(tuple(right_period))
        c = list(center)
        b = base_index
        while c and alphabet.eq(c[-1], rp[-1]):
            rp = _rot_right(rp)
            c.pop()
        while c and alphabet.eq(c[0], lp[0]):
            lp = _rot_left(lp)
            c.pop(0)
            b += 1
        if not c:
            p = math.lcm(len(lp), len(rp))
            if all(
                alphabet.eq(lp[(-j) % len(lp)], rp[(-j) % len(rp)])
                for j in range(1, p + 1)
            ):
                # fully periodic: canonical phase at index 0
                pat = tuple(rp[(i - b) % len(rp)] for i in range(len(rp)))
                lp = rp = pat
                b = 0
        self.alphabet = alphabet
        self.left_period = lp
        self.center = tuple(c)
        self.right_period = rp
        self.base_index = b

    def length(self):
        return INF

    def entry(self, i):
        b = self.base_index
        if i < b:
            return self.left_period[(i - b) % len(self.left_period)]
        if i < b + len(self.center):
            return self.center[i - b]
        return self.right_period[(i - b - len(self.center)) % len(self.right_period)]

    def profile(self):
        return (
            self.base_index,
            len(self.left_period),
            self.base_index + len(self.center),
            len(self.right_period),
        )

    def to_json(self):
        A = self.alphabet
        return {
            "kind": "periodic",
            "left_period": [A.to_json(a) for a in self.left_period],
            "center": [A.to_json(a) for a in self.center],
            "right_period": [A.to_json(a) for a in self.right_period],
            "base_index": self.base_index,
        }


def build_sequence(axis, alphabet, entry_fn, ls, pl, rs, pr):
    """Construct the normal form of the sequence whose entries are
    given by ``entry_fn``, assuming entries are pl-periodic below ``ls``
    and pr-periodic at or above ``rs`` (ø counts as a letter here)."""
    if rs < ls:
        rs = ls
    if axis is Axis.ONE_SIDED:
        lo = 0
        rs = max(rs, 0)
    else:
        lo = ls - pl
        if any(entry_fn(i) is EMPTY for i in range(lo, ls)):
            return EmptySequence(axis, alphabet)
    entries = [entry_fn(i) for i in range(lo, rs + pr)]
    first_empty = None
    for k, a in enumerate(entries):
        if a is EMPTY:
            first_empty = lo + k
            break
    if first_empty is not None:
        if axis is Axis.ONE_SIDED:
            if first_empty == 0:
                return EmptySequence(axis, alphabet)
            return FiniteOneSided(alphabet, entries[:first_empty])
        if first_empty == lo:
            return EmptySequence(axis, alphabet)
        return LeftRay(
            alphabet,
            left_period=entries[: ls - lo],
            transient=entries[ls - lo : first_empty - lo],
            end_index=first_empty - 1,
        )
    if axis is Axis.ONE_SIDED:
        return InfiniteOneSided(alphabet, entries[:rs], entries[rs : rs + pr])
    return BiInfinite(
        alphabet,
        left_period=entries[: ls - lo],
        center=entries[ls - lo : rs - lo],
        right_period=entries[rs - lo : rs - lo + pr],
        base_index=ls,
    )


def empty_sequence(axis, alphabet):
    return EmptySequence(axis, alphabet)


def constant_sequence(axis, alphabet, letter):
    if axis is Axis.ONE_SIDED:
        return InfiniteOneSided(alphabet, [], [letter])
    return BiInfinite(alphabet, [letter], [], [letter], 0)


def identity_word(alphabet, n: int, axis: Axis = Axis.ONE_SIDED):
    """The identity word of length n (n >= 0)."""
    e = alphabet.identity
    if n == 0:
        return EmptySequence(axis, alphabet)
    if axis is Axis.ONE_SIDED:
        return FiniteOneSided(alphabet, [e] * n)
    return LeftRay(alphabet, [e], [], n)


def shift(x: Sequence, steps: int = 1) -> Sequence:
    return x.shifted(steps)


def entry_at(x: Sequence, i: int):
    return x.entry(i)


def zip_entrywise(x: Sequence, y: Sequence, fn, out_alphabet) -> Sequence:
    """Entrywise combination; ø absorbs (either input ø gives ø)."""
    if x.axis is not y.axis:
        raise MixedAxis("cannot combine sequences on different axes")
    ls1, pl1, rs1, pr1 = x.profile()
    ls2, pl2, rs2, pr2 = y.profile()

    def f(i):
        a, b = x.entry(i), y.entry(i)
        if a is EMPTY or b is EMPTY:
            return EMPTY
        return fn(a, b)

    return build_sequence(
        x.axis,
        out_alphabet,
        f,
        min(ls1, ls2),
        math.lcm(pl1, pl2),
        max(rs1, rs2),
        math.lcm(pr1, pr2),
    )


def product_glue(x: Sequence, y: Sequence) -> Sequence:
    """Pair two sequences position by position; a position is ø in the
    result when it is ø in either input, so the length is the minimum."""
    if x.axis is not y.axis:
        raise MixedAxis("cannot glue sequences on different axes")
    out = DirectProduct([x.alphabet, y.alphabet])
    return zip_entrywise(x, y, lambda a, b: (a, b), out)


def project_nonneg(x: Sequence, out_alphabet=None):
    """Restrict a two-sided sequence to coordinates >= 0."""
    if x.axis is not Axis.TWO_SIDED:
        raise MixedAxis("projection expects a two-sided sequence")
    A = out_alphabet if out_alphabet is not None else x.alphabet
    ls, pl, rs, pr = x.profile()
    return build_sequence(Axis.ONE_SIDED, A, x.entry, 0, 1, max(rs, 0), pr)


def recode(x: Sequence, memory: int, anticipation: int, rule, out_alphabet,
           out_axis: Optional[Axis] = None) -> Sequence:
    """Apply a local rule of window size memory+anticipation+1.  The
    rule receives the window (letters and/or ø) ending ``anticipation``
    steps ahead and returns a letter or ø."""
    axis = out_axis or x.axis
    if x.axis is Axis.ONE_SIDED and memory > 0:
        raise ValidationError("one-sided sequences admit no memory in local rules")
    ls, pl, rs, pr = x.profile()

    def f(i):
        return rule(x.window(i - memory, i + anticipation + 1))

    return build_sequence(axis, out_alphabet, f, ls - anticipation, pl, rs + memory, pr)


def blocks_of(x: Sequence, n: int, include_empty: bool = False):
    """All length-n windows occurring in x.  With ``include_empty`` the
    windows containing ø are kept, otherwise only ø-free blocks."""
    if n < 1:
        raise ValidationError("block length must be >= 1")
    ls, pl, rs, pr = x.profile()
    lo = 0 if x.axis is Axis.ONE_SIDED else ls - pl - n
    hi = rs + pr + n
    out = []
    seen = set()
    for i in range(lo, hi):
        w = x.window(i, i + n)
        if not include_empty and any(a is EMPTY for a in w):
            continue
        key = tuple("ø" if a is EMPTY else x.alphabet.encode(a) for a in w)
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


def agrees_up_to(y: Sequence, x: Sequence, k) -> bool:
    """Do y and x agree on every coordinate <= k (one-sided: < k)?"""
    y._same_space(x)
    ls1, pl1, rs1, pr1 = y.profile()
    ls2, pl2, rs2, pr2 = x.profile()
    if k == -math.inf:
        return True
    # an infinite horizon only needs one representative span past both
    # periodic onsets
    far = max(rs1, rs2) + math.lcm(pr1, pr2)
    if y.axis is Axis.ONE_SIDED:
        lo, hi = 0, (far if k == math.inf else k)
    else:
        lo = min(ls1, ls2) - math.lcm(pl1, pl2)
        hi = far if k == math.inf else k + 1
    return all(_letter_eq(y.alphabet, y.entry(i), x.entry(i)) for i in range(lo, max(lo, hi)))


@dataclass
class Cylinder:
    """Generalized cylinder: sequences extending ``base`` whose next
    letter is not in ``forbidden`` (ø is never forbidden)."""

    base: Sequence
    forbidden: tuple = ()

    def contains(self, y: Sequence) -> bool:
        x = self.base
        if x.is_empty():
            nxt = 0 if y.axis is Axis.ONE_SIDED else None
            if nxt is None:
                raise ValidationError("empty-base cylinders are one-sided")
        else:
            if not agrees_up_to(y, x, x.length()):
                return False
            if x.length() == math.inf:
                return True  # nothing extends past an infinite base
            nxt = x.length() if y.axis is Axis.ONE_SIDED else x.length() + 1
        a = y.entry(nxt)
        if a is EMPTY:
            return True
        return not any(y.alphabet.eq(a, f) for f in self.forbidden)


def complement_cylinder_contains(y: Sequence, bases) -> bool:
    """Membership in the complement cylinder of the given finite bases:
    y extends none of them."""
    for x in bases:
        if x.is_empty():
            # every sequence extends the empty one
            return False
        if agrees_up_to(y, x, x.length()):
            return False
    return True


def sequence_from_json(obj, alphabet, axis: Axis) -> Sequence:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("sequence literal must be an object with a 'kind'", "/sequence")
    kind = obj["kind"]
    A = alphabet
    if kind == "empty":
        return EmptySequence(axis, A)
    if kind == "finite":
        word = [A.from_json(v) for v in obj["word"]]
        if axis is Axis.ONE_SIDED:
            return FiniteOneSided(A, word) if word else EmptySequence(axis, A)
        raise ValidationError("two-sided finite sequences are left rays", "/sequence/kind")
    if kind == "left_ray":
        return LeftRay(
            A,
            [A.from_json(v) for v in obj["left_period"]],
            [A.from_json(v) for v in obj.get("transient", [])],
            int(obj["end_index"]),
        )
    if kind == "periodic":
        if axis is Axis.ONE_SIDED:
            return InfiniteOneSided(
                A,
                [A.from_json(v) for v in obj.get("transient", [])],
                [A.from_json(v) for v in obj["period"]],
            )
        return BiInfinite(
            A,
            [A.from_json(v) for v in obj["left_period"]],
            [A.from_json(v) for v in obj.get("center", [])],
            [A.from_json(v) for v in obj["right_period"]],
            int(obj.get("base_index", 0)),
        )
    raise ValidationError(f"unknown sequence kind {kind!r}", "/sequence/kind")
