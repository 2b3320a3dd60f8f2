"""Shift space presentations and their follower/predecessor structure.

A presentation is a finite description of a shift space: the full
shift, a 1-step space whose transitions are cosets of a subgroup (the
follower of letter a is the coset given by a homomorphism), a named
m-step predicate, an explicit finite edge graph, or a product.

Infinite alphabets force bounded computation.  Every answer that could
be cut off by a bound says so: enumerations carry a ``complete`` flag,
and membership tests are exact whenever the presentation's windows
decide the language (true for all bundled presentation kinds).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .codes import SlidingBlockCode, one_block
from .errors import (
    BlockNotInLanguage,
    MixedAlphabet,
    MixedAxis,
    ParseError,
    ValidationError,
)
from .groups import (
    BlockGroup,
    Coset,
    CosetHom,
    DirectProduct,
    SubgroupHandle,
    alphabet_from_descriptor,
    full_subgroup,
    hom_from_descriptor,
    subgroup_from_descriptor,
)
from .sequences import EMPTY, Axis, Sequence

DEFAULT_BOUND = 64


@dataclass
class FollowerResult:
    """A follower (or predecessor) set of k-blocks.

    ``member`` is an exact membership test when ``exact``; ``elements``
    is an enumeration in canonical order, complete when ``complete``.
    ``coset`` is set when the result is known to be a coset of a
    subgroup of the alphabet (k = 1 coset presentations).
    """

    k: int
    member: Callable
    elements: list
    exact: bool = True
    complete: bool = False
    bound: Optional[int] = None
    coset: Optional[Coset] = None

    def contains(self, block) -> bool:
        if not isinstance(block, tuple):
            block = (block,)
        if len(block) != self.k:
            raise ValidationError(f"expected a {self.k}-block")
        return self.member(block)

    def same_as(self, other: "FollowerResult") -> bool:
        """Equality of two follower sets of the same shift and the same
        k.  Such sets are cosets of one subgroup, so sharing a block is
        enough; checked both ways for safety."""
        if not self.elements or not other.elements:
            return not self.elements and not other.elements
        return other.member(self.elements[0]) and self.member(other.elements[0])

    def cardinality(self) -> Optional[int]:
        return len(self.elements) if self.complete else None


class ShiftPresentation:
    """Base presentation.  ``m`` is the window size of the defining
    condition: windows of length m+1 must be allowed."""

    kind = "abstract"
    alphabet = None
    axis = Axis.TWO_SIDED
    m = 0

    def letter_allowed(self, a) -> bool:
        return True

    def window_allowed(self, w) -> bool:
        """w is an ø-free window of length self.m + 1."""
        return True

    def block_allowed(self, word) -> bool:
        """Is the ø-free word consistent with all defining windows?"""
        if any(not self.letter_allowed(a) for a in word):
            return False
        if self.m == 0:
            return True
        for i in range(len(word) - self.m):
            if not self.window_allowed(tuple(word[i : i + self.m + 1])):
                return False
        return True

    def followers_infinite(self, word) -> Optional[bool]:
        """Does the word admit infinitely many one-letter extensions?
        Needed for membership of nonempty finite sequences."""
        raise NotImplementedError

    def empty_in_shift(self) -> bool:
        if self.axis is Axis.ONE_SIDED:
            return self.alphabet.order() is None
        return not self.point_count_finite()

    def point_count_finite(self) -> bool:
        """Is the whole two-sided shift a finite set of points?"""
        if self.alphabet.order() is None:
            return False
        return _finite_alphabet_point_count_finite(self)

    def contains(self, x: Sequence, bound: int = DEFAULT_BOUND) -> bool:
        if x.axis is not self.axis:
            raise MixedAxis("sequence axis does not match the presentation")
        if x.alphabet.descriptor() != self.alphabet.descriptor():
            raise MixedAlphabet("sequence alphabet does not match the presentation")
        if x.is_empty():
            return self.empty_in_shift()
        ls, pl, rs, pr = x.profile()
        lo = 0 if self.axis is Axis.ONE_SIDED else ls - pl - self.m - 1
        hi = rs + pr
        letters = []
        for i in range(lo, hi):
            a = x.entry(i)
            if a is not EMPTY:
                letters.append(a)
                if not self.letter_allowed(a):
                    return False
        if self.m > 0:
            for i in range(lo, hi):
                w = x.window(i, i + self.m + 1)
                if any(a is EMPTY for a in w):
                    continue
                if not self.window_allowed(w):
                    return False
        if x.length() not in (math.inf, -math.inf):
            # the infinite extension property for finite sequences
            tail = tuple(letters[-max(self.m, 1):])
            inf = self.followers_infinite(tail)
            if inf is None:
                return False
            return inf
        return True

    # --- follower / predecessor structure ---------------------------------

    def follower_set(self, word, k: int = 1, bound: int = DEFAULT_BOUND) -> FollowerResult:
        word = tuple(word)
        if not self.block_allowed(word):
            raise BlockNotInLanguage(f"{word!r} is not in the language")

        def member(b):
            return self.block_allowed(word + b)

        elements, complete = self._enumerate_extensions(word, k, bound, forward=True)
        return FollowerResult(
            k=k, member=member, elements=elements, exact=True,
            complete=complete, bound=bound, coset=self._follower_coset(word, k),
        )

    def predecessor_set(self, word, n: int = 1, bound: int = DEFAULT_BOUND) -> FollowerResult:
        word = tuple(word)
        if not self.block_allowed(word):
            raise BlockNotInLanguage(f"{word!r} is not in the language")

        def member(a):
            return self.block_allowed(a + word)

        elements, complete = self._enumerate_extensions(word, n, bound, forward=False)
        return FollowerResult(
            k=n, member=member, elements=elements, exact=True,
            complete=complete, bound=bound,
        )

    def _follower_coset(self, word, k):
        return None

    def _enumerate_extensions(self, word, k, bound, forward):
        """Blocks b (|b| = k) with word+b (or b+word) allowed, drawn from
        the first ``bound`` letters per position."""
        letters = [a for a in self.alphabet.first(bound) if self.letter_allowed(a)]
        out = []
        complete = self.alphabet.order() is not None and bound >= self.alphabet.order()

        if forward:
            def extend(prefix):
                if len(prefix) == k:
                    out.append(prefix)
                    return
                for a in letters:
                    cand = prefix + (a,)
                    if self.block_allowed(word + cand):
                        extend(cand)

            extend(())
        else:
            # grow right-to-left so window pruning applies
            def extend_back(suffix):
                if len(suffix) == k:
                    out.append(suffix)
                    return
                for a in letters:
                    cand = (a,) + suffix
                    if self.block_allowed(cand + word):
                        extend_back(cand)

            extend_back(())
        return out, complete

    def language(self, n: int, bound: int = DEFAULT_BOUND):
        """(words of length n, complete flag)."""
        letters = [a for a in self.alphabet.first(bound) if self.letter_allowed(a)]
        complete = self.alphabet.order() is not None and bound >= self.alphabet.order()
        out = []

        def extend(prefix):
            if len(prefix) == n:
                out.append(prefix)
                return
            for a in letters:
                cand = prefix + (a,)
                if self.block_allowed(cand):
                    extend(cand)

        extend(())
        return out, complete

    def classify(self, bound: int = DEFAULT_BOUND, m_cap: int = 32) -> dict:
        e = self.alphabet.identity
        sets = []
        for j in range(0, m_cap + 1):
            word = (e,) * j
            letters = [
                b for b in self.alphabet.first(bound)
                if self.letter_allowed(b) and self.block_allowed(word + (b,))
            ]
            sets.append([self.alphabet.encode(b) for b in letters])
        m_step = None
        for M in range(0, m_cap + 1):
            if all(sets[j] == sets[M] for j in range(M, m_cap + 1)):
                m_step = M
                break
        return {
            "m_step": m_step,
            "m_step_bounded": True,
            "m_cap": m_cap,
            "bound": bound,
            "row_finite": self.row_finite(),
            "column_finite": self.column_finite(),
            "markov": m_step is not None and m_step <= 1,
        }

    def row_finite(self) -> Optional[bool]:
        raise NotImplementedError

    def column_finite(self) -> Optional[bool]:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError


def _transition_graph(p: ShiftPresentation, bound=None):
    """Letter-level transition digraph for a 1-step presentation over a
    finite alphabet: (letters, edge list of index pairs)."""
    order = p.alphabet.order()
    n = order if bound is None else min(bound, order if order is not None else bound)
    letters = [a for a in p.alphabet.first(n) if p.letter_allowed(a)]
    edges = []
    for i, a in enumerate(letters):
        for j, b in enumerate(letters):
            if p.block_allowed((a, b)):
                edges.append((i, j))
    return letters, edges


def _finite_alphabet_point_count_finite(p: ShiftPresentation) -> bool:
    """A finite-alphabet shift is a finite set of points exactly when
    its essential transition graph is a disjoint union of cycles, i.e.
    every essential vertex has out-degree one."""
    if p.m > 1:
        lifted, _, _ = higher_block(p, max(p.m, 1))
        return _finite_alphabet_point_count_finite(lifted)
    letters, edges = _transition_graph(p)
    # iteratively trim vertices with no successor or no predecessor
    alive = set(range(len(letters)))
    changed = True
    while changed:
        changed = False
        outs = {v: 0 for v in alive}
        ins = {v: 0 for v in alive}
        for i, j in edges:
            if i in alive and j in alive:
                outs[i] += 1
                ins[j] += 1
        dead = {v for v in alive if outs[v] == 0 or ins[v] == 0}
        if dead:
            alive -= dead
            changed = True
    outs = {v: 0 for v in alive}
    for i, j in edges:
        if i in alive and j in alive:
            outs[i] += 1
    return all(c == 1 for c in outs.values())


class FullShift(ShiftPresentation):
    kind = "full"
    m = 0

    def __init__(self, alphabet, axis: Axis):
        self.alphabet = alphabet
        self.axis = axis

    def followers_infinite(self, word):
        return self.alphabet.order() is None

    def row_finite(self):
        return self.alphabet.order() is not None

    def column_finite(self):
        return self.alphabet.order() is not None

    def _follower_coset(self, word, k):
        if k == 1 and getattr(self.alphabet, "is_group", False):
            return Coset(full_subgroup(self.alphabet), self.alphabet.identity)
        return None

    def descriptor(self):
        return {
            "kind": "full",
            "alphabet": self.alphabet.descriptor(),
            "axis": self.axis.value,
        }


class MarkovCoset(ShiftPresentation):
    """1-step shift over a group alphabet: b may follow a exactly when
    b lies in the coset hom(a) of the subgroup N.  The follower set of
    every letter is a coset of N, and hom(identity) must be N itself."""

    kind = "markov_coset"
    m = 1

    def __init__(self, alphabet, axis: Axis, subgroup: SubgroupHandle, hom: CosetHom):
        if not getattr(alphabet, "is_group", False):
            raise ValidationError("a coset presentation needs a group alphabet")
        self.alphabet = alphabet
        self.axis = axis
        self.subgroup = subgroup
        self.hom = hom
        if not hom.in_kernel(alphabet.identity):
            raise ValidationError(
                "hom(identity) must be the subgroup itself; the identity ray is in every coset shift"
            )

    def window_allowed(self, w):
        a, b = w
        G = self.alphabet
        return self.subgroup.contains(G.mul(G.inv(self.hom.rep(a)), b))

    def followers_infinite(self, word):
        return not self.subgroup.is_finite()

    def row_finite(self):
        return self.subgroup.is_finite()

    def column_finite(self):
        return self.hom.kernel_finite

    def _follower_coset(self, word, k):
        if k == 1 and word:
            return self.hom(word[-1])
        return None

    def follower_set(self, word, k: int = 1, bound: int = DEFAULT_BOUND) -> FollowerResult:
        word = tuple(word)
        if not self.block_allowed(word):
            raise BlockNotInLanguage(f"{word!r} is not in the language")
        G = self.alphabet
        N = self.subgroup

        def member(b):
            return self.block_allowed(word + b) if word else self.block_allowed(b)

        # enumerate by walking the coset chain instead of scanning letters
        start = self.hom.rep(word[-1]) if word else None
        elements = []
        complete = N.is_finite()

        def walk(prefix, rep):
            if len(prefix) == k:
                elements.append(prefix)
                return
            for nelt in N.sample(bound):
                b = G.mul(rep, nelt)
                walk(prefix + (b,), self.hom.rep(b))

        if start is not None:
            walk((), start)
        else:
            for b in G.first(bound):
                walk((b,), self.hom.rep(b))
            complete = False
        elements.sort(key=lambda t: tuple(G.sort_key(b) for b in t))
        return FollowerResult(
            k=k, member=member, elements=elements, exact=True,
            complete=complete, bound=bound, coset=self._follower_coset(word, k),
        )

    def predecessor_set(self, word, n: int = 1, bound: int = DEFAULT_BOUND) -> FollowerResult:
        res = super().predecessor_set(word, n, bound)
        if n == 1 and self.hom.kernel_elements is not None:
            # the predecessor set of a letter is a translate of the
            # kernel of the hom, so finding |kernel| letters proves
            # completeness
            if len(res.elements) == len(self.hom.kernel_elements):
                res.complete = True
        return res

    def descriptor(self):
        return {
            "kind": "markov_coset",
            "alphabet": self.alphabet.descriptor(),
            "axis": self.axis.value,
            "subgroup": self.subgroup.descriptor(),
            "hom": self.hom.descriptor(),
        }


_PREDICATES = {}


def register_predicate(name):
    def deco(fn):
        _PREDICATES[name] = fn
        return fn
    return deco


@register_predicate("z_parity")
def _make_z_parity(alphabet, axis):
    """Integers whose entries two apart share parity; 2-step."""
    from .groups import Integers

    if not isinstance(alphabet, Integers):
        raise ValidationError("z_parity runs over the integer alphabet")
    return PredicateMStep(
        alphabet, axis, m=2,
        allowed=lambda w: (w[0] - w[2]) % 2 == 0,
        name="z_parity",
        infinite_followers=True,
        infinite_predecessors=True,
    )


@register_predicate("z2_second_coord")
def _make_z2_second(alphabet, axis):
    """Integer pairs with constant second coordinate; 1-step."""
    from .groups import IntegerPairs

    if not isinstance(alphabet, IntegerPairs):
        raise ValidationError("z2_second_coord runs over the integer-pair alphabet")
    return PredicateMStep(
        alphabet, axis, m=1,
        allowed=lambda w: w[0][1] == w[1][1],
        name="z2_second_coord",
        infinite_followers=True,
        infinite_predecessors=True,
    )


@register_predicate("z_diff_0_or_1")
def _make_z_diff(alphabet, axis):
    """Steps of 0 or +1 over the integers.  The transition set is not a
    coset of any subgroup; used as the broken-closure example."""
    from .groups import Integers

    if not isinstance(alphabet, Integers):
        raise ValidationError("z_diff_0_or_1 runs over the integer alphabet")
    return PredicateMStep(
        alphabet, axis, m=1,
        allowed=lambda w: w[1] - w[0] in (0, 1),
        name="z_diff_0_or_1",
        infinite_followers=False,
        infinite_predecessors=False,
    )


class PredicateMStep(ShiftPresentation):
    """m-step shift given by a named window predicate.  Windows decide
    the language (no dead ends among the bundled predicates), so block
    membership is exact."""

    kind = "predicate_mstep"

    def __init__(self, alphabet, axis, m, allowed, name,
                 infinite_followers, infinite_predecessors):
        self.alphabet = alphabet
        self.axis = axis
        self.m = m
        self._allowed = allowed
        self.name = name
        self.infinite_followers = infinite_followers
        self.infinite_predecessors = infinite_predecessors

    def window_allowed(self, w):
        return self._allowed(w)

    def followers_infinite(self, word):
        return self.infinite_followers

    def row_finite(self):
        return not self.infinite_followers

    def column_finite(self):
        return not self.infinite_predecessors

    def descriptor(self):
        return {
            "kind": "predicate_mstep",
            "alphabet": self.alphabet.descriptor(),
            "axis": self.axis.value,
            "m": self.m,
            "predicate": self.name,
        }


def predicate_shift(name, alphabet, axis):
    if name not in _PREDICATES:
        raise ValidationError(f"unknown predicate {name!r}", "/shift/predicate")
    return _PREDICATES[name](alphabet, axis)


class PeriodicClosure(ShiftPresentation):
    """Integer sequences that are periodic (or empty): the closure of
    the set of all periodic points of the full shift over Z.  Not an
    m-step shift for any m; supports membership only."""

    kind = "periodic_closure"
    m = 0

    def __init__(self, alphabet, axis):
        from .groups import Integers

        if not isinstance(alphabet, Integers) or axis is not Axis.TWO_SIDED:
            raise ValidationError("the periodic-closure shift is two-sided over the integers")
        self.alphabet = alphabet
        self.axis = axis

    def contains(self, x: Sequence, bound: int = DEFAULT_BOUND) -> bool:
        if x.is_empty():
            return True
        if x.length() != math.inf:
            return False
        ls, pl, rs, pr = x.profile()
        p = math.lcm(pl, pr)
        return all(x.entry(i) == x.entry(i + p) for i in range(ls - p - 1, rs + p + 1))

    def followers_infinite(self, word):
        return None

    def row_finite(self):
        return False

    def column_finite(self):
        return False

    def classify(self, bound: int = DEFAULT_BOUND, m_cap: int = 32) -> dict:
        # every long identity word extends to non-periodic rays, so no
        # finite window condition can pin the language down
        return {
            "m_step": None,
            "m_step_bounded": True,
            "m_cap": m_cap,
            "bound": bound,
            "row_finite": False,
            "column_finite": False,
            "markov": False,
        }

    def descriptor(self):
        return {
            "kind": "periodic_closure",
            "alphabet": self.alphabet.descriptor(),
            "axis": self.axis.value,
        }


class EdgeGraph(ShiftPresentation):
    """Explicit finite edge shift: letters are edge names, each with a
    source and target vertex."""

    kind = "edge_graph"
    m = 1

    def __init__(self, edges, axis: Axis):
        # edges: list of (name, source, target); letters are names
        if not edges:
            raise ValidationError("an edge shift needs at least one edge")
        self.edges = [tuple(e) for e in edges]
        self.axis = axis
        names = [e[0] for e in self.edges]
        if len(set(names)) != len(names):
            raise ValidationError("edge names must be distinct")
        self._src = {e[0]: e[1] for e in self.edges}
        self._tgt = {e[0]: e[2] for e in self.edges}
        self.alphabet = _EdgeAlphabet(names)

    def window_allowed(self, w):
        return self._tgt[w[0]] == self._src[w[1]]

    def followers_infinite(self, word):
        return False

    def row_finite(self):
        return True

    def column_finite(self):
        return True

    def classify(self, bound: int = DEFAULT_BOUND, m_cap: int = 32) -> dict:
        # edge letters carry no identity word; the presentation itself
        # is 1-step by construction
        return {
            "m_step": 1,
            "m_step_bounded": False,
            "m_cap": m_cap,
            "bound": bound,
            "row_finite": True,
            "column_finite": True,
            "markov": True,
        }

    def descriptor(self):
        return {
            "kind": "edge_graph",
            "axis": self.axis.value,
            "edges": [list(e) for e in self.edges],
        }


class _EdgeAlphabet:
    """Plain finite letter set (no group structure) for edge shifts."""

    kind = "edge_letters"
    is_group = False

    def __init__(self, names):
        self.names = list(names)

    def validate(self, a):
        if a not in self.names:
            from .errors import MalformedElement

            raise MalformedElement(f"{a!r} is not an edge name")

    def eq(self, a, b):
        return a == b

    def elements(self):
        return iter(self.names)

    def first(self, n):
        return self.names[:n]

    def order(self):
        return len(self.names)

    def sort_key(self, a):
        return self.names.index(a)

    def encode(self, a):
        import json

        return json.dumps(a)

    def to_json(self, a):
        return a

    def from_json(self, v):
        self.validate(v)
        return v

    def is_finite(self):
        return True

    def descriptor(self):
        return {"kind": "edge_letters", "names": list(self.names)}


class ProductShift(ShiftPresentation):
    """Coordinatewise product: letters are tuples, a sequence belongs
    exactly when each projection belongs to its factor."""

    kind = "product"

    def __init__(self, factors):
        if not factors:
            raise ValidationError("a product needs at least one factor")
        axes = {p.axis for p in factors}
        if len(axes) != 1:
            raise MixedAxis("product factors live on different axes")
        self.factors = list(factors)
        self.axis = factors[0].axis
        self.alphabet = DirectProduct([p.alphabet for p in factors])
        self.m = max(p.m for p in factors)

    def letter_allowed(self, a):
        return all(p.letter_allowed(x) for p, x in zip(self.factors, a))

    def window_allowed(self, w):
        for idx, p in enumerate(self.factors):
            if p.m == 0:
                continue
            proj = tuple(x[idx] for x in w)
            for i in range(len(proj) - p.m):
                if not p.window_allowed(proj[i : i + p.m + 1]):
                    return False
        return True

    def followers_infinite(self, word):
        vals = []
        for idx, p in enumerate(self.factors):
            proj = tuple(x[idx] for x in word)
            vals.append(p.followers_infinite(proj))
        if any(v is None for v in vals):
            return None
        # the product of follower sets is infinite iff some factor's is
        return any(vals)

    def row_finite(self):
        vals = [p.row_finite() for p in self.factors]
        if any(v is None for v in vals):
            return None
        return all(vals)

    def column_finite(self):
        vals = [p.column_finite() for p in self.factors]
        if any(v is None for v in vals):
            return None
        return all(vals)

    def point_count_finite(self):
        return all(p.point_count_finite() for p in self.factors)

    def descriptor(self):
        return {"kind": "product", "factors": [p.descriptor() for p in self.factors]}


def product_shift(*factors) -> ProductShift:
    return ProductShift(list(factors))


class HigherBlock(ShiftPresentation):
    """The M-th higher block presentation: letters are the M-blocks of
    the base shift, transitions require overlap plus an allowed
    (M+1)-window downstairs."""

    kind = "higher_block"
    m = 1

    def __init__(self, base: ShiftPresentation, M: int):
        if M < 1:
            raise ValidationError("higher block order must be >= 1")
        self.base = base
        self.M = M
        self.axis = base.axis
        self.alphabet = BlockGroup(base.alphabet, M) if getattr(
            base.alphabet, "is_group", False
        ) else _lifted_plain_alphabet(base.alphabet, M)

    def letter_allowed(self, u):
        return self.base.block_allowed(u)

    def window_allowed(self, w):
        u, v = w
        if self.M > 1 and u[1:] != v[:-1]:
            return False
        return self.base.block_allowed(u + (v[-1],))

    def followers_infinite(self, word):
        if not word:
            return self.base.followers_infinite(())
        return self.base.followers_infinite(word[-1])

    def row_finite(self):
        return self.base.row_finite()

    def column_finite(self):
        return self.base.column_finite()

    def descriptor(self):
        return {"kind": "higher_block", "M": self.M, "base": self.base.descriptor()}


def _lifted_plain_alphabet(base_alphabet, M):
    raise ValidationError("higher block lifting is provided for group alphabets")


def higher_block(p: ShiftPresentation, M: int):
    """(lifted presentation, forward code, inverse code).

    Two-sided: the forward code reads x[i-M+1 .. i] so rays keep their
    length, and the inverse projects the last coordinate.  One-sided:
    memory is unavailable, so the window is x[i .. i+M-1] and the
    inverse projects the first coordinate."""
    lifted = HigherBlock(p, M)

    def fwd_rule(w):
        if any(a is EMPTY for a in w):
            return EMPTY
        return tuple(w)

    if p.axis is Axis.TWO_SIDED:
        forward = SlidingBlockCode(M - 1, 0, fwd_rule, lifted.alphabet, name=f"block^{M}")
        pick = -1
    else:
        forward = SlidingBlockCode(0, M - 1, fwd_rule, lifted.alphabet, name=f"block^{M}")
        pick = 0

    def inv_rule(w, _pick=pick):
        a = w[0]
        return EMPTY if a is EMPTY else a[_pick]

    inverse = SlidingBlockCode(0, 0, inv_rule, p.alphabet, name=f"unblock^{M}")
    return lifted, forward, inverse


def shift_from_descriptor(desc: dict) -> ShiftPresentation:
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ParseError("shift descriptor must be an object with a 'kind'", "/shift")
    kind = desc["kind"]
    axis = Axis(desc.get("axis", "two_sided"))
    if kind == "full":
        return FullShift(alphabet_from_descriptor(desc["alphabet"]), axis)
    if kind == "markov_coset":
        alphabet = alphabet_from_descriptor(desc["alphabet"])
        sub = subgroup_from_descriptor(alphabet, desc["subgroup"])
        hom = hom_from_descriptor(alphabet, sub, desc["hom"])
        return MarkovCoset(alphabet, axis, sub, hom)
    if kind == "predicate_mstep":
        alphabet = alphabet_from_descriptor(desc["alphabet"])
        p = predicate_shift(desc["predicate"], alphabet, axis)
        if "m" in desc and int(desc["m"]) != p.m:
            raise ValidationError(
                f"predicate {desc['predicate']!r} has window order {p.m}", "/shift/m"
            )
        return p
    if kind == "periodic_closure":
        return PeriodicClosure(alphabet_from_descriptor(desc["alphabet"]), axis)
    if kind == "edge_graph":
        return EdgeGraph(desc["edges"], axis)
    if kind == "product":
        return ProductShift([shift_from_descriptor(d) for d in desc["factors"]])
    raise ValidationError(f"unknown shift kind {kind!r}", "/shift/kind")
