"""Countable group alphabets and their coset machinery.

Every alphabet exposes the same small surface: an identity, exact
multiplication and inversion, a deterministic enumeration, and a total
order (``sort_key``) consistent with that enumeration.  Elements are
plain hashable Python values (ints, tuples), so everything downstream
can put them in sets and JSON-encode them without ceremony.

Infinite alphabets are handled by bounded enumeration: callers state a
bound and get the first ``bound`` elements in canonical order.  The
default bound is 64.
"""

from __future__ import annotations

import itertools
import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .errors import (
    MalformedElement,
    MismatchedSubgroup,
    NoCanonicalRep,
    NotNormal,
    ParseError,
    ValidationError,
)

DEFAULT_BOUND = 64


class GroupAlphabet(ABC):
    """A countable group used as the letter set of a shift space."""

    kind: str = "abstract"
    is_group: bool = True

    @property
    @abstractmethod
    def identity(self):
        ...

    @abstractmethod
    def mul(self, a, b):
        ...

    @abstractmethod
    def inv(self, a):
        ...

    @abstractmethod
    def validate(self, a) -> None:
        """Raise MalformedElement if ``a`` is not an element."""

    @abstractmethod
    def elements(self) -> Iterator:
        """Deterministic enumeration, identity first."""

    @abstractmethod
    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""

    @abstractmethod
    def sort_key(self, a):
        """Total order consistent with the enumeration."""

    @abstractmethod
    def descriptor(self) -> dict:
        """JSON-serializable description of this alphabet."""

    def eq(self, a, b) -> bool:
        return a == b

    def first(self, n: int) -> list:
        return list(itertools.islice(self.elements(), n))

    def encode(self, a) -> str:
        return json.dumps(self.to_json(a), separators=(",", ":"))

    def to_json(self, a):
        return _value_to_json(a)

    def from_json(self, v):
        a = _value_from_json(v)
        self.validate(a)
        return a

    def is_finite(self) -> bool:
        return self.order() is not None

    def check_axioms(self, bound: int = 8) -> None:
        """Exhaustively check group axioms on the first ``bound`` elements."""
        elems = self.first(bound)
        e = self.identity
        for a in elems:
            assert self.eq(self.mul(a, e), a) and self.eq(self.mul(e, a), a)
            ai = self.inv(a)
            assert self.eq(self.mul(a, ai), e) and self.eq(self.mul(ai, a), e)
        for a in elems[: max(4, bound // 4)]:
            for b in elems[: max(4, bound // 4)]:
                for c in elems[: max(4, bound // 4)]:
                    lhs = self.mul(self.mul(a, b), c)
                    rhs = self.mul(a, self.mul(b, c))
                    assert self.eq(lhs, rhs)


def _value_to_json(a):
    if isinstance(a, tuple):
        return [_value_to_json(x) for x in a]
    return a


def _value_from_json(v):
    if isinstance(v, list):
        return tuple(_value_from_json(x) for x in v)
    return v


class FiniteCyclic(GroupAlphabet):
    kind = "finite_cyclic"

    def __init__(self, n: int):
        if n < 1:
            raise ValidationError("cyclic order must be >= 1")
        self.n = n

    @property
    def identity(self):
        return 0

    def mul(self, a, b):
        return (a + b) % self.n

    def inv(self, a):
        return (-a) % self.n

    def validate(self, a):
        if not isinstance(a, int) or not 0 <= a < self.n:
            raise MalformedElement(f"{a!r} is not in Z_{self.n}")

    def elements(self):
        return iter(range(self.n))

    def order(self):
        return self.n

    def sort_key(self, a):
        return a

    def descriptor(self):
        return {"kind": "finite_cyclic", "n": self.n}


class Symmetric3(GroupAlphabet):
    """S_3 with permutations stored as image tuples of (0, 1, 2)."""

    kind = "symmetric3"
    _ELEMS = ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))

    @property
    def identity(self):
        return (0, 1, 2)

    def mul(self, a, b):
        # (a * b)(x) = a(b(x))
        return tuple(a[b[i]] for i in range(3))

    def inv(self, a):
        out = [0, 0, 0]
        for i in range(3):
            out[a[i]] = i
        return tuple(out)

    def validate(self, a):
        if a not in self._ELEMS:
            raise MalformedElement(f"{a!r} is not a permutation of (0,1,2)")

    def elements(self):
        return iter(self._ELEMS)

    def order(self):
        return 6

    def sort_key(self, a):
        return a

    def descriptor(self):
        return {"kind": "symmetric3"}


class Integers(GroupAlphabet):
    kind = "int"

    @property
    def identity(self):
        return 0

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def validate(self, a):
        if not isinstance(a, int) or isinstance(a, bool):
            raise MalformedElement(f"{a!r} is not an integer")

    def elements(self):
        yield 0
        k = 1
        while True:
            yield k
            yield -k
            k += 1

    def order(self):
        return None

    def sort_key(self, a):
        # 0, 1, -1, 2, -2, ...
        return 2 * a - 1 if a > 0 else -2 * a

    def descriptor(self):
        return {"kind": "int"}


class Prufer2(GroupAlphabet):
    """Direct limit of Z_{2^i} along doubling maps.

    Elements are pairs (g, i) in first-representation normal form:
    either (0, 1), or 1 <= i and g odd with 0 <= g < 2^i.
    """

    kind = "prufer2"

    @property
    def identity(self):
        return (0, 1)

    @staticmethod
    def normalize(g: int, i: int):
        g %= 1 << i
        while i > 1 and g % 2 == 0:
            g //= 2
            i -= 1
        if g == 0:
            return (0, 1)
        return (g, i)

    def mul(self, a, b):
        (g, i), (h, j) = a, b
        if i > j:
            g, i, h, j = h, j, g, i
        lifted = (g << (j - i)) % (1 << j)
        return self.normalize(lifted + h, j)

    def inv(self, a):
        g, i = a
        return self.normalize(-g, i)

    def validate(self, a):
        ok = (
            isinstance(a, tuple)
            and len(a) == 2
            and all(isinstance(x, int) for x in a)
            and a[1] >= 1
            and 0 <= a[0] < (1 << a[1])
            and (a == (0, 1) or a[0] % 2 == 1)
        )
        if not ok:
            raise MalformedElement(f"{a!r} is not a normal-form Prufer-2 element")

    def elements(self):
        yield (0, 1)
        yield (1, 1)
        i = 2
        while True:
            for g in range(1, 1 << i, 2):
                yield (g, i)
            i += 1

    def order(self):
        return None

    def sort_key(self, a):
        return (a[1], a[0])

    def half(self, a):
        """One level up: (g, i) -> (g, i+1).  A preimage of ``a`` under
        doubling; well defined as an element of the quotient by the
        order-2 subgroup, not as a group endomorphism."""
        g, i = a
        return self.normalize(g, i + 1)

    def descriptor(self):
        return {"kind": "prufer2"}


class _TupleGroup(GroupAlphabet):
    """Shared machinery for componentwise tuple groups."""

    def __init__(self, factors):
        self.factors = list(factors)

    @property
    def identity(self):
        return tuple(f.identity for f in self.factors)

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def inv(self, a):
        return tuple(f.inv(x) for f, x in zip(self.factors, a))

    def validate(self, a):
        if not isinstance(a, tuple) or len(a) != len(self.factors):
            raise MalformedElement(f"{a!r} has the wrong arity")
        for f, x in zip(self.factors, a):
            f.validate(x)

    def order(self):
        total = 1
        for f in self.factors:
            o = f.order()
            if o is None:
                return None
            total *= o
        return total

    def _ranks(self):
        # Per-factor list of (rank, element); lazy and memoized so
        # infinite factors only materialize what enumeration needs.
        if not hasattr(self, "_rank_cache"):
            self._rank_cache = [([], iter(f.elements())) for f in self.factors]
        return self._rank_cache

    def _factor_elem(self, fi, r):
        cache, it = self._ranks()[fi]
        while len(cache) <= r:
            cache.append(next(it))
        return cache[r]

    def _rank_of(self, fi, x):
        f = self.factors[fi]
        cache, it = self._ranks()[fi]
        r = 0
        while True:
            if r < len(cache):
                if f.eq(cache[r], x):
                    return r
            else:
                cache.append(next(it))
                if f.eq(cache[r], x):
                    return r
            r += 1
            if r > 10**6:
                raise MalformedElement(f"cannot rank {x!r}")

    def elements(self):
        orders = [f.order() for f in self.factors]
        m = 0
        while True:
            # tuples whose maximal per-factor rank is exactly m
            limits = [min(m + 1, o) if o is not None else m + 1 for o in orders]
            produced = False
            for ranks in itertools.product(*(range(l) for l in limits)):
                if max(ranks) != m:
                    continue
                produced = True
                yield tuple(self._factor_elem(i, r) for i, r in enumerate(ranks))
            if not produced and all(o is not None for o in orders):
                return
            m += 1

    def sort_key(self, a):
        ranks = tuple(self._rank_of(i, x) for i, x in enumerate(a))
        return (max(ranks), ranks)


class IntegerPairs(_TupleGroup):
    kind = "int_pair"

    def __init__(self):
        super().__init__([Integers(), Integers()])

    def descriptor(self):
        return {"kind": "int_pair"}


class BlockGroup(_TupleGroup):
    """k-fold direct power of a base group; letters are k-blocks."""

    kind = "block_group"

    def __init__(self, base: GroupAlphabet, length: int):
        if length < 1:
            raise ValidationError("block length must be >= 1")
        self.base = base
        self.length = length
        super().__init__([base] * length)

    def descriptor(self):
        return {"kind": "block_group", "base": self.base.descriptor(), "len": self.length}


class DirectProduct(_TupleGroup):
    kind = "product"

    def descriptor(self):
        return {"kind": "product", "factors": [f.descriptor() for f in self.factors]}


class FiniteGroupFromTable(GroupAlphabet):
    """Finite group given by an explicit multiplication table."""

    kind = "finite_table"

    def __init__(self, elems: list, table: dict):
        self._elems = list(elems)
        self._table = dict(table)
        self._identity = None
        for e in self._elems:
            if all(self._table[(e, x)] == x and self._table[(x, e)] == x for x in self._elems):
                self._identity = e
                break
        if self._identity is None:
            raise ValidationError("multiplication table has no identity")
        self._inv = {}
        for a in self._elems:
            for b in self._elems:
                if self._table[(a, b)] == self._identity and self._table[(b, a)] == self._identity:
                    self._inv[a] = b
                    break
            else:
                raise ValidationError(f"no inverse for {a!r}")

    @property
    def identity(self):
        return self._identity

    def mul(self, a, b):
        return self._table[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def validate(self, a):
        if a not in self._elems:
            raise MalformedElement(f"{a!r} is not in this finite group")

    def elements(self):
        return iter(self._elems)

    def order(self):
        return len(self._elems)

    def sort_key(self, a):
        return self._elems.index(a)

    def element_orders(self):
        out = []
        for a in self._elems:
            x, n = a, 1
            while x != self._identity:
                x = self.mul(x, a)
                n += 1
            out.append(n)
        return sorted(out)

    def descriptor(self):
        return {
            "kind": "finite_table",
            "elements": [_value_to_json(a) for a in self._elems],
            "table": [
                [_value_to_json(a), _value_to_json(b), _value_to_json(c)]
                for (a, b), c in sorted(
                    self._table.items(), key=lambda kv: (self.sort_key(kv[0][0]), self.sort_key(kv[0][1]))
                )
            ],
        }


class UnionOfFiniteGroups:
    """Disjoint union of finite cyclic groups G_0, G_1, ... where the
    product of elements from different components is the one with the
    larger index.  A Clifford inverse semigroup, not a group.

    ``orders_cycle`` gives component orders cyclically; ``count`` caps
    the number of components (None means infinitely many).
    """

    kind = "union_finite_groups"
    is_group = False

    def __init__(self, orders_cycle, count=None):
        if not orders_cycle or any(n < 1 for n in orders_cycle):
            raise ValidationError("component orders must be positive")
        self.orders_cycle = list(orders_cycle)
        self.count = count

    def component_order(self, i):
        return self.orders_cycle[i % len(self.orders_cycle)]

    @property
    def identity(self):
        return (0, 0)

    def mul(self, a, b):
        (i, g), (j, h) = a, b
        if i == j:
            return (i, (g + h) % self.component_order(i))
        return b if j > i else a

    def inv(self, a):
        i, g = a
        return (i, (-g) % self.component_order(i))

    def eq(self, a, b):
        return a == b

    def validate(self, a):
        ok = (
            isinstance(a, tuple)
            and len(a) == 2
            and all(isinstance(x, int) for x in a)
            and a[0] >= 0
            and (self.count is None or a[0] < self.count)
            and 0 <= a[1] < self.component_order(a[0])
        )
        if not ok:
            raise MalformedElement(f"{a!r} is not in the union alphabet")

    def elements(self):
        i = 0
        pending = []  # (component, next value)
        while self.count is None or i < self.count or pending:
            if self.count is None or i < self.count:
                pending.append([i, 0])
                i += 1
            for slot in list(pending):
                ci, v = slot
                yield (ci, v)
                slot[1] += 1
                if slot[1] >= self.component_order(ci):
                    pending.remove(slot)

    def order(self):
        if self.count is None:
            return None
        return sum(self.component_order(i) for i in range(self.count))

    def first(self, n):
        return list(itertools.islice(self.elements(), n))

    def sort_key(self, a):
        i, g = a
        return (max(i, g), i, g)

    def encode(self, a):
        return json.dumps(list(a), separators=(",", ":"))

    def to_json(self, a):
        return list(a)

    def from_json(self, v):
        a = tuple(v)
        self.validate(a)
        return a

    def is_finite(self):
        return self.count is not None

    def fiber(self, a, bound=DEFAULT_BOUND):
        """All pairs (b, c) with b*c == a.  Always finite: within-component
        pairs plus pairs where the partner lives in a lower component."""
        i, g = a
        n = self.component_order(i)
        out = [((i, (g - h) % n), (i, h)) for h in range(n)]
        for j in range(i):
            m = self.component_order(j)
            for h in range(m):
                out.append((a, (j, h)))
                out.append(((j, h), a))
        return out

    def fiber_is_finite(self, a):
        return True

    def descriptor(self):
        d = {"kind": "union_finite_groups", "orders_cycle": self.orders_cycle}
        if self.count is not None:
            d["count"] = self.count
        return d


@dataclass
class SubgroupHandle:
    """A subgroup of ``parent`` given by a membership test, optionally
    with an explicit finite element list and a canonical coset
    representative map x -> canonical element of x*N."""

    parent: GroupAlphabet
    name: str
    contains: Callable
    elements: Optional[list] = None
    canonical_rep: Optional[Callable] = None
    index: Optional[int] = None  # index in parent when known
    descriptor_json: Optional[dict] = None

    def is_finite(self) -> bool:
        return self.elements is not None

    def order(self) -> Optional[int]:
        return None if self.elements is None else len(self.elements)

    def sample(self, bound: int = DEFAULT_BOUND) -> list:
        if self.elements is not None:
            return list(self.elements)
        return [x for x in self.parent.first(bound) if self.contains(x)]

    def canon(self, x):
        """Canonical representative of the coset x*N."""
        if self.canonical_rep is not None:
            return self.canonical_rep(x)
        if self.elements is not None:
            G = self.parent
            return min((G.mul(x, n) for n in self.elements), key=G.sort_key)
        raise NoCanonicalRep(f"subgroup {self.name} has no canonical representative map")

    def as_group(self) -> FiniteGroupFromTable:
        if self.elements is None:
            raise ValidationError(f"subgroup {self.name} is not finite")
        G = self.parent
        table = {(a, b): G.mul(a, b) for a in self.elements for b in self.elements}
        for v in table.values():
            if not self.contains(v):
                raise ValidationError(f"subgroup {self.name} element list is not closed")
        return FiniteGroupFromTable(self.elements, table)

    def descriptor(self) -> dict:
        if self.descriptor_json is not None:
            return self.descriptor_json
        if self.elements is not None:
            return {
                "kind": "finite_list",
                "elems": [_value_to_json(a) for a in self.elements],
            }
        return {"kind": "builtin", "name": self.name}


def trivial_subgroup(parent) -> SubgroupHandle:
    e = parent.identity
    return SubgroupHandle(
        parent,
        "trivial",
        contains=lambda x, _e=e, _p=parent: _p.eq(x, _e),
        elements=[e],
        canonical_rep=lambda x: x,
        index=None,
        descriptor_json={"kind": "builtin", "name": "trivial"},
    )


def full_subgroup(parent) -> SubgroupHandle:
    o = parent.order()
    return SubgroupHandle(
        parent,
        "full",
        contains=lambda x: True,
        elements=parent.first(o) if o is not None else None,
        canonical_rep=lambda x, _e=parent.identity: _e,
        index=1,
        descriptor_json={"kind": "builtin", "name": "full"},
    )


def evens_subgroup(parent) -> SubgroupHandle:
    if not isinstance(parent, Integers):
        raise ValidationError("'evens' is a subgroup of the integer alphabet")
    return SubgroupHandle(
        parent,
        "evens",
        contains=lambda x: x % 2 == 0,
        elements=None,
        canonical_rep=lambda x: x % 2,
        index=2,
        descriptor_json={"kind": "builtin", "name": "evens"},
    )


def prufer2_h1_subgroup(parent) -> SubgroupHandle:
    if not isinstance(parent, Prufer2):
        raise ValidationError("'prufer2_H1' is a subgroup of the Prufer-2 alphabet")
    elems = [(0, 1), (1, 1)]

    def canon(x, _p=parent):
        other = _p.mul(x, (1, 1))
        return min(x, other, key=_p.sort_key)

    return SubgroupHandle(
        parent,
        "prufer2_H1",
        contains=lambda x: x in ((0, 1), (1, 1)),
        elements=elems,
        canonical_rep=canon,
        descriptor_json={"kind": "builtin", "name": "prufer2_H1"},
    )


def generated_subgroup(parent, gens, bound: int = 4096) -> SubgroupHandle:
    """Closure of ``gens`` under products and inverses; must be finite
    within ``bound`` elements."""
    G = parent
    seen = {G.encode(G.identity): G.identity}
    frontier = [G.identity]
    gens = list(gens) + [G.inv(g) for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.mul(x, g)
            k = G.encode(y)
            if k not in seen:
                if len(seen) >= bound:
                    raise ValidationError("generated subgroup exceeded the closure bound")
                seen[k] = y
                frontier.append(y)
    elems = sorted(seen.values(), key=G.sort_key)
    elem_set = set(G.encode(a) for a in elems)
    return SubgroupHandle(
        parent,
        "generated",
        contains=lambda x, _s=elem_set, _G=G: _G.encode(x) in _s,
        elements=elems,
        descriptor_json={"kind": "generated", "gens": [_value_to_json(g) for g in gens]},
    )


def finite_list_subgroup(parent, elems) -> SubgroupHandle:
    G = parent
    elems = sorted((_value_from_json(_value_to_json(a)) for a in elems), key=G.sort_key)
    for a in elems:
        G.validate(a)
    enc = set(G.encode(a) for a in elems)
    if G.encode(G.identity) not in enc:
        raise ValidationError("subgroup element list must contain the identity")
    for a in elems:
        if G.encode(G.inv(a)) not in enc:
            raise ValidationError("subgroup element list is not inverse-closed")
        for b in elems:
            if G.encode(G.mul(a, b)) not in enc:
                raise ValidationError("subgroup element list is not product-closed")
    return SubgroupHandle(
        parent,
        "finite_list",
        contains=lambda x, _s=enc, _G=G: _G.encode(x) in _s,
        elements=elems,
        descriptor_json={"kind": "finite_list", "elems": [_value_to_json(a) for a in elems]},
    )


def subgroup_from_descriptor(parent, desc: dict) -> SubgroupHandle:
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ParseError("subgroup descriptor must be an object with a 'kind'", "/subgroup")
    kind = desc["kind"]
    if kind == "finite_list":
        return finite_list_subgroup(parent, [_value_from_json(v) for v in desc["elems"]])
    if kind == "generated":
        return generated_subgroup(parent, [_value_from_json(v) for v in desc["gens"]])
    if kind == "builtin":
        name = desc.get("name")
        if name == "evens":
            return evens_subgroup(parent)
        if name == "prufer2_H1":
            return prufer2_h1_subgroup(parent)
        if name == "trivial":
            return trivial_subgroup(parent)
        if name == "full":
            return full_subgroup(parent)
        raise ValidationError(f"unknown builtin subgroup {name!r}", "/subgroup/name")
    raise ValidationError(f"unknown subgroup kind {kind!r}", "/subgroup/kind")


def is_normal(parent, sub: SubgroupHandle, bound: int = DEFAULT_BOUND) -> bool:
    G = parent
    for g in G.first(bound):
        gi = G.inv(g)
        for n in sub.sample(bound):
            if not sub.contains(G.mul(G.mul(g, n), gi)):
                return False
    return True


@dataclass
class Coset:
    """The coset rep * N, stored by a canonical representative when the
    subgroup provides one."""

    subgroup: SubgroupHandle
    rep: object

    def __post_init__(self):
        try:
            self.rep = self.subgroup.canon(self.rep)
        except NoCanonicalRep:
            pass

    @property
    def parent(self):
        return self.subgroup.parent

    def contains(self, x) -> bool:
        G = self.parent
        return self.subgroup.contains(G.mul(G.inv(self.rep), x))

    def same_subgroup(self, other: "Coset") -> bool:
        return self.subgroup is other.subgroup or (
            self.subgroup.parent is other.subgroup.parent
            and self.subgroup.descriptor() == other.subgroup.descriptor()
        )

    def __eq__(self, other):
        if not isinstance(other, Coset):
            return NotImplemented
        if not self.same_subgroup(other):
            raise MismatchedSubgroup("cosets over different subgroups are not comparable")
        return self.contains(other.rep)

    def __hash__(self):
        raise TypeError("cosets are not hashable; use coset equality or canonical reps")

    def mul(self, other: "Coset", normal_checked: bool = True) -> "Coset":
        if not self.same_subgroup(other):
            raise MismatchedSubgroup("coset product needs a common subgroup")
        G = self.parent
        return Coset(self.subgroup, G.mul(self.rep, other.rep))

    def inv(self) -> "Coset":
        return Coset(self.subgroup, self.parent.inv(self.rep))

    def sample(self, bound: int = DEFAULT_BOUND) -> list:
        G = self.parent
        return [G.mul(self.rep, n) for n in self.subgroup.sample(bound)]

    def is_identity(self) -> bool:
        return self.subgroup.contains(self.rep)


class QuotientGroup(GroupAlphabet):
    """G / N with elements stored as canonical coset representatives.

    Requires N normal (checked up to a bound at construction) and a
    canonical representative map.
    """

    kind = "quotient"

    def __init__(self, base: GroupAlphabet, sub: SubgroupHandle, check_bound: int = 16):
        if check_bound and not is_normal(base, sub, check_bound):
            raise NotNormal(f"subgroup {sub.name} failed the bounded normality check")
        self.base = base
        self.sub = sub
        # fail fast if no canonical representative is available
        sub.canon(base.identity)

    @property
    def identity(self):
        return self.sub.canon(self.base.identity)

    def canon(self, x):
        return self.sub.canon(x)

    def mul(self, a, b):
        return self.canon(self.base.mul(a, b))

    def inv(self, a):
        return self.canon(self.base.inv(a))

    def eq(self, a, b):
        return self.sub.contains(self.base.mul(self.base.inv(a), b))

    def validate(self, a):
        self.base.validate(a)
        if not self.base.eq(self.canon(a), a):
            raise MalformedElement(f"{a!r} is not a canonical coset representative")

    def elements(self):
        seen = set()
        for x in self.base.elements():
            c = self.canon(x)
            k = self.base.encode(c)
            if k not in seen:
                seen.add(k)
                yield c

    def order(self):
        o = self.base.order()
        so = self.sub.order()
        if o is not None and so is not None:
            return o // so
        if self.sub.index is not None:
            return self.sub.index
        return None

    def sort_key(self, a):
        return self.base.sort_key(a)

    def to_json(self, a):
        return self.base.to_json(a)

    def from_json(self, v):
        a = self.base.from_json(v)
        return self.canon(a)

    def section(self):
        """The canonical section G/N -> G.  Sends the identity coset to
        the identity because the identity is enumeration-minimal."""
        return lambda a: a

    def descriptor(self):
        return {
            "kind": "quotient",
            "base": self.base.descriptor(),
            "subgroup": self.sub.descriptor(),
        }


def quotient_group(base, sub, check_bound: int = 16) -> QuotientGroup:
    return QuotientGroup(base, sub, check_bound)


def section_of(q: QuotientGroup):
    return q.section()


class CosetHom:
    """A letter map a -> rep_fn(a) * N, i.e. a homomorphism from the
    alphabet into G/N presented by representatives."""

    def __init__(self, group, subgroup: SubgroupHandle, rep_fn, name,
                 kernel_elements=None, kernel_finite=None):
        self.group = group
        self.subgroup = subgroup
        self.rep_fn = rep_fn
        self.name = name
        self.kernel_elements = kernel_elements
        self.kernel_finite = kernel_finite

    def __call__(self, a) -> Coset:
        return Coset(self.subgroup, self.rep_fn(a))

    def rep(self, a):
        return self.rep_fn(a)

    def in_kernel(self, a) -> bool:
        return self.subgroup.contains(self.rep_fn(a))

    def check_hom(self, bound: int = DEFAULT_BOUND):
        """Verify rep_fn(a*b)*N == rep_fn(a)*rep_fn(b)*N on the first
        ``bound`` letters; returns the first violating pair or None."""
        G = self.group
        N = self.subgroup
        letters = G.first(bound)
        for a in letters:
            for b in letters:
                lhs = self.rep_fn(G.mul(a, b))
                rhs = G.mul(self.rep_fn(a), self.rep_fn(b))
                if not N.contains(G.mul(G.inv(lhs), rhs)):
                    return (a, b)
        return None

    def descriptor(self) -> dict:
        if self.name == "finite_table":
            letters = self.group.first(self.group.order() or 0)
            return {
                "rule": "finite_table",
                "table": [
                    [_value_to_json(a), _value_to_json(self.rep_fn(a))] for a in letters
                ],
            }
        return {"rule": self.name}


def hom_from_descriptor(group, subgroup: SubgroupHandle, desc: dict) -> CosetHom:
    if not isinstance(desc, dict) or "rule" not in desc:
        raise ParseError("hom descriptor must be an object with a 'rule'", "/hom")
    rule = desc["rule"]
    if rule == "canonical_projection":
        return CosetHom(
            group,
            subgroup,
            rep_fn=lambda a: a,
            name="canonical_projection",
            kernel_elements=subgroup.elements,
            kernel_finite=subgroup.is_finite(),
        )
    if rule == "prufer_half_then_coset":
        if not isinstance(group, Prufer2):
            raise ValidationError("prufer_half_then_coset needs the Prufer-2 alphabet", "/hom/rule")
        # rep_fn(a) lands in H = {(0,1),(1,1)} only at a = identity: any
        # other letter has level >= 2 after going one level up.
        return CosetHom(
            group,
            subgroup,
            rep_fn=group.half,
            name="prufer_half_then_coset",
            kernel_elements=[group.identity],
            kernel_finite=True,
        )
    if rule == "finite_table":
        table = {}
        for row in desc["table"]:
            a = _value_from_json(row[0])
            group.validate(a)
            table[group.encode(a)] = _value_from_json(row[1])
        return CosetHom(
            group,
            subgroup,
            rep_fn=lambda a, _t=table, _g=group: _t[_g.encode(a)],
            name="finite_table",
            kernel_finite=None,
        )
    raise ValidationError(f"unknown hom rule {rule!r}", "/hom/rule")


def alphabet_from_descriptor(desc: dict):
    if not isinstance(desc, dict) or "kind" not in desc:
        raise ParseError("alphabet descriptor must be an object with a 'kind'", "/alphabet")
    kind = desc["kind"]
    if kind == "finite_cyclic":
        return FiniteCyclic(int(desc["n"]))
    if kind == "symmetric3":
        return Symmetric3()
    if kind == "int":
        return Integers()
    if kind == "int_pair":
        return IntegerPairs()
    if kind == "prufer2":
        return Prufer2()
    if kind == "block_group":
        return BlockGroup(alphabet_from_descriptor(desc["base"]), int(desc["len"]))
    if kind == "product":
        return DirectProduct([alphabet_from_descriptor(d) for d in desc["factors"]])
    if kind == "quotient":
        base = alphabet_from_descriptor(desc["base"])
        sub = subgroup_from_descriptor(base, desc["subgroup"])
        return QuotientGroup(base, sub)
    if kind == "finite_table":
        elems = [_value_from_json(v) for v in desc["elements"]]
        table = {}
        for a, b, c in (tuple(map(_value_from_json, row)) for row in desc["table"]):
            table[(a, b)] = c
        return FiniteGroupFromTable(elems, table)
    if kind == "union_finite_groups":
        return UnionOfFiniteGroups(desc["orders_cycle"], desc.get("count"))
    raise ValidationError(f"unknown alphabet kind {kind!r}", "/alphabet/kind")
