"""Embedding a finite inverse monoid with zero into a one-sided full
shift.

The monoid must have a linearly ordered idempotent chain and a shift
endomap T stepping the chain down.  Each element is then spelled out
letter by letter: the i-th letter of the image is e1 * T^i(s), a member
of the group e1 * (S without zero).  The image of the zero is the empty
sequence, and the length of the image recovers the position of s in the
chain of maximal subgroups.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

from .errors import HypothesisViolated, ValidationError
from .groups import FiniteGroupFromTable
from .sequences import Axis, EmptySequence, FiniteOneSided, Sequence, zip_entrywise


@dataclass
class AbstractInverseMonoid:
    """A finite monoid with zero, given by an explicit table, plus an
    endomap ``t_map`` playing the role of the one-step shift."""

    elems: list
    table: Dict[tuple, object]
    zero: object
    t_map: Dict[object, object]
    name: str = "monoid"

    def __post_init__(self):
        self._stars = None
        self._identity = None

    def mul(self, a, b):
        return self.table[(a, b)]

    def T(self, a):
        return self.t_map[a]

    def identity(self):
        if self._identity is None:
            for e in self.elems:
                if all(self.mul(e, s) == s and self.mul(s, e) == s for s in self.elems):
                    self._identity = e
                    break
            else:
                raise ValidationError(f"{self.name} has no identity element")
        return self._identity

    def idempotents(self) -> list:
        return [e for e in self.elems if self.mul(e, e) == e]

    def star(self, a):
        if self._stars is None:
            self._stars = {}
            for s in self.elems:
                cands = [
                    x for x in self.elems
                    if self.mul(self.mul(s, x), s) == s and self.mul(self.mul(x, s), x) == x
                ]
                if len(cands) != 1:
                    raise ValidationError(
                        f"{self.name}: element {s!r} has {len(cands)} inverses; not an inverse monoid"
                    )
                self._stars[s] = cands[0]
        return self._stars[a]

    def check_inverse_monoid(self) -> dict:
        """Exhaustive: associativity, identity, unique inverses, and
        commuting idempotents."""
        for a in self.elems:
            for b in self.elems:
                for c in self.elems:
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        return {"ok": False, "failure": "associativity", "witness": [a, b, c]}
        self.identity()
        try:
            for s in self.elems:
                self.star(s)
        except ValidationError as exc:
            return {"ok": False, "failure": "unique_inverses", "witness": str(exc)}
        E = self.idempotents()
        for e in E:
            for f in E:
                if self.mul(e, f) != self.mul(f, e):
                    return {"ok": False, "failure": "commuting_idempotents", "witness": [e, f]}
        return {"ok": True, "size": len(self.elems), "idempotents": len(E)}

    def to_json(self) -> dict:
        return {
            "kind": "abstract_inverse_monoid",
            "name": self.name,
            "elems": [list(e) for e in self.elems],
            "zero": list(self.zero),
            "table": [[list(a), list(b), list(self.table[(a, b)])]
                      for a in self.elems for b in self.elems],
            "t_map": [[list(a), list(self.t_map[a])] for a in self.elems],
        }


def monoid_from_spec(desc: dict) -> AbstractInverseMonoid:
    kind = desc.get("kind")
    if kind == "truncated_words":
        return truncated_word_monoid(int(desc["q"]), int(desc.get("max_len", 3)))
    if kind == "diamond_semilattice":
        return diamond_semilattice(bool(desc.get("meet_is_zero", True)))
    if kind == "abstract_inverse_monoid":
        return monoid_from_descriptor(desc)
    raise ValidationError(f"unknown monoid kind {kind!r}", "/monoid/kind")


def monoid_from_descriptor(desc: dict) -> AbstractInverseMonoid:
    elems = [tuple(e) for e in desc["elems"]]
    table = {(tuple(a), tuple(b)): tuple(c) for a, b, c in desc["table"]}
    t_map = {tuple(a): tuple(b) for a, b in desc["t_map"]}
    return AbstractInverseMonoid(elems, table, tuple(desc["zero"]), t_map,
                                 name=desc.get("name", "monoid"))


def truncated_word_monoid(q: int, max_len: int = 3) -> AbstractInverseMonoid:
    """Words of length 0..max_len over the integers mod q.  The product
    truncates both factors to the shorter length and adds entrywise;
    the empty word is the zero and dropping the first letter is T."""
    import itertools

    elems = [
        w
        for L in range(max_len + 1)
        for w in itertools.product(range(q), repeat=L)
    ]
    table = {}
    for a in elems:
        for b in elems:
            L = min(len(a), len(b))
            table[(a, b)] = tuple((a[i] + b[i]) % q for i in range(L))
    t_map = {a: a[1:] for a in elems}
    return AbstractInverseMonoid(elems, table, (), t_map, name=f"truncated_words_mod{q}")


def diamond_semilattice(meet_is_zero: bool) -> AbstractInverseMonoid:
    """Idempotent monoid 0 < {e, f} < 1 with e and f incomparable.
    With ``meet_is_zero`` their product is the zero (zero divisors);
    otherwise a fifth element g > 0 sits below both."""
    if meet_is_zero:
        elems = [("0",), ("e",), ("f",), ("1",)]
        meet_ef = ("0",)
    else:
        elems = [("0",), ("g",), ("e",), ("f",), ("1",)]
        meet_ef = ("g",)
    rank = {x: i for i, x in enumerate(elems)}

    def meet(a, b):
        if a == b:
            return a
        if {a, b} == {("e",), ("f",)}:
            return meet_ef
        return a if rank[a] < rank[b] else b

    table = {(a, b): meet(a, b) for a in elems for b in elems}
    t_map = {a: a for a in elems}
    return AbstractInverseMonoid(elems, table, ("0",), t_map, name="diamond_semilattice")


def verify_chain_hypotheses(s: AbstractInverseMonoid) -> dict:
    """Check, exhaustively, the five conditions under which the monoid
    embeds into a one-sided full shift:

    1. no zero divisors; 2. the idempotents form a chain below the
    identity; 3. T is a homomorphism stepping the chain down (a finite
    chain with non-surjective T is accepted); 4. the smallest nonzero
    idempotent is central; 5. if T(x) is idempotent and e1*x = e1 then
    x is idempotent.
    """
    report = {"monoid": s.name, "size": len(s.elems), "hypotheses": {}}
    base = s.check_inverse_monoid()
    report["inverse_monoid"] = base
    if not base["ok"]:
        return {**report, "ok": False}
    h = report["hypotheses"]

    witness = next(
        ((a, b) for a in s.elems for b in s.elems
         if a != s.zero and b != s.zero and s.mul(a, b) == s.zero),
        None,
    )
    h["1_no_zero_divisors"] = {"ok": witness is None, "witness": witness}

    E = s.idempotents()
    chain = None
    incomparable = next(
        ((e, f) for i, e in enumerate(E) for f in E[i + 1:]
         if s.mul(e, f) != e and s.mul(e, f) != f),
        None,
    )
    if incomparable is None:
        # sort by the order e <= f iff e*f = e; count how many each dominates
        chain = sorted(E, key=lambda e: sum(1 for f in E if s.mul(e, f) == f))
        ok2 = chain[0] == s.zero and chain[-1] == s.identity()
    else:
        ok2 = False
    h["2_idempotent_chain"] = {
        "ok": ok2,
        "witness": incomparable,
        "chain": chain if ok2 else None,
    }

    hom_witness = next(
        ((a, b) for a in s.elems for b in s.elems
         if s.T(s.mul(a, b)) != s.mul(s.T(a), s.T(b))),
        None,
    )
    surjective = set(s.t_map.values()) == set(s.elems)
    steps_ok = None
    if ok2:
        steps_ok = all(s.T(chain[i]) == chain[i - 1] for i in range(1, len(chain)))
    h["3_shift_endomap"] = {
        "ok": hom_witness is None and (steps_ok is not False),
        "hom_witness": hom_witness,
        "steps_chain": steps_ok,
        "surjective": surjective,
        "finite_chain_accepted": bool(ok2) and not surjective,
    }

    if ok2 and len(chain) > 1:
        e1 = chain[1]
        central = next((x for x in s.elems if s.mul(e1, x) != s.mul(x, e1)), None)
        h["4_e1_central"] = {"ok": central is None, "witness": central}
        bad5 = next(
            (x for x in s.elems
             if s.mul(s.T(x), s.T(x)) == s.T(x) and s.mul(e1, x) == e1
             and s.mul(x, x) != x),
            None,
        )
        h["5_idempotent_detection"] = {"ok": bad5 is None, "witness": bad5}
    else:
        h["4_e1_central"] = {"ok": None, "witness": None}
        h["5_idempotent_detection"] = {"ok": None, "witness": None}

    report["ok"] = all(v["ok"] for v in h.values())
    return report


def _require(report: dict):
    if report.get("ok"):
        return
    for key, val in report.get("hypotheses", {}).items():
        if val["ok"] is False:
            raise HypothesisViolated(
                f"hypothesis {key} fails", index=int(key[0]), witness=val.get("witness")
            )
    raise HypothesisViolated("the monoid is not an inverse monoid with zero",
                             witness=report.get("inverse_monoid"))


def chain_group(s: AbstractInverseMonoid,
                report: Optional[dict] = None) -> FiniteGroupFromTable:
    """The group e1 * (S without zero): the maximal subgroup at the
    smallest nonzero idempotent."""
    report = report or verify_chain_hypotheses(s)
    _require(report)
    chain = report["hypotheses"]["2_idempotent_chain"]["chain"]
    if len(chain) < 2:
        raise HypothesisViolated("the idempotent chain has no nonzero member", index=2)
    e1 = chain[1]
    members = []
    seen = set()
    for x in s.elems:
        if x == s.zero:
            continue
        y = s.mul(e1, x)
        if y not in seen:
            seen.add(y)
            members.append(y)
    table = {(a, b): s.mul(a, b) for a in members for b in members}
    return FiniteGroupFromTable(members, table)


def embed_theta(s: AbstractInverseMonoid, x,
                report: Optional[dict] = None,
                group: Optional[FiniteGroupFromTable] = None) -> Sequence:
    """Spell out x as the one-sided sequence (e1*x, e1*Tx, e1*T^2 x, ...),
    stopping when T drives x to the zero."""
    report = report or verify_chain_hypotheses(s)
    _require(report)
    group = group or chain_group(s, report)
    chain = report["hypotheses"]["2_idempotent_chain"]["chain"]
    e1 = chain[1]
    if x == s.zero:
        return EmptySequence(Axis.ONE_SIDED, group)
    word = []
    cur = x
    limit = len(s.elems) + 1
    for _ in range(limit):
        if cur == s.zero:
            return FiniteOneSided(group, word)
        word.append(s.mul(e1, cur))
        cur = s.T(cur)
    raise ValidationError("T did not reach the zero within the element count")


def verify_embedding(s: AbstractInverseMonoid) -> dict:
    """Exhaustive checks over all elements: the spelled-out map is
    injective and multiplicative, intertwines the shift with T, and the
    Green classes L(t) = R(t) consist exactly of the elements whose
    images share t's length."""
    report = verify_chain_hypotheses(s)
    _require(report)
    group = chain_group(s, report)
    images = {x: embed_theta(s, x, report, group) for x in s.elems}

    for i, a in enumerate(s.elems):
        for b in s.elems[i + 1:]:
            if images[a] == images[b]:
                return {"ok": False, "failure": "injective", "witness": [a, b]}

    for a in s.elems:
        for b in s.elems:
            lhs = images[s.mul(a, b)]
            rhs = zip_entrywise(images[a], images[b], group.mul, group)
            if lhs != rhs:
                return {"ok": False, "failure": "multiplicative", "witness": [a, b]}

    for a in s.elems:
        if images[s.T(a)] != images[a].shifted():
            return {"ok": False, "failure": "shift_intertwines", "witness": [a]}

    for t in s.elems:
        n = images[t].length()
        by_length = {x for x in s.elems if images[x].length() == n}
        tst = s.mul(s.star(t), t)
        tts = s.mul(t, s.star(t))
        lclass = {x for x in s.elems if s.mul(s.star(x), x) == tst}
        rclass = {x for x in s.elems if s.mul(x, s.star(x)) == tts}
        if not (lclass == rclass == by_length):
            return {"ok": False, "failure": "green_classes", "witness": [t]}

    return {
        "ok": True,
        "elements": len(s.elems),
        "group_order": group.order(),
        "hypotheses": report,
    }
