"""Sliding block codes: local rules applied over a window."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .sequences import EMPTY, Sequence, recode


@dataclass
class SlidingBlockCode:
    """A code with the given memory and anticipation.  The rule sees
    the window x[i-memory .. i+anticipation] (letters or ø) and returns
    the output letter at i, or ø."""

    memory: int
    anticipation: int
    rule: Callable
    out_alphabet: object
    name: str = ""

    def window_size(self) -> int:
        return self.memory + self.anticipation + 1

    def apply(self, x: Sequence) -> Sequence:
        return recode(x, self.memory, self.anticipation, self.rule, self.out_alphabet)

    def __call__(self, x: Sequence) -> Sequence:
        return self.apply(x)

    def then(self, nxt: "SlidingBlockCode") -> "SlidingBlockCode":
        """The composition nxt after self, as a single code."""
        m1, a1 = self.memory, self.anticipation
        m2, a2 = nxt.memory, nxt.anticipation
        inner_rule, outer_rule = self.rule, nxt.rule

        def rule(w):
            mid = tuple(
                inner_rule(w[j : j + m1 + a1 + 1])
                for j in range(0, m2 + a2 + 1)
            )
            return outer_rule(mid)

        return SlidingBlockCode(
            memory=m1 + m2,
            anticipation=a1 + a2,
            rule=rule,
            out_alphabet=nxt.out_alphabet,
            name=f"{nxt.name}∘{self.name}" if self.name or nxt.name else "",
        )


def one_block(letter_map, out_alphabet, name: str = "") -> SlidingBlockCode:
    """Zero-memory, zero-anticipation code from a letter map; ø maps
    to ø."""

    def rule(w):
        a = w[0]
        return EMPTY if a is EMPTY else letter_map(a)

    return SlidingBlockCode(0, 0, rule, out_alphabet, name)


def compose_chain(codes) -> Optional[SlidingBlockCode]:
    """Fold a list of codes applied left to right into one code."""
    out = None
    for c in codes:
        out = c if out is None else out.then(c)
    return out
