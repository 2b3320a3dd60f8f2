"""Decomposition of a two-sided coset-transition shift into a fractal
factor and full shifts over finite groups.

Two moves alternate.  The splitting move quotients the alphabet by the
intersection of the transition subgroup with the kernel of the
transition hom, peeling off a full shift over that intersection.  The
recoding move replaces each letter by its follower set; it is invertible
with one step of memory exactly when that intersection is trivial.
Iterating drives the head presentation toward a fractal one: a shift
whose stage intersections are all trivial, detected here by a repeating
structural fingerprint of the stage presentations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .codes import SlidingBlockCode, compose_chain, one_block
from .errors import (
    DepthExhausted,
    HNotTrivial,
    NonUniquePreimage,
    ValidationError,
)
from .groups import (
    CosetHom,
    FiniteGroupFromTable,
    QuotientGroup,
    SubgroupHandle,
)
from .sequences import EMPTY, Axis
from .shifts import FullShift, MarkovCoset, ProductShift, ShiftPresentation

DEFAULT_DEPTH = 8
DEFAULT_BOUND = 8


def compute_H(p: MarkovCoset) -> SubgroupHandle:
    """The intersection of the transition subgroup N with the kernel of
    the transition hom.  This is the obstruction to inverting the
    follower-set recoding."""
    N = p.subgroup
    hom = p.hom
    if hom.name == "canonical_projection":
        # the kernel of a -> a*N is N itself, so the intersection is N
        return N
    if N.elements is None:
        raise ValidationError(
            "computing the kernel intersection needs a finite transition subgroup"
        )
    elems = [x for x in N.elements if hom.in_kernel(x)]
    G = p.alphabet
    enc = set(G.encode(x) for x in elems)
    return SubgroupHandle(
        G,
        name="N_meet_ker",
        contains=lambda x, _s=enc, _G=G: _G.encode(x) in _s,
        elements=sorted(elems, key=G.sort_key),
        descriptor_json={"kind": "finite_list", "elems": [G.to_json(x) for x in elems]},
    )


def follower_set_shift(p: MarkovCoset, check_bound: int = 16) -> MarkovCoset:
    """The shift on follower sets: letters become cosets of N, i.e.
    elements of G/N; the new transition subgroup is the image of N and
    the new hom pushes the old one through the quotient."""
    if p.subgroup.elements is None:
        raise ValidationError("the follower-set recoding needs a finite transition subgroup")
    G = p.alphabet
    N = p.subgroup
    Gbar = QuotientGroup(G, N, check_bound=check_bound)
    elems = []
    seen = set()
    for x in N.elements:
        c = Gbar.canon(p.hom.rep(x))
        key = Gbar.encode(c)
        if key not in seen:
            seen.add(key)
            elems.append(c)
    elems.sort(key=Gbar.sort_key)
    Nbar = SubgroupHandle(
        Gbar,
        name="pushed_subgroup",
        contains=lambda x, _e=elems, _g=Gbar: any(_g.eq(x, m) for m in _e),
        elements=elems,
        descriptor_json={"kind": "finite_list", "elems": [Gbar.to_json(x) for x in elems]},
    )
    hom_bar = CosetHom(
        Gbar,
        Nbar,
        rep_fn=lambda xb, _g=Gbar, _h=p.hom: _g.canon(_h.rep(xb)),
        name="pushed_hom",
    )
    return MarkovCoset(Gbar, p.axis, Nbar, hom_bar)


def theta_code(p: MarkovCoset, check_bound: int = 16):
    """(recoded presentation, forward 1-block code, inverse 2-block
    code with one step of memory).  Requires the kernel intersection to
    be trivial; otherwise the letter-by-follower-set map is not
    injective on cosets and NonUniquePreimage would strike."""
    H = compute_H(p)
    if H.elements is None or len(H.elements) != 1:
        raise HNotTrivial(
            f"kernel intersection has {len(H.elements) if H.elements else 'infinitely many'} elements"
        )
    bar = follower_set_shift(p, check_bound)
    G = p.alphabet
    Gbar = bar.alphabet
    N = p.subgroup

    forward = one_block(lambda a: Gbar.canon(p.hom.rep(a)), Gbar, name="theta")

    def inv_rule(w):
        u, v = w
        if v is EMPTY:
            return EMPTY
        if u is EMPTY:
            raise NonUniquePreimage("no left context for the inverse recoding")
        cands = [
            c
            for c in (G.mul(u, nelt) for nelt in N.elements)
            if Gbar.eq(Gbar.canon(p.hom.rep(c)), v)
        ]
        if len(cands) != 1:
            raise NonUniquePreimage(f"{len(cands)} candidate letters at a recoding step")
        return cands[0]

    inverse = SlidingBlockCode(1, 0, inv_rule, G, name="theta_inv")
    return bar, forward, inverse


def hat_shift(p: MarkovCoset, H: SubgroupHandle, check_bound: int = 16) -> MarkovCoset:
    """The quotient presentation over G/H."""
    G = p.alphabet
    N = p.subgroup
    Ghat = QuotientGroup(G, H, check_bound=check_bound)
    if N.elements is not None:
        elems = []
        seen = set()
        for x in N.elements:
            c = Ghat.canon(x)
            key = Ghat.encode(c)
            if key not in seen:
                seen.add(key)
                elems.append(c)
        elems.sort(key=Ghat.sort_key)
    else:
        elems = None
    canonical = None
    if N.canonical_rep is not None:
        canonical = lambda x, _g=Ghat, _n=N: _g.canon(_n.canon(x))
    Nhat = SubgroupHandle(
        Ghat,
        name="subgroup_mod_H",
        contains=lambda x, _n=N: _n.contains(x),
        elements=elems,
        canonical_rep=canonical,
        index=N.index,
    )
    hom_hat = CosetHom(
        Ghat,
        Nhat,
        rep_fn=lambda xh, _g=Ghat, _h=p.hom: _g.canon(_h.rep(xh)),
        name="hom_mod_H",
    )
    return MarkovCoset(Ghat, p.axis, Nhat, hom_hat)


def phi_code(p: MarkovCoset, H: SubgroupHandle, check_bound: int = 16):
    """(quotient presentation, full shift over H, forward 1-block code,
    inverse 1-block code, diamond operation on pair letters).

    A letter a becomes the pair (its coset's canonical representative,
    the offset of a inside the coset)."""
    if H.elements is None:
        raise ValidationError("splitting requires a finite kernel intersection")
    G = p.alphabet
    hat = hat_shift(p, H, check_bound)
    Ghat = hat.alphabet
    Hgrp = H.as_group()
    full_h = FullShift(Hgrp, p.axis)
    target = ProductShift([hat, full_h])
    pair_alphabet = target.alphabet

    def split(a):
        c = Ghat.canon(a)  # the section of the coset a*H
        return (c, G.mul(G.inv(c), a))

    forward = one_block(split, pair_alphabet, name="phi")
    inverse = one_block(lambda t: G.mul(t[0], t[1]), G, name="phi_inv")

    def diamond(t1, t2):
        # (C1,h1) x (C2,h2) -> (C1 C2, section(C1 C2)^{-1} g1 g2)
        c12 = Ghat.mul(t1[0], t2[0])
        g1 = G.mul(t1[0], t1[1])
        g2 = G.mul(t2[0], t2[1])
        return (c12, G.mul(G.inv(c12), G.mul(g1, g2)))

    return hat, full_h, forward, inverse, diamond


def stage_fingerprint(p: MarkovCoset, bound: int = DEFAULT_BOUND) -> tuple:
    """Structural invariant of a stage presentation: alphabet order,
    the group type of the transition subgroup, and the local transition
    graph on the first ``bound`` letters in canonical order."""
    order = p.alphabet.order()
    sub_orders = tuple(p.subgroup.as_group().element_orders()) if p.subgroup.elements is not None else None
    letters = p.alphabet.first(bound)
    edges = tuple(
        sorted(
            (i, j)
            for i in range(len(letters))
            for j in range(len(letters))
            if p.window_allowed((letters[i], letters[j]))
        )
    )
    return (order, sub_orders, len(letters), edges)


@dataclass
class FractalReport:
    kind: str  # "fractal" | "non_fractal" | "depth_exhausted"
    self_similar_level: Optional[int] = None
    failed_stage: Optional[int] = None
    failed_size: Optional[int] = None
    h_sizes: list = field(default_factory=list)
    depth: int = DEFAULT_DEPTH
    bound: int = DEFAULT_BOUND

    def is_fractal(self) -> bool:
        return self.kind == "fractal"

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "self_similar_level": self.self_similar_level,
            "failed_stage": self.failed_stage,
            "failed_size": self.failed_size,
            "h_sizes": self.h_sizes,
            "depth": self.depth,
            "bound": self.bound,
        }


def is_fractal(p: MarkovCoset, depth: int = DEFAULT_DEPTH,
               bound: int = DEFAULT_BOUND) -> FractalReport:
    """Iterate the follower-set recoding, requiring a trivial kernel
    intersection at every stage.  A repeat of the stage fingerprint
    certifies that all later stages repeat too."""
    stage = p
    prev_fp = None
    h_sizes = []
    for n in range(depth + 1):
        H = compute_H(stage)
        size = len(H.elements) if H.elements is not None else None
        h_sizes.append(size)
        if size != 1:
            return FractalReport(
                kind="non_fractal", failed_stage=n, failed_size=size,
                h_sizes=h_sizes, depth=depth, bound=bound,
            )
        fp = stage_fingerprint(stage, bound)
        if prev_fp is not None and fp == prev_fp:
            return FractalReport(
                kind="fractal", self_similar_level=n,
                h_sizes=h_sizes, depth=depth, bound=bound,
            )
        prev_fp = fp
        stage = follower_set_shift(stage)
    return FractalReport(kind="depth_exhausted", h_sizes=h_sizes,
                         depth=depth, bound=bound)


# --- the full decomposition loop -------------------------------------------


def _peel_head(x, layers):
    for _ in range(layers):
        if x is EMPTY:
            return EMPTY
        x = x[0]
    return x


def _tails(x, layers):
    out = []
    for _ in range(layers):
        out.append(x[1])
        x = x[0]
    return out


def _wrap(head, tails):
    y = head
    for t in reversed(tails):
        y = (y, t)
    return y


def _lift(code: SlidingBlockCode, layers: int, out_alphabet) -> SlidingBlockCode:
    """Run a head-factor code through ``layers`` accumulated full-shift
    factors, which ride along unchanged."""
    if layers == 0:
        return code
    inner = code.rule
    K = code.memory

    def rule(w):
        heads = tuple(_peel_head(x, layers) for x in w)
        out_head = inner(heads)
        if out_head is EMPTY:
            return EMPTY
        center = w[K]
        return _wrap(out_head, _tails(center, layers))

    return SlidingBlockCode(code.memory, code.anticipation, rule, out_alphabet,
                            name=code.name)


@dataclass
class DecompositionResult:
    fractal: ShiftPresentation
    fractal_report: FractalReport
    h_groups: list
    codomain: ShiftPresentation
    forward: SlidingBlockCode
    inverse: SlidingBlockCode
    phi_steps: int
    theta_steps: int
    section_log: list
    trace: list

    def factor_orders(self):
        return [g.order() for g in self.h_groups]


def decompose(p: MarkovCoset, depth: int = DEFAULT_DEPTH,
              bound: int = DEFAULT_BOUND) -> DecompositionResult:
    """Split off full-shift factors and recode until the head
    presentation is fractal.  Raises DepthExhausted when ``depth``
    rounds do not reach one."""
    if p.axis is not Axis.TWO_SIDED:
        raise ValidationError("the decomposition is a two-sided construction")
    head = p
    codes = []
    inv_codes = []
    h_groups = []
    section_log = []
    trace = []
    phi_steps = theta_steps = 0

    for step in range(depth + 1):
        report = is_fractal(head, depth=depth, bound=bound)
        if report.is_fractal():
            break
        if report.kind == "depth_exhausted":
            raise DepthExhausted(
                "stage fingerprints did not repeat within the depth bound"
            )
        if step == depth:
            raise DepthExhausted("decomposition did not stabilize within the depth bound")
        layers = len(h_groups)
        H = compute_H(head)
        if H.elements is not None and len(H.elements) > 1:
            hat, full_h, fwd, inv, diamond = phi_code(head, H)
            hom_check = _check_phi_stage(head, hat, fwd, inv, diamond, bound)
            pair_alphabet = ProductShift([hat, full_h]).alphabet
            codes.append(_lift(fwd, layers, _nested_alphabet(pair_alphabet, h_groups)))
            inv_codes.append(_lift(inv, layers, _nested_alphabet(head.alphabet, h_groups)))
            section_log.append({
                "step": step,
                "factor_order": full_h.alphabet.order(),
                "section": [
                    [head.alphabet.to_json(a), head.alphabet.to_json(hat.alphabet.canon(a))]
                    for a in head.alphabet.first(bound)
                ],
            })
            trace.append({"step": step, "move": "split", "factor_order": full_h.alphabet.order(),
                          "checks": hom_check})
            h_groups.append(full_h.alphabet)
            head = hat
            phi_steps += 1
            layers = len(h_groups)
        bar, fwd, inv = theta_code(head)
        theta_check = _check_theta_stage(head, bar, fwd, inv, bound)
        codes.append(_lift(fwd, layers, _nested_alphabet(bar.alphabet, h_groups)))
        inv_codes.append(_lift(inv, layers, _nested_alphabet(head.alphabet, h_groups)))
        trace.append({"step": step, "move": "recode", "checks": theta_check})
        head = bar
        theta_steps += 1
    else:
        raise DepthExhausted("decomposition did not stabilize within the depth bound")

    codomain = head
    for hg in reversed(h_groups):
        codomain = ProductShift([codomain, FullShift(hg, p.axis)])
    forward = compose_chain(codes) if codes else one_block(lambda a: a, p.alphabet, "identity")
    inverse = (compose_chain(list(reversed(inv_codes)))
               if inv_codes else one_block(lambda a: a, p.alphabet, "identity"))
    return DecompositionResult(
        fractal=head,
        fractal_report=is_fractal(head, depth=depth, bound=bound),
        h_groups=h_groups,
        codomain=codomain,
        forward=forward,
        inverse=inverse,
        phi_steps=phi_steps,
        theta_steps=theta_steps,
        section_log=section_log,
        trace=trace,
    )


def _nested_alphabet(head_alphabet, h_groups):
    from .groups import DirectProduct

    out = head_alphabet
    for hg in reversed(h_groups):
        out = DirectProduct([out, hg])
    return out


def _check_phi_stage(head, hat, fwd, inv, diamond, bound) -> dict:
    """Letter-level checks that the split is a bijection and carries
    the group product to the pair product."""
    G = head.alphabet
    letters = G.first(bound)
    seen = set()
    for a in letters:
        pair = fwd.rule((a,))
        back = inv.rule((pair,))
        if not G.eq(back, a):
            return {"bijective": False, "witness": G.to_json(a)}
        seen.add(G.encode(back))
    hom_ok = True
    witness = None
    for a in letters[: max(4, bound // 2)]:
        for b in letters[: max(4, bound // 2)]:
            lhs = fwd.rule((G.mul(a, b),))
            rhs = diamond(fwd.rule((a,)), fwd.rule((b,)))
            if lhs != rhs:
                hom_ok = False
                witness = [G.to_json(a), G.to_json(b)]
                break
        if not hom_ok:
            break
    return {"bijective": len(seen) == len(letters), "product_preserved": hom_ok,
            "witness": witness, "letters_checked": len(letters)}


def _check_theta_stage(head, bar, fwd, inv, bound) -> dict:
    """The recoding letter map is a hom, and one step of memory inverts
    it along every visible transition."""
    G = head.alphabet
    Gbar = bar.alphabet
    letters = G.first(bound)
    hom_ok = True
    witness = None
    for a in letters[: max(4, bound // 2)]:
        for b in letters[: max(4, bound // 2)]:
            lhs = fwd.rule((G.mul(a, b),))
            rhs = Gbar.mul(fwd.rule((a,)), fwd.rule((b,)))
            if not Gbar.eq(lhs, rhs):
                hom_ok = False
                witness = [G.to_json(a), G.to_json(b)]
                break
        if not hom_ok:
            break
    inv_ok = True
    edges = 0
    for a in letters:
        for b in letters:
            if head.window_allowed((a, b)):
                edges += 1
                back = inv.rule((fwd.rule((a,)), fwd.rule((b,))))
                if not G.eq(back, b):
                    inv_ok = False
                    witness = [G.to_json(a), G.to_json(b)]
    return {"hom": hom_ok, "invertible_on_edges": inv_ok,
            "edges_checked": edges, "witness": witness}
