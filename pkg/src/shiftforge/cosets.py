"""Coset structure of follower and predecessor sets.

For a shift over a group alphabet that is closed under the entrywise
operation, the k-block followers of the identity n-word form a normal
subgroup of the k-blocks, every other follower set is a coset of it,
follower sets multiply like cosets, and sending a follower set to the
predecessor set of any of its members is a bijection between the two
families.  The checks here sample those laws at a stated bound and
also cross-check them against brute-force window enumeration.
"""

from __future__ import annotations

import random
from typing import Optional

from .errors import BlockNotInLanguage
from .groups import BlockGroup, SubgroupHandle
from .shifts import DEFAULT_BOUND, FollowerResult, ShiftPresentation


def _identity_word(p: ShiftPresentation, n: int):
    return (p.alphabet.identity,) * n


def _block_mul(p: ShiftPresentation, u, v):
    G = p.alphabet
    return tuple(G.mul(a, b) for a, b in zip(u, v))


def _block_inv(p: ShiftPresentation, u):
    G = p.alphabet
    return tuple(G.inv(a) for a in u)


def follower_subgroup(p: ShiftPresentation, n: int, k: int,
                      bound: int = DEFAULT_BOUND) -> SubgroupHandle:
    """F_k of the identity n-word, as a subgroup handle over the group
    of k-blocks.  Membership is exact; the element list is present
    exactly when the bounded enumeration is complete."""
    word = _identity_word(p, n)
    res = p.follower_set(word, k, bound)
    parent = BlockGroup(p.alphabet, k)

    def contains(b):
        return p.block_allowed(word + tuple(b))

    return SubgroupHandle(
        parent,
        name=f"followers_of_identity_{n}_{k}",
        contains=contains,
        elements=res.elements if res.complete else None,
        descriptor_json={"kind": "builtin", "name": f"F_{k}(1^{n})"},
    )


def predecessor_subgroup(p: ShiftPresentation, n: int, k: int,
                         bound: int = DEFAULT_BOUND) -> SubgroupHandle:
    """P_n of the identity k-word over the group of n-blocks."""
    word = _identity_word(p, k)
    res = p.predecessor_set(word, n, bound)
    parent = BlockGroup(p.alphabet, n)

    def contains(a):
        return p.block_allowed(tuple(a) + word)

    return SubgroupHandle(
        parent,
        name=f"predecessors_of_identity_{k}_{n}",
        contains=contains,
        elements=res.elements if res.complete else None,
        descriptor_json={"kind": "builtin", "name": f"P_{n}(1^{k})"},
    )


def coset_law_check(p: ShiftPresentation, n: int, k: int, rng: random.Random,
                    n_triples: int = 50, bound: int = 16) -> dict:
    """Sampled verification of the coset laws of follower sets.

    Per sampled triple: subgroup closure and normality of F_k(1^n),
    the two-sided coset identity b*F = F*b = F_k(a) for b in F_k(a),
    and multiplicativity F_k(a) * F_k(b) = F_k(a b).  Every membership
    test is exact; the sampling only limits which triples are tried."""
    word_n = _identity_word(p, n)
    sub = follower_subgroup(p, n, k, bound)
    base_blocks, _ = p.language(n, bound)
    kblocks, _ = p.language(k, bound)
    sub_elems = sub.sample(bound)
    if not base_blocks or not sub_elems:
        return {"ok": False, "triples_checked": 0, "failure": "no blocks at this bound"}

    def F_member(a_block, b_block):
        return p.block_allowed(tuple(a_block) + tuple(b_block))

    checked = 0
    violations = []
    while checked < n_triples:
        a = rng.choice(base_blocks)
        b = rng.choice(base_blocks)
        u = rng.choice(sub_elems)
        v = rng.choice(sub_elems)
        w = rng.choice(kblocks)
        checked += 1
        # subgroup closure and normality inside the k-blocks
        if not sub.contains(_block_mul(p, u, v)) or not sub.contains(_block_inv(p, u)):
            violations.append({"law": "subgroup", "witness": [list(u), list(v)]})
            break
        conj = _block_mul(p, _block_mul(p, w, u), _block_inv(p, w))
        if p.block_allowed(w) and not sub.contains(conj):
            violations.append({"law": "normality", "witness": [list(w), list(u)]})
            break
        # pick an element of F_k(a) by extending a
        fa = p.follower_set(a, k, min(bound, 8))
        fb = p.follower_set(b, k, min(bound, 8))
        if not fa.elements or not fb.elements:
            continue
        ba = rng.choice(fa.elements)
        bb = rng.choice(fb.elements)
        # b*F == F_k(a) == F*b
        left = _block_mul(p, ba, u)
        right = _block_mul(p, u, ba)
        if not F_member(a, left) or not F_member(a, right):
            violations.append({"law": "coset_translate", "witness": [list(a), list(ba), list(u)]})
            break
        # membership in F_k(a) is exactly membership in ba * F
        probe = rng.choice(kblocks)
        in_f_a = F_member(a, probe)
        in_coset = sub.contains(_block_mul(p, _block_inv(p, ba), probe))
        if in_f_a != in_coset:
            violations.append({"law": "coset_characterization",
                               "witness": [list(a), list(ba), list(probe)]})
            break
        # multiplicativity: F_k(a) F_k(b) = F_k(a b)
        ab = _block_mul(p, a, b)
        if p.block_allowed(ab):
            prod = _block_mul(p, ba, bb)
            if not F_member(ab, prod):
                violations.append({"law": "product_forward",
                                   "witness": [list(a), list(b), list(prod)]})
                break
            fab = p.follower_set(ab, k, min(bound, 8))
            if fab.elements:
                w2 = rng.choice(fab.elements)
                # w2 must lie in (ba bb) * F
                if not sub.contains(_block_mul(p, _block_inv(p, prod), w2)):
                    violations.append({"law": "product_backward",
                                       "witness": [list(ab), list(w2)]})
                    break
    return {
        "ok": not violations,
        "triples_checked": checked,
        "bound": bound,
        "violations": violations,
    }


def class_families(p: ShiftPresentation, n: int, k: int,
                   bound: int = DEFAULT_BOUND) -> dict:
    """The family of follower sets F_k(a) over base blocks a of length
    n, deduplicated; likewise the predecessor family P_n(b) over
    k-blocks b.  Counts are over the blocks visible at the bound."""
    followers = _distinct_sets(p, n, k, bound, forward=True)
    predecessors = _distinct_sets(p, k, n, bound, forward=False)
    disjoint = _pairwise_disjoint(followers)
    return {
        "n": n,
        "k": k,
        "bound": bound,
        "follower_classes": followers,
        "predecessor_classes": predecessors,
        "follower_count": len(followers),
        "predecessor_count": len(predecessors),
        "followers_pairwise_disjoint": disjoint,
    }


def _distinct_sets(p, base_len, ext_len, bound, forward):
    base_blocks, _ = p.language(base_len, bound)
    classes = []
    for a in base_blocks:
        if forward:
            res = p.follower_set(a, ext_len, min(bound, 16))
        else:
            res = p.predecessor_set(a, ext_len, min(bound, 16))
        if not res.elements:
            continue
        for cls in classes:
            if cls["set"].same_as(res):
                cls["base_blocks"].append(a)
                break
        else:
            classes.append({"base_blocks": [a], "set": res})
    return classes


def _pairwise_disjoint(classes) -> bool:
    for i, c1 in enumerate(classes):
        for c2 in classes[i + 1:]:
            for b in c1["set"].elements[:4]:
                if c2["set"].member(b):
                    return False
    return True


def tau_bijection(p: ShiftPresentation, n: int, k: int, rng: random.Random,
                  bound: int = DEFAULT_BOUND, reps_per_class: int = 3) -> dict:
    """The map sending F_k(a) to P_n(b) for any member b of F_k(a).

    Checks that the image does not depend on the chosen member (at
    least ``reps_per_class`` members per class), that distinct follower
    classes map to distinct predecessor classes, and that the map
    respects the coset product."""
    fam = class_families(p, n, k, bound)
    followers = fam["follower_classes"]
    images = []
    for cls in followers:
        reps = cls["set"].elements[:max(reps_per_class, 1)]
        imgs = [p.predecessor_set(b, n, min(bound, 16)) for b in reps]
        for other in imgs[1:]:
            if not imgs[0].same_as(other):
                return {"ok": False, "failure": "not_well_defined",
                        "witness": [list(b) for b in reps]}
        images.append(imgs[0])
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            if images[i].same_as(images[j]):
                return {"ok": False, "failure": "not_injective", "witness": [i, j]}
    # multiplicativity on sampled pairs of classes
    checked_products = 0
    for _ in range(min(20, len(followers) ** 2)):
        c1, c2 = rng.choice(followers), rng.choice(followers)
        b1 = rng.choice(c1["set"].elements)
        b2 = rng.choice(c2["set"].elements)
        prod = _block_mul(p, b1, b2)
        if not p.block_allowed(prod):
            continue
        img_prod = p.predecessor_set(prod, n, min(bound, 16))
        i1, i2 = images[followers.index(c1)], images[followers.index(c2)]
        if not (i1.elements and i2.elements):
            continue
        a12 = _block_mul(p, i1.elements[0], i2.elements[0])
        if not img_prod.member(a12):
            return {"ok": False, "failure": "not_multiplicative",
                    "witness": [list(b1), list(b2)]}
        checked_products += 1
    return {
        "ok": True,
        "follower_count": fam["follower_count"],
        "predecessor_count": fam["predecessor_count"],
        "counts_match": fam["follower_count"] == fam["predecessor_count"],
        "products_checked": checked_products,
        "bound": bound,
    }
