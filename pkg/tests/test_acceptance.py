"""Acceptance gate: the ten headline checks, one pass/fail line each.

Run with ``pytest -v -s tests/test_acceptance.py`` to see the lines.
"""

import itertools
import json
import math
import random
import time

from shiftforge.blockops import (
    OneBlockOp,
    check_inverse_semigroup_axioms,
    continuity_check,
)
from shiftforge.cli import main as cli_main
from shiftforge.cosets import class_families, coset_law_check
from shiftforge.decomposition import decompose, is_fractal, theta_code
from shiftforge.sampling import sample_sequences
from shiftforge.sequences import (
    Axis,
    BiInfinite,
    EmptySequence,
    LeftRay,
    zip_entrywise,
)
from shiftforge.shifts import higher_block

from tests.conftest import fixture_path, load_shift


def _report(num, label, ok):
    print(f"[PRIMARY {num}] {label}: {'PASS' if ok else 'FAIL'}")
    assert ok, f"[PRIMARY {num}] {label}"


def test_01_parity_class_counts():
    t0 = time.monotonic()
    parity = load_shift("parity")
    got = {}
    # bound 8 sees both parities of every coordinate, which determines
    # the class families exactly
    for n, k in ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 2)):
        fam = class_families(parity, n, k, bound=8)
        got[(n, k)] = fam["follower_count"]
        assert fam["followers_pairwise_disjoint"]
    expected = {(1, 1): 1, (1, 2): 2, (1, 3): 2, (2, 2): 4, (2, 3): 4, (3, 2): 4}
    elapsed = time.monotonic() - t0
    _report(1, f"parity class family counts {got} in {elapsed:.2f}s",
            got == expected and elapsed < 1.0)


def test_02_prufer_classes_and_self_similarity():
    t0 = time.monotonic()
    prufer = load_shift("prufer_fractal")
    fam = class_families(prufer, 1, 1, bound=16)
    follower_sizes = {len(c["set"].elements) for c in fam["follower_classes"]}
    pre = prufer.predecessor_set((prufer.alphabet.identity,), 1, 8)
    rep = is_fractal(prufer, depth=8)
    elapsed = time.monotonic() - t0
    ok = (follower_sizes == {2}
          and pre.complete and pre.cardinality() == 1
          and rep.kind == "fractal" and rep.self_similar_level == 1
          and elapsed < 5.0)
    _report(2, f"prufer follower classes size 2, P1(identity) = 1, "
               f"self-similar at level {rep.self_similar_level} in {elapsed:.2f}s", ok)


def test_03_coset_law_suite():
    rng = random.Random(42)
    names = ["parity", "z4_coset", "prufer_fractal", "z2_second_coord", "full_z2_two_sided"]
    results = {}
    for name in names:
        p = load_shift(name)
        rep = coset_law_check(p, 1, 1, rng, n_triples=50, bound=16)
        results[name] = (rep["ok"], rep["triples_checked"])
    rep2 = coset_law_check(load_shift("parity"), 2, 2, rng, n_triples=50, bound=16)
    results["parity_n2k2"] = (rep2["ok"], rep2["triples_checked"])
    ok = all(v[0] and v[1] >= 50 for v in results.values())
    _report(3, f"coset laws on {len(results)} fixtures, >=50 triples each, bound 16", ok)


def test_04_inverse_semigroup_axioms():
    t0 = time.monotonic()
    rng = random.Random(7)
    names = ["z4_coset", "prufer_fractal", "parity", "full_z2_two_sided",
             "union_groups", "full_z_one_sided"]
    all_ok = True
    for name in names:
        p = load_shift(name)
        rep = check_inverse_semigroup_axioms(p, OneBlockOp(p.alphabet), rng, n_checks=200)
        all_ok = all_ok and rep["ok"] and rep["checks"] >= 200
    elapsed = time.monotonic() - t0
    _report(4, f"axiom suite, >=200 checks on {len(names)} fixtures in {elapsed:.2f}s",
            all_ok and elapsed < 10.0)


def test_05_continuity_classification():
    rng = random.Random(3)
    cases = {
        "union_groups": True,
        "full_z_one_sided": False,
        "z4_coset": False,
        "prufer_fractal": False,
        "full_z2_two_sided": False,
    }
    got = {}
    witnesses_ok = True
    for name, expected in cases.items():
        p = load_shift(name)
        rep = continuity_check(p, OneBlockOp(p.alphabet), rng, bound=16)
        got[name] = rep["continuous"]
        if not expected:
            witnesses_ok = witnesses_ok and rep["witness"] is not None
    _report(5, f"continuity five-case classification {got}",
            got == cases and witnesses_ok)


def _prufer_walks(p, rng, count):
    """Locally admissible walks on the letter graph, as left rays plus
    the empty sequence and the identity point."""
    G = p.alphabet
    e = G.identity
    walks = [EmptySequence(Axis.TWO_SIDED, G), BiInfinite(G, [e], [], [e], 0)]
    N = p.subgroup.elements
    while len(walks) < count:
        tr = []
        cur = e
        for _ in range(rng.randint(0, 6)):
            cur = G.mul(p.hom.rep(cur), rng.choice(N))
            tr.append(cur)
        walks.append(LeftRay(G, [e], tr, rng.randint(-2, 4)))
    return walks


def test_06_theta_round_trip_prufer():
    rng = random.Random(11)
    p = load_shift("prufer_fractal")
    bar, fwd, inv = theta_code(p)
    Gb = bar.alphabet
    walks = _prufer_walks(p, rng, 110)
    op = OneBlockOp(p.alphabet)
    ok = len(walks) >= 100
    for x in walks:
        y = fwd.apply(x)
        ok = ok and (y.length() == x.length())
        ok = ok and (inv.apply(y) == x)
    for _ in range(100):
        x, y = rng.choice(walks), rng.choice(walks)
        lhs = fwd.apply(op.apply(x, y))
        rhs = zip_entrywise(fwd.apply(x), fwd.apply(y), Gb.mul, Gb)
        ok = ok and (lhs == rhs)
    _report(6, f"theta round trip and homomorphism on {len(walks)} walks "
               "(finite and empty included), lengths preserved", ok)


def _z4_periodic_points(p, period_max):
    G = p.alphabet
    letters = G.first(G.order())
    pts = []
    for L in range(1, period_max + 1):
        for pat in itertools.product(letters, repeat=L):
            if all(p.window_allowed((pat[i], pat[(i + 1) % L])) for i in range(L)):
                pts.append(BiInfinite(G, list(pat), [], list(pat), 0))
    out = []
    for x in pts:
        if not any(x == y for y in out):
            out.append(x)
    return out


def _z4_transient_points(p, transient_max):
    G = p.alphabet
    letters = G.first(G.order())
    cycles = []
    for L in (1, 2):
        for pat in itertools.product(letters, repeat=L):
            if all(p.window_allowed((pat[i], pat[(i + 1) % L])) for i in range(L)):
                cycles.append(list(pat))
    pts = []
    for left in cycles:
        for t in range(transient_max + 1):
            frontier = [[]]
            for _ in range(t):
                frontier = [
                    w + [b]
                    for w in frontier
                    for b in letters
                    if p.window_allowed(((left[-1] if not w else w[-1]), b))
                ]
            for w in frontier:
                last = w[-1] if w else left[-1]
                for right in ([last], [last, G.mul(last, 2)]):
                    if all(p.window_allowed((right[i], right[(i + 1) % len(right)]))
                           for i in range(len(right))):
                        pts.append(BiInfinite(G, left, w, right, 0))
    return pts


def test_07_z4_end_to_end_decomposition():
    t0 = time.monotonic()
    p = load_shift("z4_coset")
    res = decompose(p)
    ok = (res.factor_orders() == [2]
          and res.fractal.alphabet.order() == 2
          and p.alphabet.order() == 2 * 2)
    F = res.fractal
    letters = F.alphabet.first(2)
    ok = ok and all(F.window_allowed((a, a)) for a in letters)
    ok = ok and not F.window_allowed((letters[0], letters[1]))

    periodic = _z4_periodic_points(p, 4)
    images = [res.forward.apply(x) for x in periodic]
    target = _z4_periodic_points(res.codomain, 4)
    ok = ok and all(res.codomain.contains(y) for y in images)
    ok = ok and all(res.inverse.apply(y) == x for x, y in zip(periodic, images))
    distinct = []
    for y in images:
        if not any(y == z for z in distinct):
            distinct.append(y)
    ok = ok and len(distinct) == len(periodic) == len(target)

    transient = _z4_transient_points(p, 4)
    for x in transient:
        y = res.forward.apply(x)
        ok = ok and res.codomain.contains(y) and res.inverse.apply(y) == x

    op = OneBlockOp(p.alphabet)
    rng = random.Random(9)
    pool = periodic + transient
    for _ in range(50):
        x, y = rng.choice(pool), rng.choice(pool)
        lhs = res.forward.apply(op.apply(x, y))
        rhs = res.forward.apply(
            op.apply(res.inverse.apply(res.forward.apply(x)),
                     res.inverse.apply(res.forward.apply(y))))
        ok = ok and lhs == rhs
    elapsed = time.monotonic() - t0
    _report(7, f"z4 decomposition: factors [2] x 2-letter identity shift, "
               f"bijective on {len(periodic)} periodic and {len(transient)} transient "
               f"points, op preserved, in {elapsed:.2f}s", ok and elapsed < 5.0)


def test_08_embedding_suite():
    from shiftforge.embedding import truncated_word_monoid, verify_embedding

    ok = True
    for q in (2, 3):
        rep = verify_embedding(truncated_word_monoid(q, 3))
        ok = ok and rep["ok"] and rep["group_order"] == q
    _report(8, "exhaustive embedding checks for truncated word monoids mod 2 and mod 3", ok)


def test_09_m_step_stabilization():
    parity = load_shift("parity")
    cls = parity.classify(bound=16)
    ok = cls["m_step"] == 2
    lifted, fwd, inv = higher_block(parity, 2)
    ok = ok and lifted.classify(bound=8)["markov"]
    Z = parity.alphabet
    pts = [
        BiInfinite(Z, [0, 1], [], [0, 1], 0),
        BiInfinite(Z, [0, 1], [2, 1], [0, 1], 0),
        LeftRay(Z, [1], [5], 0),
        EmptySequence(Axis.TWO_SIDED, Z),
    ]
    for x in pts:
        y = fwd.apply(x)
        ok = ok and inv.apply(y) == x
    _report(9, "parity m_step = 2; 2nd higher block is Markov and the code pair "
               "round-trips", ok)


def test_10_determinism(tmp_path):
    pairs = []
    for i in range(2):
        rpt = tmp_path / f"verify{i}.json"
        cli_main(["verify", "--spec", fixture_path("z4_coset"), "--seed", "3",
                  "--bound", "12", "--out", str(rpt)])
        dec = tmp_path / f"dec{i}.json"
        cli_main(["decompose", "--spec", fixture_path("z4_coset"), "--seed", "3",
                  "--out", str(dec)])
        dot = tmp_path / f"g{i}.dot"
        cli_main(["graph", "--spec", fixture_path("prufer_fractal"), "--bound", "6",
                  "--emit-dot", str(dot)])
        pairs.append((rpt.read_bytes(), dec.read_bytes(), dot.read_bytes()))
    _report(10, "byte-identical reports and DOT for identical spec/seed/bounds",
            pairs[0] == pairs[1])
