"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line in the summary."""

import json
import random
import time
from fractions import Fraction

import numpy as np

from conftest import record
from transversal_kit.bs_lab import B, BSElement, Dyadic, brute_force_indices, bs_indices, solenoid_indices
from transversal_kit.cli import main
from transversal_kit.cosets import common_representative
from transversal_kit.groups import all_subgroups, compose, inverse, small_group_suite, trivial_subgroup, whole_group
from transversal_kit.hyperspace import (
    PointSet,
    check_card_bound_limit,
    grid_samples,
    hausdorff,
    hausdorff_wijsman_agreement,
    plus_minus_sequence,
    wijsman_profile,
)
from transversal_kit.matrix_decomp import (
    polar_decompose,
    qr_positive,
    random_complex_matrix,
    random_unitary,
)
from transversal_kit.tower import (
    TowerSubgroupPair,
    classify_limit,
    cyclic_subgroup_pair,
    cyclic_two_tower,
    project_pair,
)
from transversal_kit.transversal import common_transversal, verify_transversal


def _start(name):
    record(name, False, "did not complete")
    return time.perf_counter()


def test_ac1_small_group_suite_transversals():
    name = "AC1 small-group suite common transversals"
    t0 = _start(name)
    pairs = failures = 0
    for G in small_group_suite().values():
        for sub in all_subgroups(G):
            ambient = sub.as_group()
            for H in all_subgroups(ambient):
                rep = verify_transversal(ambient, H, common_transversal(ambient, H).elements)
                pairs += 1
                failures += not rep.is_common
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 10
    record(name, ok, f"{pairs} (G, H) pairs, {failures} failures, {elapsed:.2f}s (< 10s)")
    assert ok


def test_ac2_counting_identity():
    name = "AC2 counting identity on 1000 random triples"
    _start(name)
    rng = random.Random(2)
    suite = list(small_group_suite().values())
    subgroups = {id(G): all_subgroups(G) for G in suite}
    bad = 0
    for _ in range(1000):
        G = rng.choice(suite)
        H = rng.choice(subgroups[id(G)])
        x = rng.choice(G.elements)
        hs = set(H.elements)
        xi = inverse(x)
        dc = {compose(compose(a, x), b) for a in hs for b in hs}
        left = hs & {compose(compose(x, h), xi) for h in hs}
        right = hs & {compose(compose(xi, h), x) for h in hs}
        bad += not (len(dc) * len(left) == len(hs) ** 2 == len(dc) * len(right))
    record(name, bad == 0, f"{bad} violations of |HxH|*|H∩xHx^-1| = |H|^2 = |HxH|*|H∩x^-1Hx|")
    assert bad == 0


def test_ac3_bs12(capsys):
    name = "AC3 BS(1,2) indices and counterexample report"
    _start(name)
    b_ok = bs_indices(B) == (2, 1)
    grid = sorted({Fraction(m) * Fraction(2) ** e for m in range(-8, 9) for e in range(-3, 4)})
    mismatches = [
        (q, n)
        for n in range(-4, 5)
        for q in grid
        if bs_indices(x := BSElement(Dyadic.of(q), n)) != brute_force_indices(x)
    ]
    code = main(["bs", "report", "--q", "0", "--n", "1", "--json"])
    out = json.loads(capsys.readouterr().out)
    report_ok = code == 1 and out["results"]["witness"] == {"q": "0", "n": 1}
    ok = b_ok and not mismatches and report_ok
    record(
        name,
        ok,
        f"bs_indices(b) = {bs_indices(B)}; formula vs brute force on {9 * len(grid)} elements: "
        f"{len(mismatches)} mismatches; `bs report` exit {code} with witness {out['results']['witness']}",
    )
    assert ok


def test_ac4_solenoid_vs_tower():
    name = "AC4 solenoid indices vs Z/2^5 tower"
    _start(name)
    tower = cyclic_two_tower(5)

    def top_index(step):
        return project_pair(tower, cyclic_subgroup_pair(tower, step))[-1][1]

    disagreements = [
        n for n in range(-4, 5)
        if solenoid_indices(n) != (top_index(2 ** max(n, 0)), top_index(2 ** max(-n, 0)))
    ]
    ok = solenoid_indices(1) == (2, 1) and not disagreements
    record(name, ok, f"solenoid_indices(1) = {solenoid_indices(1)}; disagreements for |n| <= 4: {disagreements}")
    assert ok


def test_ac5_tower_monotone_and_stabilizing():
    name = "AC5 Z/2^k towers monotone, stabilizing, diverging case"
    _start(name)
    checked = problems = 0
    diverging_ok = True
    for k in range(1, 7):
        tower = cyclic_two_tower(k)
        subs = all_subgroups(tower.top)
        for H in subs:
            for K in subs:
                if not K.element_set <= H.element_set:
                    continue
                seq = [c for _, c in project_pair(tower, TowerSubgroupPair(H, K))]
                top = H.order // K.order
                checked += 1
                monotone = all(a <= b for a, b in zip(seq, seq[1:]))
                first = seq.index(top)
                stabilizes = all(c == top for c in seq[first:])
                problems += not (monotone and stabilizes and seq[-1] == top)
        if k >= 2:
            top = tower.top
            seq = [c for _, c in project_pair(tower, TowerSubgroupPair(whole_group(top), trivial_subgroup(top)))]
            diverging_ok &= classify_limit(seq).kind == "diverging"
    ok = problems == 0 and diverging_ok
    record(name, ok, f"{checked} pairs for k <= 6, {problems} problems; (full, trivial) diverging: {diverging_ok}")
    assert ok


def test_ac6_matrix_decompositions():
    name = "AC6 polar and QR on 500 random matrices"
    t0 = _start(name)
    rng = np.random.default_rng(6)
    worst = dict(polar=0.0, qr=0.0, uniqueness=0.0, coset=0.0)
    positive = True
    mats = []
    for _ in range(500):
        n = int(rng.integers(2, 9))
        g = random_complex_matrix(n, rng, max_cond=1e6)
        mats.append(g)
        pol = polar_decompose(g)
        c = pol.certs
        worst["polar"] = max(worst["polar"], pol.residual, c["unitarity_defect"], c["hermitian_defect"])
        worst["uniqueness"] = max(worst["uniqueness"], c["uniqueness_gap"])
        positive &= c["min_eigenvalue"] > 0
        qr = qr_positive(g)
        c = qr.certs
        worst["qr"] = max(worst["qr"], qr.residual, c["unitarity_defect"], c["triangularity_defect"])
        positive &= c["min_diagonal"] > 0 and c["diagonal_imag"] == 0
    for g in mats[:50]:
        w = random_unitary(g.shape[0], rng)
        p, p_w = polar_decompose(g).factor2, polar_decompose(w @ g).factor2
        worst["coset"] = max(worst["coset"], np.linalg.norm(p_w - p, 2) / np.linalg.norm(p, 2))
    elapsed = time.perf_counter() - t0
    ok = (
        worst["polar"] <= 1e-10 and worst["qr"] <= 1e-10 and worst["uniqueness"] <= 1e-8
        and worst["coset"] <= 1e-8 and positive and elapsed < 30
    )
    record(
        name,
        ok,
        f"worst polar {worst['polar']:.1e}, qr {worst['qr']:.1e} (<= 1e-10); uniqueness {worst['uniqueness']:.1e}, "
        f"coset {worst['coset']:.1e} (<= 1e-8); positivity {positive}; {elapsed:.1f}s (< 30s)",
    )
    assert ok


def test_ac7_hyperspace():
    name = "AC7 hyperspace metric axioms, F_k = {±1/k}, Lipschitz bridge"
    _start(name)
    rng = random.Random(7)
    sets = [
        PointSet([(rng.uniform(-5, 5), rng.uniform(-5, 5)) for _ in range(rng.randint(1, 6))])
        for _ in range(1000)
    ]
    axiom_failures = lipschitz_failures = 0
    samples_checked = 0
    for i, A in enumerate(sets):
        Bset, C = sets[(i + 1) % 1000], sets[(i + 2) % 1000]
        ab, ba, bc, ac = hausdorff(A, Bset), hausdorff(Bset, A), hausdorff(Bset, C), hausdorff(A, C)
        axiom_failures += not (
            ab == ba and hausdorff(A, A) == 0 and ab >= 0
            and (ab > 0) == (set(A.points) != set(Bset.points))
            and ac <= ab + bc + 1e-12
        )
        samples = [(rng.uniform(-8, 8), rng.uniform(-8, 8)) for _ in range(5)] + list(A.points)
        for da, db in zip(wijsman_profile(A, samples), wijsman_profile(Bset, samples)):
            lipschitz_failures += abs(da - db) > ab + 1e-12
        samples_checked += len(samples)

    seq = plus_minus_sequence(10)
    origin = PointSet([Fraction(0)])
    exact = all(hausdorff(F, origin) == Fraction(1, k) for k, F in enumerate(seq, 1))
    lim = check_card_bound_limit(seq, 2, Fraction(1, 10))
    drop = all(len(F) == 2 for F in seq) and lim.cluster_count == 1 and lim.cardinality_drop
    agree = hausdorff_wijsman_agreement(seq, origin, grid_samples(Fraction(-2), Fraction(2), Fraction(1, 40)), 0)
    ok = axiom_failures == 0 and lipschitz_failures == 0 and exact and drop and agree.lipschitz_ok
    record(
        name,
        ok,
        f"axiom failures {axiom_failures}/1000, Lipschitz failures {lipschitz_failures}/{samples_checked} samples; "
        f"δ(F_k, {{0}}) = 1/k exactly for k <= 10: {exact}; cardinality 2 -> {lim.cluster_count}; "
        f"F_k bridge: {agree.lipschitz_ok}",
    )
    assert ok


def test_ac8_common_representative_equivalence():
    name = "AC8 common representative <=> same double coset"
    _start(name)
    pairs = discrepancies = 0
    for G in small_group_suite().values():
        if G.order > 24:
            continue
        for H in all_subgroups(G):
            hs = H.elements
            dc = {x: {compose(compose(a, x), b) for a in hs for b in hs} for x in G}
            for x in G:
                for y in G:
                    pairs += 1
                    discrepancies += (common_representative(G, H, x, y) is not None) != (y in dc[x])
    record(name, discrepancies == 0, f"{pairs} (H, x, y) triples, {discrepancies} discrepancies")
    assert discrepancies == 0
