"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` (or ``python tests/test_acceptance.py``).
"""

import itertools
import json
import os
import random
import subprocess
import sys
import time

import pytest

import rholatin.detachment as detachment
from rholatin.certificates import Infeasible
from rholatin.completion import complete, complete_hall, generate_square, replay_completion_certificate
from rholatin.conditions import (
    corollary_checks,
    enumerate_fitting,
    hall_conditions,
    replay_condition_certificate,
    ryser_classical,
    ryser_conditions,
    ryser_theorem_check,
)
from rholatin.core import Rectangle, RhoProfile, Square, is_completion_of, necessary_bound, validate_square
from rholatin.errors import SplitInfeasible, TooLarge
from rholatin.factors import (
    DegreeSpec,
    find_f_factor,
    find_gf_factor,
    find_theta,
    gf_condition,
    ore_condition,
    replay_factor_certificate,
)
from rholatin.graphs import ColoredBigraph, x, y
from rholatin.guards import Guards
from rholatin.oracle import InstanceParams, brute_force_complete, brute_force_factor, random_instance, random_profile

FUZZ_SEEDS = range(2400)
# the corollary sweep uses more symbols than the oracle's default guard; n stays <= 4
WIDE_ORACLE = Guards(oracle_k=16)
# a light and a heavy perturbation so that both verdicts are well represented
FUZZ_PARAMS = (InstanceParams(n=(2, 5), k=(2, 8), perturb=3), InstanceParams(n=(2, 5), k=(2, 8), perturb=8))


def report(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[criterion {number}] {'PASS' if ok else 'FAIL'}: {detail}")


def fuzz_instance(seed: int) -> Rectangle:
    return random_instance(FUZZ_PARAMS[seed % 2], seed)


@pytest.fixture(scope="module")
def corpus():
    """The arbitrary-mode fuzz corpus: (rect, flow result, oracle result) per seed."""
    start = time.perf_counter()
    rows = []
    for seed in FUZZ_SEEDS:
        rect = fuzz_instance(seed)
        rows.append((seed, rect, complete(rect, seed=seed), brute_force_complete(rect)))
    return rows, time.perf_counter() - start


def test_criterion_1_oracle_equivalence(corpus, capsys):
    rows, elapsed = corpus
    bad = [seed for seed, rect, res, oracle in rows if isinstance(res, Infeasible) != (oracle is None)]
    feasible = sum(oracle is not None for *_, oracle in rows)
    for seed, rect, res, _ in rows:
        if isinstance(res, Square):
            assert is_completion_of(res, rect)
    ok = not bad and len(rows) >= 2000 and elapsed < 120 and 0 < feasible < len(rows)
    report(capsys, 1, ok, f"{len(rows)} instances, {feasible} completable, {len(bad)} disagreements, {elapsed:.1f}s")
    assert ok, bad[:10]


def test_criterion_2_hall_audit(capsys):
    params = InstanceParams(n=(2, 5), k=(2, 6), s=(5, 5), perturb=5)
    n_inst = disagree = mixed = 0
    seed = 0
    while n_inst < 600:
        rect = random_instance(params, seed)
        seed += 1
        if rect.s != rect.n:
            continue
        try:
            reps = hall_conditions(rect)
        except TooLarge:
            continue
        n_inst += 1
        verdicts = {c.passed for c in reps[1:]}
        mixed += len(verdicts) > 1
        truth = brute_force_complete(rect) is not None
        hall = reps[0].passed and any(c.passed for c in reps[1:])
        flow = not isinstance(complete_hall(rect), Infeasible)
        disagree += not (hall == truth == flow)
        for c in reps:
            if c.certificate:
                assert replay_condition_certificate(c.certificate, rect) == (c.certificate.lhs, c.certificate.rhs)
    ok = n_inst >= 500 and disagree == 0 and mixed == 0
    report(capsys, 2, ok, f"{n_inst} r x n instances, {disagree} verdict disagreements, {mixed} with unequal six-way verdicts")
    assert ok


def test_criterion_3_fitting_sequence_audit(capsys):
    params = InstanceParams(n=(2, 5), k=(2, 6), r=(1, 4), s=(1, 4), perturb=6)
    n_inst = disagree = group_mixed = remark_mismatch = 0
    literal_wrong = corrected_wrong = 0
    seed = 0
    while n_inst < 350:
        rect = random_instance(params, 10_000 + seed)
        seed += 1
        try:
            v = ryser_theorem_check(rect)
        except TooLarge:
            continue
        n_inst += 1
        oracle = brute_force_complete(rect) is not None
        flow = bool(necessary_bound(rect)) and not isinstance(find_theta(rect), Infeasible)
        disagree += not (v.verdict == flow == oracle)
        group_mixed += len(v.disagreements)
        remark_mismatch += v.remark_mismatches + (v.verdict_remark42 != v.verdict)
        literal_wrong += v.verdict_col3_literal != oracle
        corrected_wrong += v.verdict_col3_corrected != oracle
    ok = n_inst >= 300 and disagree == 0 and group_mixed == 0 and remark_mismatch == 0
    report(
        capsys,
        3,
        ok,
        f"{n_inst} instances, {disagree} theorem/flow/oracle disagreements, {group_mixed} sequences with unequal "
        f"in-group verdicts, {remark_mismatch} P-free form mismatches; third column condition: summed over P_s "
        f"wrong on {corrected_wrong}, summed over all symbols wrong on {literal_wrong}",
    )
    assert ok and corrected_wrong == 0


def test_criterion_4_necessity(corpus, capsys):
    rows, _ = corpus
    violations = [seed for seed, rect, _, oracle in rows if oracle is not None and not necessary_bound(rect)]
    completable = sum(oracle is not None for *_, oracle in rows)
    ok = not violations
    report(capsys, 4, ok, f"{completable} completable instances, {len(violations)} violate the necessary bound")
    assert ok


def test_criterion_5_generator_totality(capsys):
    rng = random.Random(5)
    failures = 0
    count = 0
    for _ in range(240):
        n = rng.randint(1, 8)
        profile = random_profile(rng, n, rng.randint(n, n * n))
        try:
            sq = generate_square(profile, seed=rng.randrange(1 << 30))
            validate_square(sq.grid, profile)
        except Exception:
            failures += 1
        count += 1
    ok = failures == 0 and count >= 200
    report(capsys, 5, ok, f"{count} random profiles (n <= 8), {failures} failures")
    assert ok


def test_criterion_6_detachment_postconditions(monkeypatch, capsys):
    counts = {"split": 0, "detach": 0}
    real_split, real_detach = detachment.check_split, detachment.check_detachment

    def counting_split(*args):
        counts["split"] += 1
        return real_split(*args)

    def counting_detach(*args):
        counts["detach"] += 1
        return real_detach(*args)

    monkeypatch.setattr(detachment, "check_split", counting_split)
    monkeypatch.setattr(detachment, "check_detachment", counting_detach)
    errors = 0
    rng = random.Random(6)
    for seed in range(400):
        try:
            complete(random_instance(InstanceParams(n=(2, 6), k=(2, 14), mode="completable"), seed), seed=seed)
            n = rng.randint(1, 7)
            generate_square(random_profile(rng, n, rng.randint(n, n * n)), seed=seed)
        except (SplitInfeasible, AssertionError):
            errors += 1
    ok = errors == 0 and counts["split"] > 0
    report(capsys, 6, ok, f"{counts['split']} vertex splits and {counts['detach']} two-vertex detachments checked, {errors} failures")
    assert ok


def _all_small_graphs():
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            L = [x(i) for i in range(1, a + 1)]
            R = [y(j) for j in range(1, b + 1)]
            for ms in itertools.product(range(3), repeat=a * b):
                yield ColoredBigraph(L, R, {(L[t // b], R[t % b], None): m for t, m in enumerate(ms) if m})


def _random_four_by_four(rng):
    L = [x(i) for i in range(1, 5)]
    R = [y(j) for j in range(1, 5)]
    return ColoredBigraph(L, R, {(u, v, None): m for u in L for v in R if (m := rng.randrange(3))})


def _specs(G, rng):
    V = G.vertices
    if rng.random() < 0.5:
        sub = {(u, v): rng.randint(0, G.mult(u, v)) for u in G.left for v in G.right}
        f = {v: sum(m for (a, b), m in sub.items() if v in (a, b)) for v in V}
        if rng.random() < 0.3:
            w = rng.choice(V)
            f[w] = max(0, f[w] + rng.choice((-1, 1)))
    else:
        f = {v: rng.randint(0, G.deg(v)) for v in V}
    hi = {v: rng.randint(0, G.deg(v) + 1) for v in V}
    lo = {v: rng.randint(0, hi[v]) for v in V}
    if rng.random() < 0.4:
        for v in G.right:
            lo[v] = 0
    return f, DegreeSpec(lo, hi)


def test_criterion_7_factor_completeness(capsys):
    rng = random.Random(7)
    graphs = list(_all_small_graphs()) + [_random_four_by_four(rng) for _ in range(1500)]
    bad = certs = 0
    for G in graphs:
        f, spec = _specs(G, rng)
        res = find_f_factor(G, f)
        verdicts = {
            not isinstance(res, Infeasible),
            brute_force_factor(G, f, f) is not None,
            *(ore_condition(G, f, v) is True for v in "abc"),
        }
        bad += len(verdicts) > 1
        if isinstance(res, Infeasible):
            certs += 1
            assert replay_factor_certificate(res.certificate, G, DegreeSpec.exact(f)) == (res.certificate.lhs, res.certificate.rhs)
        res = find_gf_factor(G, spec)
        variants = ["neighborhood", "monus"]
        if all(spec.lo(v) == 0 for v in G.right) or all(spec.lo(v) == 0 for v in G.left):
            variants.append("eq51")
        verdicts = {
            not isinstance(res, Infeasible),
            brute_force_factor(G, dict(spec.g), dict(spec.f)) is not None,
            *(gf_condition(G, spec, v) is True for v in variants),
        }
        bad += len(verdicts) > 1
        if isinstance(res, Infeasible):
            certs += 1
            assert replay_factor_certificate(res.certificate, G, spec) == (res.certificate.lhs, res.certificate.rhs)
    ok = bad == 0 and len(graphs) >= 10_000
    report(capsys, 7, ok, f"{len(graphs)} multigraphs (all up to 3+3, random 4+4), {bad} disagreements, {certs} certificates replayed")
    assert ok


def _random_latin_rectangle(rng, n, r, s):
    """A uniformly shuffled backtracking fill of an r x s latin rectangle over [n]."""
    grid = [[0] * s for _ in range(r)]

    def go(pos):
        if pos == r * s:
            return True
        i, j = divmod(pos, s)
        syms = list(range(1, n + 1))
        rng.shuffle(syms)
        for c in syms:
            if c not in grid[i][:j] and all(grid[t][j] != c for t in range(i)):
                grid[i][j] = c
                if go(pos + 1):
                    return True
        grid[i][j] = 0
        return False

    go(0)
    return grid


def test_criterion_8_corollaries(corpus, capsys):
    rows, _ = corpus
    instances = [(rect, oracle is not None) for _, rect, _, oracle in rows]
    wide = InstanceParams(n=(2, 4), k=(2, 16), r=(1, 3), s=(1, 3), perturb=4)
    for seed in range(1500):
        rect = random_instance(wide, 50_000 + seed)
        instances.append((rect, brute_force_complete(rect, guards=WIDE_ORACLE) is not None))
    hits = {"cor52": 0, "cor53": 0, "cor54": 0}
    bad = 0
    for rect, truth in instances:
        for which in hits:
            try:
                rep = corollary_checks(rect, which)
            except TooLarge:
                continue
            if rep.hypothesis:
                hits[which] += 1
                bad += rep.verdict != truth
                for c in rep.conditions or []:
                    if c.certificate:
                        assert replay_condition_certificate(c.certificate, rect) == (c.certificate.lhs, c.certificate.rhs)
    rng = random.Random(8)
    latin = latin_bad = 0
    for _ in range(400):
        n = rng.randint(2, 5)
        r, s = rng.randint(1, n), rng.randint(1, n)
        rect = Rectangle(_random_latin_rectangle(rng, n, r, s), RhoProfile(n, n, (n,) * n))
        latin += 1
        truth = brute_force_complete(rect) is not None
        latin_bad += ryser_classical(rect) != truth
        latin_bad += (not isinstance(complete(rect), Infeasible)) != truth
    ok = bad == 0 and latin_bad == 0 and all(hits.values())
    report(
        capsys,
        8,
        ok,
        f"hypothesis held cor52 {hits['cor52']}x, cor53 {hits['cor53']}x, cor54 {hits['cor54']}x with {bad} mismatches; "
        f"{latin} latin-profile rectangles, {latin_bad} classical-criterion mismatches",
    )
    assert ok


def test_criterion_9_certificates(corpus, capsys):
    rows, _ = corpus
    total = good = 0
    for _, rect, res, _ in rows:
        if isinstance(res, Infeasible):
            total += 1
            cert = res.certificate
            good += replay_completion_certificate(cert, rect) == (cert.lhs, cert.rhs) and cert.violated
        if rect.s == rect.n:
            hres = complete_hall(rect)
            if isinstance(hres, Infeasible):
                total += 1
                cert = hres.certificate
                good += replay_completion_certificate(cert, rect) == (cert.lhs, cert.rhs) and cert.violated
    # condition certificates from the fitting-sequence groups
    for _, rect, res, _ in rows[:600]:
        if not isinstance(res, Infeasible):
            continue
        try:
            fits = list(enumerate_fitting(rect, limit=5))
            for fit in fits:
                rc = ryser_conditions(rect, fit)
                for c in rc.row + rc.col + [rc.col_3_literal]:
                    if c.certificate:
                        total += 1
                        cert = c.certificate
                        good += replay_condition_certificate(cert, rect) == (cert.lhs, cert.rhs) and cert.violated
        except TooLarge:
            continue
    ok = total > 0 and good == total
    report(capsys, 9, ok, f"{good}/{total} infeasibility certificates re-verified")
    assert ok


def _cli(args, tmp_path, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    env.pop("RHOLATIN_GUARDS", None)
    proc = subprocess.run([sys.executable, "-m", "rholatin", *args], capture_output=True, env=env, cwd=tmp_path)
    return proc.returncode, proc.stdout


def test_criterion_10_determinism(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps({"n": 4, "k": 6, "rho": [4, 3, 3, 2, 2, 2], "r": 2, "s": 1, "grid": [[1], [2]]}))
    runs = []
    for hashseed in (0, 1):
        outs = []
        outs.append(_cli(["complete", str(inst), "--seed", "3", "--emit", f"sq{hashseed}.json"], tmp_path, hashseed))
        outs.append(_cli(["generate", "--n", "5", "--k", "7", "--rho", "5,4,4,4,4,2,2", "--seed", "11"], tmp_path, hashseed))
        outs.append(_cli(["audit", "--seeds", "0..60", "--max-n", "4", "--log-file", f"log{hashseed}.jsonl"], tmp_path, hashseed))
        files = ((tmp_path / f"sq{hashseed}.json").read_bytes(), (tmp_path / f"log{hashseed}.jsonl").read_bytes())
        runs.append((outs, files))
    same = runs[0] == runs[1]
    codes = [code for code, _ in runs[0][0]]
    ok = same and codes == [0, 0, 0]
    report(capsys, 10, ok, f"complete/generate/audit outputs byte-identical across two processes: {same}; exit codes {codes}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-q"]))
