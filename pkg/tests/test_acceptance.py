"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]``/``[FAIL] criterion N`` line; the
lines are repeated in the "acceptance criteria" section of the pytest
summary.
"""

import random
import time

from kclogic.checker import satisfies
from kclogic.countermodel import SearchBounds, SearchStatus, find_countermodel
from kclogic.fixtures import load_fixture, load_proof_fixture
from kclogic.formula import parse, render
from kclogic.harness import (
    GenConfig,
    random_formula,
    run_meaning_transfer_suite,
    run_soundness_suite,
    run_undefinability_suite,
)
from kclogic.proof import Axiom, AxiomName, Proof, ProofLine, RejectReason, check_proof, instantiate


def _everywhere(model, text, expected, state=None):
    f = parse(text)
    points = [pt for pt in model.points() if state is None or pt.state == state]
    return bool(points) and all(satisfies(model, pt, f) == expected for pt in points)


def test_criterion_1_fixture_facts(criterion):
    start = time.perf_counter()
    bogota, nyc, ava = load_fixture("bogota"), load_fixture("nyc"), load_fixture("ava")
    c_left, c_right = load_fixture("undef_c_left"), load_fixture("undef_c_right")
    k_left, k_right = load_fixture("undef_k_left"), load_fixture("undef_k_right")
    facts = {
        "bogota K false": _everywhere(bogota, "K[atc] p", False),
        "bogota C true": _everywhere(bogota, "C[atc] p", True),
        "nyc K false": _everywhere(nyc, "K[atc] p", False) and len(nyc.points()) == 4,
        "nyc C false": _everywhere(nyc, "C[atc] p", False),
        "ava (v,m1) not p": not satisfies(ava, ("v", "m1"), parse("p")),
        "ava (v,m2) p": satisfies(ava, ("v", "m2"), parse("p")),
        "ava C false at w": _everywhere(ava, "C[ava] p", False, "w"),
        "ava C true at u": _everywhere(ava, "C[ava] p", True, "u"),
        "C pair left": satisfies(c_left, ("1", "1"), parse("C[a] p")),
        "C pair right": not satisfies(c_right, ("1", "1"), parse("C[a] p")),
        "K pair left": satisfies(k_left, ("1", "1"), parse("K[a] p")),
        "K pair right": not satisfies(k_right, ("1", "1"), parse("K[a] p")),
    }
    elapsed = time.perf_counter() - start
    wrong = [name for name, ok in facts.items() if not ok]
    ok = not wrong and elapsed < 1.0
    criterion(1, f"{len(facts) - len(wrong)}/{len(facts)} fixture facts exact in {elapsed:.3f}s (< 1s)"
              + (f"; wrong: {wrong}" if wrong else ""), ok)
    assert ok


def test_criterion_2_soundness(criterion):
    start = time.perf_counter()
    report = run_soundness_suite(GenConfig(seed=0), trials=500)
    elapsed = time.perf_counter() - start
    axioms = [report.checks[a.value] for a in AxiomName]
    rules = [report.checks["ModusPonens"], report.checks["Necessitation"]]
    complete = all(c["passed"] == 500 for c in axioms) and all(c["passed"] > 0 for c in rules)
    ok = report.ok and complete and elapsed < 30.0
    criterion(2, f"10 schemas x 500 trials valid, {report.failures} failures, "
                 f"MP/Nec preserved, {elapsed:.2f}s (< 30s)", ok)
    assert ok, report.counterexamples[:1]


def test_criterion_3_undefinability(criterion):
    start = time.perf_counter()
    report = run_undefinability_suite(trials=200, seed=0)
    elapsed = time.perf_counter() - start
    counts = report.checks
    complete = (counts["mirror_transfer_without_C"]["passed"] == 200 * 4
                and counts["agreement_without_K"]["passed"] == 200)
    ok = report.ok and complete and elapsed < 10.0
    criterion(3, f"200 C-free and 200 K-free formulas, {report.failures} failures, "
                 f"{elapsed:.2f}s (< 10s)", ok)
    assert ok, report.counterexamples[:1]


def test_criterion_4_meaning_transfer(criterion):
    report = run_meaning_transfer_suite(GenConfig(seed=0), trials=500)
    c = report.checks["C"]
    ok = c["passed"] == 500 and c["failed"] == 0
    criterion(4, f"C meaning-independent in {c['passed']}/500 trials", ok)
    assert ok, report.counterexamples[:1]


def test_criterion_5_proof_checker(criterion):
    sample = check_proof(load_proof_fixture("sample_comprehension_of_tautology"))
    bad = check_proof(load_proof_fixture("sample_necessitation_on_hypothesis"))
    rng = random.Random(5)
    cfg = GenConfig(formula_depth=3)
    accepted = 0
    for _ in range(50):
        name = rng.choice(list(AxiomName))
        f = instantiate(name, random_formula(rng, cfg), random_formula(rng, cfg),
                        rng.choice(cfg.agents), rng.choice(cfg.agents))
        accepted += check_proof(Proof((), (ProofLine(f, Axiom(name)),))).accepted
    ok = (sample.accepted and render(sample.goal) == "C[a](p -> p)"
          and not bad.accepted and bad.line == 2 and bad.reason is RejectReason.NECESSITATION_ON_HYPOTHESIS
          and accepted == 50)
    criterion(5, f"sample {sample.describe()}; hypothesis proof {bad.describe().split(':')[0]}; "
                 f"{accepted}/50 one-line axiom proofs accepted", ok)
    assert ok


def test_criterion_6_countermodels(criterion):
    f = parse("C[a] p -> K[a] p")
    start = time.perf_counter()
    witness = find_countermodel(f, SearchBounds(2, 1))
    witness_time = time.perf_counter() - start
    witness_ok = witness.found and not satisfies(witness.model, witness.point, f) and witness_time < 1.0

    rng = random.Random(6)
    cfg = GenConfig(num_agents=2, num_vars=2, formula_depth=2)
    start = time.perf_counter()
    exhausted = 0
    for name in AxiomName:
        g = instantiate(name, random_formula(rng, cfg), random_formula(rng, cfg),
                        rng.choice(cfg.agents), rng.choice(cfg.agents))
        exhausted += find_countermodel(g, SearchBounds(3, 2)).status is SearchStatus.EXHAUSTED
    axiom_time = time.perf_counter() - start
    ok = witness_ok and exhausted == 10 and axiom_time < 60.0
    criterion(6, f"C->K witness in {witness_time * 1000:.1f}ms (< 1s); "
                 f"{exhausted}/10 axioms exhausted at (3,2) in {axiom_time:.2f}s (< 60s)", ok)
    assert ok


def test_criterion_7_round_trip_and_determinism(criterion):
    rng = random.Random(7)
    stable = 0
    for i in range(1000):
        cfg = GenConfig(num_agents=1 + i % 3, num_vars=1 + i % 4, formula_depth=i % 6)
        f = random_formula(rng, cfg)
        stable += parse(render(f)) == f
    same = all(
        run() == run()
        for run in (
            lambda: run_soundness_suite(GenConfig(seed=42), trials=30).to_json(),
            lambda: run_undefinability_suite(trials=30, seed=42).to_json(),
            lambda: run_meaning_transfer_suite(GenConfig(seed=42), trials=30).to_json(),
        )
    )
    ok = stable == 1000 and same
    criterion(7, f"{stable}/1000 formulas round-trip; reports byte-identical: {same}", ok)
    assert ok
