import random

import pytest

from kclogic.checker import satisfies
from kclogic.countermodel import SearchBounds, find_countermodel
from kclogic.fixtures import load_fixture
from kclogic.formula import Comp, Know, Top, Var, parse, render, subformulas
from kclogic.harness import (
    GenConfig,
    gen_formula,
    gen_model,
    random_formula,
    run_meaning_transfer_suite,
    run_soundness_suite,
    run_undefinability_suite,
)
from kclogic.model import validate
from kclogic.proof import PHI, _C, _K, _imp, instantiate


def test_gen_model_is_deterministic_and_valid():
    cfg = GenConfig(seed=1, max_states=2, max_meanings=2, num_agents=1, num_vars=1)
    m = gen_model(cfg)
    assert 1 <= len(m.states) <= 2
    assert m == gen_model(cfg)
    assert validate(m.to_dict()) == m


def test_many_generated_models_validate():
    rng = random.Random(0)
    for seed in range(1000):
        cfg = GenConfig(seed=seed, max_states=rng.randint(1, 5), max_meanings=rng.randint(1, 3))
        m = gen_model(cfg)
        assert validate(m.to_dict()) == m


def test_formula_classes():
    for seed in range(300):
        no_c = gen_formula(GenConfig(seed=seed, formula_depth=4, allow_c=False))
        assert not any(isinstance(g, Comp) for g in subformulas(no_c))
        no_k = gen_formula(GenConfig(seed=seed, formula_depth=4, allow_k=False))
        assert not any(isinstance(g, Know) for g in subformulas(no_k))
        leaf = gen_formula(GenConfig(seed=seed, formula_depth=0))
        assert isinstance(leaf, (Var, Top))


def test_generated_formulas_respect_signature_and_round_trip():
    cfg = GenConfig(seed=4, num_agents=2, num_vars=2, formula_depth=4)
    rng = random.Random(4)
    for _ in range(500):
        f = random_formula(rng, cfg)
        assert parse(render(f)) == f
        for g in subformulas(f):
            if isinstance(g, Var):
                assert g.name in cfg.variables
            if isinstance(g, (Know, Comp)):
                assert g.agent in cfg.agents


def test_gen_config_bounds():
    with pytest.raises(ValueError):
        GenConfig(max_states=0)
    with pytest.raises(ValueError):
        GenConfig(formula_depth=-1)


def test_soundness_suite_small_run():
    report = run_soundness_suite(GenConfig(seed=3), trials=50)
    assert report.ok, report.counterexamples[:1]
    assert set(report.checks) >= {
        "Truth", "Incomprehensible", "ComprehensionOfComprehension", "ModusPonens", "Necessitation",
    }
    assert report.checks["Truth"]["passed"] == 50


def test_soundness_suite_degenerate_model():
    report = run_soundness_suite(GenConfig(seed=1, max_states=1, max_meanings=1), trials=1)
    assert report.ok
    assert all(c["passed"] >= 1 for name, c in report.checks.items() if name not in ("ModusPonens",))


def test_soundness_suite_catches_a_bogus_axiom():
    bogus = {"ComprehensionImpliesKnowledge": _imp(_C("a", PHI), _K("a", PHI))}
    report = run_soundness_suite(GenConfig(seed=0), trials=100, schemas=bogus)
    assert not report.ok
    witness = report.counterexamples[0]
    model = validate(witness["model"])
    f = parse(witness["formula"])
    assert not satisfies(model, tuple(witness["point"]), f)
    # the bounded search also refutes the bogus schema
    assert find_countermodel(instantiate(bogus["ComprehensionImpliesKnowledge"], Var("p")),
                             SearchBounds(2, 1)).found


def test_undefinability_suite():
    report = run_undefinability_suite(trials=50, seed=2)
    assert report.ok
    assert report.checks["mirror_transfer_without_C"]["passed"] == 200
    assert report.checks["agreement_without_K"]["passed"] == 50


def test_undefinability_separating_facts():
    c_left, c_right = load_fixture("undef_c_left"), load_fixture("undef_c_right")
    k_left, k_right = load_fixture("undef_k_left"), load_fixture("undef_k_right")
    assert satisfies(c_left, ("1", "1"), parse("C[a] p"))
    assert not satisfies(c_right, ("1", "1"), parse("C[a] p"))
    assert satisfies(k_left, ("1", "1"), parse("K[a] p"))
    assert not satisfies(k_right, ("1", "1"), parse("K[a] p"))
    for x in "12":
        for y in "12":
            assert satisfies(c_left, (x, y), parse("K[a] p")) == satisfies(c_right, (y, x), parse("K[a] p"))


def test_comprehension_pair_valuations():
    left, right = load_fixture("undef_c_left"), load_fixture("undef_c_right")
    assert left.true_meanings("1", "p") == {"1", "2"}
    for x in "12":
        for y in "12":
            # mirror condition on the variable
            assert (y in left.true_meanings(x, "p")) == (x in right.true_meanings(y, "p"))
        # left valuation is consistent across meanings
        assert ("1" in left.true_meanings(x, "p")) == ("2" in left.true_meanings(x, "p"))
    assert "1" in right.true_meanings("1", "p") and "2" not in right.true_meanings("1", "p")


def test_meaning_transfer_suite():
    report = run_meaning_transfer_suite(GenConfig(seed=5), trials=100)
    assert report.ok
    assert report.checks["C"]["passed"] == 100


def test_reports_are_deterministic():
    a = run_soundness_suite(GenConfig(seed=9), trials=20).to_json()
    b = run_soundness_suite(GenConfig(seed=9), trials=20).to_json()
    assert a == b
    assert a != run_soundness_suite(GenConfig(seed=10), trials=20).to_json()
    assert run_undefinability_suite(20, 1).to_json() == run_undefinability_suite(20, 1).to_json()
