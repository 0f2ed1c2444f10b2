"""Seeded random models/formulas and the property suites built on them.

Every suite returns a :class:`Report` whose JSON form depends only on the
inputs, so two runs with the same seed are byte-identical.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Mapping

from . import fixtures
from .checker import failing_points, satisfies, valid_in_model
from .countermodel import blocks_from_rgs
from .formula import Comp, Formula, Implies, Know, Not, Top, Var, render
from .model import Model, Point, validate
from .proof import AXIOM_SCHEMAS, Pattern, instantiate

__all__ = [
    "GenConfig",
    "Report",
    "gen_model",
    "gen_formula",
    "random_model",
    "random_formula",
    "run_soundness_suite",
    "run_undefinability_suite",
    "run_meaning_transfer_suite",
]

AGENT_NAMES = "abcdefgh"
VAR_NAMES = "pqrstuvw"


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_states: int = 4
    max_meanings: int = 3
    num_agents: int = 2
    num_vars: int = 2
    formula_depth: int = 2
    allow_c: bool = True
    allow_k: bool = True

    def __post_init__(self):
        for name in ("max_states", "max_meanings", "num_agents", "num_vars"):
            if not 1 <= getattr(self, name) <= 8:
                raise ValueError(f"{name} must be between 1 and 8")
        if self.formula_depth < 0:
            raise ValueError("formula_depth must be nonnegative")

    @property
    def agents(self) -> list[str]:
        return list(AGENT_NAMES[: self.num_agents])

    @property
    def variables(self) -> list[str]:
        return list(VAR_NAMES[: self.num_vars])

    def to_dict(self) -> dict[str, Any]:
        return dict(self.__dict__)


def _random_rgs(rng: random.Random, n: int) -> list[int]:
    rgs = [0]
    for _ in range(n - 1):
        rgs.append(rng.randint(0, max(rgs) + 1))
    return rgs


def random_model(rng: random.Random, cfg: GenConfig) -> Model:
    n = rng.randint(1, cfg.max_states)
    states = [f"s{i + 1}" for i in range(n)]
    indist = {a: blocks_from_rgs(_random_rgs(rng, n), states) for a in cfg.agents}
    meanings = {w: [f"m{j + 1}" for j in range(rng.randint(1, cfg.max_meanings))] for w in states}
    valuation = {
        w: {p: [m for m in meanings[w] if rng.random() < 0.5] for p in cfg.variables}
        for w in states
    }
    return validate({
        "states": states,
        "agents": cfg.agents,
        "indist": indist,
        "meanings": meanings,
        "valuation": valuation,
    })


def random_formula(rng: random.Random, cfg: GenConfig, depth: int | None = None) -> Formula:
    depth = cfg.formula_depth if depth is None else depth
    if depth <= 0 or rng.random() < 0.2:
        if rng.random() < 0.1:
            return Top()
        return Var(rng.choice(cfg.variables))
    kinds = ["not", "imp"]
    if cfg.allow_k:
        kinds.append("K")
    if cfg.allow_c:
        kinds.append("C")
    kind = rng.choice(kinds)
    if kind == "not":
        return Not(random_formula(rng, cfg, depth - 1))
    if kind == "imp":
        return Implies(random_formula(rng, cfg, depth - 1), random_formula(rng, cfg, depth - 1))
    sub = random_formula(rng, cfg, depth - 1)
    agent = rng.choice(cfg.agents)
    return Know(agent, sub) if kind == "K" else Comp(agent, sub)


def gen_model(cfg: GenConfig) -> Model:
    return random_model(random.Random(cfg.seed), cfg)


def gen_formula(cfg: GenConfig) -> Formula:
    return random_formula(random.Random(cfg.seed), cfg)


def _trial_rng(seed: int, trial: int, tag: str) -> random.Random:
    # string seeds hash through sha512, independent of PYTHONHASHSEED
    return random.Random(f"{tag}:{seed}:{trial}")


@dataclass
class Report:
    suite: str
    seed: int
    trials: int
    config: dict[str, Any] = field(default_factory=dict)
    checks: dict[str, dict[str, int]] = field(default_factory=dict)
    counterexamples: list[dict[str, Any]] = field(default_factory=list)

    max_counterexamples = 20

    def record(self, check: str, ok: bool, detail: Mapping[str, Any] | None = None) -> None:
        counts = self.checks.setdefault(check, {"passed": 0, "failed": 0})
        counts["passed" if ok else "failed"] += 1
        if not ok and len(self.counterexamples) < self.max_counterexamples:
            self.counterexamples.append({"check": check, **(detail or {})})

    @property
    def ok(self) -> bool:
        return all(c["failed"] == 0 for c in self.checks.values())

    @property
    def failures(self) -> int:
        return sum(c["failed"] for c in self.checks.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "config": self.config,
            "ok": self.ok,
            "checks": self.checks,
            "counterexamples": self.counterexamples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _witness(model: Model, f: Formula, trial: int, **extra) -> dict[str, Any]:
    bad = failing_points(model, f)
    return {
        "trial": trial,
        "formula": render(f),
        "model": model.to_dict(),
        "point": list(bad[0]) if bad else None,
        **extra,
    }


def run_soundness_suite(cfg: GenConfig | None = None, trials: int = 500,
                        schemas: Mapping[str, Pattern] | None = None) -> Report:
    """Check every axiom schema and both rules on random models.

    ``schemas`` replaces the ten axioms, e.g. to confirm that a bogus
    schema is caught.  Axiom instances use metavariable formulas of depth
    at most 2.
    """
    cfg = cfg or GenConfig()
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if schemas is None:
        schemas = {name.value: pat for name, pat in AXIOM_SCHEMAS.items()}
    small = GenConfig(**{**cfg.to_dict(), "formula_depth": min(cfg.formula_depth, 2)})
    report = Report("soundness", cfg.seed, trials, cfg.to_dict())
    for trial in range(trials):
        rng = _trial_rng(cfg.seed, trial, "soundness")
        model = random_model(rng, cfg)
        instances = []
        for name, pattern in schemas.items():
            phi = random_formula(rng, small)
            psi = random_formula(rng, small)
            a, b = rng.choice(cfg.agents), rng.choice(cfg.agents)
            f = instantiate(pattern, phi, psi, a, b)
            instances.append(f)
            ok = valid_in_model(model, f)
            report.record(name, ok, None if ok else _witness(model, f, trial))

        # rule checks: premises drawn from axiom instances and random formulas
        extras = [random_formula(rng, cfg) for _ in range(2)]
        pool = instances + extras
        valid = {f: valid_in_model(model, f) for f in pool}
        for phi in pool:
            psi = rng.choice(pool)
            imp = Implies(phi, psi)
            if valid[phi] and valid_in_model(model, imp):
                ok = valid[psi]
                report.record("ModusPonens", ok, None if ok else _witness(model, psi, trial))
            if valid[phi]:
                a = rng.choice(cfg.agents)
                nec = Know(a, phi)
                ok = valid_in_model(model, nec)
                report.record("Necessitation", ok, None if ok else _witness(model, nec, trial))
    return report


def run_undefinability_suite(trials: int = 200, seed: int = 0) -> Report:
    """Knowledge and comprehension cannot express each other.

    On the two comprehension fixtures, every formula without C holds at
    (x, y) on the left iff it holds at (y, x) on the right, yet ``C[a] p``
    separates (1, 1).  On the two knowledge fixtures, every formula
    without K agrees at (1, 1), yet ``K[a] p`` separates it.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    c_left, c_right = fixtures.load_fixture("undef_c_left"), fixtures.load_fixture("undef_c_right")
    k_left, k_right = fixtures.load_fixture("undef_k_left"), fixtures.load_fixture("undef_k_right")
    report = Report("undefinability", seed, trials)
    p = Var("p")

    no_c = GenConfig(seed=seed, num_agents=1, num_vars=1, formula_depth=4, allow_c=False)
    for trial in range(trials):
        f = random_formula(_trial_rng(seed, trial, "no-C"), no_c)
        for x in ("1", "2"):
            for y in ("1", "2"):
                ok = satisfies(c_left, (x, y), f) == satisfies(c_right, (y, x), f)
                report.record("mirror_transfer_without_C", ok,
                              None if ok else {"trial": trial, "formula": render(f), "point": [x, y]})
    report.record("C_separates_left", satisfies(c_left, ("1", "1"), Comp("a", p)))
    report.record("C_separates_right", not satisfies(c_right, ("1", "1"), Comp("a", p)))

    no_k = GenConfig(seed=seed, num_agents=1, num_vars=1, formula_depth=4, allow_k=False)
    for trial in range(trials):
        f = random_formula(_trial_rng(seed, trial, "no-K"), no_k)
        ok = satisfies(k_left, ("1", "1"), f) == satisfies(k_right, ("1", "1"), f)
        report.record("agreement_without_K", ok,
                      None if ok else {"trial": trial, "formula": render(f)})
    report.record("K_separates_left", satisfies(k_left, ("1", "1"), Know("a", p)))
    report.record("K_separates_right", not satisfies(k_right, ("1", "1"), Know("a", p)))
    return report


def run_meaning_transfer_suite(cfg: GenConfig | None = None, trials: int = 500) -> Report:
    """Comprehension (and knowledge) at a state does not depend on the meaning."""
    cfg = cfg or GenConfig()
    report = Report("meaning_transfer", cfg.seed, trials, cfg.to_dict())
    for trial in range(trials):
        rng = _trial_rng(cfg.seed, trial, "transfer")
        model = random_model(rng, cfg)
        phi = random_formula(rng, cfg)
        w = rng.choice(model.states)
        m1, m2 = rng.choice(model.meanings[w]), rng.choice(model.meanings[w])
        a = rng.choice(cfg.agents)
        for name, f in (("C", Comp(a, phi)), ("K", Know(a, phi))):
            ok = satisfies(model, Point(w, m1), f) == satisfies(model, Point(w, m2), f)
            report.record(name, ok, None if ok else _witness(model, f, trial, meanings=[m1, m2]))
    return report
