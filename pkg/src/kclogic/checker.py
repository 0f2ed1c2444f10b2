"""Satisfaction of formulas at points of a model.

Knowledge ``K[a] f`` holds at ``(w, m)`` when ``f`` holds under every
meaning of every state the agent cannot tell apart from ``w``.
Comprehension ``C[a] f`` holds at ``(w, m)`` when, in each such state,
``f`` is either true under all meanings or false under all of them.
"""

from __future__ import annotations

import enum

from .formula import Comp, Formula, Implies, Know, Not, Top, Var, signature
from .model import Model, Point, UnknownAgent, UnknownState

__all__ = [
    "SemanticsMode",
    "MeaningNotShared",
    "satisfies",
    "consistent_across_meanings",
    "valid_in_model",
    "failing_points",
    "check_agents",
]


class SemanticsMode(enum.Enum):
    STANDARD = "standard"
    # knowledge quantifies over related states at the current meaning only
    MEANING_INDEXED_K = "alt4"


class MeaningNotShared(ValueError):
    """The current meaning does not exist in an indistinguishable state."""

    def __init__(self, state, meaning):
        self.state = state
        self.meaning = meaning
        super().__init__(
            f"meaning {meaning!r} does not exist in indistinguishable state {state!r}"
        )


def check_agents(model: Model, f: Formula) -> None:
    agents, _ = signature(f)
    for a in sorted(agents):
        if a not in model.indist:
            raise UnknownAgent(a)


class _Evaluator:
    def __init__(self, model: Model, mode: SemanticsMode, memo: bool):
        self.model = model
        self.mode = SemanticsMode(mode)
        self.cache: dict | None = {} if memo else None

    def holds(self, w: str, m: str, f: Formula) -> bool:
        if self.cache is None:
            return self._eval(w, m, f)
        key = (w, m, f)
        try:
            return self.cache[key]
        except KeyError:
            value = self.cache[key] = self._eval(w, m, f)
            return value

    def _eval(self, w: str, m: str, f: Formula) -> bool:
        model = self.model
        if isinstance(f, Var):
            return m in model.true_meanings(w, f.name)
        if isinstance(f, Top):
            return True
        if isinstance(f, Not):
            return not self.holds(w, m, f.sub)
        if isinstance(f, Implies):
            return not self.holds(w, m, f.left) or self.holds(w, m, f.right)
        if isinstance(f, Know):
            block = model.block(f.agent, w)
            if self.mode is SemanticsMode.MEANING_INDEXED_K:
                for u in block:
                    if m not in model.meanings[u]:
                        raise MeaningNotShared(u, m)
                return all(self.holds(u, m, f.sub) for u in block)
            return all(self.holds(u, m2, f.sub) for u in block for m2 in model.meanings[u])
        if isinstance(f, Comp):
            # the current meaning m plays no role here
            for u in model.block(f.agent, w):
                for m1 in model.meanings[u]:
                    for m2 in model.meanings[u]:
                        if self.holds(u, m1, f.sub) and not self.holds(u, m2, f.sub):
                            return False
            return True
        raise TypeError(f"not a formula: {f!r}")


def satisfies(
    model: Model,
    point,
    f: Formula,
    mode: SemanticsMode = SemanticsMode.STANDARD,
    *,
    memo: bool = True,
) -> bool:
    """Decide whether ``f`` holds at ``point`` (a ``(state, meaning)`` pair).

    Raises ``UnknownAgent`` when ``f`` mentions an agent the model lacks,
    ``UnknownState``/``UnknownMeaning`` for a bad point, and
    ``MeaningNotShared`` under ``MEANING_INDEXED_K`` when a related state
    lacks the current meaning.
    """
    w, m = model.check_point(point)
    check_agents(model, f)
    return _Evaluator(model, mode, memo).holds(w, m, f)


def consistent_across_meanings(model: Model, state: str, f: Formula) -> bool:
    """True iff ``f`` has the same truth value under every meaning of ``state``."""
    check_agents(model, f)
    if state not in model.meanings:
        raise UnknownState(state)
    ev = _Evaluator(model, SemanticsMode.STANDARD, memo=True)
    values = {ev.holds(state, m, f) for m in model.meanings[state]}
    return len(values) == 1


def failing_points(model: Model, f: Formula) -> list[Point]:
    """Points where ``f`` is false, in canonical order."""
    check_agents(model, f)
    ev = _Evaluator(model, SemanticsMode.STANDARD, memo=True)
    return [p for p in model.points() if not ev.holds(p.state, p.meaning, f)]


def valid_in_model(model: Model, f: Formula) -> bool:
    check_agents(model, f)
    ev = _Evaluator(model, SemanticsMode.STANDARD, memo=True)
    return all(ev.holds(p.state, p.meaning, f) for p in model.points())
