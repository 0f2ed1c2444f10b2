"""Epistemic models with meanings and their JSON file format.

A model has a set of states, one indistinguishability partition per agent,
a nonempty set of meanings for every state, and a valuation mapping each
state and variable to the subset of that state's meanings under which the
variable is true.  Meaning names are scoped to their state.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, NamedTuple

from .formula import is_identifier, RESERVED_WORDS

__all__ = [
    "Model",
    "Point",
    "ModelError",
    "FormatError",
    "DuplicateState",
    "DuplicateAgent",
    "DuplicateMeaning",
    "NotAPartition",
    "UnknownState",
    "UnknownAgent",
    "UnknownMeaning",
    "EmptyMeaningSet",
    "validate",
    "load",
    "loads",
    "save",
    "dumps",
    "indistinguishable",
]


class ModelError(ValueError):
    """Base class for every model construction or lookup failure."""


class FormatError(ModelError):
    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


class DuplicateState(ModelError):
    def __init__(self, state):
        self.state = state
        super().__init__(f"duplicate state {state!r}")


class DuplicateAgent(ModelError):
    def __init__(self, agent):
        self.agent = agent
        super().__init__(f"duplicate agent {agent!r}")


class DuplicateMeaning(ModelError):
    def __init__(self, state, meaning):
        self.state = state
        self.meaning = meaning
        super().__init__(f"duplicate meaning {meaning!r} in state {state!r}")


class NotAPartition(ModelError):
    def __init__(self, agent, reason: str):
        self.agent = agent
        super().__init__(f"indistinguishability blocks of agent {agent!r} are not a partition: {reason}")


class UnknownState(ModelError):
    def __init__(self, state):
        self.state = state
        super().__init__(f"unknown state {state!r}")


class UnknownAgent(ModelError):
    def __init__(self, agent):
        self.agent = agent
        super().__init__(f"unknown agent {agent!r}")


class UnknownMeaning(ModelError):
    def __init__(self, state, meaning, var=None):
        self.state = state
        self.meaning = meaning
        self.var = var
        where = f" (valuation of {var!r})" if var is not None else ""
        super().__init__(f"meaning {meaning!r} does not exist in state {state!r}{where}")


class EmptyMeaningSet(ModelError):
    def __init__(self, state):
        self.state = state
        super().__init__(f"state {state!r} has no meanings")


class Point(NamedTuple):
    state: str
    meaning: str


@dataclass(frozen=True, eq=True)
class Model:
    """A validated model.  Build instances through :func:`validate`."""

    states: tuple[str, ...]
    agents: tuple[str, ...]
    indist: Mapping[str, tuple[tuple[str, ...], ...]]
    meanings: Mapping[str, tuple[str, ...]]
    valuation: Mapping[str, Mapping[str, frozenset[str]]]
    _blocks: Mapping[str, Mapping[str, tuple[str, ...]]] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        blocks = {
            agent: {state: block for block in partition for state in block}
            for agent, partition in self.indist.items()
        }
        object.__setattr__(self, "_blocks", blocks)

    __hash__ = None  # mappings inside; not hashable

    def block(self, agent: str, state: str) -> tuple[str, ...]:
        """States indistinguishable from ``state`` for ``agent``, in model order."""
        try:
            by_state = self._blocks[agent]
        except KeyError:
            raise UnknownAgent(agent) from None
        try:
            return by_state[state]
        except KeyError:
            raise UnknownState(state) from None

    def true_meanings(self, state: str, var: str) -> frozenset[str]:
        return self.valuation[state].get(var, frozenset())

    def points(self) -> list[Point]:
        """All points, states in model order and meanings in per-state order."""
        return [Point(w, m) for w in self.states for m in self.meanings[w]]

    def check_point(self, point) -> Point:
        state, meaning = point
        if state not in self.meanings:
            raise UnknownState(state)
        if meaning not in self.meanings[state]:
            raise UnknownMeaning(state, meaning)
        return Point(state, meaning)

    def to_dict(self) -> dict[str, Any]:
        return {
            "states": list(self.states),
            "agents": list(self.agents),
            "indist": {a: [list(b) for b in self.indist[a]] for a in self.agents},
            "meanings": {w: list(self.meanings[w]) for w in self.states},
            "valuation": {
                w: {
                    p: [m for m in self.meanings[w] if m in ms]
                    for p, ms in sorted(self.valuation[w].items())
                }
                for w in self.states
            },
        }


def indistinguishable(model: Model, agent: str, w: str, u: str) -> bool:
    block = model.block(agent, w)
    if u not in model.meanings:
        raise UnknownState(u)
    return u in block


# ---------------------------------------------------------------------------
# Validation


def _str_list(raw, location: str) -> list[str]:
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise FormatError(location, "expected a list of strings")
    return raw


def _mapping(raw, location: str) -> dict:
    if not isinstance(raw, dict):
        raise FormatError(location, "expected an object")
    return raw


def _name(raw: str, location: str) -> str:
    if not raw or raw != raw.strip():
        raise FormatError(location, f"invalid name {raw!r}")
    return raw


def validate(raw: Mapping[str, Any] | Model) -> Model:
    """Check a parsed model description and build a :class:`Model`.

    States, agents and meanings keep their input order.  Valuation entries
    are normalised: empty subsets are dropped and the remaining subsets are
    frozensets.
    """
    if isinstance(raw, Model):
        raw = raw.to_dict()
    raw = _mapping(raw, "<root>")
    for key in ("states", "agents", "indist", "meanings"):
        if key not in raw:
            raise FormatError(key, "missing required key")
    unknown_keys = set(raw) - {"states", "agents", "indist", "meanings", "valuation"}
    if unknown_keys:
        raise FormatError(sorted(unknown_keys)[0], "unexpected key")

    states = _str_list(raw["states"], "states")
    if not states:
        raise FormatError("states", "a model needs at least one state")
    seen: set[str] = set()
    for i, w in enumerate(states):
        _name(w, f"states[{i}]")
        if w in seen:
            raise DuplicateState(w)
        seen.add(w)

    agents = _str_list(raw["agents"], "agents")
    seen_agents: set[str] = set()
    for i, a in enumerate(agents):
        if not is_identifier(a) or a in RESERVED_WORDS:
            raise FormatError(f"agents[{i}]", f"invalid agent name {a!r}")
        if a in seen_agents:
            raise DuplicateAgent(a)
        seen_agents.add(a)

    indist_raw = _mapping(raw["indist"], "indist")
    for a in indist_raw:
        if a not in seen_agents:
            raise UnknownAgent(a)
    indist: dict[str, tuple[tuple[str, ...], ...]] = {}
    for a in agents:
        if a not in indist_raw:
            raise NotAPartition(a, "no blocks given")
        blocks_raw = indist_raw[a]
        if not isinstance(blocks_raw, list):
            raise FormatError(f"indist.{a}", "expected a list of blocks")
        covered: set[str] = set()
        blocks = []
        for j, block in enumerate(blocks_raw):
            block = _str_list(block, f"indist.{a}[{j}]")
            if not block:
                raise NotAPartition(a, f"block {j} is empty")
            for w in block:
                if w not in seen:
                    raise UnknownState(w)
                if w in covered:
                    raise NotAPartition(a, f"state {w!r} occurs in more than one place")
                covered.add(w)
            blocks.append(tuple(block))
        missing = [w for w in states if w not in covered]
        if missing:
            raise NotAPartition(a, f"state {missing[0]!r} is in no block")
        indist[a] = tuple(blocks)

    meanings_raw = _mapping(raw["meanings"], "meanings")
    for w in meanings_raw:
        if w not in seen:
            raise UnknownState(w)
    meanings: dict[str, tuple[str, ...]] = {}
    for w in states:
        ms = _str_list(meanings_raw.get(w, []), f"meanings.{w}")
        if not ms:
            raise EmptyMeaningSet(w)
        if len(set(ms)) != len(ms):
            dup = next(m for m in ms if ms.count(m) > 1)
            raise DuplicateMeaning(w, dup)
        for k, m in enumerate(ms):
            _name(m, f"meanings.{w}[{k}]")
        meanings[w] = tuple(ms)

    valuation_raw = _mapping(raw.get("valuation", {}), "valuation")
    for w in valuation_raw:
        if w not in seen:
            raise UnknownState(w)
    valuation: dict[str, dict[str, frozenset[str]]] = {}
    for w in states:
        per_var = _mapping(valuation_raw.get(w, {}), f"valuation.{w}")
        vals = {}
        for p in sorted(per_var):
            if not is_identifier(p) or p in RESERVED_WORDS:
                raise FormatError(f"valuation.{w}", f"invalid variable name {p!r}")
            ms = _str_list(per_var[p], f"valuation.{w}.{p}")
            for m in ms:
                if m not in meanings[w]:
                    raise UnknownMeaning(w, m, p)
            if ms:
                vals[p] = frozenset(ms)
        valuation[w] = vals

    return Model(tuple(states), tuple(agents), indist, meanings, valuation)


# ---------------------------------------------------------------------------
# Files


def loads(text: str) -> Model:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return validate(raw)


def load(path) -> Model:
    """Read and validate a model file.  ``OSError`` propagates unchanged."""
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(model: Model) -> str:
    return json.dumps(model.to_dict(), indent=2) + "\n"


def save(model: Model, path) -> None:
    Path(path).write_text(dumps(model), encoding="utf-8")
