"""Bounded exhaustive search for pointed models falsifying a formula.

Candidate models are enumerated in a fixed order:

1. number of states ``n`` from 1 to ``max_states`` (states ``s1..sn``);
2. one set partition per agent, each as a restricted growth string in
   lexicographic order, agents in sorted order;
3. meaning counts per state, each in ``1..max_meanings``, lexicographic
   (meanings ``m1..mk``);
4. valuations, lexicographic over the per-(state, variable) subsets with
   states outermost, each subset in binary-counting order (bit ``j`` is
   meaning ``m{j+1}``).

Within a model, points are tried in canonical order.  Finding nothing
within the bounds says nothing about validity in general.

For a fixed frame (steps 1-3) every valuation is checked at once with
numpy boolean arrays; :func:`enumerate_models` is the plain one-by-one
enumeration of the same sequence.
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .checker import satisfies
from .formula import Comp, Formula, Implies, Know, Not, Top, Var, signature
from .model import Model, Point, validate

__all__ = [
    "SearchBounds",
    "SearchStatus",
    "SearchResult",
    "restricted_growth_strings",
    "blocks_from_rgs",
    "search_signature",
    "enumerate_models",
    "find_countermodel",
    "find_model",
]

_LOW_BITS = 14


@dataclass(frozen=True)
class SearchBounds:
    max_states: int
    max_meanings: int
    time_limit: float | None = None  # seconds of wall-clock time

    def __post_init__(self):
        if self.max_states < 1 or self.max_meanings < 1:
            raise ValueError("search bounds must be at least 1")
        if self.time_limit is not None and self.time_limit < 0:
            raise ValueError("time limit must be nonnegative")


class SearchStatus(enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    TIMED_OUT = "timed_out"


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    model: Model | None = None
    point: Point | None = None
    candidates: int = 0  # candidate models examined, the witness included

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """Yield all restricted growth strings of length ``n`` in lexicographic order.

    ``a[0] == 0`` and ``a[i] <= 1 + max(a[:i])``; each string encodes one
    set partition of ``n`` items, so there are Bell(n) of them.
    """
    if n <= 0:
        yield ()
        return
    a = [0] * n
    # m[i] = max(a[:i+1])
    m = [0] * n
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] > m[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def blocks_from_rgs(rgs: Sequence[int], items: Sequence[str]) -> list[list[str]]:
    blocks: list[list[str]] = []
    for label, item in zip(rgs, items):
        if label == len(blocks):
            blocks.append([])
        blocks[label].append(item)
    return blocks


def search_signature(f: Formula) -> tuple[list[str], list[str]]:
    """Agents and variables to build candidates over, fresh ones if absent."""
    agents, variables = signature(f)
    return sorted(agents) or ["a"], sorted(variables) or ["p"]


@dataclass(frozen=True)
class _Frame:
    agents: tuple[str, ...]
    variables: tuple[str, ...]
    rgss: tuple[tuple[int, ...], ...]  # one per agent
    counts: tuple[int, ...]  # meanings per state

    @property
    def states(self) -> list[str]:
        return [f"s{i + 1}" for i in range(len(self.counts))]

    def points(self) -> list[tuple[int, int]]:
        return [(i, j) for i, k in enumerate(self.counts) for j in range(k)]

    @property
    def nbits(self) -> int:
        return len(self.variables) * sum(self.counts)

    def bit_positions(self) -> dict[tuple[int, str], int]:
        """Offset of the (state, variable) digit, counted from the low end."""
        offsets = {}
        pos = 0
        for i in reversed(range(len(self.counts))):
            for v in reversed(self.variables):
                offsets[(i, v)] = pos
                pos += self.counts[i]
        return offsets

    def model(self, index: int) -> Model:
        states = self.states
        offsets = self.bit_positions()
        valuation = {}
        for i, w in enumerate(states):
            per_var = {}
            for v in self.variables:
                digit = (index >> offsets[(i, v)]) & ((1 << self.counts[i]) - 1)
                per_var[v] = [f"m{j + 1}" for j in range(self.counts[i]) if digit >> j & 1]
            valuation[w] = per_var
        return validate({
            "states": states,
            "agents": list(self.agents),
            "indist": {a: blocks_from_rgs(r, states) for a, r in zip(self.agents, self.rgss)},
            "meanings": {w: [f"m{j + 1}" for j in range(k)] for w, k in zip(states, self.counts)},
            "valuation": valuation,
        })


def _frames(agents, variables, bounds: SearchBounds) -> Iterator[_Frame]:
    for n in range(1, bounds.max_states + 1):
        partitions = list(restricted_growth_strings(n))
        for rgss in itertools.product(partitions, repeat=len(agents)):
            for counts in itertools.product(range(1, bounds.max_meanings + 1), repeat=n):
                yield _Frame(tuple(agents), tuple(variables), rgss, counts)


def enumerate_models(agents: Sequence[str], variables: Sequence[str],
                     bounds: SearchBounds) -> Iterator[Model]:
    """Yield every candidate model in search order, one at a time."""
    for frame in _frames(sorted(agents), sorted(variables), bounds):
        for index in range(1 << frame.nbits):
            yield frame.model(index)


class _FrameEvaluator:
    """Evaluates formulas on a batch of valuations over one frame.

    Arrays have shape (batch, points); column order is canonical point order.
    """

    def __init__(self, frame: _Frame, columns: dict[str, np.ndarray], rows: int):
        self.frame = frame
        self.columns = columns
        self.rows = rows
        pts = frame.points()
        self.state_cols = [[c for c, (i, _) in enumerate(pts) if i == s] for s in range(len(frame.counts))]
        self.blocks = {
            a: [list(b) for b in blocks_from_rgs(r, range(len(frame.counts)))]
            for a, r in zip(frame.agents, frame.rgss)
        }
        self.cache: dict[Formula, np.ndarray] = {}

    def ext(self, f: Formula) -> np.ndarray:
        hit = self.cache.get(f)
        if hit is not None:
            return hit
        out = self._ext(f)
        self.cache[f] = out
        return out

    def _ext(self, f: Formula) -> np.ndarray:
        npts = len(self.frame.points())
        if isinstance(f, Var):
            return self.columns[f.name]
        if isinstance(f, Top):
            return np.ones((self.rows, npts), dtype=bool)
        if isinstance(f, Not):
            return ~self.ext(f.sub)
        if isinstance(f, Implies):
            return ~self.ext(f.left) | self.ext(f.right)
        if isinstance(f, (Know, Comp)):
            sub = self.ext(f.sub)
            out = np.empty_like(sub)
            for block in self.blocks[f.agent]:
                cols = [c for s in block for c in self.state_cols[s]]
                if isinstance(f, Know):
                    value = sub[:, cols].all(axis=1)
                else:
                    value = np.ones(self.rows, dtype=bool)
                    for s in block:
                        part = sub[:, self.state_cols[s]]
                        value &= part.all(axis=1) | ~part.any(axis=1)
                out[:, cols] = value[:, None]
            return out
        raise TypeError(f"not a formula: {f!r}")


def _chunks(frame: _Frame) -> Iterator[tuple[int, dict[str, np.ndarray], int]]:
    """Yield (first index, variable columns, row count) covering all valuations."""
    nbits = frame.nbits
    low = min(nbits, _LOW_BITS)
    t_low = np.arange(1 << low, dtype=np.int64)
    offsets = frame.bit_positions()
    pts = frame.points()
    for high in range(1 << (nbits - low)):
        columns = {}
        for v in frame.variables:
            cols = []
            for i, j in pts:
                pos = offsets[(i, v)] + j
                if pos < low:
                    cols.append(((t_low >> pos) & 1).astype(bool))
                else:
                    cols.append(np.full(t_low.shape, bool((high >> (pos - low)) & 1)))
            columns[v] = np.stack(cols, axis=1)
        yield high << low, columns, len(t_low)


def _search(f: Formula, bounds: SearchBounds, want: bool, vectorized: bool) -> SearchResult:
    agents, variables = search_signature(f)
    deadline = None if bounds.time_limit is None else time.monotonic() + bounds.time_limit
    examined = 0

    def timed_out() -> bool:
        return deadline is not None and time.monotonic() > deadline

    for frame in _frames(agents, variables, bounds):
        if timed_out():
            return SearchResult(SearchStatus.TIMED_OUT, candidates=examined)
        if not vectorized:
            for index in range(1 << frame.nbits):
                if timed_out():
                    return SearchResult(SearchStatus.TIMED_OUT, candidates=examined)
                model = frame.model(index)
                examined += 1
                for point in model.points():
                    if satisfies(model, point, f) != want:
                        return SearchResult(SearchStatus.FOUND, model, point, examined)
            continue
        for start, columns, rows in _chunks(frame):
            if timed_out():
                return SearchResult(SearchStatus.TIMED_OUT, candidates=examined)
            ext = _FrameEvaluator(frame, columns, rows).ext(f)
            bad = ext != want
            hit_rows = bad.any(axis=1)
            if hit_rows.any():
                r = int(np.argmax(hit_rows))
                c = int(np.argmax(bad[r]))
                model = frame.model(start + r)
                point = model.points()[c]
                # independent re-check through the pointwise checker
                if satisfies(model, point, f) == want:
                    raise AssertionError(f"vectorized search disagrees with checker at {point}")
                return SearchResult(SearchStatus.FOUND, model, point, examined + r + 1)
            examined += rows
    return SearchResult(SearchStatus.EXHAUSTED, candidates=examined)


def find_countermodel(f: Formula, bounds: SearchBounds, *, vectorized: bool = True) -> SearchResult:
    """Return the first candidate pointed model at which ``f`` is false."""
    return _search(f, bounds, want=True, vectorized=vectorized)


def find_model(f: Formula, bounds: SearchBounds, *, vectorized: bool = True) -> SearchResult:
    """Return the first candidate pointed model at which ``f`` is true.

    Same as searching for a countermodel of ``~f``.
    """
    return _search(Not(f), bounds, want=True, vectorized=vectorized)
