"""Hilbert-style proof checking for the knowledge/comprehension calculus.

A proof is a list of lines, each justified as an axiom instance, a
propositional tautology instance, a hypothesis, Modus Ponens, or
Necessitation.  Necessitation may only be applied to lines that do not
depend on hypotheses, so a single checker covers both plain theoremhood
and derivability from a set of extra assumptions.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Union

from .formula import (
    Comp,
    Formula,
    FormulaSyntaxError,
    Implies,
    Know,
    Not,
    Top,
    Var,
    is_identifier,
    parse,
    render,
)

__all__ = [
    "AxiomName",
    "AXIOM_SCHEMAS",
    "instantiate",
    "match_schema",
    "match_axiom",
    "TooManyAtoms",
    "is_tautology_instance",
    "Axiom",
    "Tautology",
    "Hypothesis",
    "ModusPonens",
    "Necessitation",
    "ProofLine",
    "Proof",
    "RejectReason",
    "Verdict",
    "check_proof",
    "ProofFormatError",
    "proof_from_dict",
    "proof_to_dict",
    "load_proof",
]


class AxiomName(enum.Enum):
    TRUTH = "Truth"
    NEGATIVE_INTROSPECTION = "NegativeIntrospection"
    DISTRIBUTIVITY = "Distributivity"
    COMPREHENSION_OF_KNOWN = "ComprehensionOfKnown"
    INTROSPECTION_OF_COMPREHENSION = "IntrospectionOfComprehension"
    COMPREHENSION_OF_NEGATION = "ComprehensionOfNegation"
    COMPREHENSION_OF_IMPLICATION = "ComprehensionOfImplication"
    SUBSTITUTION = "Substitution"
    COMPREHENSION_OF_COMPREHENSION = "ComprehensionOfComprehension"
    INCOMPREHENSIBLE = "Incomprehensible"


# Schema patterns are nested tuples.  ("meta", "phi") is a formula
# metavariable; the agent slot of ("K", ...) / ("C", ...) holds an agent
# metavariable name.  Distinct agent metavariables may bind the same agent.

Pattern = tuple

PHI: Pattern = ("meta", "phi")
PSI: Pattern = ("meta", "psi")


def _not(p: Pattern) -> Pattern:
    return ("not", p)


def _imp(p: Pattern, q: Pattern) -> Pattern:
    return ("imp", p, q)


def _K(agent: str, p: Pattern) -> Pattern:
    return ("K", agent, p)


def _C(agent: str, p: Pattern) -> Pattern:
    return ("C", agent, p)


def _iff(p: Pattern, q: Pattern) -> Pattern:
    # same desugaring as the parser: (p -> q) & (q -> p)
    return _not(_imp(_imp(p, q), _not(_imp(q, p))))


AXIOM_SCHEMAS: dict[AxiomName, Pattern] = {
    AxiomName.TRUTH: _imp(_K("a", PHI), PHI),
    AxiomName.NEGATIVE_INTROSPECTION: _imp(_not(_K("a", PHI)), _K("a", _not(_K("a", PHI)))),
    AxiomName.DISTRIBUTIVITY: _imp(_K("a", _imp(PHI, PSI)), _imp(_K("a", PHI), _K("a", PSI))),
    AxiomName.COMPREHENSION_OF_KNOWN: _imp(_K("a", PHI), _C("a", PHI)),
    AxiomName.INTROSPECTION_OF_COMPREHENSION: _imp(_C("a", PHI), _K("a", _C("a", PHI))),
    AxiomName.COMPREHENSION_OF_NEGATION: _imp(_C("a", PHI), _C("a", _not(PHI))),
    AxiomName.COMPREHENSION_OF_IMPLICATION: _imp(
        _C("a", PHI), _imp(_C("a", PSI), _C("a", _imp(PHI, PSI)))
    ),
    AxiomName.SUBSTITUTION: _imp(_K("a", _iff(PHI, PSI)), _imp(_C("a", PHI), _C("a", PSI))),
    AxiomName.COMPREHENSION_OF_COMPREHENSION: _C("a", _C("b", PHI)),
    AxiomName.INCOMPREHENSIBLE: _C("a", _imp(_C("b", PHI), PHI)),
}


def instantiate(schema: AxiomName | Pattern, phi: Formula, psi: Formula = Top(),
                a: str = "a", b: str | None = None) -> Formula:
    """Build the instance of ``schema`` with the given metavariable values."""
    pattern = AXIOM_SCHEMAS[schema] if isinstance(schema, AxiomName) else schema
    formulas = {"phi": phi, "psi": psi}
    agents = {"a": a, "b": a if b is None else b}

    def build(p: Pattern) -> Formula:
        tag = p[0]
        if tag == "meta":
            return formulas[p[1]]
        if tag == "not":
            return Not(build(p[1]))
        if tag == "imp":
            return Implies(build(p[1]), build(p[2]))
        if tag == "K":
            return Know(agents[p[1]], build(p[2]))
        if tag == "C":
            return Comp(agents[p[1]], build(p[2]))
        raise ValueError(f"bad pattern node {p!r}")

    return build(pattern)


def match_schema(pattern: Pattern, f: Formula) -> dict[str, Any] | None:
    """Return metavariable bindings making ``pattern`` equal ``f``, or None."""
    env: dict[str, Any] = {}

    def bind(key: str, value) -> bool:
        if key in env:
            return env[key] == value
        env[key] = value
        return True

    def go(p: Pattern, g: Formula) -> bool:
        tag = p[0]
        if tag == "meta":
            return bind("f:" + p[1], g)
        if tag == "not":
            return isinstance(g, Not) and go(p[1], g.sub)
        if tag == "imp":
            return isinstance(g, Implies) and go(p[1], g.left) and go(p[2], g.right)
        if tag == "K":
            return isinstance(g, Know) and bind("a:" + p[1], g.agent) and go(p[2], g.sub)
        if tag == "C":
            return isinstance(g, Comp) and bind("a:" + p[1], g.agent) and go(p[2], g.sub)
        raise ValueError(f"bad pattern node {p!r}")

    if not go(pattern, f):
        return None
    return {k.split(":", 1)[1]: v for k, v in env.items()}


def match_axiom(f: Formula) -> frozenset[AxiomName]:
    """All axiom schemas of which ``f`` is an instance."""
    return frozenset(name for name, pat in AXIOM_SCHEMAS.items() if match_schema(pat, f) is not None)


# ---------------------------------------------------------------------------
# Tautologies


class TooManyAtoms(ValueError):
    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(f"{count} distinct atoms exceed the truth-table limit of {limit}")


MAX_ATOMS = 20


def _atom_column(i: int, n: int) -> int:
    # bit r of the result is bit i of r, for r in range(2**n)
    width = 1 << i
    col = ((1 << width) - 1) << width
    length = width << 1
    rows = 1 << n
    while length < rows:
        col |= col << length
        length <<= 1
    return col


def is_tautology_instance(f: Formula, max_atoms: int = MAX_ATOMS) -> bool:
    """Check ``f`` propositionally, treating modal subformulas as atoms.

    Every maximal variable, ``K[a] g`` or ``C[a] g`` subformula becomes an
    atom (equal subformulas share one); ``top`` is the constant true.  The
    truth table is evaluated bit-parallel, one bit per row.
    """
    atoms: dict[Formula, int] = {}

    def collect(g: Formula) -> None:
        if isinstance(g, (Var, Know, Comp)):
            atoms.setdefault(g, len(atoms))
        elif isinstance(g, Not):
            collect(g.sub)
        elif isinstance(g, Implies):
            collect(g.left)
            collect(g.right)

    collect(f)
    n = len(atoms)
    if n > max_atoms:
        raise TooManyAtoms(n, max_atoms)
    full = (1 << (1 << n)) - 1
    columns = {g: _atom_column(i, n) for g, i in atoms.items()}

    def ev(g: Formula) -> int:
        if isinstance(g, Top):
            return full
        if isinstance(g, Not):
            return full & ~ev(g.sub)
        if isinstance(g, Implies):
            return full & (~ev(g.left) | ev(g.right))
        return columns[g]

    return ev(f) == full


# ---------------------------------------------------------------------------
# Proofs


@dataclass(frozen=True)
class Axiom:
    name: AxiomName


@dataclass(frozen=True)
class Tautology:
    pass


@dataclass(frozen=True)
class Hypothesis:
    index: int  # 0-based into Proof.hypotheses


@dataclass(frozen=True)
class ModusPonens:
    minor: int  # 1-based line holding phi
    major: int  # 1-based line holding phi -> psi


@dataclass(frozen=True)
class Necessitation:
    agent: str
    premise: int  # 1-based


Rule = Union[Axiom, Tautology, Hypothesis, ModusPonens, Necessitation]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    rule: Rule


@dataclass(frozen=True)
class Proof:
    hypotheses: tuple[Formula, ...]
    lines: tuple[ProofLine, ...]

    @property
    def goal(self) -> Formula:
        return self.lines[-1].formula


class RejectReason(enum.Enum):
    BAD_AXIOM_INSTANCE = "BadAxiomInstance"
    NOT_A_TAUTOLOGY = "NotATautology"
    BAD_MP_SHAPE = "BadMPShape"
    BAD_NECESSITATION_SHAPE = "BadNecessitationShape"
    NECESSITATION_ON_HYPOTHESIS = "NecessitationOnHypothesis"
    DANGLING_REFERENCE = "DanglingReference"
    HYPOTHESIS_MISMATCH = "HypothesisMismatch"
    EMPTY_PROOF = "EmptyProof"


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    goal: Formula | None = None
    line: int | None = None  # 1-based line that failed
    reason: RejectReason | None = None
    message: str = ""
    theorem_only: tuple[bool, ...] = ()

    def __bool__(self):
        return self.accepted

    def describe(self) -> str:
        if self.accepted:
            return f"Accept({render(self.goal)})"
        return f"Reject({self.line}, {self.reason.value}): {self.message}"


class _Reject(Exception):
    def __init__(self, reason: RejectReason, message: str):
        self.reason = reason
        self.message = message


def _earlier(ref: int, current: int) -> int:
    if not isinstance(ref, int) or not 1 <= ref < current:
        raise _Reject(RejectReason.DANGLING_REFERENCE, f"line {ref} is not an earlier line")
    return ref - 1


def check_proof(proof: Proof) -> Verdict:
    """Check every line of ``proof``; stop at the first unjustified one."""
    if not proof.lines:
        return Verdict(False, line=0, reason=RejectReason.EMPTY_PROOF, message="proof has no lines")
    flags: list[bool] = []
    for k, line in enumerate(proof.lines, start=1):
        try:
            flags.append(_check_line(proof, k, line, flags))
        except _Reject as rej:
            return Verdict(False, line=k, reason=rej.reason, message=rej.message,
                           theorem_only=tuple(flags))
    return Verdict(True, goal=proof.goal, theorem_only=tuple(flags))


def _check_line(proof: Proof, k: int, line: ProofLine, flags: list[bool]) -> bool:
    f, rule = line.formula, line.rule
    if isinstance(rule, Axiom):
        if match_schema(AXIOM_SCHEMAS[rule.name], f) is None:
            raise _Reject(RejectReason.BAD_AXIOM_INSTANCE,
                          f"{render(f)} is not an instance of {rule.name.value}")
        return True
    if isinstance(rule, Tautology):
        try:
            ok = is_tautology_instance(f)
        except TooManyAtoms as exc:
            raise _Reject(RejectReason.NOT_A_TAUTOLOGY, str(exc)) from None
        if not ok:
            raise _Reject(RejectReason.NOT_A_TAUTOLOGY, f"{render(f)} is not a tautology instance")
        return True
    if isinstance(rule, Hypothesis):
        if not isinstance(rule.index, int) or not 0 <= rule.index < len(proof.hypotheses):
            raise _Reject(RejectReason.DANGLING_REFERENCE, f"no hypothesis {rule.index}")
        if proof.hypotheses[rule.index] != f:
            raise _Reject(RejectReason.HYPOTHESIS_MISMATCH,
                          f"hypothesis {rule.index} is {render(proof.hypotheses[rule.index])}")
        return False
    if isinstance(rule, ModusPonens):
        i = _earlier(rule.minor, k)
        j = _earlier(rule.major, k)
        minor, major = proof.lines[i].formula, proof.lines[j].formula
        if not (isinstance(major, Implies) and major.left == minor and major.right == f):
            raise _Reject(RejectReason.BAD_MP_SHAPE,
                          f"line {rule.major} is not {render(Implies(minor, f))}")
        return flags[i] and flags[j]
    if isinstance(rule, Necessitation):
        i = _earlier(rule.premise, k)
        try:
            expected = Know(rule.agent, proof.lines[i].formula)
        except ValueError:
            expected = None
        if f != expected:
            raise _Reject(RejectReason.BAD_NECESSITATION_SHAPE,
                          f"expected K[{rule.agent}] applied to line {rule.premise}")
        if not flags[i]:
            raise _Reject(RejectReason.NECESSITATION_ON_HYPOTHESIS,
                          f"line {rule.premise} depends on hypotheses")
        return True
    raise TypeError(f"unknown rule {rule!r}")


# ---------------------------------------------------------------------------
# JSON format


class ProofFormatError(ValueError):
    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


def _formula(raw, location: str) -> Formula:
    if not isinstance(raw, str):
        raise ProofFormatError(location, "expected formula text")
    try:
        return parse(raw)
    except FormulaSyntaxError as exc:
        raise ProofFormatError(location, str(exc)) from None


def _int(raw, location: str) -> int:
    if not isinstance(raw, int) or isinstance(raw, bool):
        raise ProofFormatError(location, "expected an integer")
    return raw


def _rule(raw: dict, loc: str) -> Rule:
    kind = raw.get("rule")
    if kind == "axiom":
        try:
            return Axiom(AxiomName(raw.get("axiom")))
        except ValueError:
            raise ProofFormatError(f"{loc}.axiom", f"unknown axiom {raw.get('axiom')!r}") from None
    if kind == "tautology":
        return Tautology()
    if kind == "hyp":
        return Hypothesis(_int(raw.get("index"), f"{loc}.index"))
    if kind == "mp":
        refs = raw.get("from")
        if not isinstance(refs, list) or len(refs) != 2:
            raise ProofFormatError(f"{loc}.from", "expected two line numbers")
        return ModusPonens(_int(refs[0], f"{loc}.from[0]"), _int(refs[1], f"{loc}.from[1]"))
    if kind == "nec":
        agent = raw.get("agent")
        if not is_identifier(agent) or agent in ("top", "bot"):
            raise ProofFormatError(f"{loc}.agent", f"invalid agent {agent!r}")
        return Necessitation(agent, _int(raw.get("from"), f"{loc}.from"))
    raise ProofFormatError(f"{loc}.rule", f"unknown rule {kind!r}")


def proof_from_dict(raw: Any) -> Proof:
    if not isinstance(raw, dict):
        raise ProofFormatError("<root>", "expected an object")
    hyps_raw = raw.get("hypotheses", [])
    if not isinstance(hyps_raw, list):
        raise ProofFormatError("hypotheses", "expected a list")
    lines_raw = raw.get("lines")
    if not isinstance(lines_raw, list) or not lines_raw:
        raise ProofFormatError("lines", "expected a nonempty list")
    hyps = tuple(_formula(h, f"hypotheses[{i}]") for i, h in enumerate(hyps_raw))
    lines = []
    for n, entry in enumerate(lines_raw, start=1):
        loc = f"lines[{n}]"
        if not isinstance(entry, dict):
            raise ProofFormatError(loc, "expected an object")
        lines.append(ProofLine(_formula(entry.get("formula"), f"{loc}.formula"), _rule(entry, loc)))
    return Proof(hyps, tuple(lines))


def proof_to_dict(proof: Proof) -> dict[str, Any]:
    out = []
    for line in proof.lines:
        entry: dict[str, Any] = {"formula": render(line.formula)}
        rule = line.rule
        if isinstance(rule, Axiom):
            entry.update(rule="axiom", axiom=rule.name.value)
        elif isinstance(rule, Tautology):
            entry.update(rule="tautology")
        elif isinstance(rule, Hypothesis):
            entry.update(rule="hyp", index=rule.index)
        elif isinstance(rule, ModusPonens):
            entry.update(rule="mp", **{"from": [rule.minor, rule.major]})
        else:
            entry.update(rule="nec", agent=rule.agent, **{"from": rule.premise})
        out.append(entry)
    return {"hypotheses": [render(h) for h in proof.hypotheses], "lines": out}


def load_proof(path) -> Proof:
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProofFormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return proof_from_dict(raw)
