"""Formula language: core AST, concrete grammar, parser and renderer.

Concrete syntax, loosest to tightest::

    f <-> g        biconditional (left-assoc, sugar)
    f -> g         implication (right-assoc)
    f | g          disjunction (left-assoc, sugar)
    f & g          conjunction (left-assoc, sugar)
    ~f  K[a] f  C[a] f
    top  bot  p  ( f )

Sugar is removed while parsing, so a parsed formula only ever contains
``Var``, ``Top``, ``Not``, ``Implies``, ``Know`` and ``Comp``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Union

__all__ = [
    "Var",
    "Top",
    "Not",
    "Implies",
    "Know",
    "Comp",
    "Formula",
    "FormulaSyntaxError",
    "ReservedWordError",
    "RESERVED_WORDS",
    "is_identifier",
    "parse",
    "render",
    "signature",
    "subformulas",
    "conj",
    "disj",
    "iff",
    "bot",
]

RESERVED_WORDS = frozenset({"top", "bot"})
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def is_identifier(name: object) -> bool:
    return isinstance(name, str) and _IDENT_RE.fullmatch(name) is not None


def _check_name(kind: str, name: object) -> None:
    if not is_identifier(name):
        raise ValueError(f"invalid {kind} name: {name!r}")
    if name in RESERVED_WORDS:
        raise ValueError(f"{name!r} is a reserved word and cannot be a {kind} name")


# Formulas are hashed constantly by the checker's memo tables; the hash is
# computed once at construction instead of re-walking the tree every time.


@dataclass(frozen=True)
class Var:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_name("variable", self.name)
        object.__setattr__(self, "_hash", hash(("var", self.name)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Top:
    def __hash__(self):
        return hash("top")


@dataclass(frozen=True)
class Not:
    sub: Formula
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("not", self.sub)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("imp", self.left, self.right)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Know:
    agent: str
    sub: Formula
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_name("agent", self.agent)
        object.__setattr__(self, "_hash", hash(("K", self.agent, self.sub)))

    def __hash__(self):
        return self._hash


@dataclass(frozen=True)
class Comp:
    agent: str
    sub: Formula
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_name("agent", self.agent)
        object.__setattr__(self, "_hash", hash(("C", self.agent, self.sub)))

    def __hash__(self):
        return self._hash


Formula = Union[Var, Top, Not, Implies, Know, Comp]


def conj(f: Formula, g: Formula) -> Formula:
    return Not(Implies(f, Not(g)))


def disj(f: Formula, g: Formula) -> Formula:
    return Implies(Not(f), g)


def iff(f: Formula, g: Formula) -> Formula:
    return conj(Implies(f, g), Implies(g, f))


def bot() -> Formula:
    return Not(Top())


# ---------------------------------------------------------------------------
# Parsing


class FormulaSyntaxError(ValueError):
    """Raised when formula text does not match the grammar.

    ``offset`` is a byte offset into the UTF-8 encoding of the input and
    ``expected`` the set of tokens that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected=frozenset(), text: str = ""):
        self.offset = offset
        self.expected = frozenset(expected)
        self.text = text
        detail = f"{message} at byte {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class ReservedWordError(FormulaSyntaxError):
    pass


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\]~&|])
    """,
    re.VERBOSE,
)

_ATOM_START = frozenset({"identifier", "top", "bot", "(", "~", "K[", "C["})
_BINARY_OPS = frozenset({"<->", "->", "|", "&"})


@dataclass
class _Token:
    kind: str  # identifier, top, bot, or the literal punctuation
    text: str
    pos: int  # character offset


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(
                f"unexpected character {text[pos]!r}", _byte_offset(text, pos), text=text
            )
        kind = m.lastgroup
        value = m.group()
        if kind == "ident":
            tokens.append(_Token(value if value in RESERVED_WORDS else "identifier", value, pos))
        elif kind != "ws":
            tokens.append(_Token(value, value, pos))
        pos = m.end()
    tokens.append(_Token("end of input", "", len(text)))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def _peek(self, k: int = 1) -> _Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def error(self, expected, tok: _Token | None = None, cls=FormulaSyntaxError):
        tok = tok or self.tok
        found = tok.text or tok.kind
        raise cls(f"unexpected {found!r}", _byte_offset(self.text, tok.pos), expected, self.text)

    def expect(self, kind: str) -> _Token:
        if self.tok.kind != kind:
            self.error({kind})
        tok = self.tok
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.parse_iff()
        if self.tok.kind != "end of input":
            self.error(_BINARY_OPS | {"end of input"})
        return f

    def parse_iff(self) -> Formula:
        left = self.parse_imp()
        while self.tok.kind == "<->":
            self.i += 1
            left = iff(left, self.parse_imp())
        return left

    def parse_imp(self) -> Formula:
        left = self.parse_or()
        if self.tok.kind == "->":
            self.i += 1
            return Implies(left, self.parse_imp())
        return left

    def parse_or(self) -> Formula:
        left = self.parse_and()
        while self.tok.kind == "|":
            self.i += 1
            left = disj(left, self.parse_and())
        return left

    def parse_and(self) -> Formula:
        left = self.parse_unary()
        while self.tok.kind == "&":
            self.i += 1
            left = conj(left, self.parse_unary())
        return left

    def parse_unary(self) -> Formula:
        tok = self.tok
        if tok.kind == "~":
            self.i += 1
            return Not(self.parse_unary())
        if tok.kind == "identifier" and tok.text in ("K", "C") and self._peek().kind == "[":
            self.i += 2
            agent_tok = self.tok
            if agent_tok.kind in RESERVED_WORDS:
                self.error({"identifier"}, cls=ReservedWordError)
            agent = self.expect("identifier").text
            self.expect("]")
            sub = self.parse_unary()
            return Know(agent, sub) if tok.text == "K" else Comp(agent, sub)
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        tok = self.tok
        if tok.kind == "top":
            self.i += 1
            return Top()
        if tok.kind == "bot":
            self.i += 1
            return bot()
        if tok.kind == "identifier":
            self.i += 1
            return Var(tok.text)
        if tok.kind == "(":
            self.i += 1
            f = self.parse_iff()
            self.expect(")")
            return f
        self.error(_ATOM_START)


def parse(text: str | bytes) -> Formula:
    """Parse formula text into the core AST, desugaring on the way."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Rendering


def _render_operand(f: Formula) -> str:
    text = render(f)
    return f"({text})" if isinstance(f, Implies) else text


def render(f: Formula) -> str:
    """Render with the fewest parentheses that still parse back to ``f``."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Not):
        return "~" + _render_operand(f.sub)
    if isinstance(f, Implies):
        return f"{_render_operand(f.left)} -> {render(f.right)}"
    if isinstance(f, (Know, Comp)):
        op = "K" if isinstance(f, Know) else "C"
        body = _render_operand(f.sub)
        sep = "" if body.startswith("(") else " "
        return f"{op}[{f.agent}]{sep}{body}"
    raise TypeError(f"not a formula: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    """Yield ``f`` and all of its subformulas, parents before children."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Implies):
            stack.append(g.right)
            stack.append(g.left)
        elif isinstance(g, (Not, Know, Comp)):
            stack.append(g.sub)


def signature(f: Formula) -> tuple[frozenset[str], frozenset[str]]:
    """Return the agents and the variables occurring in ``f``."""
    agents, variables = set(), set()
    for g in subformulas(f):
        if isinstance(g, Var):
            variables.add(g.name)
        elif isinstance(g, (Know, Comp)):
            agents.add(g.agent)
    return frozenset(agents), frozenset(variables)
