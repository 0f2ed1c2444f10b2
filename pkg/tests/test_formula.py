import pytest
from hypothesis import given

from kclogic.formula import (
    Comp,
    FormulaSyntaxError,
    Implies,
    Know,
    Not,
    ReservedWordError,
    Top,
    Var,
    parse,
    render,
    signature,
    subformulas,
)
from strategies import formulas

p, q, r = Var("p"), Var("q"), Var("r")


def test_parse_examples():
    assert parse("K[a] p -> C[a] p") == Implies(Know("a", p), Comp("a", p))
    assert parse("C[a] C[b] p") == Comp("a", Comp("b", p))
    assert parse("~p -> p | q") == Implies(Not(p), Implies(Not(p), q))


def test_precedence_and_associativity():
    assert parse("p -> q -> r") == Implies(p, Implies(q, r))
    assert parse("(p -> q) -> r") == Implies(Implies(p, q), r)
    assert parse("~K[a] p") == Not(Know("a", p))
    assert parse("K[a] ~p") == Know("a", Not(p))
    # unary binds tighter than every binary operator
    assert parse("K[a] p & q") == parse("(K[a] p) & q")
    assert parse("p | q & r") == parse("p | (q & r)")
    assert parse("p & q -> r") == parse("(p & q) -> r")
    assert parse("p -> q <-> r") == parse("(p -> q) <-> r")


def test_sugar():
    assert parse("p & q") == Not(Implies(p, Not(q)))
    assert parse("p | q") == Implies(Not(p), q)
    pq, qp = Implies(p, q), Implies(q, p)
    assert parse("p <-> q") == Not(Implies(pq, Not(qp)))
    assert parse("bot") == Not(Top())
    assert parse("top") == Top()
    # left associativity of the sugared operators
    assert parse("p & q & r") == parse("(p & q) & r")
    assert parse("p | q | r") == parse("(p | q) | r")
    assert parse("p <-> q <-> r") == parse("(p <-> q) <-> r")


def test_modal_letters_are_variables_without_brackets():
    assert parse("K") == Var("K")
    assert parse("K -> C") == Implies(Var("K"), Var("C"))
    assert parse("K[K] K") == Know("K", Var("K"))


def test_whitespace_is_insignificant():
    assert parse("  K [ a ]p->q ") == Implies(Know("a", p), q)


def test_render_examples():
    assert render(Implies(Know("a", p), p)) == "K[a] p -> p"
    assert render(Not(Top())) == "~top"
    assert render(Implies(Implies(p, q), r)) == "(p -> q) -> r"
    assert render(Know("a", Implies(p, p))) == "K[a](p -> p)"
    assert render(parse("p->q->r")) == "p -> q -> r"


@pytest.mark.parametrize(
    "text, offset, expected",
    [
        ("p ->", 4, "identifier"),
        ("(p", 2, ")"),
        ("p q", 2, "end of input"),
        ("K[a p", 4, "]"),
        ("", 0, "identifier"),
        ("p -> ~", 6, "("),
    ],
)
def test_syntax_errors_report_offset_and_expected(text, offset, expected):
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset
    assert expected in info.value.expected


def test_offset_is_in_bytes():
    # "é" is two bytes in UTF-8
    with pytest.raises(FormulaSyntaxError) as info:
        parse("p -> é")
    assert info.value.offset == 5
    with pytest.raises(FormulaSyntaxError) as info:
        parse("p & (q -> é")
    assert info.value.offset == 10


def test_bytes_input():
    assert parse("K[a] p".encode()) == Know("a", p)


@pytest.mark.parametrize("text", ["K[top] p", "C[bot] p"])
def test_reserved_agent_names(text):
    with pytest.raises(ReservedWordError):
        parse(text)


def test_reserved_words_rejected_by_constructors():
    with pytest.raises(ValueError):
        Var("top")
    with pytest.raises(ValueError):
        Know("bot", p)
    with pytest.raises(ValueError):
        Var("1p")


def test_signature_examples():
    assert signature(parse("K[a] p -> C[b] q")) == ({"a", "b"}, {"p", "q"})
    assert signature(parse("top")) == (set(), set())
    assert signature(parse("C[a] C[a] p")) == ({"a"}, {"p"})


def test_structural_equality_and_hash():
    f, g = parse("K[a] (p -> q)"), parse("K[a](p->q)")
    assert f == g and hash(f) == hash(g)
    assert f != parse("C[a] (p -> q)")
    assert f != parse("K[b] (p -> q)")


@given(formulas)
def test_render_round_trip(f):
    assert parse(render(f)) == f


@given(formulas)
def test_parser_output_is_core_only(f):
    core = (Var, Top, Not, Implies, Know, Comp)
    assert all(isinstance(g, core) for g in subformulas(parse(render(f))))


@given(formulas)
def test_signature_matches_subformula_walk(f):
    agents, variables = signature(f)
    text = render(f)
    for a in agents:
        assert f"[{a}]" in text
    for v in variables:
        assert Var(v) in set(subformulas(f))
