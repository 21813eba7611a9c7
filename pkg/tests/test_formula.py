import pytest
from hypothesis import given, settings

from modalsat.formula import (FALSE, TRUE, And, Box, Dia, NegVar, Not, OperatorSet, Or, ParseError,
                              Var, conjuncts, fresh_name, is_poor_mans, modal_depth,
                              operator_set_of, parse, render, substitute, to_nnf)
from modalsat.oracle import evaluate
from strategies import formulas, models


@pytest.mark.parametrize("text, expected", [
    ("[]p & <>~q", And([Box(Var("p")), Dia(NegVar("q"))])),
    ("~~p", Var("p")),
    ("~~~p", NegVar("p")),
    ("(p & q) & r", And([Var("p"), Var("q"), Var("r")])),
    ("p | q & r", Or([Var("p"), And([Var("q"), Var("r")])])),
    ("!(p | false)", Not(Or([Var("p"), FALSE]))),
    ("[]<>true", Box(Dia(TRUE))),
    ("  p_1 &\n q2 ", And([Var("p_1"), Var("q2")])),
    ("<>__aux_q", Dia(Var("__aux_q"))),
])
def test_parse(text, expected):
    assert parse(text) == expected


@pytest.mark.parametrize("text", ["", "p &", "~(p & q)", "~true", "[]", "(p", "p q", "true_x &",
                                  "p $ q", "__q"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse("p & & q")
    assert e.value.position == 4


@pytest.mark.parametrize("f, text", [
    (And([Var("p"), Box(Var("q"))]), "p & []q"),
    (Dia(FALSE), "<>false"),
    (Or([NegVar("p"), Var("p")]), "~p | p"),
    (And([Or([Var("p"), Var("q")]), Var("r")]), "(p | q) & r"),
    (Box(And([Var("p"), Var("q")])), "[](p & q)"),
])
def test_render(f, text):
    assert render(f) == text


def test_construction_invariants():
    assert And([Var("p"), And([Var("q"), Var("r")])]).children == (Var("p"), Var("q"), Var("r"))
    with pytest.raises(ValueError):
        And([Var("p")])
    with pytest.raises(ValueError):
        Var("true")
    with pytest.raises(ValueError):
        Var("1p")
    f = Var("p")
    with pytest.raises(AttributeError):
        f.name = "q"


def test_modal_depth():
    assert modal_depth(Var("p")) == 0
    assert modal_depth(Box(Dia(Var("p")))) == 2
    assert modal_depth(parse("[]p & <>(q & [][]r)")) == 3


def test_to_nnf_examples():
    assert to_nnf(Not(Box(Var("p")))) == Dia(NegVar("p"))
    assert to_nnf(Not(And([Var("p"), Var("q")]))) == Or([NegVar("p"), NegVar("q")])
    assert to_nnf(Not(TRUE)) == FALSE
    assert to_nnf(Not(NegVar("p"))) == Var("p")


def test_operator_set_of():
    assert operator_set_of(parse("p & []~q")) == OperatorSet({"and", "box", "atneg"})
    assert operator_set_of(Var("p")) == OperatorSet()
    assert operator_set_of(parse("false | <>p")) == OperatorSet({"or", "dia", "false"})
    assert is_poor_mans(parse("[]p & <>~q"))
    assert not is_poor_mans(parse("p | q"))
    assert not is_poor_mans(Dia(FALSE))


def test_operator_set_text():
    s = OperatorSet.from_text("atneg, and,box,dia")
    assert s.to_text() == "atneg,and,box,dia"
    assert OperatorSet.from_text("") == OperatorSet()
    assert len(OperatorSet.all_subsets()) == 256
    with pytest.raises(ValueError):
        OperatorSet.from_text("and,xor")


def test_substitute():
    assert substitute(Box(TRUE), TRUE, Var("t")) == Box(Var("t"))
    assert substitute(parse("p & false"), FALSE, Var("f")) == And([Var("p"), Var("f")])
    assert substitute(Var("p"), TRUE, Var("t")) == Var("p")


def test_conjuncts_and_fresh_names():
    assert conjuncts(parse("p & []q & <>r")) == (Var("p"), Box(Var("q")), Dia(Var("r")))
    assert conjuncts(Var("p")) == (Var("p"),)
    assert fresh_name("q", {"p"}) == "__aux_q"
    assert fresh_name("q", {"__aux_q"}) != "__aux_q"


@settings(max_examples=300, deadline=None)
@given(formulas(max_depth=3, max_leaves=10))
def test_round_trip(f):
    assert parse(render(f)) == f


@settings(max_examples=300, deadline=None)
@given(formulas(), models())
def test_nnf_is_equivalent(f, m):
    g = to_nnf(f)
    assert evaluate(m, m.root, f) == evaluate(m, m.root, g)


@settings(max_examples=300, deadline=None)
@given(formulas(max_depth=3))
def test_nnf_shape(f):
    g = to_nnf(f)
    assert "neg" not in operator_set_of(g)
    assert to_nnf(g) == g
    assert modal_depth(g) == modal_depth(f)
    assert operator_set_of(g) - {"atneg", "and", "or", "box", "dia", "true", "false"} == set()
