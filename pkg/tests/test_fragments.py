import itertools

import pytest
from hypothesis import given, settings

from modalsat.corpus import generate_formulas
from modalsat.formula import OPERATORS, OperatorSet, parse, render
from modalsat.fragments import (NP_SCHEMAS, P_SCHEMAS, ClassTag, NotInFragment,
                                classify_operator_set, fragment_dispatch, np_schema, poly_schema,
                                sat_np_fragment, sat_poly_fragment)
from modalsat.oracle import K, LE2, SERIAL, brute_force_sat
from modalsat.procedures import sat
from strategies import formulas

ALL_SUBSETS = [OperatorSet(c) for r in range(len(OPERATORS) + 1)
               for c in itertools.combinations(OPERATORS, r)]

SPOT_TABLE = [
    ("neg,and,box", ClassTag.PSPACE, "Theorem pspace, case 1"),
    ("atneg,and,or", ClassTag.NP, "Theorem np, case 2"),
    ("and,box,dia,false", ClassTag.CONP, "Theorem conp, case 2"),
    ("atneg,or,box,dia,true,false", ClassTag.P, "Theorem p, case 2"),
    ("", ClassTag.P, "Theorem p, case 1"),
    ("atneg,and,box,dia", ClassTag.CONP, "Theorem conp, case 1"),
    ("and,or,box,dia,true", ClassTag.P, "Theorem p, case 7"),
    ("and,or,box,dia,false", ClassTag.PSPACE, "Theorem pspacetwo"),
    ("atneg,and,or,box,dia", ClassTag.PSPACE, "Theorem pspace, case 5"),
    ("neg,or", ClassTag.NP, "Theorem np, case 1"),
]


@pytest.mark.parametrize("text, tag, provenance", SPOT_TABLE)
def test_spot_table(text, tag, provenance):
    c = classify_operator_set(OperatorSet.from_text(text))
    assert c.tag is tag and c.provenance == provenance


def test_string_form():
    assert str(classify_operator_set(OperatorSet.from_text("atneg,and,box,dia"))) == \
        "coNP-complete (Theorem conp, case 1)"


def test_total_and_monotone():
    assert len(ALL_SUBSETS) == 256
    level = {s: classify_operator_set(s).tag.level for s in ALL_SUBSETS}
    for s in ALL_SUBSETS:
        for op in OPERATORS:
            bigger = OperatorSet(s | {op})
            assert level[s] <= level[bigger], (s.to_text(), op)


def test_class_sizes():
    tags = [classify_operator_set(s).tag for s in ALL_SUBSETS]
    assert set(tags) == set(ClassTag)
    # NP and coNP never meet: the families are disjoint
    for s in ALL_SUBSETS:
        if classify_operator_set(s).tag is ClassTag.P:
            assert any(s <= sch for sch in P_SCHEMAS)


@pytest.mark.parametrize("text, expected", [
    ("<><>false", False),
    ("[]false & p", True),
    ("<>true & <>false", False),
    ("<>p | <>false", True),
    ("<>false | <><>false", False),
    ("[]p & <>true", True),
    ("<>(p | <>q) & [](q | p)", True),
    ("<>(<>false | false) & p", False),
])
def test_poly_examples(text, expected):
    f = parse(text)
    assert sat_poly_fragment(f).sat is expected
    assert brute_force_sat(f, K, 8).sat is expected


@pytest.mark.parametrize("text, expected", [
    ("(p | ~p) & []false", True),
    ("<>false & p", False),
    ("!(p & !p)", True),
    ("!(p | !p)", False),
    ("(p | q) & ~p & ~q & []r", False),
    ("<>(p & ~p) | <>q", True),
])
def test_np_examples(text, expected):
    f = parse(text)
    assert sat_np_fragment(f).sat is expected
    assert brute_force_sat(f, K, 8).sat is expected


def test_not_in_fragment():
    with pytest.raises(NotInFragment):
        sat_poly_fragment(parse("[]p & <>~p"))
    with pytest.raises(NotInFragment):
        sat_np_fragment(parse("!<>p"))
    assert poly_schema(parse("p")) == 1 and np_schema(parse("[]p & <>q")) is None


def test_dispatch_examples():
    # p | q lies in a polynomial family as well, which is preferred
    assert fragment_dispatch(parse("p | q"), K).trace == [{"rule": "poly", "case": 2}]
    assert fragment_dispatch(parse("!(p & q)"), K).trace == [{"rule": "np", "case": 0}]
    v = fragment_dispatch(parse("<><>false"), K)
    assert not v.sat and v.trace == [{"rule": "poly", "case": 1}]
    assert not fragment_dispatch(parse("[]p & <>~p"), K).sat
    assert not fragment_dispatch(parse("[]p & []~p"), SERIAL).sat


@pytest.mark.parametrize("schema", P_SCHEMAS + NP_SCHEMAS, ids=lambda s: s.to_text())
def test_schema_solvers_agree_with_oracle(schema):
    forms = list(generate_formulas(schema, 2, 2, 2, seed=1, limit=250, exhaustive_limit=20_000))
    solver = sat_poly_fragment if schema in P_SCHEMAS else sat_np_fragment
    checked = 0
    for f in forms:
        if solver is sat_poly_fragment and poly_schema(f) is None:
            continue
        if solver is sat_np_fragment and np_schema(f) is None:
            continue
        res = brute_force_sat(f, K, 8)
        if res.sat is None:
            continue
        assert solver(f).sat == res.sat, render(f)
        checked += 1
    assert checked >= 100


@settings(max_examples=200, deadline=None)
@given(formulas(max_depth=2, max_leaves=7))
def test_dispatch_matches_sat(f):
    for fc in (K, SERIAL, LE2):
        assert fragment_dispatch(f, fc).sat == sat(f, fc).sat
