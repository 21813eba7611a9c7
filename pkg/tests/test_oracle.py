import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from modalsat import sweep
from modalsat.formula import parse
from modalsat.oracle import (FRAME3, K, LE1, LE2, SERIAL, Frame, FrameClass, KripkeModel, Status,
                             _trees, assignment_coverage, brute_force_sat, completeness_bound,
                             conforms, evaluate, fixed_frame_sat, iter_models)
from modalsat.reductions import Graph, is_3colorable, phi_exp, reduce_3col, reduce_kd_to_k
from strategies import formulas


def chain(n, **val):
    return KripkeModel(tuple(range(n)), frozenset((i, i + 1) for i in range(n - 1)),
                       {k: frozenset(v) for k, v in val.items()}, 0)


def test_evaluate_basic_clauses():
    lone = chain(1)
    assert evaluate(lone, 0, parse("[]p"))
    assert not evaluate(lone, 0, parse("<>p"))
    two = chain(2, p=[1])
    assert evaluate(two, 0, parse("<>p & []p"))
    assert not evaluate(two, 0, parse("p"))
    assert evaluate(two, 0, parse("!p & !!<>p & true & !false"))
    assert evaluate(two, 0, parse("q | ~q"))  # absent variable is false
    with pytest.raises(KeyError):
        evaluate(two, 5, parse("p"))


def test_model_validation_and_json():
    with pytest.raises(ValueError):
        KripkeModel((0, 1), frozenset({(0, 2)}), {}, 0)
    with pytest.raises(ValueError):
        KripkeModel((0,), frozenset(), {"p": frozenset({3})}, 0)
    with pytest.raises(ValueError):
        KripkeModel((0,), frozenset(), {}, 1)
    m = KripkeModel((0, 1, 2), frozenset({(0, 1), (0, 2)}), {"p": frozenset({1})}, 0)
    assert m.dumps() == '{"worlds": [0, 1, 2], "relation": [[0, 1], [0, 2]], ' \
                        '"valuation": {"p": [1]}, "root": 0}'
    assert KripkeModel.from_json(json.loads(m.dumps())) == m
    assert Frame.from_json(FRAME3.frame.to_json()) == FRAME3.frame


def test_conformance():
    m = KripkeModel((0, 1, 2), frozenset({(0, 1), (0, 2)}), {}, 0)
    assert conforms(m, K) and conforms(m, LE2)
    assert not conforms(m, LE1) and not conforms(m, SERIAL)
    looped = KripkeModel((0,), frozenset({(0, 0)}), {}, 0)
    assert conforms(looped, SERIAL) and conforms(looped, LE1)
    with pytest.raises(ValueError):
        FrameClass(FRAME3.kind)


def test_tree_counts():
    # rooted unordered trees: 1, 1, 2, 4, 9, 20, 48 (OEIS A000081)
    assert [len(_trees(n, n, None)) for n in range(1, 8)] == [1, 1, 2, 4, 9, 20, 48]
    assert [len(_trees(n, n, 1)) for n in range(1, 6)] == [1] * 5
    # at most two children per node (A001190 shifted): 1, 1, 2, 3, 6, 11
    assert [len(_trees(n, n, 2)) for n in range(1, 7)] == [1, 1, 2, 3, 6, 11]
    assert len(_trees(4, 1, None)) == 1  # star only


@pytest.mark.parametrize("text, fc, n, status", [
    ("[]p & []~p & <>q", K, 8, Status.UNSAT),
    ("[]p & []~p", K, 2, Status.SAT),
    ("[]p & []~p", SERIAL, 8, Status.UNSAT),
    ("<>p & <>~p", LE1, 8, Status.UNSAT),
    ("<>p & <>~p", LE2, 8, Status.SAT),
    ("<>p & <>~p & <>(p & f) & <>(~p & f) & <>~f", LE2, 8, Status.UNSAT),
    ("<>p & <>~p & <>(p & f) & <>(~p & f) & <>~f", K, 8, Status.SAT),
    ("<>p & <>~p & <>q & <>~q", K, 2, Status.BOUND_EXCEEDED),
])
def test_brute_force_examples(text, fc, n, status):
    res = brute_force_sat(parse(text), fc, n)
    assert res.status is status
    if status is Status.SAT:
        assert evaluate(res.model, res.model.root, parse(text))
        assert conforms(res.model, fc)


def test_brute_force_witness_is_smallest():
    res = brute_force_sat(parse("[]p & []~p"), K, 2)
    assert res.model.worlds == (0,) and not res.model.relation


def test_fixed_frame():
    assert fixed_frame_sat(parse("<>p & <>~p"), FRAME3.frame).sat
    assert not fixed_frame_sat(parse("p & ~p"), FRAME3.frame).sat
    k4 = reduce_3col(Graph.complete(4))
    assert not fixed_frame_sat(k4, FRAME3.frame).sat and not is_3colorable(Graph.complete(4))
    res = fixed_frame_sat(parse("[]false & p"), FRAME3.frame)
    assert res.sat and res.model.root != 0  # only a leaf has no successors
    assert evaluate(res.model, res.model.root, parse("[]false & p"))


def test_assignment_coverage():
    looped = KripkeModel((0,), frozenset({(0, 0)}), {}, 0)
    assert assignment_coverage(looped, 0, ["p"]) == {(False,)}
    tree = KripkeModel(tuple(range(7)), frozenset({(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)}),
                       {"p1": frozenset({1, 3, 4}), "p2": frozenset({3, 5})}, 0)
    assert assignment_coverage(tree, 0, ["p1", "p2"]) == {(True, True), (True, False),
                                                          (False, True), (False, False)}
    for m in iter_models(phi_exp(2), SERIAL, 7):
        assert len(assignment_coverage(m, 0, ["p1", "p2"])) == 4


def test_completeness_bounds():
    assert completeness_bound(parse("p"), K) == 1
    assert completeness_bound(parse("<>p & <>q"), K) == 3
    assert completeness_bound(parse("[]p"), K) == 1
    assert completeness_bound(parse("[]p"), SERIAL) == 2
    assert completeness_bound(parse("<><>p & <>q"), LE1) == 3
    assert completeness_bound(phi_exp(3), LE2) == 15


def test_iter_models_all_satisfy():
    f = parse("<>p & []q")
    ms = list(iter_models(f, SERIAL, 3))
    assert ms and all(evaluate(m, 0, f) and conforms(m, SERIAL) for m in ms)
    assert len(set(ms)) == len(ms)


@settings(max_examples=150, deadline=None)
@given(formulas(max_depth=2, max_leaves=6), st.sampled_from([K, SERIAL, LE1, LE2]))
def test_witness_validity_and_bound_monotonicity(f, fc):
    res = brute_force_sat(f, fc, 5)
    if res.status is Status.SAT:
        assert evaluate(res.model, res.model.root, f)
        assert conforms(res.model, fc)
        assert len(res.model.worlds) <= 5
        assert brute_force_sat(f, fc, 7).status is Status.SAT
    elif res.status is Status.UNSAT:
        assert brute_force_sat(f, fc, 7).status is Status.UNSAT


@settings(max_examples=150, deadline=None)
@given(formulas(max_depth=2, max_leaves=6))
def test_frame_class_nesting(f):
    verdict = {fc.kind: brute_force_sat(f, fc, 7).sat for fc in (K, SERIAL, LE1, LE2)}
    if verdict[LE1.kind]:
        assert verdict[LE2.kind] is not False
    if verdict[LE2.kind]:
        assert verdict[K.kind] is not False
    if verdict[SERIAL.kind]:
        assert verdict[K.kind] is not False


def test_kd_to_k_property_on_corpus(small_poor_corpus):
    rng = random.Random(7)
    checked = 0
    for f in rng.sample(small_poor_corpus, 400):
        g = reduce_kd_to_k(f)
        a = brute_force_sat(f, SERIAL, 8)
        b = brute_force_sat(g, K, 8)
        if a.sat is None or b.sat is None:
            continue
        assert a.sat == b.sat, f
        checked += 1
    assert checked >= 200


# ---------------------------------------------------------------- sweep backends

@pytest.mark.skipif("compiled" not in sweep.BACKENDS, reason="extension not built")
@settings(max_examples=200, deadline=None)
@given(formulas(max_depth=2, max_leaves=8), st.integers(1, 5), st.randoms(use_true_random=False),
       st.integers(0, 200))
def test_backends_agree(f, n, rng, start):
    prog = sweep.Program(f)
    if n * prog.n_vars > 20:
        n = max(1, 20 // max(prog.n_vars, 1))
    succ = [[v for v in range(n) if rng.random() < 0.4] for _ in range(n)]
    root = rng.randrange(n)
    a = sweep.first_model(prog, n, succ, root, start=start, backend="python")
    b = sweep.first_model(prog, n, succ, root, start=start, backend="compiled")
    assert a == b
    if a >= 0:
        val = sweep.decode(prog, n, a)
        m = KripkeModel(tuple(range(n)), frozenset((w, v) for w in range(n) for v in succ[w]),
                        val, root)
        assert evaluate(m, root, f)


def test_backends_agree_on_large_sweep():
    f = parse("[](p | q) & [](~p | ~q) & <>(r & <>(p & ~r)) & [][]~p")
    prog = sweep.Program(f)
    succ = [[1, 2, 3], [4, 5], [6], [7], [], [], [], []]
    results = {name: sweep.first_model(prog, 8, succ, 0, backend=name) for name in sweep.BACKENDS}
    assert len(set(results.values())) == 1


def test_sweep_rejects_too_many_bits():
    prog = sweep.Program(parse("p & q & r & s"))
    with pytest.raises(ValueError):
        sweep.first_model(prog, 11, [[]] * 11, 0)


def test_pure_python_switch():
    import os
    import subprocess
    import sys
    code = "from modalsat import sweep; print(sweep.BACKEND, sorted(sweep.BACKENDS))"
    env = {**os.environ, "MODALSAT_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python ['python']"
