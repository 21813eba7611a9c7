"""Formula transformations that preserve satisfiability across languages and
frame classes, plus the graph and QBF encodings.

Fresh variables introduced here start with ``__aux_`` and are chosen to avoid
every variable of the input.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .formula import (AUX_PREFIX, FALSE, TRUE, And, Box, Const, Dia, Formula, NegVar, Not, Or,
                      OperatorSet, Var, boxes, conj, dias, fresh_name, is_poor_mans, literal,
                      modal_depth, operator_set_of, render, substitute, variables)

__all__ = ["Graph", "QBFInstance", "phi_exp", "reduce_kd_to_k", "reduce_constants_to_vars",
           "reduce_eliminate_true", "reduce_3col", "label_false", "reduce_qbf", "normalize_qbf",
           "reduce_onevar_to_zerovar", "qbf_truth", "is_3colorable", "ReductionError",
           "LABEL"]

LABEL = AUX_PREFIX + "lab"


class ReductionError(ValueError):
    pass


def _guard(md: int, body: Formula) -> Formula:
    return conj(*[boxes(i, body) for i in range(md + 1)])


def phi_exp(n: int) -> Formula:
    """Poor man's formula whose binary-tree models contain every assignment to
    p1..pn at depth n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    parts = []
    for i in range(1, n + 1):
        p = f"p{i}"
        parts.append(boxes(i - 1, And([Dia(boxes(n - i, Var(p))),
                                       Dia(boxes(n - i, NegVar(p)))])))
    return conj(*parts)


def reduce_kd_to_k(f: Formula) -> Formula:
    """Serial satisfiability of ``f`` as K satisfiability of the result."""
    if not is_poor_mans(f):
        raise ReductionError(f"not a poor man's formula: {render(f)}")
    q = fresh_name("q", variables(f))
    return And([f, _guard(modal_depth(f), Dia(Var(q)))])


_CONSTANT_FRAGMENT = OperatorSet.from_text("atneg,and,box,dia,true,false")
_TRUE_FRAGMENT = OperatorSet.from_text("and,box,dia,true,false")


def reduce_constants_to_vars(f: Formula) -> Formula:
    """Replace true/false by variables kept true/false at every relevant depth."""
    if not operator_set_of(f) <= _CONSTANT_FRAGMENT:
        raise ReductionError(f"operators outside {_CONSTANT_FRAGMENT.to_text()}: {render(f)}")
    taken = variables(f)
    t = fresh_name("t", taken)
    fv = fresh_name("f", taken)
    g = substitute(substitute(f, TRUE, Var(t)), FALSE, Var(fv))
    return And([g, _guard(modal_depth(f), And([Var(t), NegVar(fv)]))])


def reduce_eliminate_true(f: Formula) -> Formula:
    """Replace true by a variable kept true at every relevant depth."""
    if not operator_set_of(f) <= _TRUE_FRAGMENT:
        raise ReductionError(f"operators outside {_TRUE_FRAGMENT.to_text()}: {render(f)}")
    t = fresh_name("t", variables(f))
    return And([substitute(f, TRUE, Var(t)), _guard(modal_depth(f), Var(t))])


# ---------------------------------------------------------------- graphs

@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        norm = set()
        for e in edges:
            i, j = e
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge {i}-{j} has an endpoint outside 1..{n}")
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_json(cls, data: Mapping) -> Graph:
        return cls(int(data["n"]), [tuple(e) for e in data["edges"]])

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, itertools.combinations(range(1, n + 1), 2))


def is_3colorable(g: Graph) -> bool:
    for colors in itertools.product(range(3), repeat=g.n):
        if all(colors[i - 1] != colors[j - 1] for i, j in g.edges):
            return True
    return False


def reduce_3col(g: Graph) -> Formula:
    """Poor man's formula satisfiable on the root-and-three-leaves frame iff
    ``g`` is 3-colorable.  Each non-isolated vertex becomes a diamond whose
    witness leaf is its color; edge variables force endpoints apart."""
    parts = []
    for v in range(1, g.n + 1):
        lits = []
        for i, j in sorted(g.edges):
            if v == i:
                lits.append(Var(f"e{i}_{j}"))
            elif v == j:
                lits.append(NegVar(f"e{i}_{j}"))
        if lits:  # isolated vertices take any color
            parts.append(Dia(conj(*lits)))
    if not parts:
        return TRUE
    return conj(*parts)


# ---------------------------------------------------------------- QBF

@dataclass(frozen=True)
class QBFInstance:
    """Prenex QBF with prefix E A E A ... over p1..pn and a 3CNF matrix.

    Clauses are DIMACS-style triples of signed variable indices.
    """
    n: int
    prefix: str
    clauses: tuple[tuple[int, int, int], ...]

    def __init__(self, n: int, clauses: Iterable[Sequence[int]], prefix: str | None = None):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "prefix", "EA" * (n // 2) if prefix is None else prefix)
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in clauses))
        problems = _qbf_problems(self.n, self.prefix, self.clauses)
        if problems:
            raise ReductionError(problems[0])

    @classmethod
    def from_json(cls, data: Mapping) -> QBFInstance:
        return cls(int(data["n"]), data["clauses"], data.get("prefix"))

    def to_json(self) -> dict:
        return {"n": self.n, "prefix": self.prefix, "clauses": [list(c) for c in self.clauses]}


def _qbf_problems(n: int, prefix: str, clauses) -> list[str]:
    out = []
    if n < 2 or n % 2:
        out.append(f"n must be even and positive, got {n}")
    if prefix != "EA" * (n // 2) or len(prefix) != n:
        out.append(f"prefix must alternate EA... over {n} variables, got {prefix!r}")
    for c in clauses:
        if len(c) != 3:
            out.append(f"clause {list(c)} does not have exactly 3 literals")
        elif len({abs(x) for x in c}) != 3:
            out.append(f"clause {list(c)} repeats a variable")
        elif any(x == 0 or abs(x) > n for x in c):
            out.append(f"clause {list(c)} mentions a variable outside 1..{n}")
    return out


def qbf_truth(prefix: str, clauses: Sequence[Sequence[int]]) -> bool:
    """Truth of a prenex CNF QBF by exhaustive recursion (variable i+1 is
    quantified by ``prefix[i]``)."""
    n = len(prefix)
    for c in clauses:
        for x in c:
            if x == 0 or abs(x) > n:
                raise ValueError(f"literal {x} outside 1..{n}")
    val = [False] * (n + 1)

    def rec(i: int) -> bool:
        if i == n:
            return all(any(val[abs(x)] == (x > 0) for x in c) for c in clauses)
        outcomes = []
        for b in (False, True):
            val[i + 1] = b
            outcomes.append(rec(i + 1))
            if prefix[i] == "E" and outcomes[-1]:
                return True
            if prefix[i] == "A" and not outcomes[-1]:
                return False
        return prefix[i] == "A"

    return rec(0)


def normalize_qbf(prefix: str, clauses: Sequence[Sequence[int]]) -> QBFInstance:
    """Equivalent instance with strict E/A alternation, an even number of
    variables and clauses of exactly three distinct variables.

    Dummy variables fill gaps in the alternation.  Tautological clauses are
    dropped.  A clause with a repeated variable or fewer than three literals
    is split on a fresh innermost universal u: C becomes (C | u) & (C | ~u).
    """
    prefix = prefix.upper()
    if set(prefix) - {"E", "A"}:
        raise ReductionError(f"prefix may only contain E and A: {prefix!r}")
    new_prefix: list[str] = []
    rename: dict[int, int] = {}

    def place(q: str) -> int:
        if (len(new_prefix) % 2 == 0) != (q == "E"):
            new_prefix.append("A" if q == "E" else "E")  # dummy
        new_prefix.append(q)
        return len(new_prefix)

    for i, q in enumerate(prefix, 1):
        rename[i] = place(q)
    work = []
    for c in clauses:
        if not c:
            raise ReductionError("empty clause")
        if len(c) > 3:
            raise ReductionError(f"clause {list(c)} has more than 3 literals")
        lits = []
        for x in c:
            if x == 0 or abs(x) > len(prefix):
                raise ReductionError(f"literal {x} outside the prefix")
            lits.append(rename[abs(x)] if x > 0 else -rename[abs(x)])
        work.append(lits)
    done = []
    while work:
        c = work.pop(0)
        lits = list(dict.fromkeys(c))
        if any(-x in lits for x in lits):
            continue
        if len(lits) == 3:
            done.append(tuple(lits))
            continue
        u = place("A")
        work.insert(0, lits + [-u])
        work.insert(0, lits + [u])
    if len(new_prefix) % 2:
        new_prefix.append("A")
    if not new_prefix:
        new_prefix = ["E", "A"]
    return QBFInstance(len(new_prefix), done, "".join(new_prefix))


def _literal_index(x) -> tuple[int, Formula]:
    if isinstance(x, int):
        if x == 0:
            raise ReductionError("literal 0")
        return abs(x), literal(f"p{abs(x)}", x > 0)
    if isinstance(x, (Var, NegVar)):
        m = re.fullmatch(r"p([1-9][0-9]*)", x.name)
        if not m:
            raise ReductionError(f"variable {x.name} is not of the form p<i>")
        return int(m.group(1)), x
    raise ReductionError(f"not a literal: {x!r}")


def label_false(clause: Sequence, n: int) -> Formula:
    """Formula that, on the complete binary tree forced by ``phi_exp(n)``,
    marks with the label variable every depth-n world where all three
    literals hold.  Literals are signed indices or p<i> literals."""
    if len(clause) != 3:
        raise ReductionError(f"label_false needs exactly 3 literals, got {len(clause)}")
    lits = sorted((_literal_index(x) for x in clause), key=lambda t: t[0])
    (a, l1), (b, l2), (c, l3) = lits
    if not a < b < c:
        raise ReductionError("the three literals must use different variables")
    if c > n:
        raise ReductionError(f"variable p{c} exceeds n={n}")
    body = And([l1, l2, l3, Var(LABEL)])
    g = boxes(n - c, body)
    g = boxes(c - b - 1, Dia(g))
    g = boxes(b - a - 1, Dia(g))
    return boxes(a - 1, Dia(g))


def reduce_qbf(q: QBFInstance) -> Formula:
    """Poor man's formula satisfiable over frames with at most two successors
    per world iff ``q`` is true."""
    parts = [phi_exp(q.n)]
    for c in q.clauses:
        parts.append(label_false([-x for x in c], q.n))
    tail: Formula = NegVar(LABEL)
    for _ in range(q.n // 2):
        tail = Dia(Box(tail))
    parts.append(tail)
    return conj(*parts)


# ---------------------------------------------------------------- one variable

def _basic(f: Formula) -> Formula:
    """Equivalent formula over negation, conjunction and box only."""
    if isinstance(f, (Var, Const)):
        return f
    if isinstance(f, NegVar):
        return Not(Var(f.name))
    if isinstance(f, Not):
        return Not(_basic(f.child))
    if isinstance(f, And):
        return And([_basic(c) for c in f.children])
    if isinstance(f, Or):
        return Not(And([Not(_basic(c)) for c in f.children]))
    if isinstance(f, Box):
        return Box(_basic(f.child))
    if isinstance(f, Dia):
        return Not(Box(Not(_basic(f.child))))
    raise TypeError(f"not a formula: {f!r}")


def reduce_onevar_to_zerovar(f: Formula) -> Formula:
    """Variable-free formula K-satisfiable iff ``f`` (at most one variable) is.

    The variable is simulated by the existence of a maximal path of length
    md(f)+1.
    """
    vs = variables(f)
    if len(vs) > 1:
        raise ReductionError(f"more than one variable: {sorted(vs)}")
    k = modal_depth(f)
    marker = dias(k + 1, Box(FALSE))
    escape = dias(k, Box(FALSE))

    def tr(g: Formula) -> Formula:
        if isinstance(g, Var):
            return marker
        if isinstance(g, Const):
            return g
        if isinstance(g, Not):
            return Not(tr(g.child))
        if isinstance(g, And):
            return And([tr(c) for c in g.children])
        if isinstance(g, Box):
            return Box(Or([escape, tr(g.child)]))
        raise AssertionError(f"unexpected {g!r}")

    return tr(_basic(f))
