"""Complexity of satisfiability for languages built from operator subsets, and
the dedicated algorithms for the languages that are in P or NP.

Every subset of the eight operators falls in exactly one of four classes.
``classify_operator_set`` checks the PSPACE-complete bases first, then the
coNP-complete, NP-complete and polynomial families, and reports which
theorem and case decided it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import propsat
from .formula import (FALSE, TRUE, And, Box, Const, Dia, Formula, NegVar, Not, Or, OperatorSet,
                      Var, operator_set_of, render, to_nnf)
from .oracle import FrameClass, Kind
from .procedures import SatVerdict, sat

__all__ = ["ClassTag", "ComplexityClass", "classify_operator_set", "sat_poly_fragment",
           "sat_np_fragment", "fragment_dispatch", "poly_schema", "np_schema", "NotInFragment",
           "P_SCHEMAS", "NP_SCHEMAS"]


class ClassTag(str, enum.Enum):
    P = "P"
    NP = "NP-complete"
    CONP = "coNP-complete"
    PSPACE = "PSPACE-complete"

    @property
    def level(self) -> int:
        return {"P": 0, "NP-complete": 1, "coNP-complete": 1, "PSPACE-complete": 2}[self.value]


@dataclass(frozen=True)
class ComplexityClass:
    tag: ClassTag
    theorem: str
    case: int | None = None

    @property
    def provenance(self) -> str:
        if self.case is None:
            return f"Theorem {self.theorem}"
        return f"Theorem {self.theorem}, case {self.case}"

    def __str__(self):
        return f"{self.tag.value} ({self.provenance})"


def _ops(text: str) -> OperatorSet:
    return OperatorSet.from_text(text)


PSPACE_BASES = [_ops("neg,and,box"), _ops("neg,and,dia"), _ops("neg,or,box"),
                _ops("neg,or,dia"), _ops("atneg,and,or,box,dia")]
PSPACE_NO_NEGATION = _ops("and,or,box,dia,false")
CONP_UPPER = _ops("atneg,and,box,dia,true,false")
CONP_LOWER = [_ops("atneg,and,box,dia"), _ops("and,box,dia,false")]
NP_PROPOSITIONAL = _ops("neg,atneg,and,or,true,false")
NP_BOX = _ops("atneg,and,or,box,true,false")
NP_DIA = _ops("atneg,and,or,dia,true,false")
NP_SCHEMAS = [NP_PROPOSITIONAL, NP_BOX, NP_DIA]
P_SCHEMAS = [_ops("neg,atneg,box,dia,true,false"), _ops("atneg,or,box,dia,true,false"),
             _ops("atneg,and,box,true,false"), _ops("atneg,and,dia,true,false"),
             _ops("and,or,box,true,false"), _ops("and,or,dia,true,false"),
             _ops("and,or,box,dia,true")]


def classify_operator_set(s) -> ComplexityClass:
    s = OperatorSet(s)
    for i, base in enumerate(PSPACE_BASES, 1):
        if base <= s:
            return ComplexityClass(ClassTag.PSPACE, "pspace", i)
    if PSPACE_NO_NEGATION <= s:
        return ComplexityClass(ClassTag.PSPACE, "pspacetwo")
    for i, low in enumerate(CONP_LOWER, 1):
        if low <= s <= CONP_UPPER:
            return ComplexityClass(ClassTag.CONP, "conp", i)
    if s <= NP_PROPOSITIONAL and (_ops("neg,or") <= s or _ops("neg,and") <= s):
        return ComplexityClass(ClassTag.NP, "np", 1)
    if _ops("atneg,and,or") <= s and (s <= NP_BOX or s <= NP_DIA):
        return ComplexityClass(ClassTag.NP, "np", 2)
    for i, schema in enumerate(P_SCHEMAS, 1):
        if s <= schema:
            return ComplexityClass(ClassTag.P, "p", i)
    raise AssertionError(f"operator set {s.to_text()} escapes the classification")


class NotInFragment(ValueError):
    pass


def poly_schema(f: Formula) -> int | None:
    """Number (1-7) of the first polynomial family containing ``f``'s operators."""
    s = operator_set_of(f)
    for i, schema in enumerate(P_SCHEMAS, 1):
        if s <= schema:
            return i
    return None


def np_schema(f: Formula) -> int | None:
    """0 for propositional, 1 for the box family, 2 for the diamond family."""
    s = operator_set_of(f)
    for i, schema in enumerate(NP_SCHEMAS):
        if s <= schema:
            return i
    return None


def _is_literal(f: Formula) -> bool:
    return isinstance(f, (Var, NegVar))


def _atoms_consistent(parts) -> bool:
    pos, neg = set(), set()
    for a in parts:
        if isinstance(a, Const):
            if not a.value:
                return False
        elif isinstance(a, Var):
            pos.add(a.name)
        else:
            neg.add(a.name)
    return not pos & neg


def _parts(f: Formula, cls) -> tuple[Formula, ...]:
    return f.children if isinstance(f, cls) else (f,)


# one function per polynomial family; each returns a bool

def _unary(f: Formula) -> bool:
    g = to_nnf(f)
    while isinstance(g, Dia):
        g = g.child
    return g != FALSE


def _or_modal(f: Formula) -> bool:
    dias = []
    for d in _parts(f, Or):
        if isinstance(d, Box) or _is_literal(d) or d == TRUE:
            return True
        if isinstance(d, Dia):
            dias.append(d.child)
    return any(_or_modal(x) for x in dias)


def _and_box(f: Formula) -> bool:
    return _atoms_consistent([c for c in _parts(f, And) if not isinstance(c, Box)])


def _and_dia(f: Formula) -> bool:
    cs = _parts(f, And)
    if not _atoms_consistent([c for c in cs if not isinstance(c, Dia)]):
        return False
    return all(_and_dia(c.child) for c in cs if isinstance(c, Dia))


def _eval_monotone(f: Formula, modal) -> bool:
    """Truth value after replacing variables by true and each outermost modal
    subformula by ``modal(subformula)``."""
    if isinstance(f, Var):
        return True
    if isinstance(f, Const):
        return f.value
    if isinstance(f, And):
        return all(_eval_monotone(c, modal) for c in f.children)
    if isinstance(f, Or):
        return any(_eval_monotone(c, modal) for c in f.children)
    if isinstance(f, (Box, Dia)):
        return modal(f)
    raise NotInFragment(f"unexpected subformula {render(f)}")


def _monotone_box(f: Formula) -> bool:
    return _eval_monotone(f, lambda g: True)


def _monotone_dia(f: Formula) -> bool:
    return _eval_monotone(f, lambda g: _monotone_dia(g.child))


_POLY = [_unary, _or_modal, _and_box, _and_dia, _monotone_box, _monotone_dia, lambda f: True]


def sat_poly_fragment(f: Formula) -> SatVerdict:
    """Satisfiability over all frames for formulas of a polynomial family."""
    case = poly_schema(f)
    if case is None:
        raise NotInFragment(f"{render(f)} is in none of the polynomial families")
    return SatVerdict.of(_POLY[case - 1](f), trace=[{"rule": "poly", "case": case}])


def _replace_outermost(f: Formula, modal) -> object:
    """Propositional tree for ``propsat`` with outermost modal subformulas
    replaced by the booleans ``modal`` assigns them."""
    if isinstance(f, Var):
        return ("var", f.name)
    if isinstance(f, NegVar):
        return ("nvar", f.name)
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return ("not", _replace_outermost(f.child, modal))
    if isinstance(f, (And, Or)):
        return ("and" if isinstance(f, And) else "or",
                tuple(_replace_outermost(c, modal) for c in f.children))
    return modal(f)


def _np_decide(f: Formula, case: int) -> bool:
    if case == 0:
        return propsat.solve(_replace_outermost(f, None)) is not None
    if case == 1:
        return propsat.solve(_replace_outermost(f, lambda g: True)) is not None
    return propsat.solve(_replace_outermost(f, lambda g: _np_decide(g.child, 2))) is not None


def sat_np_fragment(f: Formula) -> SatVerdict:
    """Satisfiability over all frames for formulas of an NP family.

    Exponential in the worst case: propositional satisfiability is decided by
    backtracking.
    """
    case = np_schema(f)
    if case is None:
        raise NotInFragment(f"{render(f)} is in none of the NP families")
    return SatVerdict.of(_np_decide(f, case), trace=[{"rule": "np", "case": case}])


def fragment_dispatch(f: Formula, fc: FrameClass) -> SatVerdict:
    """Decide ``f`` over ``fc``, using the fragment algorithms when ``fc`` is K."""
    if fc.kind is Kind.K:
        if poly_schema(f) is not None:
            return sat_poly_fragment(f)
        if np_schema(f) is not None:
            return sat_np_fragment(f)
    return sat(f, fc)
