"""Backtracking satisfiability for propositional formula trees.

Formulas are nested tuples: ``("var", key)``, ``("nvar", key)``,
``("not", x)``, ``("and", (x, ...))``, ``("or", (x, ...))`` and the Python
booleans.  Keys are any hashable values, so the same routine serves plain
propositional formulas and the world-indexed unfoldings used for fixed
frames.
"""

from __future__ import annotations

from typing import Hashable

from .formula import And, Const, Formula, NegVar, Not, Or, Var


def from_formula(f: Formula):
    """Convert a modality-free formula."""
    if isinstance(f, Var):
        return ("var", f.name)
    if isinstance(f, NegVar):
        return ("nvar", f.name)
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return ("not", from_formula(f.child))
    if isinstance(f, And):
        return ("and", tuple(from_formula(c) for c in f.children))
    if isinstance(f, Or):
        return ("or", tuple(from_formula(c) for c in f.children))
    raise ValueError(f"modal operator in propositional formula: {f}")


def simplify(node, asg: dict):
    if node is True or node is False:
        return node
    tag = node[0]
    if tag == "var":
        v = asg.get(node[1])
        return node if v is None else v
    if tag == "nvar":
        v = asg.get(node[1])
        return node if v is None else not v
    if tag == "not":
        inner = simplify(node[1], asg)
        if inner is True or inner is False:
            return not inner
        if inner[0] == "var":
            return ("nvar", inner[1])
        if inner[0] == "nvar":
            return ("var", inner[1])
        return ("not", inner)
    absorbing = tag == "or"  # True absorbs a disjunction, False a conjunction
    kept = []
    for c in node[1]:
        s = simplify(c, asg)
        if s is absorbing:
            return absorbing
        if s is not (not absorbing):
            kept.append(s)
    if not kept:
        return not absorbing
    if len(kept) == 1:
        return kept[0]
    return (tag, tuple(kept))


def _units(node) -> list[tuple[Hashable, bool]]:
    if node is True or node is False:
        return []
    if node[0] == "var":
        return [(node[1], True)]
    if node[0] == "nvar":
        return [(node[1], False)]
    if node[0] == "and":
        out = []
        for c in node[1]:
            if c is not True and c is not False and c[0] in ("var", "nvar"):
                out.append((c[1], c[0] == "var"))
        return out
    return []


def _pick(node):
    stack = [node]
    while stack:
        n = stack.pop()
        if n is True or n is False:
            continue
        if n[0] in ("var", "nvar"):
            return n[1]
        if n[0] == "not":
            stack.append(n[1])
        else:
            stack.extend(reversed(n[1]))
    return None


def solve(node, asg: dict | None = None) -> dict | None:
    """A satisfying partial assignment, or None.  Unassigned keys are free."""
    asg = dict(asg or {})
    node = simplify(node, asg)
    while True:
        if node is False:
            return None
        if node is True:
            return asg
        units = _units(node)
        if not units:
            break
        for key, value in units:
            if asg.get(key, value) != value:
                return None
            asg[key] = value
        node = simplify(node, asg)
    key = _pick(node)
    for value in (True, False):
        asg[key] = value
        got = solve(node, asg)
        if got is not None:
            return got
    return None


def satisfiable(f: Formula) -> bool:
    return solve(from_formula(f)) is not None
