"""Exhaustive valuation search on a fixed finite frame.

The inner loop lives in the compiled ``_sweep`` extension when it is built,
and in ``_sweep_py`` otherwise.  Set ``MODALSAT_PURE_PYTHON=1`` to force the
fallback.
"""

from __future__ import annotations

import os
from typing import Sequence

from . import _sweep_py
from .formula import And, Box, Const, Dia, Formula, NegVar, Not, Or, Var, variables

if os.environ.get("MODALSAT_PURE_PYTHON"):
    _compiled = None
else:
    try:
        from . import _sweep as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
BACKENDS = {"python": _sweep_py.first_model}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled.first_model

MAX_BITS = 40


class Program:
    """A formula flattened into straight-line code over shared subformula slots."""

    def __init__(self, f: Formula, var_order: Sequence[str] | None = None):
        self.formula = f
        names = sorted(variables(f)) if var_order is None else list(var_order)
        self.var_index = {v: i for i, v in enumerate(names)}
        self.var_names = names
        self.ops: list[int] = []
        self.arg_a: list[int] = []
        self.arg_b: list[int] = []
        self._slots: dict[Formula, int] = {}
        top = self._emit(f)
        if top != len(self.ops) - 1:
            # the sweep reads its result from the last slot
            self._push(_sweep_py.OP_AND, top, top)

    @property
    def n_vars(self) -> int:
        return len(self.var_names)

    def _push(self, op, a=0, b=0) -> int:
        self.ops.append(op)
        self.arg_a.append(a)
        self.arg_b.append(b)
        return len(self.ops) - 1

    def _emit(self, f: Formula) -> int:
        slot = self._slots.get(f)
        if slot is not None:
            return slot
        P = _sweep_py
        if isinstance(f, Var):
            slot = self._push(P.OP_VAR, self.var_index[f.name])
        elif isinstance(f, NegVar):
            slot = self._push(P.OP_NEGVAR, self.var_index[f.name])
        elif isinstance(f, Const):
            slot = self._push(P.OP_TRUE if f.value else P.OP_FALSE)
        elif isinstance(f, Not):
            slot = self._push(P.OP_NOT, self._emit(f.child))
        elif isinstance(f, (Box, Dia)):
            slot = self._push(P.OP_BOX if isinstance(f, Box) else P.OP_DIA, self._emit(f.child))
        elif isinstance(f, (And, Or)):
            op = P.OP_AND if isinstance(f, And) else P.OP_OR
            acc = self._emit(f.children[0])
            for c in f.children[1:]:
                acc = self._push(op, acc, self._emit(c))
            slot = acc
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._slots[f] = slot
        return slot


def first_model(program: Program, n_worlds: int, successors: Sequence[Sequence[int]],
                root: int, start: int = 0, backend: str | None = None) -> int:
    """Index of the first valuation (>= ``start``) satisfying the program at ``root``.

    ``successors[w]`` lists the successors of world ``w``.  Returns -1 if no
    valuation of the frame works.
    """
    if n_worlds * program.n_vars > MAX_BITS:
        raise ValueError(f"{n_worlds} worlds x {program.n_vars} variables is too large to sweep")
    offsets = [0]
    targets: list[int] = []
    for w in range(n_worlds):
        targets.extend(successors[w])
        offsets.append(len(targets))
    fn = BACKENDS[backend or BACKEND]
    return fn(n_worlds, offsets, targets, program.ops, program.arg_a, program.arg_b,
              program.n_vars, root, start)


def decode(program: Program, n_worlds: int, index: int) -> dict[str, frozenset[int]]:
    """Valuation (variable -> set of worlds) encoded by a sweep index."""
    val: dict[str, set[int]] = {v: set() for v in program.var_names}
    for w in range(n_worlds):
        for v, k in program.var_index.items():
            if index >> (w * program.n_vars + k) & 1:
                val[v].add(w)
    return {v: frozenset(ws) for v, ws in val.items()}
