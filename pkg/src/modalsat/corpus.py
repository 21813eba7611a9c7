"""Formula corpora for testing solvers against the oracles.

Exhaustive corpora bound the formula by modal depth and by a width budget:
at every modal nesting level the formula may use at most ``max_width``
*units* in total, where a unit is an atom or a modal subformula.  So with
width 3, ``[]p & <>q & r`` uses all three units of level 0 and two of
level 1.  Conjunctions and disjunctions list distinct units in a canonical
order, so commuted or repeated copies of the same formula are not emitted
twice.  A disjunction may appear inside a conjunction (and vice versa) but
not deeper, and general negation is applied at most once in a row.

When the exhaustive corpus exceeds ``exhaustive_limit`` formulas,
``generate_formulas`` falls back to seeded random sampling with the same
bounds interpreted per node.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .formula import (FALSE, TRUE, And, Box, Dia, Formula, NegVar, Not, Or, OperatorSet, Var,
                      render)

__all__ = ["variable_names", "generate_formulas", "exhaustive_formulas", "sample_formulas",
           "CorpusTooLarge"]

_NAMES = "pqrs"


def variable_names(n: int) -> list[str]:
    if n <= len(_NAMES):
        return list(_NAMES[:n])
    return [f"p{i}" for i in range(1, n + 1)]


class CorpusTooLarge(Exception):
    pass


def _atoms(ops: OperatorSet, names: Sequence[str]) -> list[Formula]:
    out: list[Formula] = []
    for v in names:
        out.append(Var(v))
        if "atneg" in ops:
            out.append(NegVar(v))
    if "true" in ops:
        out.append(TRUE)
    if "false" in ops:
        out.append(FALSE)
    return out


def _add(u: tuple, v: tuple) -> tuple:
    if len(u) < len(v):
        u, v = v, u
    return tuple(a + (v[i] if i < len(v) else 0) for i, a in enumerate(u))


class _Exhaustive:
    def __init__(self, ops: OperatorSet, names: Sequence[str], width: int, cap: int):
        self.ops = ops
        self.atoms = _atoms(ops, names)
        self.width = width
        self.cap = cap
        self.memo: dict[int, list[tuple[Formula, tuple]]] = {}
        self._keys: dict[Formula, str] = {}

    def key(self, f: Formula) -> str:
        k = self._keys.get(f)
        if k is None:
            k = self._keys[f] = render(f)
        return k

    def _junctions(self, cls, units, width):
        # group units by usage so that budget violations prune whole groups
        groups: dict[tuple, list[Formula]] = {}
        for f, u in units:
            groups.setdefault(u, []).append(f)
        keys = sorted(groups)
        out = []

        def rec(start: int, use: tuple, count: int, picked: list):
            if count >= 2:
                for combo in itertools.product(*[itertools.combinations(groups[k], n)
                                                 for k, n in picked]):
                    parts = [f for part in combo for f in part]
                    parts.sort(key=self.key)
                    out.append((cls(parts), use))
                    if len(out) > self.cap:
                        raise CorpusTooLarge
            for i in range(start, len(keys)):
                k = keys[i]
                for n in range(1, min(len(groups[k]), width - count) + 1):
                    new_use = use
                    for _ in range(n):
                        new_use = _add(new_use, k)
                    if max(new_use) > width:
                        break
                    rec(i + 1, new_use, count + n, picked + [(k, n)])

        rec(0, (0,), 0, [])
        return out

    def forms(self, depth: int) -> list[tuple[Formula, tuple]]:
        """All formulas of modal depth <= depth, paired with per-level unit usage."""
        if depth in self.memo:
            return self.memo[depth]
        w = self.width
        units: list[tuple[Formula, tuple]] = [(a, (1,)) for a in self.atoms]
        if depth > 0 and ({"box", "dia"} & self.ops):
            for g, use in self.forms(depth - 1):
                if "box" in self.ops:
                    units.append((Box(g), (1,) + use))
                if "dia" in self.ops:
                    units.append((Dia(g), (1,) + use))
        if "neg" in self.ops:
            units += [(Not(f), u) for f, u in units]
        units.sort(key=lambda fu: self.key(fu[0]))
        out = list(units)
        inner: dict[str, list] = {}
        for tag, cls in (("and", And), ("or", Or)):
            if tag in self.ops:
                inner[tag] = self._junctions(cls, units, w)
        out += inner.get("and", []) + inner.get("or", [])
        if "and" in self.ops and "or" in self.ops:
            for tag, cls in (("and", And), ("or", Or)):
                other = "or" if tag == "and" else "and"
                mixed = [fu for fu in units] + inner[other]
                mixed.sort(key=lambda fu: self.key(fu[0]))
                for f, use in self._junctions(cls, mixed, w):
                    if any(isinstance(c, Or if tag == "and" else And) for c in f.children):
                        out.append((f, use))
        if "neg" in self.ops:
            out += [(Not(f), u) for f, u in out if isinstance(f, (And, Or))]
        if len(out) > self.cap:
            raise CorpusTooLarge
        self.memo[depth] = out
        return out


def exhaustive_formulas(fragment: OperatorSet, max_vars: int, max_depth: int,
                        max_width: int, cap: int = 200_000) -> list[Formula]:
    """Every formula within the bounds (see module docstring), in a fixed order.

    Raises ``CorpusTooLarge`` when more than ``cap`` formulas would be built.
    """
    gen = _Exhaustive(OperatorSet(fragment), variable_names(max_vars), max_width, cap)
    return [f for f, _ in gen.forms(max_depth)]


def _random_formula(rng: random.Random, ops: OperatorSet, atoms: list[Formula],
                    depth: int, width: int, junction_ok: bool = True) -> Formula:
    kinds = ["atom"] if atoms else []
    if depth > 0:
        kinds += [k for k in ("box", "dia") if k in ops]
    juncs = [k for k in ("and", "or") if k in ops] if junction_ok and width >= 2 else []
    if juncs and rng.random() < 0.5:
        tag = rng.choice(juncs)
        k = rng.randint(2, width)
        parts = [_random_formula(rng, ops, atoms, depth, width, False) for _ in range(k)]
        f: Formula = And(parts) if tag == "and" else Or(parts)
    else:
        if not kinds:
            raise ValueError("fragment has no formulas within the bounds")
        kind = rng.choice(kinds)
        if kind == "atom":
            f = rng.choice(atoms)
        else:
            g = _random_formula(rng, ops, atoms, depth - 1, width, True)
            f = Box(g) if kind == "box" else Dia(g)
    if "neg" in ops and rng.random() < 0.25:
        f = Not(f)
    return f


def sample_formulas(fragment: OperatorSet, max_vars: int, max_depth: int, max_width: int,
                    count: int, seed: int = 0) -> list[Formula]:
    """``count`` pseudo-random formulas; each node has at most ``max_width`` children."""
    ops = OperatorSet(fragment)
    atoms = _atoms(ops, variable_names(max_vars))
    rng = random.Random(seed)
    return [_random_formula(rng, ops, atoms, max_depth, max_width) for _ in range(count)]


def generate_formulas(fragment: OperatorSet, max_vars: int, max_depth: int, max_width: int,
                      seed: int = 0, limit: int | None = None,
                      exhaustive_limit: int = 200_000) -> Iterator[Formula]:
    """Exhaustive corpus when it has at most ``exhaustive_limit`` members,
    otherwise ``limit`` (default 1000) seeded samples."""
    if min(max_vars, max_depth, max_width) < 0:
        raise ValueError("bounds must be non-negative")
    try:
        forms = exhaustive_formulas(fragment, max_vars, max_depth, max_width, exhaustive_limit)
    except CorpusTooLarge:
        forms = sample_formulas(fragment, max_vars, max_depth, max_width,
                                1000 if limit is None else limit, seed)
    yield from forms if limit is None else forms[:limit]
