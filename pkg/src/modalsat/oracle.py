"""Kripke semantics and brute-force satisfiability oracles.

Everything here decides satisfiability by looking at concrete finite models,
never by reasoning about formula structure.  The oracles are deliberately
slow and serve as ground truth for the decision procedures.

Search space
    Candidate frames are rooted trees (up to isomorphism) of height at most
    the modal depth of the query, enumerated by world count.  Serial frames
    put a self-loop on every leaf, frames with at most one successor are
    chains, frames with at most two successors are binary trees.  For each
    frame every valuation of the query's variables is tried by the sweep
    kernel.

Completeness
    An UNSAT answer is only given when the number of worlds searched reaches
    a size bound that any satisfiable query is guaranteed to meet (see
    ``completeness_bound``).  Otherwise the answer is BOUND_EXCEEDED.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from . import propsat
from .formula import (And, Box, Const, Dia, Formula, NegVar, Not, Or, Var, modal_depth,
                      to_nnf, variables)
from .sweep import MAX_BITS, Program, decode, first_model

__all__ = [
    "Frame", "KripkeModel", "FrameClass", "K", "SERIAL", "LE1", "LE2", "FRAME3",
    "Status", "OracleResult", "evaluate", "brute_force_sat", "fixed_frame_sat",
    "iter_models", "assignment_coverage", "completeness_bound", "conforms",
]


@dataclass(frozen=True)
class Frame:
    worlds: tuple[int, ...]
    relation: frozenset[tuple[int, int]]
    root: int = 0

    def __post_init__(self):
        ws = set(self.worlds)
        if not ws:
            raise ValueError("a frame needs at least one world")
        if self.root not in ws:
            raise ValueError(f"root {self.root} is not a world")
        for a, b in self.relation:
            if a not in ws or b not in ws:
                raise ValueError(f"edge ({a}, {b}) leaves the world set")

    def successors(self, w: int) -> list[int]:
        return sorted(b for a, b in self.relation if a == w)

    def to_json(self) -> dict:
        return {"worlds": list(self.worlds),
                "relation": [list(e) for e in sorted(self.relation)],
                "root": self.root}

    @classmethod
    def from_json(cls, data: Mapping) -> Frame:
        return cls(tuple(data["worlds"]), frozenset(tuple(e) for e in data["relation"]),
                   data.get("root", 0))


@dataclass(frozen=True)
class KripkeModel:
    worlds: tuple[int, ...]
    relation: frozenset[tuple[int, int]]
    valuation: Mapping[str, frozenset[int]]
    root: int = 0

    def __post_init__(self):
        Frame(self.worlds, self.relation, self.root)  # validates the frame part
        ws = set(self.worlds)
        for v, s in self.valuation.items():
            if not set(s) <= ws:
                raise ValueError(f"valuation of {v} mentions unknown worlds")
        object.__setattr__(self, "_succ",
                           {w: tuple(sorted(b for a, b in self.relation if a == w)) for w in ws})

    def __hash__(self):
        return hash((self.worlds, self.relation, self.root,
                     tuple(sorted((k, v) for k, v in self.valuation.items()))))

    def successors(self, w: int) -> tuple[int, ...]:
        return self._succ[w]  # type: ignore[attr-defined]

    @property
    def frame(self) -> Frame:
        return Frame(self.worlds, self.relation, self.root)

    def true_at(self, var: str, w: int) -> bool:
        return w in self.valuation.get(var, ())

    def to_json(self) -> dict:
        d = self.frame.to_json()
        d["valuation"] = {v: sorted(s) for v, s in sorted(self.valuation.items()) if s}
        return {k: d[k] for k in ("worlds", "relation", "valuation", "root")}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: Mapping) -> KripkeModel:
        fr = Frame.from_json(data)
        val = {k: frozenset(v) for k, v in data.get("valuation", {}).items()}
        return cls(fr.worlds, fr.relation, val, fr.root)


class Kind(str, enum.Enum):
    K = "K"
    SERIAL = "Serial"
    LE1 = "AtMostOne"
    LE2 = "AtMostTwo"
    FIXED = "FixedFrame"


@dataclass(frozen=True)
class FrameClass:
    kind: Kind
    frame: Frame | None = field(default=None, compare=True)

    def __post_init__(self):
        if (self.kind is Kind.FIXED) != (self.frame is not None):
            raise ValueError("a frame is required exactly for FixedFrame")

    @classmethod
    def fixed(cls, frame: Frame) -> FrameClass:
        return cls(Kind.FIXED, frame)

    def __str__(self):
        return self.kind.value


K = FrameClass(Kind.K)
SERIAL = FrameClass(Kind.SERIAL)
LE1 = FrameClass(Kind.LE1)
LE2 = FrameClass(Kind.LE2)
FRAME3 = FrameClass.fixed(Frame((0, 1, 2, 3), frozenset({(0, 1), (0, 2), (0, 3)}), 0))


def conforms(model: KripkeModel | Frame, fc: FrameClass) -> bool:
    """Does the model's frame belong to the frame class?"""
    out = {w: 0 for w in model.worlds}
    for a, _ in model.relation:
        out[a] += 1
    if fc.kind is Kind.K:
        return True
    if fc.kind is Kind.SERIAL:
        return all(n >= 1 for n in out.values())
    if fc.kind is Kind.LE1:
        return all(n <= 1 for n in out.values())
    if fc.kind is Kind.LE2:
        return all(n <= 2 for n in out.values())
    assert fc.frame is not None
    return set(model.worlds) == set(fc.frame.worlds) and model.relation == fc.frame.relation


# ---------------------------------------------------------------- truth

def evaluate(m: KripkeModel, w: int, f: Formula) -> bool:
    if w not in m._succ:  # type: ignore[attr-defined]
        raise KeyError(f"unknown world {w}")
    return _eval(m, w, f)


def _eval(m: KripkeModel, w: int, f: Formula) -> bool:
    if isinstance(f, Var):
        return m.true_at(f.name, w)
    if isinstance(f, NegVar):
        return not m.true_at(f.name, w)
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not _eval(m, w, f.child)
    if isinstance(f, And):
        return all(_eval(m, w, c) for c in f.children)
    if isinstance(f, Or):
        return any(_eval(m, w, c) for c in f.children)
    if isinstance(f, Box):
        return all(_eval(m, v, f.child) for v in m.successors(w))
    if isinstance(f, Dia):
        return any(_eval(m, v, f.child) for v in m.successors(w))
    raise TypeError(f"not a formula: {f!r}")


def assignment_coverage(m: KripkeModel, w: int, vars: Sequence[str]) -> set[tuple[bool, ...]]:
    """Valuation patterns over ``vars`` seen at the ends of paths of length ``len(vars)``."""
    frontier = {w}
    for _ in range(len(vars)):
        frontier = {v for u in frontier for v in m.successors(u)}
    return {tuple(m.true_at(p, v) for p in vars) for v in frontier}


# ---------------------------------------------------------------- completeness bounds

def _modal_parts(fs: Iterable[Formula]) -> tuple[frozenset, frozenset]:
    dias, boxes = set(), set()
    stack = list(fs)
    while stack:
        g = stack.pop()
        if isinstance(g, (And, Or)):
            stack.extend(g.children)
        elif isinstance(g, Dia):
            dias.add(g.child)
        elif isinstance(g, Box):
            boxes.add(g.child)
    return frozenset(dias), frozenset(boxes)


def completeness_bound(f: Formula, fc: FrameClass) -> int:
    """World count that suffices for a tree model of ``f`` in ``fc``, if any model exists.

    Obtained by selective unravelling: keep one witness successor per
    diamond that must hold at a world (copying subtrees when a successor
    witnesses several), plus one successor for seriality.  Boxes never need
    successors, so they only add obligations to the kept ones.  Loops on
    leaves of serial trees are harmless because nothing modal is evaluated
    there.
    """
    g = to_nnf(f)
    md = modal_depth(g)
    kind = fc.kind

    @lru_cache(maxsize=None)
    def k_size(req: frozenset) -> int:
        d, b = _modal_parts(req)
        return 1 + sum(k_size(frozenset({x}) | b) for x in d)

    @lru_cache(maxsize=None)
    def serial_size(req: frozenset) -> int:
        d, b = _modal_parts(req)
        if d:
            return 1 + sum(serial_size(frozenset({x}) | b) for x in d)
        return 1 + (serial_size(b) if b else 0)

    @lru_cache(maxsize=None)
    def le1_size(req: frozenset) -> int:
        d, b = _modal_parts(req)
        return 1 + (le1_size(d | b) if d else 0)

    @lru_cache(maxsize=None)
    def le2_size(req: frozenset) -> int:
        d, b = _modal_parts(req)
        return 1 + (min(len(d), 2) * le2_size(d | b) if d else 0)

    start = frozenset({g})
    if kind is Kind.K:
        return k_size(start)
    if kind is Kind.SERIAL:
        return serial_size(start)
    if kind is Kind.LE1:
        return min(le1_size(start), md + 1)
    if kind is Kind.LE2:
        return min(le2_size(start), 2 ** (md + 1) - 1)
    assert fc.frame is not None
    return len(fc.frame.worlds)


# ---------------------------------------------------------------- tree enumeration

@lru_cache(maxsize=None)
def _trees(n: int, height: int, branching: int | None) -> tuple[tuple, ...]:
    """Rooted unordered trees with exactly ``n`` nodes, one per isomorphism class.

    A tree is the tuple of its child subtrees in canonical order.
    """
    if n == 1:
        return ((),)
    if height == 0:
        return ()
    cands = [t for s in range(1, n) for t in _trees(s, height - 1, branching)]
    sizes = [_tree_size(t) for t in cands]
    out: list[tuple] = []

    def rec(remaining: int, max_i: int, acc: list):
        if remaining == 0:
            out.append(tuple(acc))
            return
        if branching is not None and len(acc) == branching:
            return
        for i in range(max_i, -1, -1):
            if sizes[i] <= remaining:
                acc.append(cands[i])
                rec(remaining - sizes[i], i, acc)
                acc.pop()

    rec(n - 1, len(cands) - 1, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _tree_size(t: tuple) -> int:
    return 1 + sum(_tree_size(c) for c in t)


def _tree_successors(t: tuple, loop_leaves: bool) -> list[list[int]]:
    """Breadth-first numbering of a tree; root is world 0."""
    succ: list[list[int]] = [[]]
    queue = [(t, 0)]
    while queue:
        node, wid = queue.pop(0)
        for child in node:
            cid = len(succ)
            succ.append([])
            succ[wid].append(cid)
            queue.append((child, cid))
    if loop_leaves:
        for w, s in enumerate(succ):
            if not s:
                s.append(w)
    return succ


def _frames(fc: FrameClass, n: int, height: int) -> Iterator[list[list[int]]]:
    kind = fc.kind
    if kind is Kind.LE1:
        trees = _trees(n, height, 1)
    elif kind is Kind.LE2:
        trees = _trees(n, height, 2)
    else:
        trees = _trees(n, height, None)
    for t in trees:
        yield _tree_successors(t, loop_leaves=kind is Kind.SERIAL)


def _model(program: Program, succ: list[list[int]], index: int) -> KripkeModel:
    n = len(succ)
    rel = frozenset((a, b) for a in range(n) for b in succ[a])
    return KripkeModel(tuple(range(n)), rel, decode(program, n, index), 0)


# ---------------------------------------------------------------- oracles

class Status(str, enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    BOUND_EXCEEDED = "BOUND_EXCEEDED"


@dataclass
class OracleResult:
    status: Status
    model: KripkeModel | None = None
    bound: int | None = None
    worlds_searched: int = 0

    @property
    def sat(self) -> bool | None:
        if self.status is Status.BOUND_EXCEEDED:
            return None
        return self.status is Status.SAT


def brute_force_sat(f: Formula, fc: FrameClass, max_worlds: int,
                    backend: str | None = None) -> OracleResult:
    """Exhaustive model search for ``f`` in frame class ``fc``."""
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    if fc.kind is Kind.FIXED:
        res = fixed_frame_sat(f, fc.frame)
        return OracleResult(res.status, res.model, len(fc.frame.worlds), len(fc.frame.worlds))
    bound = completeness_bound(f, fc)
    program = Program(f)
    height = modal_depth(f)
    limit = min(max_worlds, bound)
    searched = 0
    for n in range(1, limit + 1):
        if n * program.n_vars > MAX_BITS:
            return OracleResult(Status.BOUND_EXCEEDED, bound=bound, worlds_searched=searched)
        for succ in _frames(fc, n, height):
            idx = first_model(program, n, succ, 0, backend=backend)
            if idx >= 0:
                return OracleResult(Status.SAT, _model(program, succ, idx), bound, n)
        searched = n
    if bound <= max_worlds:
        return OracleResult(Status.UNSAT, bound=bound, worlds_searched=searched)
    return OracleResult(Status.BOUND_EXCEEDED, bound=bound, worlds_searched=searched)


def iter_models(f: Formula, fc: FrameClass, max_worlds: int,
                backend: str | None = None) -> Iterator[KripkeModel]:
    """Every tree model in the oracle's search space with at most ``max_worlds`` worlds
    that satisfies ``f`` at its root."""
    program = Program(f)
    height = modal_depth(f)
    for n in range(1, max_worlds + 1):
        for succ in _frames(fc, n, height):
            idx = first_model(program, n, succ, 0, backend=backend)
            while idx >= 0:
                yield _model(program, succ, idx)
                idx = first_model(program, n, succ, 0, start=idx + 1, backend=backend)


# ---------------------------------------------------------------- fixed frames

def _unfold(f: Formula, w: int, succ: Mapping[int, Sequence[int]], memo: dict):
    key = (f, w)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if isinstance(f, Var):
        out = ("var", (f.name, w))
    elif isinstance(f, NegVar):
        out = ("nvar", (f.name, w))
    elif isinstance(f, Const):
        out = f.value
    elif isinstance(f, Not):
        out = ("not", _unfold(f.child, w, succ, memo))
    elif isinstance(f, (And, Or)):
        out = ("and" if isinstance(f, And) else "or",
               tuple(_unfold(c, w, succ, memo) for c in f.children))
    elif isinstance(f, (Box, Dia)):
        parts = tuple(_unfold(f.child, v, succ, memo) for v in succ[w])
        if not parts:
            out = isinstance(f, Box)
        else:
            out = ("and" if isinstance(f, Box) else "or", parts)
    else:
        raise TypeError(f"not a formula: {f!r}")
    memo[key] = out
    return out


def fixed_frame_sat(f: Formula, frame: Frame) -> OracleResult:
    """Is some valuation of ``frame`` making ``f`` true at some world?

    The formula is unfolded over the frame into a propositional formula whose
    variables are (variable, world) pairs and decided by backtracking.
    """
    succ = {w: frame.successors(w) for w in frame.worlds}
    memo: dict = {}
    order = [frame.root] + [w for w in frame.worlds if w != frame.root]
    for w in order:
        asg = propsat.solve(_unfold(f, w, succ, memo))
        if asg is not None:
            val: dict[str, set[int]] = {v: set() for v in variables(f)}
            for (name, world), value in asg.items():
                if value:
                    val[name].add(world)
            m = KripkeModel(frame.worlds, frame.relation,
                            {k: frozenset(v) for k, v in val.items()}, w)
            return OracleResult(Status.SAT, m, len(frame.worlds), len(frame.worlds))
    return OracleResult(Status.UNSAT, None, len(frame.worlds), len(frame.worlds))
