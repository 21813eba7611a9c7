"""Satisfiability procedures for K, serial frames, and frames with at most one
or two successors per world.

The general procedures work on negation normal form and branch on
disjunctions.  A world is described by the set of formulas it must satisfy;
after choosing a disjunct in every disjunction this set splits into literals,
box bodies and diamond bodies, and the successors a world needs are
determined by the frame class:

* K: one successor per diamond body, each also carrying all box bodies.
* serial: as K, plus one successor for the box bodies when there is no
  diamond (an empty set of box bodies is always satisfiable).
* at most one successor: all box and diamond bodies at a single successor,
  or no successor if there is no diamond.
* at most two successors: the diamonds split into at most two groups.

The poor man's procedures (no disjunction, negation only on variables, no
constants) avoid branching altogether.  ``poorman_sat_kd_pairs`` decides
serial satisfiability in polynomial time from satisfiability of conjunct
pairs and yields no model.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .formula import (And, Box, Const, Dia, Formula, NegVar, Or, Var, conjuncts, is_poor_mans,
                      render, to_nnf)
from .oracle import FrameClass, Kind, KripkeModel, fixed_frame_sat

__all__ = ["Decision", "SatVerdict", "NotPoorMans", "sat", "sat_k_tableau", "sat_kd_tableau",
           "sat_le1", "sat_le2", "poorman_sat_k", "poorman_sat_le1", "poorman_sat_kd_pairs",
           "PairTable"]


class Decision(str, enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"


@dataclass
class SatVerdict:
    decision: Decision
    witness: KripkeModel | None = None
    trace: list[dict] | None = None

    def __post_init__(self):
        if self.witness is not None and self.decision is not Decision.SAT:
            raise ValueError("only SAT verdicts carry a witness")

    @property
    def sat(self) -> bool:
        return self.decision is Decision.SAT

    @classmethod
    def of(cls, ok: bool, witness: KripkeModel | None = None, trace=None) -> SatVerdict:
        return cls(Decision.SAT if ok else Decision.UNSAT, witness if ok else None, trace)


class NotPoorMans(ValueError):
    pass


def _require_poor_mans(f: Formula) -> None:
    if not is_poor_mans(f):
        raise NotPoorMans(f"not a poor man's formula: {render(f)}")


# ---------------------------------------------------------------- witness models

class _Graph:
    """Worlds built during a search; equal requirement sets share a world."""

    def __init__(self):
        self.true_vars: list[frozenset[str]] = []
        self.succ: list[list[int]] = []

    def add(self, true_vars: Iterable[str]) -> int:
        self.true_vars.append(frozenset(true_vars))
        self.succ.append([])
        return len(self.succ) - 1

    def model(self, root: int) -> KripkeModel:
        # keep only worlds reachable from the root, renumbered breadth first
        order, index = [root], {root: 0}
        for w in order:
            for v in self.succ[w]:
                if v not in index:
                    index[v] = len(order)
                    order.append(v)
        rel = frozenset((index[w], index[v]) for w in order for v in self.succ[w])
        val: dict[str, set[int]] = {}
        for w in order:
            for p in self.true_vars[w]:
                val.setdefault(p, set()).add(index[w])
        return KripkeModel(tuple(range(len(order))), rel,
                           {p: frozenset(s) for p, s in val.items()}, 0)


# ---------------------------------------------------------------- general tableau

@dataclass(frozen=True)
class _Branch:
    pos: frozenset[str]
    neg: frozenset[str]
    boxes: frozenset[Formula]
    dias: tuple[Formula, ...]


def _branches(req: frozenset[Formula]) -> Iterator[_Branch]:
    """Clash-free ways of satisfying ``req`` locally, one disjunct per disjunction."""
    start = sorted(req, key=render)

    def go(todo: list[Formula], pos: frozenset, neg: frozenset, boxes: frozenset,
           dias: tuple) -> Iterator[_Branch]:
        todo = list(todo)
        while todo:
            g = todo.pop()
            if isinstance(g, Var):
                if g.name in neg:
                    return
                pos = pos | {g.name}
            elif isinstance(g, NegVar):
                if g.name in pos:
                    return
                neg = neg | {g.name}
            elif isinstance(g, Const):
                if not g.value:
                    return
            elif isinstance(g, And):
                todo.extend(reversed(g.children))
            elif isinstance(g, Box):
                boxes = boxes | {g.child}
            elif isinstance(g, Dia):
                if g.child not in dias:
                    dias = dias + (g.child,)
            elif isinstance(g, Or):
                for c in g.children:
                    yield from go(todo + [c], pos, neg, boxes, dias)
                return
            else:
                raise ValueError(f"not in negation normal form: {render(g)}")
        yield _Branch(pos, neg, boxes, dias)

    yield from go(list(reversed(start)), frozenset(), frozenset(), frozenset(), ())


def _partitions(items: tuple) -> Iterator[list[tuple]]:
    """Splits of ``items`` into one or two non-empty groups, larger first group first."""
    m = len(items)
    if m == 0:
        yield []
        return
    yield [items]
    splits = []
    for mask in range(1, 1 << (m - 1)):
        # element 0 always goes to the first group, so each split appears once
        first = (items[0],) + tuple(items[i] for i in range(1, m) if not mask >> (i - 1) & 1)
        second = tuple(items[i] for i in range(1, m) if mask >> (i - 1) & 1)
        splits.append((-len(first), mask, [first, second]))
    for _, _, groups in sorted(splits, key=lambda t: t[:2]):
        yield groups


class _Tableau:
    def __init__(self, kind: Kind, trace: bool = False):
        self.kind = kind
        self.graph = _Graph()
        self.memo: dict[frozenset, int | None] = {}
        self.trace: list[dict] | None = [] if trace else None

    def _successor_groups(self, b: _Branch) -> Iterator[list[frozenset]]:
        kind = self.kind
        if kind in (Kind.K, Kind.SERIAL):
            groups = [b.boxes | {x} for x in b.dias]
            if kind is Kind.SERIAL and not b.dias:
                groups = [b.boxes]
            yield groups
        elif kind is Kind.LE1:
            yield [b.boxes | set(b.dias)] if b.dias else []
        elif kind is Kind.LE2:
            for part in _partitions(b.dias):
                yield [b.boxes | set(g) for g in part]
        else:
            raise ValueError(f"no tableau for {kind}")

    def solve(self, req: frozenset) -> int | None:
        if req in self.memo:
            return self.memo[req]
        found = None
        for b in _branches(req):
            for groups in self._successor_groups(b):
                kids = []
                for g in groups:
                    if self.kind is Kind.SERIAL and not g:
                        kids.append(-1)  # loop back to the world itself
                        continue
                    k = self.solve(g)
                    if k is None:
                        if self.trace is not None:
                            self.trace.append({"rule": "successor", "set": sorted(map(render, g))})
                        break
                    kids.append(k)
                else:
                    w = self.graph.add(b.pos)
                    self.graph.succ[w] = [w if k == -1 else k for k in kids]
                    found = w
                    break
            if found is not None:
                break
        if found is None and self.trace is not None:
            self.trace.append({"rule": "unsat", "set": sorted(map(render, req))})
        self.memo[req] = found
        return found


def _run(f: Formula, kind: Kind, trace: bool) -> SatVerdict:
    t = _Tableau(kind, trace)
    root = t.solve(frozenset({to_nnf(f)}))
    if root is None:
        return SatVerdict.of(False, trace=t.trace)
    return SatVerdict.of(True, t.graph.model(root), t.trace)


def sat_k_tableau(f: Formula, trace: bool = False) -> SatVerdict:
    """Satisfiability over all frames."""
    return _run(f, Kind.K, trace)


def sat_kd_tableau(f: Formula, trace: bool = False) -> SatVerdict:
    """Satisfiability over serial frames."""
    return _run(f, Kind.SERIAL, trace)


def sat_le1(f: Formula, trace: bool = False) -> SatVerdict:
    """Satisfiability over frames where every world has at most one successor."""
    return _run(f, Kind.LE1, trace)


def sat_le2(f: Formula, trace: bool = False) -> SatVerdict:
    """Satisfiability over frames where every world has at most two successors."""
    return _run(f, Kind.LE2, trace)


# ---------------------------------------------------------------- poor man's logic

def _split(parts: Iterable[Formula]):
    """Literals, box bodies and diamond bodies of a conjunction of conjuncts."""
    pos, neg, boxes, dias = set(), set(), set(), set()
    for c in parts:
        if isinstance(c, Var):
            pos.add(c.name)
        elif isinstance(c, NegVar):
            neg.add(c.name)
        elif isinstance(c, Box):
            boxes.update(conjuncts(c.child))
        elif isinstance(c, Dia):
            dias.add(c.child)
        else:
            raise NotPoorMans(f"unexpected conjunct {render(c)}")
    return pos, neg, boxes, dias


def poorman_sat_k(f: Formula) -> SatVerdict:
    """Satisfiability over all frames for poor man's formulas.

    Exponential in the worst case (the problem is coNP-complete); memoized on
    conjunct sets.
    """
    _require_poor_mans(f)
    graph = _Graph()
    memo: dict[frozenset, int | None] = {}

    def solve(cs: frozenset) -> int | None:
        if cs in memo:
            return memo[cs]
        pos, neg, boxes, dias = _split(cs)
        out = None
        if not pos & neg:
            kids = []
            for x in sorted(dias, key=render):
                k = solve(frozenset(boxes) | frozenset(conjuncts(x)))
                if k is None:
                    break
                kids.append(k)
            else:
                out = graph.add(pos)
                graph.succ[out] = kids
        memo[cs] = out
        return out

    root = solve(frozenset(conjuncts(f)))
    return SatVerdict.of(root is not None, graph.model(root) if root is not None else None)


def poorman_sat_le1(f: Formula) -> SatVerdict:
    """Satisfiability over frames with at most one successor per world, in
    polynomial time; a SAT verdict carries a chain model."""
    _require_poor_mans(f)
    chain: list[set[str]] = []
    cs = frozenset(conjuncts(f))
    while True:
        pos, neg, boxes, dias = _split(cs)
        if pos & neg:
            return SatVerdict.of(False)
        chain.append(pos)
        if not dias:
            break
        cs = frozenset(boxes) | frozenset(g for x in dias for g in conjuncts(x))
    n = len(chain)
    val: dict[str, set[int]] = {}
    for w, ps in enumerate(chain):
        for p in ps:
            val.setdefault(p, set()).add(w)
    m = KripkeModel(tuple(range(n)), frozenset((w, w + 1) for w in range(n - 1)),
                    {p: frozenset(s) for p, s in val.items()}, 0)
    return SatVerdict.of(True, m)


class PairTable:
    """Serial satisfiability of pairs of subformulas of a poor man's formula.

    Entries are computed on demand and memoized under the unordered pair.
    """

    def __init__(self):
        self.table: dict[frozenset, bool] = {}
        self.why: dict[frozenset, tuple] = {}

    def __len__(self):
        return len(self.table)

    def get(self, a: Formula, b: Formula) -> bool:
        key = frozenset((a, b))
        hit = self.table.get(key)
        if hit is None:
            hit, why = self._compute(a, b)
            self.table[key] = hit
            if not hit:
                self.why[key] = why
        return hit

    def all_pairs(self, parts: list[Formula]) -> tuple[bool, tuple | None]:
        for i, a in enumerate(parts):
            for b in parts[i:]:
                if not self.get(a, b):
                    return False, (a, b)
        return True, None

    def _compute(self, a: Formula, b: Formula) -> tuple[bool, tuple | None]:
        if isinstance(a, And) or isinstance(b, And):
            parts = list(dict.fromkeys(conjuncts(a) + conjuncts(b)))
            return self.all_pairs(parts)
        rank = {Var: 0, NegVar: 0, Box: 1, Dia: 2}
        if rank[type(a)] > rank[type(b)]:
            a, b = b, a
        ta, tb = rank[type(a)], rank[type(b)]
        if ta == 0 and tb == 0:
            clash = a.name == b.name and type(a) is not type(b)
            return not clash, None
        if ta == 0:  # literal with a modal formula
            return self.get(b.child, b.child), (b.child, b.child)
        if ta == 1 and tb == 1:
            return self.get(a.child, b.child), (a.child, b.child)
        if ta == 1 and tb == 2:
            return self.get(a.child, b.child), (a.child, b.child)
        # two diamonds
        if not self.get(a.child, a.child):
            return False, (a.child, a.child)
        return self.get(b.child, b.child), (b.child, b.child)

    def explain(self, a: Formula, b: Formula) -> list[dict]:
        """Chain of failing pairs below an UNSAT pair."""
        steps = []
        key = frozenset((a, b))
        seen = set()
        while key in self.why and key not in seen:
            seen.add(key)
            steps.append({"rule": "pair", "pair": [render(a), render(b)]})
            nxt = self.why[key]
            if nxt is None:
                break
            a, b = nxt
            key = frozenset((a, b))
        return steps


def poorman_sat_kd_pairs(f: Formula) -> SatVerdict:
    """Serial satisfiability of a poor man's formula in polynomial time.

    The formula is satisfiable iff every pair of its conjuncts (including
    each conjunct with itself) is.  Decision only; the trace of an UNSAT
    verdict lists the failing pair and the pairs it reduces to.
    """
    _require_poor_mans(f)
    table = PairTable()
    ok, bad = table.all_pairs(list(dict.fromkeys(conjuncts(f))))
    if ok:
        return SatVerdict.of(True)
    return SatVerdict.of(False, trace=table.explain(*bad))


# ---------------------------------------------------------------- dispatch

def sat(f: Formula, fc: FrameClass) -> SatVerdict:
    """Decide ``f`` over ``fc`` with the cheapest applicable procedure."""
    kind = fc.kind
    if kind is Kind.FIXED:
        res = fixed_frame_sat(f, fc.frame)
        return SatVerdict.of(res.status.value == "SAT", res.model)
    poor = is_poor_mans(f)
    if kind is Kind.LE1:
        return poorman_sat_le1(f) if poor else sat_le1(f)
    if kind is Kind.SERIAL:
        return poorman_sat_kd_pairs(f) if poor else sat_kd_tableau(f)
    if kind is Kind.K:
        return poorman_sat_k(f) if poor else sat_k_tableau(f)
    return sat_le2(f)


TABLEAUX: dict[Kind, Callable[[Formula], SatVerdict]] = {
    Kind.K: sat_k_tableau, Kind.SERIAL: sat_kd_tableau, Kind.LE1: sat_le1, Kind.LE2: sat_le2,
}
POORMAN: dict[Kind, Callable[[Formula], SatVerdict]] = {
    Kind.K: poorman_sat_k, Kind.SERIAL: poorman_sat_kd_pairs, Kind.LE1: poorman_sat_le1,
}
