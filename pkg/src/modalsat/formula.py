"""Modal formulas: AST, concrete syntax, normal forms and structural measures.

Concrete syntax::

    formula := disj
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "[]" unary | "<>" unary | "!" unary | "~" VAR | atom
    atom    := VAR | "true" | "false" | "(" formula ")"

``~`` is atomic negation and only binds to a variable; ``!`` is general
negation.  Conjunctions and disjunctions are flattened when constructed, and
``~~p`` collapses to ``p``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

__all__ = [
    "Formula", "Var", "NegVar", "Not", "And", "Or", "Box", "Dia", "Const",
    "TRUE", "FALSE", "ParseError", "OperatorSet", "OPERATORS",
    "conj", "disj", "literal", "parse", "render", "modal_depth", "to_nnf",
    "operator_set_of", "is_poor_mans", "substitute", "variables", "size",
    "conjuncts", "boxes", "dias", "AUX_PREFIX", "fresh_name", "POOR_MANS", "subformulas",
]

AUX_PREFIX = "__aux_"
_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")
_AUX_RE = re.compile(r"__aux_[a-zA-Z0-9_]+\Z")
_RESERVED = {"true", "false"}


def _check_name(name: str) -> str:
    if not isinstance(name, str) or not (_NAME_RE.match(name) or _AUX_RE.match(name)):
        raise ValueError(f"invalid variable name {name!r}")
    if name in _RESERVED:
        raise ValueError(f"{name!r} is reserved")
    return name


class Formula:
    """Immutable formula node.  Structural equality, cached hash."""

    __slots__ = ("_hash",)

    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return False
        return self._hash == other._hash and self._key() == other._key()  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return self._hash

    def __setattr__(self, name, value):
        raise AttributeError("formulas are immutable")

    def __str__(self) -> str:
        return render(self)

    # convenience combinators
    def __and__(self, other: Formula) -> Formula:
        return conj(self, other)

    def __or__(self, other: Formula) -> Formula:
        return disj(self, other)


def _init(obj, **fields):
    for k, v in fields.items():
        object.__setattr__(obj, k, v)
    object.__setattr__(obj, "_hash", hash((type(obj).__name__,) + obj._key()))


class Var(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        _init(self, name=_check_name(name))

    def _key(self):
        return (self.name,)

    def __repr__(self):
        return f"Var({self.name!r})"


class NegVar(Formula):
    """Atomic negation of a variable."""

    __slots__ = ("name",)

    def __init__(self, name: str):
        _init(self, name=_check_name(name))

    def _key(self):
        return (self.name,)

    def __repr__(self):
        return f"NegVar({self.name!r})"


class Not(Formula):
    __slots__ = ("child",)

    def __init__(self, child: Formula):
        _init(self, child=child)

    def _key(self):
        return (self.child,)

    def __repr__(self):
        return f"Not({self.child!r})"


class _NAry(Formula):
    __slots__ = ("children",)

    def __init__(self, children: Iterable[Formula]):
        flat: list[Formula] = []
        for c in children:
            if not isinstance(c, Formula):
                raise TypeError(f"not a formula: {c!r}")
            if type(c) is type(self):
                flat.extend(c.children)
            else:
                flat.append(c)
        if len(flat) < 2:
            raise ValueError(f"{type(self).__name__} needs at least two children")
        _init(self, children=tuple(flat))

    def _key(self):
        return self.children

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self.children))})"


class And(_NAry):
    __slots__ = ()


class Or(_NAry):
    __slots__ = ()


class Box(Formula):
    __slots__ = ("child",)

    def __init__(self, child: Formula):
        _init(self, child=child)

    def _key(self):
        return (self.child,)

    def __repr__(self):
        return f"Box({self.child!r})"


class Dia(Formula):
    __slots__ = ("child",)

    def __init__(self, child: Formula):
        _init(self, child=child)

    def _key(self):
        return (self.child,)

    def __repr__(self):
        return f"Dia({self.child!r})"


class Const(Formula):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        _init(self, value=bool(value))

    def _key(self):
        return (self.value,)

    def __repr__(self):
        return "TRUE" if self.value else "FALSE"


TRUE = Const(True)
FALSE = Const(False)


def conj(*parts: Formula) -> Formula:
    """Conjunction of one or more formulas; a single part is returned as is."""
    if len(parts) == 1 and not isinstance(parts[0], Formula):
        parts = tuple(parts[0])
    if not parts:
        raise ValueError("empty conjunction; use TRUE explicitly")
    return parts[0] if len(parts) == 1 else And(parts)


def disj(*parts: Formula) -> Formula:
    if len(parts) == 1 and not isinstance(parts[0], Formula):
        parts = tuple(parts[0])
    if not parts:
        raise ValueError("empty disjunction; use FALSE explicitly")
    return parts[0] if len(parts) == 1 else Or(parts)


def literal(name: str, positive: bool = True) -> Formula:
    return Var(name) if positive else NegVar(name)


def boxes(n: int, f: Formula) -> Formula:
    for _ in range(n):
        f = Box(f)
    return f


def dias(n: int, f: Formula) -> Formula:
    for _ in range(n):
        f = Dia(f)
    return f


# ---------------------------------------------------------------- parsing

class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op>\[\]|<>|[!~&|()])|(?P<name>__aux_[a-zA-Z0-9_]+|[a-zA-Z][a-zA-Z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start("op") if m.group("op") else m.start("name")
        if m.group("op"):
            tokens.append(("op", m.group("op"), start))
        else:
            tokens.append(("name", m.group("name"), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.take()
        if val != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def formula(self) -> Formula:
        parts = [self.conj()]
        while self.peek()[1] == "|" and self.peek()[0] == "op":
            self.take()
            parts.append(self.conj())
        return disj(*parts)

    def conj(self) -> Formula:
        parts = [self.unary()]
        while self.peek()[1] == "&" and self.peek()[0] == "op":
            self.take()
            parts.append(self.unary())
        return conj(*parts)

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if kind == "op" and val in ("[]", "<>", "!"):
            self.take()
            child = self.unary()
            return {"[]": Box, "<>": Dia, "!": Not}[val](child)
        if kind == "op" and val == "~":
            negated = False
            while self.peek()[0] == "op" and self.peek()[1] == "~":
                self.take()
                negated = not negated
            kind, val, _ = self.peek()
            if kind != "name" or val in _RESERVED:
                raise ParseError("'~' applies only to a variable (use '!' for general negation)", pos)
            self.take()
            return NegVar(val) if negated else Var(val)
        return self.atom()

    def atom(self) -> Formula:
        kind, val, pos = self.take()
        if kind == "name":
            if val == "true":
                return TRUE
            if val == "false":
                return FALSE
            return Var(val)
        if kind == "op" and val == "(":
            f = self.formula()
            self.expect(")")
            return f
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def parse(text: str) -> Formula:
    """Parse the concrete syntax into a flattened formula.

    >>> parse("[]p & <>~q")
    And(Box(Var('p')), Dia(NegVar('q')))
    >>> parse("~~p")
    Var('p')
    """
    p = _Parser(text)
    f = p.formula()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {val!r}", pos)
    return f


# ---------------------------------------------------------------- rendering

_PREC = {Or: 1, And: 2}


def render(f: Formula) -> str:
    if isinstance(f, Var):
        return f.name
    if isinstance(f, NegVar):
        return "~" + f.name
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, (Box, Dia, Not)):
        prefix = {Box: "[]", Dia: "<>", Not: "!"}[type(f)]
        return prefix + _render_operand(f.child, 3)
    if isinstance(f, (And, Or)):
        sep = " & " if isinstance(f, And) else " | "
        prec = _PREC[type(f)]
        return sep.join(_render_operand(c, prec + 1) for c in f.children)
    raise TypeError(f"not a formula: {f!r}")


def _render_operand(f: Formula, min_prec: int) -> str:
    s = render(f)
    if isinstance(f, (And, Or)) and _PREC[type(f)] < min_prec:
        return f"({s})"
    return s


# ---------------------------------------------------------------- measures

def modal_depth(f: Formula) -> int:
    if isinstance(f, (Box, Dia)):
        return 1 + modal_depth(f.child)
    if isinstance(f, Not):
        return modal_depth(f.child)
    if isinstance(f, (And, Or)):
        return max(modal_depth(c) for c in f.children)
    return 0


def size(f: Formula) -> int:
    """Number of AST nodes."""
    if isinstance(f, (Box, Dia, Not)):
        return 1 + size(f.child)
    if isinstance(f, (And, Or)):
        return 1 + sum(size(c) for c in f.children)
    return 1


def variables(f: Formula) -> set[str]:
    out: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, (Var, NegVar)):
            out.add(g.name)
        elif isinstance(g, (And, Or)):
            stack.extend(g.children)
        elif isinstance(g, (Box, Dia, Not)):
            stack.append(g.child)
    return out


def conjuncts(f: Formula) -> tuple[Formula, ...]:
    return f.children if isinstance(f, And) else (f,)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, (And, Or)):
        for c in f.children:
            yield from subformulas(c)
    elif isinstance(f, (Box, Dia, Not)):
        yield from subformulas(f.child)


def fresh_name(base: str, taken: set[str]) -> str:
    """Deterministic fresh auxiliary variable name not in ``taken``."""
    name = AUX_PREFIX + base
    k = 1
    while name in taken:
        name = f"{AUX_PREFIX}{base}{k}"
        k += 1
    return name


# ---------------------------------------------------------------- NNF

def to_nnf(f: Formula) -> Formula:
    """Push general negation inward until only literals and constants are negated."""
    return _nnf(f, False)


def _nnf(f: Formula, neg: bool) -> Formula:
    if isinstance(f, Not):
        return _nnf(f.child, not neg)
    if isinstance(f, Var):
        return NegVar(f.name) if neg else f
    if isinstance(f, NegVar):
        return Var(f.name) if neg else f
    if isinstance(f, Const):
        return Const(not f.value) if neg else f
    if isinstance(f, Box):
        return (Dia if neg else Box)(_nnf(f.child, neg))
    if isinstance(f, Dia):
        return (Box if neg else Dia)(_nnf(f.child, neg))
    if isinstance(f, And):
        return (Or if neg else And)([_nnf(c, neg) for c in f.children])
    if isinstance(f, Or):
        return (And if neg else Or)([_nnf(c, neg) for c in f.children])
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------- operator sets

OPERATORS = ("neg", "atneg", "and", "or", "box", "dia", "true", "false")
_SYMBOLS = {"neg": "¬", "atneg": "¯", "and": "∧", "or": "∨", "box": "□",
            "dia": "◇", "true": "true", "false": "false"}


class OperatorSet(frozenset):
    """A subset of the eight connectives, spelled with the CLI tokens."""

    def __new__(cls, ops: Iterable[str] = ()):
        ops = frozenset(ops)
        bad = ops - set(OPERATORS)
        if bad:
            raise ValueError(f"unknown operator(s): {', '.join(sorted(bad))}")
        return super().__new__(cls, ops)

    @classmethod
    def from_text(cls, text: str) -> OperatorSet:
        text = text.strip()
        if not text:
            return cls()
        return cls(tok.strip() for tok in text.split(",") if tok.strip())

    @classmethod
    def all_subsets(cls) -> list[OperatorSet]:
        return [cls(op for i, op in enumerate(OPERATORS) if mask >> i & 1)
                for mask in range(1 << len(OPERATORS))]

    def to_text(self) -> str:
        return ",".join(op for op in OPERATORS if op in self)

    def symbols(self) -> str:
        return "{" + ", ".join(_SYMBOLS[op] for op in OPERATORS if op in self) + "}"

    def __repr__(self):
        return f"OperatorSet({self.to_text()!r})"


def operator_set_of(f: Formula) -> OperatorSet:
    ops: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, NegVar):
            ops.add("atneg")
        elif isinstance(g, Not):
            ops.add("neg")
            stack.append(g.child)
        elif isinstance(g, And):
            ops.add("and")
            stack.extend(g.children)
        elif isinstance(g, Or):
            ops.add("or")
            stack.extend(g.children)
        elif isinstance(g, Box):
            ops.add("box")
            stack.append(g.child)
        elif isinstance(g, Dia):
            ops.add("dia")
            stack.append(g.child)
        elif isinstance(g, Const):
            ops.add("true" if g.value else "false")
    return OperatorSet(ops)


POOR_MANS = OperatorSet({"atneg", "and", "box", "dia"})


def is_poor_mans(f: Formula) -> bool:
    return operator_set_of(f) <= POOR_MANS


def substitute(f: Formula, target: Const, replacement: Formula) -> Formula:
    """Replace every occurrence of the constant ``target`` by ``replacement``."""
    if isinstance(f, Const):
        return replacement if f == target else f
    if isinstance(f, (Var, NegVar)):
        return f
    if isinstance(f, (Box, Dia, Not)):
        return type(f)(substitute(f.child, target, replacement))
    return type(f)([substitute(c, target, replacement) for c in f.children])
