"""Formulas of the epistemic language: AST, parser, printer and transforms.

Primitive connectives are ``Var``, ``Neg``, ``And`` and ``Hat`` (agent ``a``
considers it possible).  ``Or``, ``Implies``, ``Iff``, ``Know`` and
``AgentTop`` are kept in parsed trees and removed by :func:`desugar`.

Concrete syntax::

    formula := iff ; iff := imp ("<->" imp)* ; imp := or ("->" imp)? ;
    or := and ("|" and)* ; and := unary ("&" unary)* ;
    unary := "~" unary | "[" agent "]" unary | "<" agent ">" unary | atom ;
    atom := var | "T_" agent | "(" formula ")" ;
    var := ident "_" agent ; agent := ident

``[a]`` is knowledge, ``<a>`` possibility, ``T_a`` the always-true-when-alive
formula of agent ``a``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Var(Formula):
    name: str
    agent: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, repr=False)
class Neg(Formula):
    arg: Formula

    def __repr__(self):
        return f"Neg({self.arg!r})"


@dataclass(frozen=True, repr=False)
class And(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"And({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Hat(Formula):
    agent: str
    arg: Formula

    def __repr__(self):
        return f"Hat({self.agent!r}, {self.arg!r})"


@dataclass(frozen=True, repr=False)
class Or(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Or({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Implies({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Iff(Formula):
    left: Formula
    right: Formula

    def __repr__(self):
        return f"Iff({self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Know(Formula):
    agent: str
    arg: Formula

    def __repr__(self):
        return f"Know({self.agent!r}, {self.arg!r})"


@dataclass(frozen=True, repr=False)
class AgentTop(Formula):
    agent: str

    def __repr__(self):
        return f"AgentTop({self.agent!r})"


@dataclass(frozen=True, repr=False)
class Meta(Formula):
    """Schema metavariable, filled by :func:`instantiate`."""
    name: str

    def __repr__(self):
        return f"Meta({self.name!r})"


PRIMITIVE = (Var, Neg, And, Hat)
BINARY = (And, Or, Implies, Iff)
MODAL = (Hat, Know)


def var(name: str) -> Var:
    """``Var`` from a full name such as ``"p_a"``; the owner is the suffix."""
    if "_" not in name:
        raise ValueError(f"variable name {name!r} lacks an _agent suffix")
    return Var(name, name.rsplit("_", 1)[1])


def disj(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = Or(out, f)
    return out


def conj(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


# -- parsing -----------------------------------------------------------------


class FormulaSyntaxError(ValueError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class FormulaBindingError(ValueError):
    pass


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op><->|->|[~&|()\[\]<>])
  | (?P<top>T_[A-Za-z][A-Za-z0-9]*)
  | (?P<var>[A-Za-z][A-Za-z0-9']*_[A-Za-z][A-Za-z0-9]*)
  | (?P<meta>[A-Z][A-Za-z0-9]*)
  | (?P<ident>[A-Za-z][A-Za-z0-9]*)
""", re.VERBOSE)


def _tokenize(text):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text, allow_meta):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.allow_meta = allow_meta

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None, kind=None):
        tok = self.toks[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value if value is not None else kind
            got = tok[1] or "end of input"
            raise FormulaSyntaxError(f"expected {want!r}, got {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def formula(self):
        left = self.imp()
        while self.peek()[1] == "<->":
            self.take()
            left = Iff(left, self.imp())
        return left

    def imp(self):
        left = self.disj()
        if self.peek()[1] == "->":
            self.take()
            return Implies(left, self.imp())
        return left

    def disj(self):
        left = self.conj()
        while self.peek()[1] == "|":
            self.take()
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek()[1] == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def agent(self):
        tok = self.peek()
        if tok[0] not in ("ident", "meta"):
            got = tok[1] or "end of input"
            raise FormulaSyntaxError(f"expected agent name, got {got!r}", self.text, tok[2])
        self.i += 1
        return tok[1]

    def unary(self):
        kind, value, pos = self.peek()
        if value == "~":
            self.take()
            return Neg(self.unary())
        if value == "[":
            self.take()
            a = self.agent()
            self.take("]")
            return Know(a, self.unary())
        if value == "<":
            self.take()
            a = self.agent()
            self.take(">")
            return Hat(a, self.unary())
        return self.atom()

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "var":
            self.take()
            return var(value)
        if kind == "top":
            self.take()
            return AgentTop(value[2:])
        if kind == "meta" and self.allow_meta:
            self.take()
            return Meta(value)
        if value == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        got = value or "end of input"
        raise FormulaSyntaxError(f"unexpected {got!r}", self.text, pos)


def parse(text: str, allow_meta: bool = False) -> Formula:
    """Parse ``text``; sugar nodes are kept.  With ``allow_meta`` bare
    capitalised identifiers (``X``, ``Phi``) become schema metavariables."""
    p = _Parser(text, allow_meta)
    f = p.formula()
    p.take(kind="end")
    return f


def parse_schema(text: str) -> Formula:
    return parse(text, allow_meta=True)


# -- printing ----------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_ATOMIC = 5


def _prec(f):
    return _PREC.get(type(f), _ATOMIC)


def to_text(f: Formula) -> str:
    """Concrete syntax with only the parentheses precedence requires."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, AgentTop):
        return f"T_{f.agent}"
    if isinstance(f, Meta):
        return f.name
    if isinstance(f, Neg):
        return "~" + _wrap(f.arg, _ATOMIC)
    if isinstance(f, Hat):
        return f"<{f.agent}>" + _wrap(f.arg, _ATOMIC)
    if isinstance(f, Know):
        return f"[{f.agent}]" + _wrap(f.arg, _ATOMIC)
    p = _PREC[type(f)]
    if isinstance(f, Implies):  # right associative
        left, right = _wrap(f.left, p + 1), _wrap(f.right, p)
    else:
        left, right = _wrap(f.left, p), _wrap(f.right, p + 1)
    return f"{left} {_SYMBOL[type(f)]} {right}"


def _wrap(f, need):
    s = to_text(f)
    return s if _prec(f) >= need else f"({s})"


# -- structural operations ----------------------------------------------------


def children(f: Formula) -> tuple:
    if isinstance(f, (Var, AgentTop, Meta)):
        return ()
    if isinstance(f, (Neg, Hat, Know)):
        return (f.arg,)
    return (f.left, f.right)


def rebuild(f: Formula, kids) -> Formula:
    if isinstance(f, Neg):
        return Neg(kids[0])
    if isinstance(f, (Hat, Know)):
        return type(f)(f.agent, kids[0])
    if isinstance(f, BINARY):
        return type(f)(kids[0], kids[1])
    return f


def depth(f: Formula) -> int:
    kids = children(f)
    return 0 if not kids else 1 + max(depth(k) for k in kids)


def size(f: Formula) -> int:
    return 1 + sum(size(k) for k in children(f))


def subformulas(f: Formula) -> set:
    out = {f}
    for k in children(f):
        out |= subformulas(k)
    return out


def variables_of(f: Formula) -> set:
    return {g.name for g in subformulas(f) if isinstance(g, Var)}


def _default_top(agent):
    return Var(f"p_{agent}", agent)


def desugar(f: Formula, top_var: Callable[[str], Var] | None = None) -> Formula:
    """Rewrite into ``Var``/``Neg``/``And``/``Hat`` only.

    ``top_var(a)`` chooses the variable used for ``T_a``; by default ``p_a``.
    """
    top_var = top_var or _default_top
    cache = {}

    def go(g):
        if g in cache:
            return cache[g]
        if isinstance(g, Var):
            out = g
        elif isinstance(g, AgentTop):
            p = top_var(g.agent)
            out = Neg(And(Neg(p), Neg(Neg(p))))
        elif isinstance(g, Meta):
            raise ValueError(f"uninstantiated metavariable {g.name}")
        elif isinstance(g, Neg):
            out = Neg(go(g.arg))
        elif isinstance(g, And):
            out = And(go(g.left), go(g.right))
        elif isinstance(g, Hat):
            out = Hat(g.agent, go(g.arg))
        elif isinstance(g, Know):
            out = Neg(Hat(g.agent, Neg(go(g.arg))))
        elif isinstance(g, Or):
            out = Neg(And(Neg(go(g.left)), Neg(go(g.right))))
        elif isinstance(g, Implies):
            out = Neg(And(go(g.left), Neg(go(g.right))))
        elif isinstance(g, Iff):
            a, b = go(g.left), go(g.right)
            out = And(Neg(And(a, Neg(b))), Neg(And(b, Neg(a))))
        else:
            raise TypeError(f"not a formula: {g!r}")
        cache[g] = out
        return out

    return go(f)


def is_primitive(f: Formula) -> bool:
    return all(isinstance(g, PRIMITIVE) for g in subformulas(f))


def agents_of(f: Formula) -> frozenset:
    """Agents occurring in ``f``: variable owners and modal indices."""
    out = set()
    for g in subformulas(f):
        if isinstance(g, Var):
            out.add(g.agent)
        elif isinstance(g, (Hat, Know, AgentTop)):
            out.add(g.agent)
    return frozenset(out)


def top_transform(f: Formula, top_var=None) -> Formula:
    """The equidefinable valid companion of ``f``.

    Atoms become ``p | ~p``, negations are dropped, conjunction and
    possibility are kept.  The input is desugared first.
    """
    def go(g):
        if isinstance(g, Var):
            return Or(g, Neg(g))
        if isinstance(g, Neg):
            return go(g.arg)
        if isinstance(g, And):
            return And(go(g.left), go(g.right))
        return Hat(g.agent, go(g.arg))

    return go(desugar(f, top_var))


def substitute(xi: Formula, variable: str, replacement: Formula) -> Formula:
    """Replace every ``Var`` named ``variable`` in ``xi`` by ``replacement``.

    ``T_a`` nodes are left alone even when their canonical variable matches.
    """
    if isinstance(xi, Var):
        return replacement if xi.name == variable else xi
    kids = children(xi)
    if not kids:
        return xi
    return rebuild(xi, [substitute(k, variable, replacement) for k in kids])


def instantiate(schema: Formula, values: dict) -> Formula:
    """Fill metavariables (``Meta`` nodes and metavariable agents) from
    ``values``; agents of modal nodes are looked up too."""
    if isinstance(schema, Meta):
        return values[schema.name]
    if isinstance(schema, (Hat, Know)):
        a = values.get(schema.agent, schema.agent)
        return type(schema)(a, instantiate(schema.arg, values))
    if isinstance(schema, AgentTop):
        return AgentTop(values.get(schema.agent, schema.agent))
    kids = children(schema)
    if not kids:
        return schema
    return rebuild(schema, [instantiate(k, values) for k in kids])


def metavariables(schema: Formula) -> list:
    """Metavariable names in order of first occurrence."""
    seen = []
    for g in _preorder(schema):
        if isinstance(g, Meta) and g.name not in seen:
            seen.append(g.name)
    return seen


def _preorder(f):
    yield f
    for k in children(f):
        yield from _preorder(k)


def check_binding(f: Formula, agents: Iterable[str], variables: dict) -> None:
    """Raise :class:`FormulaBindingError` for undeclared agents/variables."""
    agents = set(agents)
    problems = []
    for g in _preorder(f):
        if isinstance(g, Var):
            if g.name not in variables:
                problems.append(f"undeclared variable {g.name}")
            elif variables[g.name] != g.agent:
                problems.append(f"variable {g.name} is owned by {variables[g.name]}")
        elif isinstance(g, (Hat, Know, AgentTop)) and g.agent not in agents:
            problems.append(f"undeclared agent {g.agent}")
        elif isinstance(g, Meta):
            problems.append(f"uninstantiated metavariable {g.name}")
    if problems:
        raise FormulaBindingError("; ".join(dict.fromkeys(problems)))
