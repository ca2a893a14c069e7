"""A tiny expression language for Lagrangians L(t, u, v, w).

Grammar (``^`` binds tighter than unary minus, is non-associative and
takes a numeric literal exponent)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    exponent := '-'? number | '(' '-'? number ')'
    atom   := number | ident | '(' expr ')'

Identifiers t, u, v, w are variables; any other identifier is a named
parameter. Evaluation broadcasts over numpy arrays.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .errors import EvalError, ParseError

VARIABLES = frozenset({"t", "u", "v", "w"})


@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Ast"


@dataclass(frozen=True)
class Add:
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Sub:
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Mul:
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Div:
    left: "Ast"
    right: "Ast"


@dataclass(frozen=True)
class Pow:
    base: "Ast"
    exponent: float


Ast = Union[Number, Var, Param, Neg, Add, Sub, Mul, Div, Pow]

_TOKEN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    n = len(src)
    while pos < n:
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {src[pos]!r}", pos, {"number", "identifier", "operator"})
        kind = m.lastgroup
        start = m.start(kind)
        out.append((kind, m.group(kind), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        kind, text, _ = self.peek()
        return kind == "op" and text in ops

    def expect_op(self, op: str) -> None:
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}, found {text or 'end of input'!r}", pos, {op})
        self.i += 1

    def expr(self) -> Ast:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Ast:
        node = self.unary()
        while self.at_op("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self) -> Ast:
        if self.at_op("-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Ast:
        base = self.atom()
        if self.at_op("^"):
            self.take()
            base = Pow(base, self.exponent())
            if self.at_op("^"):
                raise ParseError("'^' is non-associative; parenthesize", self.peek()[2], {"+", "-", "*", "/", ")", "end"})
        return base

    def exponent(self) -> float:
        paren = self.at_op("(")
        if paren:
            self.take()
        sign = 1.0
        if self.at_op("-"):
            self.take()
            sign = -1.0
        kind, text, pos = self.peek()
        if kind != "number":
            raise ParseError("exponent must be a numeric literal", pos, {"number"})
        self.take()
        if paren:
            self.expect_op(")")
        return sign * float(text)

    def atom(self) -> Ast:
        kind, text, pos = self.peek()
        if kind == "number":
            self.take()
            return Number(float(text))
        if kind == "ident":
            self.take()
            return Var(text) if text in VARIABLES else Param(text)
        if kind == "op" and text == "(":
            self.take()
            node = self.expr()
            self.expect_op(")")
            return node
        found = text or "end of input"
        raise ParseError(f"unexpected {found!r}", pos, {"number", "identifier", "(", "-"})


def parse(source: str) -> Ast:
    """Parse ``source``; raises ParseError with offset and expected tokens."""
    p = _Parser(source)
    node = p.expr()
    kind, text, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {text!r} after expression", pos, {"+", "-", "*", "/", "end"})
    return node


def _fmt(x: float) -> str:
    return repr(float(x))


def to_source(ast: Ast) -> str:
    """Render back to parseable text (fully parenthesized binary operations)."""
    if isinstance(ast, Number):
        s = _fmt(ast.value)
        return f"({s})" if ast.value < 0 else s
    if isinstance(ast, (Var, Param)):
        return ast.name
    if isinstance(ast, Neg):
        return f"(-{to_source(ast.operand)})"
    if isinstance(ast, Pow):
        return f"({to_source(ast.base)}^{_fmt(ast.exponent)})"
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(ast)]
    return f"({to_source(ast.left)} {op} {to_source(ast.right)})"


def free_names(ast: Ast) -> set[str]:
    if isinstance(ast, (Var, Param)):
        return {ast.name}
    if isinstance(ast, Number):
        return set()
    if isinstance(ast, Neg):
        return free_names(ast.operand)
    if isinstance(ast, Pow):
        return free_names(ast.base)
    return free_names(ast.left) | free_names(ast.right)


def params(ast: Ast) -> set[str]:
    return free_names(ast) - VARIABLES


def eval_ast(ast: Ast, env: Mapping[str, object]):
    """Evaluate with names bound by ``env``; values may be numpy arrays."""
    if isinstance(ast, Number):
        return ast.value
    if isinstance(ast, (Var, Param)):
        try:
            return env[ast.name]
        except KeyError:
            raise EvalError(f"unbound name {ast.name!r}") from None
    if isinstance(ast, Neg):
        return -eval_ast(ast.operand, env)
    if isinstance(ast, Pow):
        base = eval_ast(ast.base, env)
        p = ast.exponent
        b = np.asarray(base, dtype=float)
        if p < 0 and np.any(b == 0):
            raise EvalError("zero raised to a negative power")
        if p != int(p) and np.any(b < 0):
            raise EvalError("negative base with a fractional exponent")
        if p == int(p):
            p = int(p)
        return base**p
    left = eval_ast(ast.left, env)
    right = eval_ast(ast.right, env)
    if isinstance(ast, Add):
        return left + right
    if isinstance(ast, Sub):
        return left - right
    if isinstance(ast, Mul):
        return left * right
    if np.any(np.asarray(right) == 0):
        raise EvalError("division by zero")
    return left / right


# Smart constructors: fold numeric subtrees and drop neutral elements.


def _num(x: Ast) -> float | None:
    return x.value if isinstance(x, Number) else None


def _neg(x: Ast) -> Ast:
    if isinstance(x, Number):
        return Number(-x.value)
    if isinstance(x, Neg):
        return x.operand
    return Neg(x)


def _add(a: Ast, b: Ast) -> Ast:
    na, nb = _num(a), _num(b)
    if na is not None and nb is not None:
        return Number(na + nb)
    if na == 0:
        return b
    if nb == 0:
        return a
    return Add(a, b)


def _sub(a: Ast, b: Ast) -> Ast:
    na, nb = _num(a), _num(b)
    if na is not None and nb is not None:
        return Number(na - nb)
    if nb == 0:
        return a
    if na == 0:
        return _neg(b)
    return Sub(a, b)


def _mul(a: Ast, b: Ast) -> Ast:
    na, nb = _num(a), _num(b)
    if na is not None and nb is not None:
        return Number(na * nb)
    if nb is not None:
        a, b, na, nb = b, a, nb, na
    if na == 0:
        return Number(0.0)
    if na == 1:
        return b
    if na is not None and isinstance(b, Mul) and isinstance(b.left, Number):
        return _mul(Number(na * b.left.value), b.right)
    return Mul(a, b)


def _div(a: Ast, b: Ast) -> Ast:
    na, nb = _num(a), _num(b)
    if na is not None and nb is not None and nb != 0:
        return Number(na / nb)
    if na == 0 and nb != 0:
        return Number(0.0)
    if nb == 1:
        return a
    return Div(a, b)


def _pow(base: Ast, p: float) -> Ast:
    nb = _num(base)
    if p == 0:
        return Number(1.0)
    if p == 1:
        return base
    if nb is not None and not (nb == 0 and p < 0) and not (nb < 0 and p != int(p)):
        return Number(nb**p)
    return Pow(base, p)


def simplify(ast: Ast) -> Ast:
    """Constant folding, bottom-up."""
    if isinstance(ast, (Number, Var, Param)):
        return ast
    if isinstance(ast, Neg):
        return _neg(simplify(ast.operand))
    if isinstance(ast, Pow):
        return _pow(simplify(ast.base), ast.exponent)
    ctor = {Add: _add, Sub: _sub, Mul: _mul, Div: _div}[type(ast)]
    return ctor(simplify(ast.left), simplify(ast.right))


def differentiate(ast: Ast, var: str) -> Ast:
    """Symbolic partial derivative with constant folding."""
    if isinstance(ast, Number) or isinstance(ast, Param):
        return Number(0.0)
    if isinstance(ast, Var):
        return Number(1.0 if ast.name == var else 0.0)
    if isinstance(ast, Neg):
        return _neg(differentiate(ast.operand, var))
    if isinstance(ast, Pow):
        db = differentiate(ast.base, var)
        if _num(db) == 0:
            return Number(0.0)
        p = ast.exponent
        return _mul(_mul(Number(p), _pow(simplify(ast.base), p - 1)), db)
    a, b = simplify(ast.left), simplify(ast.right)
    da, db = differentiate(a, var), differentiate(b, var)
    if isinstance(ast, Add):
        return _add(da, db)
    if isinstance(ast, Sub):
        return _sub(da, db)
    if isinstance(ast, Mul):
        return _add(_mul(da, b), _mul(a, db))
    # quotient rule
    return _div(_sub(_mul(da, b), _mul(a, db)), _pow(b, 2.0))
