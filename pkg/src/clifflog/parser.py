"""Expression front end.

Grammar (lowest precedence first)::

    expr    := term (("+" | "-") term)*
    term    := power (("*" | "/") power)*
    power   := unary ("^" INTEGER)*
    unary   := ("-" | "+") unary | primary
    primary := NUMBER [BASIS] | BASIS | "pi" | CALL "(" expr ")" | "(" expr ")"
    CALL    := exp | log | sqrt | inv | rev | gradeinv | conj | norm | det
    BASIS   := e1 | e2 | e12

Unary minus binds tighter than ``^``, so ``-e1^2`` is ``(-e1)^2``.  A number
written directly against a basis token (``4e1``) is their product; every
other product needs ``*``.  Exponents are non-negative integer literals.
Scientific notation needs an explicit exponent sign or a capital ``E``
(``1e-05``, ``2E3``) because ``4e1`` already means ``4*e1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Union

from . import functions as fn
from .core import (
    Involution,
    Multivector,
    Signature,
    add,
    basis,
    gp,
    inverse,
    involute,
    mv,
    norms,
    scale,
    sub,
)
from .errors import (
    BasisOutOfDimension,
    CliffordError,
    LexError,
    NoLogarithm,
    NoSquareRoot,
    ParseError,
    SingularDivision,
    SingularMultivector,
)

CALLS = ("exp", "log", "sqrt", "inv", "rev", "gradeinv", "conj", "norm", "det")
BASIS_NAMES = ("e1", "e2", "e12")
CONSTANTS = {"pi": math.pi}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]\d+|E\d+)?")
_WORD = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_SYMBOLS = {
    "+": "Plus", "-": "Minus", "*": "Star", "/": "Slash", "^": "Caret",
    "(": "LParen", ")": "RParen", ",": "Comma",
}


def tokenize(src: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _SYMBOLS:
            tokens.append(Token(_SYMBOLS[ch], ch, i))
            i += 1
            continue
        m = _NUMBER.match(src, i)
        if m:
            tokens.append(Token("Number", m.group(), i))
            i = m.end()
            continue
        m = _WORD.match(src, i)
        if m:
            word = m.group()
            tokens.append(Token("Basis" if word in BASIS_NAMES else "Ident", word, i))
            i = m.end()
            continue
        raise LexError(f"unexpected character {ch!r}", i)
    return tokens


# --------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Literal:
    value: float
    pos: int


@dataclass(frozen=True)
class BasisElem:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "Ast"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Ast"
    right: "Ast"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "Ast"
    exponent: int
    pos: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Ast", ...]
    pos: int


Ast = Union[Literal, BasisElem, Neg, BinOp, Pow, Call]


class _Parser:
    def __init__(self, tokens: list[Token], src_len: int):
        self.tokens = tokens
        self.i = 0
        self.end = src_len

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def pos(self) -> int:
        tok = self.peek()
        return tok.position if tok else self.end

    def take(self, kind: str, expected: tuple[str, ...]) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            what = "end of input" if tok is None else repr(tok.text)
            raise ParseError(f"unexpected {what}", self.pos(), expected)
        self.i += 1
        return tok

    def expr(self) -> Ast:
        node = self.term()
        while (tok := self.peek()) and tok.kind in ("Plus", "Minus"):
            self.i += 1
            node = BinOp("+" if tok.kind == "Plus" else "-", node, self.term(), tok.position)
        return node

    def term(self) -> Ast:
        node = self.power()
        while (tok := self.peek()) and tok.kind in ("Star", "Slash"):
            self.i += 1
            node = BinOp("*" if tok.kind == "Star" else "/", node, self.power(), tok.position)
        return node

    def power(self) -> Ast:
        node = self.unary()
        while (tok := self.peek()) and tok.kind == "Caret":
            self.i += 1
            num = self.take("Number", ("non-negative integer exponent",))
            value = float(num.text)
            if not value.is_integer():
                raise ParseError(f"exponent {num.text} is not an integer; use sqrt/exp/log",
                                 num.position, ("non-negative integer exponent",))
            node = Pow(node, int(value), tok.position)
        return node

    def unary(self) -> Ast:
        tok = self.peek()
        if tok and tok.kind == "Minus":
            self.i += 1
            return Neg(self.unary(), tok.position)
        if tok and tok.kind == "Plus":
            self.i += 1
            return self.unary()
        return self.primary()

    def primary(self) -> Ast:
        tok = self.peek()
        start = ("number", "e1", "e2", "e12", "function call", "'('", "'-'")
        if tok is None:
            raise ParseError("unexpected end of input", self.end, start)
        if tok.kind == "Number":
            self.i += 1
            node: Ast = Literal(float(tok.text), tok.position)
            nxt = self.peek()
            if nxt and nxt.kind == "Basis" and nxt.position == tok.position + len(tok.text):
                self.i += 1
                node = BinOp("*", node, BasisElem(nxt.text, nxt.position), nxt.position)
            return node
        if tok.kind == "Basis":
            self.i += 1
            return BasisElem(tok.text, tok.position)
        if tok.kind == "Ident":
            self.i += 1
            if tok.text in CONSTANTS:
                return Literal(CONSTANTS[tok.text], tok.position)
            if tok.text not in CALLS:
                raise ParseError(f"unknown identifier {tok.text!r}", tok.position,
                                 CALLS + tuple(CONSTANTS))
            self.take("LParen", ("'('",))
            arg = self.expr()
            nxt = self.peek()
            if nxt and nxt.kind == "Comma":
                raise ParseError(f"{tok.text} takes exactly one argument", nxt.position, ("')'",))
            if nxt is None:
                raise ParseError("unclosed parenthesis", self.end, ("')'",))
            self.take("RParen", ("')'",))
            return Call(tok.text, (arg,), tok.position)
        if tok.kind == "LParen":
            self.i += 1
            node = self.expr()
            if self.peek() is None:
                raise ParseError("unclosed parenthesis", self.end, ("')'",))
            self.take("RParen", ("')'",))
            return node
        raise ParseError(f"unexpected {tok.text!r}", tok.position, start)


def parse(tokens: list[Token] | str) -> Ast:
    """Build an AST from a token list (or directly from source text)."""
    if isinstance(tokens, str):
        src_len = len(tokens)
        tokens = tokenize(tokens)
    else:
        src_len = tokens[-1].position + len(tokens[-1].text) if tokens else 0
    p = _Parser(tokens, src_len)
    node = p.expr()
    if (tok := p.peek()) is not None:
        raise ParseError(f"unexpected {tok.text!r}", tok.position,
                         ("'+'", "'-'", "'*'", "'/'", "'^'", "end of input"))
    return node


# --------------------------------------------------------------------------
# evaluation

EvalValue = Union[Multivector, fn.LogResult, fn.SqrtResult]


@dataclass
class Evaluation:
    value: EvalValue
    notes: list[str] = field(default_factory=list)


def _located(err: CliffordError, pos: int) -> CliffordError:
    if err.position is None:
        err.position = pos
    return err


class _Evaluator:
    def __init__(self, sig: Signature):
        self.sig = sig
        self.notes: list[str] = []

    def as_mv(self, value: EvalValue, pos: int) -> Multivector:
        if isinstance(value, Multivector):
            return value
        if isinstance(value, fn.LogResult):
            if value.principal is None:
                raise NoLogarithm(f"logarithm has no finite value ({value.kind.value})", pos)
            self.notes.append(f"log at position {pos} used as its principal value")
            return value.principal
        if not value.isolated:
            raise NoSquareRoot("no real square root", pos)
        self.notes.append(f"sqrt at position {pos} used as its first root {value.isolated[0]}")
        return value.isolated[0]

    def mv_of(self, node: Ast) -> Multivector:
        return self.as_mv(self.eval(node), node.pos)

    def eval(self, node: Ast) -> EvalValue:
        sig = self.sig
        if isinstance(node, Literal):
            return mv(sig, node.value)
        if isinstance(node, BasisElem):
            if sig.n == 1 and node.name != "e1":
                raise BasisOutOfDimension(f"{node.name} does not exist in {sig}", node.pos)
            return basis(sig, node.name)
        if isinstance(node, Neg):
            return scale(self.mv_of(node.operand), -1.0)
        if isinstance(node, BinOp):
            left = self.mv_of(node.left)
            right = self.mv_of(node.right)
            if node.op == "+":
                return add(left, right)
            if node.op == "-":
                return sub(left, right)
            if node.op == "*":
                return gp(left, right)
            try:
                return gp(left, inverse(right))
            except SingularMultivector as err:
                raise SingularDivision(str(err), node.pos) from None
        if isinstance(node, Pow):
            base = self.mv_of(node.base)
            out = mv(sig, 1.0)
            for _ in range(node.exponent):
                out = gp(out, base)
            return out
        if isinstance(node, Call):
            return self.call(node)
        raise TypeError(f"unknown node {node!r}")

    def call(self, node: Call) -> EvalValue:
        arg = self.mv_of(node.args[0])
        name = node.name
        try:
            if name == "exp":
                return fn.exp(arg)
            if name == "log":
                return fn.log(arg)
            if name == "sqrt":
                return fn.sqrt_all(arg)
            if name == "inv":
                try:
                    return inverse(arg)
                except SingularMultivector as err:
                    raise SingularDivision(str(err)) from None
            if name == "rev":
                return involute(arg, Involution.REVERSE)
            if name == "gradeinv":
                return involute(arg, Involution.GRADE_INVOLUTE)
            if name == "conj":
                return involute(arg, Involution.CLIFFORD_CONJUGATE)
            if name == "norm":
                return mv(self.sig, norms(arg).seminormB)
            if name == "det":
                return mv(self.sig, norms(arg).det)
        except CliffordError as err:
            raise _located(err, node.pos)
        raise ParseError(f"unknown function {name!r}", node.pos, CALLS)


def eval_ast(ast: Ast, sig: Signature) -> Evaluation:
    ev = _Evaluator(sig)
    value = ev.eval(ast)
    return Evaluation(value, ev.notes)


def evaluate(src: str, sig: Signature) -> Evaluation:
    """Tokenize, parse and evaluate in one step."""
    return eval_ast(parse(tokenize(src)), sig)
