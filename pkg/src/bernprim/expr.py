"""Textual function definitions: parsing, evaluation, pretty-printing.

The accepted grammar, with ^ binding tightest and right-associative:

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' factor)?
    base   := '-' base | number | 'x' | '(' expr ')'
            | ident '(' expr (',' expr)? ')'

The only variable is x.  Function names are fixed: sin, cos, exp, log,
sqrt and abs take one argument, min and max take two.  Parse failures
raise ParseError with a stable message carrying a 1-based byte offset.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

from .core import EvaluationError, RealFunction

__all__ = [
    "Const",
    "Var",
    "Unary",
    "Binary",
    "Call",
    "ExprAst",
    "ParseError",
    "parse",
    "eval_ast",
    "to_text",
    "to_real_function",
    "UNARY_FUNCTIONS",
    "BINARY_FUNCTIONS",
]

UNARY_FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "exp": math.exp,
    "log": math.log,
    "sqrt": math.sqrt,
    "abs": abs,
}

BINARY_FUNCTIONS = {"min": min, "max": max}


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "ExprAst"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["ExprAst", ...]


ExprAst = Union[Const, Var, Unary, Binary, Call]


class ParseError(Exception):
    """Raised for any malformed expression; offsets are 1-based bytes."""

    def __init__(self, offset: int, message: str):
        self.offset = offset
        super().__init__(message)


def _syntax_error(offset: int, expected: str, found: str) -> ParseError:
    return ParseError(offset, f"parse error at byte {offset}: expected {expected}, found {found}")


def _unknown_identifier(offset: int, name: str) -> ParseError:
    return ParseError(offset, f"parse error at byte {offset}: unknown identifier '{name}'")


@dataclass(frozen=True)
class _Token:
    kind: str  # "number", "ident", "op", "eof"
    text: str
    offset: int  # 1-based byte offset of the first character

    def describe(self) -> str:
        return "end of input" if self.kind == "eof" else f"'{self.text}'"


_TOKEN_RE = re.compile(
    r"(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),])"
)

_BASE_EXPECTED = "number, 'x', '(', '-', or function name"


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    length = len(text)
    while pos < length:
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise _syntax_error(pos + 1, "number, identifier, or operator", f"'{text[pos]}'")
        kind = match.lastgroup or "op"
        tokens.append(_Token(kind, match.group(), pos + 1))
        pos = match.end()
    tokens.append(_Token("eof", "", length + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, op: str) -> None:
        token = self.peek()
        if token.kind == "op" and token.text == op:
            self.advance()
            return
        raise _syntax_error(token.offset, f"'{op}'", token.describe())

    def at_op(self, *ops: str) -> bool:
        token = self.peek()
        return token.kind == "op" and token.text in ops

    def parse_expr(self) -> ExprAst:
        node = self.parse_term()
        while self.at_op("+", "-"):
            op = self.advance().text
            node = Binary(op, node, self.parse_term())
        return node

    def parse_term(self) -> ExprAst:
        node = self.parse_factor()
        while self.at_op("*", "/"):
            op = self.advance().text
            node = Binary(op, node, self.parse_factor())
        return node

    def parse_factor(self) -> ExprAst:
        node = self.parse_base()
        if self.at_op("^"):
            self.advance()
            node = Binary("^", node, self.parse_factor())  # right-associative
        return node

    def parse_base(self) -> ExprAst:
        token = self.peek()
        if self.at_op("-"):
            self.advance()
            return Unary("-", self.parse_base())
        if token.kind == "number":
            self.advance()
            return Const(float(token.text))
        if self.at_op("("):
            self.advance()
            node = self.parse_expr()
            self.expect_op(")")
            return node
        if token.kind == "ident":
            if token.text == "x":
                self.advance()
                return Var()
            return self.parse_call(token)
        raise _syntax_error(token.offset, _BASE_EXPECTED, token.describe())

    def parse_call(self, name_token: _Token) -> ExprAst:
        name = name_token.text
        if name not in UNARY_FUNCTIONS and name not in BINARY_FUNCTIONS:
            raise _unknown_identifier(name_token.offset, name)
        self.advance()
        self.expect_op("(")
        first = self.parse_expr()
        if name in BINARY_FUNCTIONS:
            self.expect_op(",")
            second = self.parse_expr()
            self.expect_op(")")
            return Call(name, (first, second))
        self.expect_op(")")
        return Call(name, (first,))


def parse(text: str) -> ExprAst:
    """Parse an expression in x, or raise ParseError with a byte offset."""
    parser = _Parser(_tokenize(text))
    node = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "eof":
        raise _syntax_error(trailing.offset, "end of input", trailing.describe())
    return node


# ---------------------------------------------------------------------------
# Pretty printing

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 3}


def _render(node: ExprAst) -> tuple[str, int]:
    """Return (text, precedence) with 4 meaning an atomic base."""
    if isinstance(node, Const):
        return repr(node.value) if node.value >= 0 else f"({node.value!r})", 4
    if isinstance(node, Var):
        return "x", 4
    if isinstance(node, Unary):
        text, prec = _render(node.operand)
        if prec < 4:
            text = f"({text})"
        return f"-{text}", 4
    if isinstance(node, Call):
        args = ", ".join(_render(arg)[0] for arg in node.args)
        return f"{node.name}({args})", 4
    if isinstance(node, Binary):
        op = node.op
        mine = _PRECEDENCE[op]
        left_text, left_prec = _render(node.left)
        right_text, right_prec = _render(node.right)
        if op == "^":
            # Left operand of ^ must be a base; right may be another ^ chain.
            if left_prec < 4:
                left_text = f"({left_text})"
            if right_prec < 4 and not (isinstance(node.right, Binary) and node.right.op == "^"):
                right_text = f"({right_text})"
            return f"{left_text}^{right_text}", mine
        if left_prec < mine:
            left_text = f"({left_text})"
        if right_prec <= mine:
            right_text = f"({right_text})"
        return f"{left_text} {op} {right_text}", mine
    raise TypeError(f"not an expression node: {node!r}")


def to_text(node: ExprAst) -> str:
    """Render the tree back to source; reparsing gives an identical tree."""
    return _render(node)[0]


# ---------------------------------------------------------------------------
# Evaluation


def _fail(node: ExprAst, x: float, reason: str) -> EvaluationError:
    return EvaluationError(f"evaluation of '{to_text(node)}' failed at x={x!r}: {reason}")


def _eval(node: ExprAst, x: float) -> float:
    if isinstance(node, Const):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Unary):
        return -_eval(node.operand, x)
    if isinstance(node, Binary):
        left = _eval(node.left, x)
        right = _eval(node.right, x)
        if node.op == "+":
            value = left + right
        elif node.op == "-":
            value = left - right
        elif node.op == "*":
            value = left * right
        elif node.op == "/":
            if right == 0.0:
                raise _fail(node, x, "division by zero")
            value = left / right
        else:
            try:
                value = math.pow(left, right)
            except (ValueError, OverflowError) as exc:
                raise _fail(node, x, str(exc)) from exc
        if not math.isfinite(value):
            raise _fail(node, x, f"non-finite result {value!r}")
        return value
    if isinstance(node, Call):
        args = [_eval(arg, x) for arg in node.args]
        fn = UNARY_FUNCTIONS.get(node.name) or BINARY_FUNCTIONS[node.name]
        try:
            value = float(fn(*args))
        except (ValueError, OverflowError) as exc:
            raise _fail(node, x, str(exc)) from exc
        if not math.isfinite(value):
            raise _fail(node, x, f"non-finite result {value!r}")
        return value
    raise TypeError(f"not an expression node: {node!r}")


def eval_ast(node: ExprAst, x: float) -> float:
    """Evaluate the tree at x in [0, 1]; failures name the offending node."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x!r}")
    return _eval(node, x)


def to_real_function(
    node: ExprAst,
    sup_bound: float | None = None,
    lipschitz: float | None = None,
    probe_points: int = 257,
) -> RealFunction:
    """Wrap a parsed tree as a RealFunction, probing it on a uniform grid."""
    return RealFunction(
        evaluator=lambda x: eval_ast(node, x),
        sup_bound=sup_bound,
        lipschitz=lipschitz,
        probe_points=probe_points,
    )
