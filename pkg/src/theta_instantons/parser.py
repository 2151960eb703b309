"""Expression grammar for polynomials and tensors.

    expr    := tensor
    tensor  := sum ('@' sum)*
    sum     := ['+'|'-'] product (('+'|'-') product)*
    product := power ('*' power)*
    power   := postfix ['^' INT]
    postfix := atom ("'")*
    atom    := INT ['/' INT] | IDENT | '(' expr ')'

``'`` is the star involution, ``@`` the tensor separator. The coefficient
names ``mu``, ``mubar`` and ``lambda`` (= ``mu^2``) are reserved. In a
tensor the k-th operand of ``@`` lives on leg k; outside of an ``@`` a
letter is placed on the unique leg whose presentation owns its name.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .algebra import Presentation, TensorPolynomial, embed
from .errors import ExpressionError
from .phase import LAMBDA, MU, MUBAR, PhaseCoefficient

Value = Union[TensorPolynomial, PhaseCoefficient]

RESERVED: dict[str, PhaseCoefficient] = {"mu": MU, "mubar": MUBAR, "lambda": LAMBDA}

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


@dataclass
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            break
        number, ident, other = match.groups()
        start = match.start(match.lastindex) if match.lastindex else pos
        if number is not None:
            tokens.append(Token("int", number, start))
        elif ident is not None:
            tokens.append(Token("ident", ident, start))
        elif other is not None:
            if other not in "+-*/^@()'":
                raise ExpressionError(f"unexpected character {other!r}", text, start)
            tokens.append(Token(other, other, start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# ============================================================================
# Syntax tree
# ============================================================================


@dataclass
class Node:
    kind: str
    pos: int
    children: list[Node] = field(default_factory=list)
    value: object = None


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        token = self.tokens[self.i]
        self.i += 1
        return token

    def expect(self, kind: str) -> Token:
        if self.current.kind != kind:
            raise ExpressionError(
                f"expected {kind!r}, found {self.current.text or 'end of input'!r}",
                self.text,
                self.current.pos,
            )
        return self.advance()

    def parse(self) -> Node:
        if self.current.kind == "end":
            raise ExpressionError("empty expression", self.text, 0)
        node = self.tensor()
        if self.current.kind != "end":
            raise ExpressionError(f"unexpected {self.current.text!r}", self.text, self.current.pos)
        return node

    def tensor(self) -> Node:
        first = self.sum()
        if self.current.kind != "@":
            return first
        node = Node("tensor", first.pos, [first])
        while self.current.kind == "@":
            self.advance()
            node.children.append(self.sum())
        return node

    def sum(self) -> Node:
        pos = self.current.pos
        terms: list[tuple[int, Node]] = []
        sign = 1
        if self.current.kind in ("+", "-"):
            sign = -1 if self.advance().kind == "-" else 1
        terms.append((sign, self.product()))
        while self.current.kind in ("+", "-"):
            sign = -1 if self.advance().kind == "-" else 1
            terms.append((sign, self.product()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Node("sum", pos, [t for _, t in terms], [s for s, _ in terms])

    def product(self) -> Node:
        first = self.power()
        if self.current.kind != "*":
            return first
        node = Node("product", first.pos, [first])
        while self.current.kind == "*":
            self.advance()
            node.children.append(self.power())
        return node

    def power(self) -> Node:
        base = self.postfix()
        if self.current.kind != "^":
            return base
        self.advance()
        exponent = self.expect("int")
        return Node("power", base.pos, [base], int(exponent.text))

    def postfix(self) -> Node:
        node = self.atom()
        while self.current.kind == "'":
            tok = self.advance()
            node = Node("star", tok.pos, [node])
        return node

    def atom(self) -> Node:
        tok = self.current
        if tok.kind == "int":
            self.advance()
            value = Fraction(int(tok.text))
            if self.current.kind == "/":
                self.advance()
                denominator = self.expect("int")
                if int(denominator.text) == 0:
                    raise ExpressionError("division by zero", self.text, denominator.pos)
                value = value / int(denominator.text)
            return Node("number", tok.pos, value=value)
        if tok.kind == "ident":
            self.advance()
            return Node("name", tok.pos, value=tok.text)
        if tok.kind == "(":
            self.advance()
            inner = self.tensor()
            self.expect(")")
            return inner
        raise ExpressionError(
            f"unexpected {tok.text or 'end of input'!r}", self.text, tok.pos
        )


def parse_tree(text: str) -> Node:
    return _Parser(text).parse()


# ============================================================================
# Evaluation
# ============================================================================


class Evaluator:
    """Evaluate syntax trees over a tuple of legs."""

    def __init__(
        self,
        legs: Sequence[Presentation],
        symbols: Optional[Mapping[str, Value]] = None,
        text: str = "",
    ):
        self.legs = tuple(legs)
        self.symbols = dict(symbols or {})
        self.text = text

    def error(self, message: str, node: Node) -> ExpressionError:
        return ExpressionError(message, self.text, node.pos)

    def evaluate(self, node: Node, start: int = 0, count: Optional[int] = None) -> Value:
        if count is None:
            count = len(self.legs)
        method = getattr(self, f"_eval_{node.kind}")
        return method(node, start, count)

    def _eval_number(self, node: Node, start: int, count: int) -> Value:
        return PhaseCoefficient.coerce(node.value)  # type: ignore[arg-type]

    def _eval_name(self, node: Node, start: int, count: int) -> Value:
        name = str(node.value)
        if name in RESERVED:
            return RESERVED[name]
        legs = self.legs[start : start + count]
        if name in self.symbols:
            value = self.symbols[name]
            if isinstance(value, PhaseCoefficient):
                return value
            if value.legs != legs:
                raise self.error(
                    f"{name} lives over {[p.name for p in value.legs]}, "
                    f"expected {[p.name for p in legs]}",
                    node,
                )
            return value
        owners = [k for k, p in enumerate(legs) if p.has_letter(name)]
        if not owners:
            known = sorted({n for p in legs for n in p.letter_names()} | set(self.symbols))
            raise self.error(f"unknown name {name!r} (known: {', '.join(known)})", node)
        if len(owners) > 1:
            raise self.error(
                f"letter {name!r} is ambiguous between legs; separate legs with '@'", node
            )
        k = owners[0]
        single = TensorPolynomial.letter((legs[k],), 0, name)
        return embed(single, legs, k) if len(legs) > 1 else single

    def _eval_star(self, node: Node, start: int, count: int) -> Value:
        value = self.evaluate(node.children[0], start, count)
        return value.conj() if isinstance(value, PhaseCoefficient) else value.star()

    def _eval_power(self, node: Node, start: int, count: int) -> Value:
        base = self.evaluate(node.children[0], start, count)
        result: Value = PhaseCoefficient.coerce(1)
        for _ in range(int(node.value)):  # type: ignore[arg-type]
            result = self._multiply(result, base, start, count)
        return result

    def _multiply(self, a: Value, b: Value, start: int, count: int) -> Value:
        if isinstance(a, PhaseCoefficient) and isinstance(b, PhaseCoefficient):
            return a * b
        if isinstance(a, PhaseCoefficient):
            return b.scale(a)  # type: ignore[union-attr]
        if isinstance(b, PhaseCoefficient):
            return a.scale(b)
        return a * b

    def _eval_product(self, node: Node, start: int, count: int) -> Value:
        result = self.evaluate(node.children[0], start, count)
        for child in node.children[1:]:
            result = self._multiply(result, self.evaluate(child, start, count), start, count)
        return result

    def _eval_sum(self, node: Node, start: int, count: int) -> Value:
        signs: list[int] = node.value  # type: ignore[assignment]
        total: Value = PhaseCoefficient()
        for sign, child in zip(signs, node.children):
            value = self.evaluate(child, start, count)
            if sign < 0:
                value = -value
            if isinstance(total, PhaseCoefficient) and isinstance(value, PhaseCoefficient):
                total = total + value
            elif isinstance(total, PhaseCoefficient):
                total = value + total  # type: ignore[operator]
            else:
                total = total + value
        return total

    def _eval_tensor(self, node: Node, start: int, count: int) -> Value:
        if len(node.children) != count:
            raise self.error(
                f"tensor has {len(node.children)} legs, expected {count}", node
            )
        result: Optional[TensorPolynomial] = None
        for k, child in enumerate(node.children):
            value = self.evaluate(child, start + k, 1)
            if isinstance(value, PhaseCoefficient):
                value = TensorPolynomial.constant((self.legs[start + k],), value)
            result = value if result is None else result @ value
        return result  # type: ignore[return-value]


def parse_expression(
    text: str,
    legs: Union[Presentation, Sequence[Presentation]],
    symbols: Optional[Mapping[str, Value]] = None,
) -> TensorPolynomial:
    """Parse ``text`` into a polynomial over ``legs``."""
    if isinstance(legs, Presentation):
        legs = (legs,)
    tree = parse_tree(text)
    value = Evaluator(legs, symbols, text).evaluate(tree)
    if isinstance(value, PhaseCoefficient):
        return TensorPolynomial.constant(tuple(legs), value)
    return value


def parse_scalar(text: str) -> PhaseCoefficient:
    tree = parse_tree(text)
    value = Evaluator((), None, text).evaluate(tree)
    if not isinstance(value, PhaseCoefficient):
        raise ExpressionError("expected a scalar", text, 0)
    return value
