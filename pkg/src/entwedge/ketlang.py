"""A small expression language for writing states as kets.

Grammar (whitespace between tokens is ignored)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor factor*                      # juxtaposition multiplies
    factor  := scalar | ket | '(' expr ')'
    ket     := '|' INT (',' INT)* '>'
    scalar  := atom ('/' atom)*
    atom    := INT | DECIMAL | 'i' | 'sqrt' '(' INT ['/' INT] ')'

Juxtaposed kets tensor together, so ``|0>|1>`` means the same as
``|0,1>``.  Ket indices are 0-based.  Scalars are kept exact as
``(re + im*i) * sqrt(rad)`` with rational parts and a square-free
integer radicand; amplitudes accumulate in that exact form and are
converted to floating point once, at the very end of evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ArityMismatchError, DimTooSmallError, KetSyntaxError
from .states import PureState


# --- exact scalars -------------------------------------------------------

def _square_split(n: int) -> tuple[int, int]:
    """n >= 1 as root**2 * free with free square-free."""
    root, free = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            count = 0
            while n % d == 0:
                n //= d
                count += 1
            root *= d ** (count // 2)
            if count % 2:
                free *= d
        d += 1
    return root, free * n


@dataclass(frozen=True)
class ExactScalar:
    """Value ``(re + im*i) * sqrt(rad)`` with exact rational parts.

    Kept canonical: ``rad`` is a square-free positive integer (1 when the
    value is rational or zero), and the zero value is ``(0, 0, 1)``.
    """

    re: Fraction
    im: Fraction
    rad: Fraction

    @staticmethod
    def make(re, im=0, rad=1) -> "ExactScalar":
        re, im, rad = Fraction(re), Fraction(im), Fraction(rad)
        if rad < 0:
            raise ValueError(f"radicand must be nonnegative, got {rad}")
        if rad == 0 or (re == 0 and im == 0):
            return ExactScalar(Fraction(0), Fraction(0), Fraction(1))
        # sqrt(p/q) = sqrt(p*q)/q, then pull the square part out front.
        root, free = _square_split(rad.numerator * rad.denominator)
        scale = Fraction(root, rad.denominator)
        return ExactScalar(re * scale, im * scale, Fraction(free))

    @staticmethod
    def integer(n: int) -> "ExactScalar":
        return ExactScalar.make(n)

    @staticmethod
    def imaginary_unit() -> "ExactScalar":
        return ExactScalar.make(0, 1)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        return ExactScalar.make(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.rad * other.rad,
        )

    def __truediv__(self, other: "ExactScalar") -> "ExactScalar":
        if other.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        # 1 / ((a+bi) sqrt(r)) = (a-bi) sqrt(r) / ((a^2+b^2) r)
        scale = (other.re * other.re + other.im * other.im) * other.rad
        inverse = ExactScalar.make(other.re / scale, -other.im / scale, other.rad)
        return self * inverse

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.re, -self.im, self.rad)

    def to_complex(self) -> complex:
        r = math.sqrt(self.rad.numerator / self.rad.denominator)
        return complex(float(self.re) * r, float(self.im) * r)


ZERO = ExactScalar.make(0)
ONE = ExactScalar.make(1)


# --- syntax tree ---------------------------------------------------------

@dataclass(frozen=True)
class KetNode:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class ScalarNode:
    value: ExactScalar


@dataclass(frozen=True)
class ProductNode:
    factors: tuple


@dataclass(frozen=True)
class SumNode:
    # (sign, node) pairs with sign in {+1, -1}
    terms: tuple


@dataclass(frozen=True)
class KetExpr:
    root: object
    arity: int


def _arity(node) -> int:
    if isinstance(node, KetNode):
        return len(node.indices)
    if isinstance(node, ScalarNode):
        return 0
    if isinstance(node, ProductNode):
        return sum(_arity(f) for f in node.factors)
    if isinstance(node, SumNode):
        arities = {_arity(term) for _, term in node.terms}
        if len(arities) > 1:
            raise ArityMismatchError(
                f"summed terms have different slot counts: {sorted(arities)}"
            )
        return arities.pop()
    raise TypeError(f"not a ket expression node: {node!r}")


# --- lexer ---------------------------------------------------------------

_PUNCT = {
    "|": "PIPE", ">": "GT", "(": "LPAREN", ")": "RPAREN",
    ",": "COMMA", "+": "PLUS", "-": "MINUS", "/": "SLASH",
}


def _lex(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        col = pos + 1
        if ch.isspace():
            pos += 1
        elif ch in _PUNCT:
            tokens.append((_PUNCT[ch], ch, col))
            pos += 1
        elif ch.isdigit():
            end = pos
            dots = 0
            while end < len(text) and (text[end].isdigit() or text[end] == "."):
                dots += text[end] == "."
                end += 1
            word = text[pos:end]
            if dots > 1 or word.endswith("."):
                raise KetSyntaxError(f"malformed number {word!r}", col)
            tokens.append(("DECIMAL" if dots else "INT", word, col))
            pos = end
        elif ch.isalpha():
            end = pos
            while end < len(text) and text[end].isalpha():
                end += 1
            word = text[pos:end]
            if word not in ("i", "sqrt"):
                raise KetSyntaxError(f"unknown symbol {word!r}", col)
            tokens.append(("IDENT", word, col))
            pos = end
        else:
            raise KetSyntaxError(f"unexpected character {ch!r}", col)
    tokens.append(("EOF", "", len(text) + 1))
    return tokens


# --- recursive-descent parser ---------------------------------------------

_FACTOR_START = ("INT", "DECIMAL", "IDENT", "PIPE", "LPAREN")


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            got = tok[1] or "end of input"
            raise KetSyntaxError(f"expected {kind}, got {got!r}", tok[2])
        self.pos += 1
        return tok

    # expr := ['+'|'-'] term (('+'|'-') term)*
    def expr(self):
        sign = 1
        if self.peek()[0] in ("PLUS", "MINUS"):
            sign = -1 if self.take(self.peek()[0])[0] == "MINUS" else 1
        terms = [(sign, self.term())]
        while self.peek()[0] in ("PLUS", "MINUS"):
            sign = -1 if self.take(self.peek()[0])[0] == "MINUS" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return SumNode(tuple(terms))

    # term := factor factor*   (juxtaposition)
    def term(self):
        factors = [self.factor()]
        while self.peek()[0] in _FACTOR_START:
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return ProductNode(tuple(factors))

    # factor := scalar | ket | '(' expr ')'
    def factor(self):
        kind, _, col = self.peek()
        if kind == "PIPE":
            return self.ket()
        if kind == "LPAREN":
            self.take("LPAREN")
            inner = self.expr()
            self.take("RPAREN")
            return inner
        if kind in ("INT", "DECIMAL", "IDENT"):
            return ScalarNode(self.scalar())
        got = self.peek()[1] or "end of input"
        raise KetSyntaxError(f"expected a scalar, ket, or '(', got {got!r}", col)

    # ket := '|' INT (',' INT)* '>'
    def ket(self):
        self.take("PIPE")
        indices = [int(self.take("INT")[1])]
        while self.peek()[0] == "COMMA":
            self.take("COMMA")
            indices.append(int(self.take("INT")[1]))
        self.take("GT")
        return KetNode(tuple(indices))

    # scalar := atom ('/' atom)*
    def scalar(self) -> ExactScalar:
        value = self.atom()
        while self.peek()[0] == "SLASH":
            _, _, col = self.take("SLASH")
            try:
                value = value / self.atom()
            except ZeroDivisionError:
                raise KetSyntaxError("division by zero", col) from None
        return value

    # atom := INT | DECIMAL | 'i' | 'sqrt' '(' INT ['/' INT] ')'
    def atom(self) -> ExactScalar:
        kind, word, col = self.peek()
        if kind == "INT":
            self.take("INT")
            return ExactScalar.make(int(word))
        if kind == "DECIMAL":
            self.take("DECIMAL")
            return ExactScalar.make(Fraction(word))
        if kind == "IDENT" and word == "i":
            self.take("IDENT")
            return ExactScalar.imaginary_unit()
        if kind == "IDENT" and word == "sqrt":
            self.take("IDENT")
            self.take("LPAREN")
            num = int(self.take("INT")[1])
            den, den_col = 1, col
            if self.peek()[0] == "SLASH":
                self.take("SLASH")
                _, den_word, den_col = self.take("INT")
                den = int(den_word)
            self.take("RPAREN")
            if den == 0:
                raise KetSyntaxError("division by zero", den_col)
            return ExactScalar.make(1, 0, Fraction(num, den))
        got = word or "end of input"
        raise KetSyntaxError(f"expected a scalar, got {got!r}", col)


def parse_ket(text: str) -> KetExpr:
    """Parse an expression, checking syntax and slot-count consistency.

    Raises
    ------
    KetSyntaxError
        With a 1-based column on any syntax problem.
    ArityMismatchError
        When summed subexpressions carry different slot counts.
    """
    parser = _Parser(text)
    root = parser.expr()
    tok = parser.peek()
    if tok[0] != "EOF":
        raise KetSyntaxError(f"unexpected trailing input {tok[1]!r}", tok[2])
    return KetExpr(root, _arity(root))


# --- canonical printing ----------------------------------------------------

def _fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _scalar_text(s: ExactScalar) -> str:
    if s.is_zero():
        return "0"
    if s.re != 0 and s.im != 0:
        raise ValueError("mixed real/imaginary scalars cannot print as one atom")
    coef = s.re if s.im == 0 else s.im
    magnitude = abs(coef)
    if s.rad == 1:
        body = _fraction_text(magnitude)
    elif magnitude == 1:
        body = f"sqrt({_fraction_text(s.rad)})"
    else:
        # fold the rational part under the root: q*sqrt(r) = sqrt(q^2 r)
        body = f"sqrt({_fraction_text(magnitude * magnitude * s.rad)})"
    if s.im == 0:
        return body if coef > 0 else body + "/i/i"
    if coef > 0:
        return "i" if body == "1" else body + "/i/i/i"
    return body + "/i"


def pretty(expr) -> str:
    """Canonical text for an expression; reparsing it rebuilds the same tree."""
    node = expr.root if isinstance(expr, KetExpr) else expr
    if isinstance(node, KetNode):
        return "|" + ",".join(str(x) for x in node.indices) + ">"
    if isinstance(node, ScalarNode):
        return _scalar_text(node.value)
    if isinstance(node, ProductNode):
        parts = []
        for factor in node.factors:
            text = pretty(factor)
            # a nested product came from explicit parentheses; keep them,
            # since bare juxtaposition reparses as one flat product
            wrap = isinstance(factor, (SumNode, ProductNode))
            parts.append(f"({text})" if wrap else text)
        return " ".join(parts)
    if isinstance(node, SumNode):
        pieces = []
        for pos, (sign, term) in enumerate(node.terms):
            text = pretty(term)
            if isinstance(term, SumNode):
                text = f"({text})"
            if pos == 0:
                pieces.append(text if sign == 1 else "-" + text)
            else:
                pieces.append((" + " if sign == 1 else " - ") + text)
        return "".join(pieces)
    raise TypeError(f"not a ket expression node: {node!r}")


# --- evaluation ------------------------------------------------------------

def _amp_add(table: dict, scalar: ExactScalar) -> None:
    if scalar.is_zero():
        return
    re, im = table.get(scalar.rad, (Fraction(0), Fraction(0)))
    table[scalar.rad] = (re + scalar.re, im + scalar.im)


def _walk(node) -> tuple[int, dict]:
    """Exact amplitudes as {multi-index: {radicand: (re, im)}}."""
    if isinstance(node, KetNode):
        return len(node.indices), {node.indices: {ONE.rad: (ONE.re, ONE.im)}}
    if isinstance(node, ScalarNode):
        table = {}
        _amp_add(table, node.value)
        return 0, {(): table}
    if isinstance(node, ProductNode):
        arity, amps = _walk(node.factors[0])
        for factor in node.factors[1:]:
            f_arity, f_amps = _walk(factor)
            merged = {}
            for idx_a, table_a in amps.items():
                for idx_b, table_b in f_amps.items():
                    target = merged.setdefault(idx_a + idx_b, {})
                    for rad_a, (re_a, im_a) in table_a.items():
                        for rad_b, (re_b, im_b) in table_b.items():
                            product = ExactScalar(re_a, im_a, rad_a) * ExactScalar(
                                re_b, im_b, rad_b
                            )
                            _amp_add(target, product)
            arity += f_arity
            amps = merged
        return arity, amps
    if isinstance(node, SumNode):
        arity = _arity(node)
        merged = {}
        for sign, term in node.terms:
            _, amps = _walk(term)
            for idx, table in amps.items():
                target = merged.setdefault(idx, {})
                for rad, (re, im) in table.items():
                    scalar = ExactScalar(re, im, rad)
                    _amp_add(target, scalar if sign == 1 else -scalar)
        return arity, merged
    raise TypeError(f"not a ket expression node: {node!r}")


def evaluate(expr: KetExpr, dims=None) -> PureState:
    """Turn an expression into a dense state.

    Dims are inferred as one past the largest index used in each slot
    unless supplied.  The result is NOT normalized; whatever the
    expression says is what comes out.

    Raises
    ------
    ArityMismatchError
        If the expression has no kets, or supplied dims have the wrong
        number of entries.
    DimTooSmallError
        If a ket index does not fit inside the supplied dims.
    """
    arity, amps = _walk(expr.root if isinstance(expr, KetExpr) else expr)
    if arity == 0:
        raise ArityMismatchError("expression has no kets, so there is no state")
    needed = [0] * arity
    for idx in amps:
        for slot, x in enumerate(idx):
            needed[slot] = max(needed[slot], x + 1)
    if dims is None:
        dims = tuple(needed)
    else:
        dims = tuple(int(n) for n in dims)
        if len(dims) != arity:
            raise ArityMismatchError(
                f"expression has {arity} slots but {len(dims)} dims were supplied"
            )
        for slot, (need, have) in enumerate(zip(needed, dims)):
            if need > have:
                raise DimTooSmallError(
                    f"slot {slot + 1} uses index {need - 1} but its dim is {have}"
                )
    vector = np.zeros(math.prod(dims), dtype=np.complex128)
    for idx, table in amps.items():
        flat = 0
        for x, n in zip(idx, dims):
            flat = flat * n + x
        total = 0j
        for rad, (re, im) in table.items():
            total += ExactScalar(re, im, rad).to_complex()
        vector[flat] = total
    return PureState(dims, vector)
