"""Parse and expand product expressions such as "(q,q^4;q^5)^2*(q^2,q^13;q^15)".

Grammar:
    expr   := term (('*' | '/') term)*
    term   := atom ('^' ['-'] int)?
    atom   := block | group | theta | named | family | legacy | 'q'
    block  := '(' qarg (',' qarg)* ';' 'q' ('^' int)? ')'
    group  := '(' expr ')'
    theta  := 'f' '(' qarg ',' qarg ')'
    named  := ('phi' | 'psi' | 'f_minus') '(' 'q' ('^' int)? ')'
    family := ('X' | 'Y' | 'Z' | 'W') '(' a ',' b ',' s ',' k ',' ell ',' u ',' v ')'
    legacy := name ('[' key '=' int (',' key '=' int)* ']')?
    qarg   := ['-'] ('q' ('^' ['-'] int)? | '1')
"""

import logging
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from src.families import FAMILY_SIGNS, FamilySpec, LEGACY_PRODUCTS, legacy_blocks
from src.series import QSeries, mul_to_order, one, power_to_order, shift
from src.theta import NAMED_THETA, PochhammerSpec, ThetaSpec, product_series, theta_series

logger = logging.getLogger(__name__)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z][A-Za-z0-9_]*)*)|(?P<sym>[()\[\],;^*/=-]))"
)


class ParseError(ValueError):
    """Malformed expression; `position` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class Factor:
    """One multiplicative piece: a Pochhammer block, theta, or q-power, raised to power."""

    kind: str
    spec: Union[PochhammerSpec, ThetaSpec, int]
    power: int = 1

    def raised(self, n: int) -> "Factor":
        return Factor(self.kind, self.spec, self.power * n)


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"Unexpected character {text[offset]!r}", offset)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers --

    @property
    def peek(self) -> Token:
        return self.tokens[self.i]

    def _next(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def _expect(self, text: str) -> Token:
        tok = self._next()
        if tok.text != text:
            found = tok.text or "end of input"
            raise ParseError(f"Expected {text!r}, found {found!r}", tok.position)
        return tok

    def _accept(self, text: str) -> bool:
        if self.peek.text == text:
            self.i += 1
            return True
        return False

    def _int(self, signed: bool = False) -> int:
        sign = -1 if signed and self._accept("-") else 1
        tok = self._next()
        if tok.kind != "int":
            raise ParseError(f"Expected an integer, found {tok.text or 'end of input'!r}", tok.position)
        return sign * int(tok.text)

    # -- grammar --

    def parse(self) -> List[Factor]:
        factors = self.expr()
        if self.peek.kind != "end":
            raise ParseError(f"Unexpected {self.peek.text!r}", self.peek.position)
        return factors

    def expr(self) -> List[Factor]:
        factors = self.term()
        while self.peek.text in ("*", "/"):
            op = self._next().text
            rhs = self.term()
            factors += rhs if op == "*" else [f.raised(-1) for f in rhs]
        return factors

    def term(self) -> List[Factor]:
        factors = self.atom()
        if self._accept("^"):
            n = self._int(signed=True)
            factors = [f.raised(n) for f in factors]
        return factors

    def atom(self) -> List[Factor]:
        tok = self.peek
        if tok.text == "(":
            return [self.block()] if self._is_block() else self.group()
        if tok.kind != "name":
            raise ParseError(f"Unexpected {tok.text or 'end of input'!r}", tok.position)
        self._next()
        name = tok.text
        if name == "q":
            return [Factor("mono", 1)]
        if name == "f" and self.peek.text == "(":
            return [self.theta()]
        if name in NAMED_THETA:
            return [self.named(name)]
        if name in FAMILY_SIGNS and self.peek.text == "(":
            return self.family(name, tok.position)
        if name in LEGACY_PRODUCTS:
            return self.legacy(name, tok.position)
        raise ParseError(f"Unknown name {name!r}", tok.position)

    def _is_block(self) -> bool:
        """True when the parenthesis starting here contains a top-level ';'."""
        depth = 0
        for tok in self.tokens[self.i:]:
            if tok.text in ("(", "["):
                depth += 1
            elif tok.text in (")", "]"):
                depth -= 1
                if depth == 0:
                    return False
            elif tok.text == ";" and depth == 1:
                return True
        return False

    def group(self) -> List[Factor]:
        self._expect("(")
        factors = self.expr()
        self._expect(")")
        return factors

    def qarg(self) -> Tuple[int, int]:
        sign = -1 if self._accept("-") else 1
        tok = self._next()
        if tok.kind == "int" and tok.text == "1":
            return sign, 0
        if tok.text != "q":
            raise ParseError(f"Expected a signed power of q, found {tok.text or 'end of input'!r}", tok.position)
        exp = self._int(signed=True) if self._accept("^") else 1
        return sign, exp

    def _base(self) -> int:
        tok = self._next()
        if tok.text != "q":
            raise ParseError(f"Expected 'q', found {tok.text or 'end of input'!r}", tok.position)
        exp = self._int() if self._accept("^") else 1
        if exp < 1:
            raise ParseError("Base exponent must be positive", tok.position)
        return exp

    def block(self) -> Factor:
        self._expect("(")
        args = [self.qarg()]
        while self._accept(","):
            args.append(self.qarg())
        self._expect(";")
        modulus = self._base()
        self._expect(")")
        return Factor("block", PochhammerSpec(tuple(args), modulus, 1))

    def theta(self) -> Factor:
        start = self._expect("(").position
        sa, ea = self.qarg()
        self._expect(",")
        sb, eb = self.qarg()
        self._expect(")")
        if ea + eb < 1:
            raise ParseError(f"f(q^{ea}, q^{eb}) diverges", start)
        return Factor("theta", ThetaSpec(sa, sb, ea, eb))

    def named(self, name: str) -> Factor:
        self._expect("(")
        k = self._base()
        self._expect(")")
        spec = NAMED_THETA[name]
        return Factor("theta", ThetaSpec(spec.sign_a, spec.sign_b, spec.ea * k, spec.eb * k))

    def family(self, name: str, position: int) -> List[Factor]:
        self._expect("(")
        values = [self._int(signed=True)]
        while self._accept(","):
            values.append(self._int(signed=True))
        self._expect(")")
        if len(values) != 7:
            raise ParseError(f"{name}(a,b,s,k,ell,u,v) takes 7 integers, got {len(values)}", position)
        try:
            spec = FamilySpec(name, *values)
        except ValueError as e:
            raise ParseError(str(e), position) from None
        return [Factor("block", b) for b in spec.blocks()]

    def legacy(self, name: str, position: int) -> List[Factor]:
        params = {}
        if self._accept("["):
            while True:
                key = self._next()
                if key.kind != "name":
                    raise ParseError("Expected a parameter name", key.position)
                self._expect("=")
                params[key.text] = self._int(signed=True)
                if not self._accept(","):
                    break
            self._expect("]")
        try:
            blocks = legacy_blocks(name, params or None)
        except ValueError as e:
            raise ParseError(str(e), position) from None
        return [Factor("block", b) for b in blocks]


def parse(text: str) -> List[Factor]:
    """Parse an expression into its multiplicative factors."""
    if not text.strip():
        raise ParseError("Empty expression", 0)
    return _Parser(text).parse()


def evaluate(text: str, order: int, factors: Optional[List[Factor]] = None) -> QSeries:
    """Expand an expression exactly to order.

    All Pochhammer blocks go through one product_series pass; theta factors
    and q-powers are combined with order budgeting.
    """
    factors = parse(text) if factors is None else factors
    blocks, thetas, q_shift = [], [], 0
    for f in factors:
        if f.kind == "block":
            blocks.append(PochhammerSpec(f.spec.args, f.spec.modulus, f.spec.power * f.power))
        elif f.kind == "theta":
            thetas.append((f.spec, f.power))
        else:
            q_shift += f.spec * f.power

    makers = []
    if blocks:
        makers.append(lambda n: product_series(blocks, n))
    for spec, p in thetas:
        makers.append(lambda n, spec=spec, p=p: power_to_order(lambda m: theta_series(spec, m), p, n))
    logger.debug(f"Evaluating {text!r}: {len(blocks)} blocks, {len(thetas)} theta factors, shift {q_shift}")
    if not makers:
        return shift(one(order - q_shift), q_shift)
    return shift(mul_to_order(makers, order - q_shift), q_shift)
