"""Parser for the polynomial expression grammar.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
    unary   := ('+' | '-') unary | power
    power   := atom ('^' INT)?
    atom    := INT | 'i' | VAR | FUNC '(' expr ')' | '(' expr ')' | '|' expr '|' '^' EVEN
    FUNC    := 'Re' | 'Im' | 'conj'
    VAR     := 'z1' .. 'z9' | 'w'

Division is only allowed by a nonzero constant, so ``15/7`` is a rational
literal.  ``Re(e)`` is ``(e + conj(e))/2`` and ``|e|^(2k)`` is ``(e conj(e))^k``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence

from .gaussian import GaussianRational
from .mixedpoly import MixedPolynomial


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    value: str
    pos: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z]*\d*)|(\S))")
_FUNCS = {"Re", "Im", "conj"}


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        if m.group(1):
            tokens.append(Token("num", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()|,":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(Token("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def scan_variables(text: str):
    """Return ``(max z index, uses w, uses t)`` found in ``text``."""
    zmax, has_w, has_t = 0, False, False
    for tok in tokenize(text):
        if tok.kind != "name":
            continue
        if tok.value == "w":
            has_w = True
        elif tok.value == "t":
            has_t = True
        elif re.fullmatch(r"z\d+", tok.value):
            zmax = max(zmax, int(tok.value[1:]))
    return zmax, has_w, has_t


def resolve_names(text: str, nvars: Optional[int] = None) -> tuple:
    """Variable list for ``text``: ``z1..zk`` then ``w`` last when it occurs."""
    zmax, has_w, _ = scan_variables(text)
    if nvars is None:
        nz = zmax
    else:
        nz = nvars - (1 if has_w else 0)
        if nz < zmax:
            raise ParseError(f"unknown variable z{zmax} (only {nvars} variables)", 0, text)
    names = [f"z{j + 1}" for j in range(nz)]
    if has_w:
        names.append("w")
    if not names:
        names = ["z1"]
    return tuple(names)


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.names = tuple(names)
        self.index = {name: j for j, name in enumerate(self.names)}
        self.n = len(self.names)
        self.modulus_depth = 0

    # helpers
    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.pos, self.text)

    def expect(self, value: str):
        tok = self.peek()
        if tok.kind != "op" or tok.value != value:
            self.error(f"expected {value!r}")
        return self.advance()

    def const(self, c) -> MixedPolynomial:
        return MixedPolynomial.constant(self.n, c, self.names)

    # grammar
    def parse(self) -> MixedPolynomial:
        result = self.expr()
        if self.peek().kind != "end":
            self.error(f"unexpected {self.peek().value!r}")
        return result

    def expr(self) -> MixedPolynomial:
        left = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.advance().value
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def starts_operand(self, tok: Token) -> bool:
        if tok.kind in ("num", "name"):
            return True
        if tok.kind == "op" and tok.value == "(":
            return True
        # inside |...| a bar after an operand closes the modulus
        return tok.kind == "op" and tok.value == "|" and self.modulus_depth == 0

    def term(self) -> MixedPolynomial:
        left = self.unary()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.value == "*":
                self.advance()
                left = left * self.unary()
            elif tok.kind == "op" and tok.value == "/":
                self.advance()
                den = self.unary()
                left = self.divide(left, den, tok)
            elif self.starts_operand(tok):
                left = left * self.power()
            else:
                return left

    def divide(self, num: MixedPolynomial, den: MixedPolynomial, tok: Token):
        zero = ((0,) * self.n, (0,) * self.n)
        if any(k != zero for k in den.terms):
            self.error("division is only allowed by a constant", tok)
        c = den.terms.get(zero)
        if c is None:
            self.error("division by zero", tok)
        return num.scale(c.inverse())

    def unary(self) -> MixedPolynomial:
        tok = self.peek()
        if tok.kind == "op" and tok.value in "+-":
            self.advance()
            inner = self.unary()
            return inner if tok.value == "+" else -inner
        return self.power()

    def exponent(self) -> int:
        tok = self.peek()
        if tok.kind == "op" and tok.value == "(":
            self.advance()
            num = self.advance()
            if num.kind != "num":
                self.error("exponent must be a nonnegative integer", num)
            self.expect(")")
            return int(num.value)
        if tok.kind != "num":
            self.error("exponent must be a nonnegative integer")
        return int(self.advance().value)

    def power(self) -> MixedPolynomial:
        tok = self.peek()
        if tok.kind == "op" and tok.value == "|":
            return self.modulus()
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            self.advance()
            base = base ** self.exponent()
        return base

    def modulus(self) -> MixedPolynomial:
        open_tok = self.advance()
        self.modulus_depth += 1
        inner = self.expr()
        self.modulus_depth -= 1
        tok = self.peek()
        if tok.kind != "op" or tok.value != "|":
            self.error("unclosed modulus bar", open_tok)
        self.advance()
        if not (self.peek().kind == "op" and self.peek().value == "^"):
            self.error("modulus needs an even exponent, as in |e|^2", open_tok)
        exp_tok = self.advance()
        k = self.exponent()
        if k % 2:
            self.error(f"odd exponent {k} on |.|^k", exp_tok)
        return (inner * inner.conj()) ** (k // 2)

    def atom(self) -> MixedPolynomial:
        tok = self.advance()
        if tok.kind == "num":
            return self.const(int(tok.value))
        if tok.kind == "op" and tok.value == "(":
            saved = self.modulus_depth
            self.modulus_depth = 0
            inner = self.expr()
            self.modulus_depth = saved
            self.expect(")")
            return inner
        if tok.kind == "name":
            name = tok.value
            if name in _FUNCS:
                self.expect("(")
                saved = self.modulus_depth
                self.modulus_depth = 0
                inner = self.expr()
                self.modulus_depth = saved
                self.expect(")")
                if name == "conj":
                    return inner.conj()
                if name == "Re":
                    return inner.real_part()
                return inner.imag_part()
            if name == "i":
                return self.const(GaussianRational(0, 1))
            if name in self.index:
                return MixedPolynomial.variable(self.n, self.index[name], self.names)
            self.error(f"unknown variable {name!r}", tok)
        if tok.kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {tok.value!r}", tok)


def parse(text: str, nvars: Optional[int] = None, names: Optional[Sequence[str]] = None) -> MixedPolynomial:
    """Parse ``text`` into its canonical expansion.

    Variables default to ``z1..zk`` (``k`` the largest index used, or
    ``nvars`` minus one slot for ``w``) followed by ``w`` when it occurs.

    >>> parse("Re(w) + |z1|^2").to_text()
    '1/2*w + 1/2*conj(w) + z1*conj(z1)'
    """
    if names is None:
        names = resolve_names(text, nvars)
    elif nvars is not None and len(names) != nvars:
        raise ValueError("names and nvars disagree")
    return _Parser(text, names).parse()


def split_top_level(text: str, start: int, end: int):
    """Split ``text[start:end]`` at commas outside parentheses and bars."""
    parts, depth, bars, last = [], 0, 0, start
    for k in range(start, end):
        ch = text[k]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|":
            bars ^= 1
        elif ch == "," and depth == 0 and not bars:
            parts.append((last, k))
            last = k + 1
    parts.append((last, end))
    return parts
