"""Surface syntax for elements and derivations.

Element grammar (whitespace may separate tokens):

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := [rational '*'] gen
    gen      := ('L'|'G'|'I'|'Q') '[' index ']' | 'C' | 'C1' | 'C2'
    rational := ['-'] digits ['/' digits]
    index    := ['-'] digits ['/2']

The bare string "0" denotes the zero element.  Printing produces the
canonical form: terms sorted by kind (L, G, I, Q, C, C1, C2) and then by
ascending index, unit coefficients suppressed, so parse(format(e)) == e and
format(parse(s)) == s for canonical s.

Derivations print as "ad(expr)", optionally followed by "+ q*D" for the
outer direction, or as a bare outer part "D" / "q*D"; "0" is the zero
derivation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Tuple

from .algebra import (
    CENTRAL_KINDS,
    KIND_C,
    KIND_C1,
    KIND_C2,
    AlgebraFamily,
    BasisVector,
    Element,
    IndexNotInSectorError,
    KindNotInFamilyError,
)
from .derivations import SuperDerivation


class ParseError(ValueError):
    """A surface-syntax error, with the offending position."""

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position


class _Scanner:
    def __init__(self, src: str):
        self.src = src
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.src) and self.src[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.src)

    def peek(self) -> str:
        self.skip_ws()
        return self.src[self.pos] if self.pos < len(self.src) else ""

    def take(self) -> str:
        ch = self.peek()
        if ch:
            self.pos += 1
        return ch

    def expect(self, ch: str):
        got = self.peek()
        if got != ch:
            raise ParseError("expected %r, found %r" % (ch, got or "end of input"),
                             self.pos)
        self.pos += 1

    def digits(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.src) and self.src[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected digits", start)
        return self.src[start:self.pos]


def _parse_signed_digits(s: _Scanner) -> Fraction:
    sign = 1
    if s.peek() == "-":
        s.take()
        sign = -1
    return Fraction(sign * int(s.digits()))


def _parse_index(s: _Scanner) -> Fraction:
    num = _parse_signed_digits(s)
    if s.peek() == "/":
        pos = s.pos
        s.take()
        den = s.digits()
        if den != "2":
            raise ParseError("index denominators other than 2 are not allowed", pos)
        return num / 2
    return num


def _parse_gen(s: _Scanner, family: AlgebraFamily) -> BasisVector:
    start = s.pos
    ch = s.peek()
    if ch == "C":
        s.take()
        kind = KIND_C
        nxt = s.src[s.pos] if s.pos < len(s.src) else ""
        if nxt in ("1", "2"):
            s.pos += 1
            kind = KIND_C1 if nxt == "1" else KIND_C2
        if kind not in family.kinds:
            raise KindNotInFamilyError(
                "kind %r does not exist in family %r (at position %d)"
                % (kind, family.value, start), start)
        return BasisVector(family, kind)
    if ch in ("L", "G", "I", "Q"):
        s.take()
        if ch not in family.kinds:
            raise KindNotInFamilyError(
                "kind %r does not exist in family %r (at position %d)"
                % (ch, family.value, start), start)
        s.expect("[")
        idx_pos = s.pos
        index = _parse_index(s)
        s.expect("]")
        try:
            return BasisVector(family, ch, index)
        except IndexNotInSectorError:
            raise IndexNotInSectorError(
                "index %s is outside the legal sector for %s in family %s (at position %d)"
                % (index, ch, family.value, idx_pos), idx_pos) from None
    raise ParseError("expected a generator", s.pos)


def _parse_term(s: _Scanner, family: AlgebraFamily) -> Tuple[BasisVector, Fraction]:
    coeff = Fraction(1)
    ch = s.peek()
    if ch.isdigit() or ch == "-":
        num = _parse_signed_digits(s)
        if s.peek() == "/":
            s.take()
            den_pos = s.pos
            den = Fraction(int(s.digits()))
            if den == 0:
                raise ParseError("zero denominator", den_pos)
            num = num / den
        s.expect("*")
        coeff = num
    bv = _parse_gen(s, family)
    return bv, coeff


def parse_element(src: str, family: AlgebraFamily) -> Element:
    """Parse the element grammar into canonical form."""
    if src.strip() == "0":
        return Element.zero(family)
    s = _Scanner(src)
    if s.at_end():
        raise ParseError("empty input", 0)
    terms = []
    sign = 1
    if s.peek() == "-":
        s.take()
        sign = -1
    elif s.peek() == "+":
        s.take()
    bv, c = _parse_term(s, family)
    terms.append((bv, sign * c))
    while not s.at_end():
        op = s.peek()
        if op not in ("+", "-"):
            raise ParseError("expected '+' or '-', found %r" % op, s.pos)
        s.take()
        bv, c = _parse_term(s, family)
        terms.append((bv, c if op == "+" else -c))
    return Element(family, terms)


def format_element(e: Element) -> str:
    """Canonical rendering of an element; inverse of parse_element."""
    if e.is_zero:
        return "0"
    parts = []
    for i, (bv, c) in enumerate(e.terms.items()):
        mag = abs(c)
        core = bv.token() if mag == 1 else "%s*%s" % (mag, bv.token())
        if i == 0:
            parts.append(("-" + core) if c < 0 else core)
        else:
            parts.append(("- " if c < 0 else "+ ") + core)
    return " ".join(parts)


def format_derivation(d: SuperDerivation) -> str:
    """Render a superderivation as "ad(...)", "ad(...) +- q*D", "q*D" or "0"."""
    if d.is_zero:
        return "0"
    parts = []
    if not d.inner.is_zero:
        parts.append("ad(%s)" % format_element(d.inner))
    lam = d.outer_lambda
    if lam:
        mag = abs(lam)
        core = "D" if mag == 1 else "%s*D" % mag
        if not parts:
            parts.append(("-" + core) if lam < 0 else core)
        else:
            parts.append(("- " if lam < 0 else "+ ") + core)
    return " ".join(parts)


def _parse_outer_part(body: str, sign: int, family: AlgebraFamily,
                      position: int) -> Fraction:
    body = body.strip()
    if family is not AlgebraFamily.SW22:
        raise KindNotInFamilyError(
            "the outer derivation direction exists only in family sw22", position)
    if body == "D":
        return Fraction(sign)
    if body.endswith("*D"):
        try:
            return sign * Fraction(body[:-2].strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError("malformed outer coefficient %r" % body[:-2],
                             position) from None
    raise ParseError("malformed outer derivation term %r" % body, position)


def parse_derivation(src: str, family: AlgebraFamily) -> SuperDerivation:
    """Parse "ad(expr)", "ad(expr) +- q*D", "q*D", "D" or "0"."""
    text = src.strip()
    if text == "0":
        return SuperDerivation.zero(family)
    inner = Element.zero(family)
    rest = text
    if text.startswith("ad("):
        close = text.find(")")
        if close < 0:
            raise ParseError("unclosed 'ad('", len(text))
        inner = parse_element(text[3:close], family)
        rest = text[close + 1:].strip()
        if rest:
            if rest[0] not in ("+", "-"):
                raise ParseError("expected '+' or '-' before the outer part",
                                 close + 1)
            sign = 1 if rest[0] == "+" else -1
            lam = _parse_outer_part(rest[1:], sign, family, close + 1)
            return SuperDerivation(family, inner, lam)
        return SuperDerivation(family, inner)
    sign = 1
    if rest.startswith("-"):
        sign = -1
        rest = rest[1:].strip()
    lam = _parse_outer_part(rest, sign, family, 0)
    return SuperDerivation(family, Element.zero(family), lam)
