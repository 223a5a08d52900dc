"""Exact graded brackets for the super Virasoro and super W(2,2) algebras.

Four algebra families are supported, each with exact rational structure
constants:

* ``vir``    - the Virasoro algebra, spanned by L_m (m integral) and a
  central charge C.
* ``svir0``  - the Ramond-sector super Virasoro algebra, adding odd
  generators G_m with integral index.
* ``svir12`` - the Neveu-Schwarz-sector super Virasoro algebra, whose odd
  generators G_r carry half-odd-integral index.
* ``sw22``   - the super W(2,2) algebra, with even generators L_m, I_m, odd
  generators G_m, Q_m (all integral) and two central charges C1, C2.

Every coefficient is a ``fractions.Fraction``.  There is no floating point
anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Tuple, Union

Rational = Fraction
Scalar = Union[int, Fraction]

KIND_L = "L"
KIND_G = "G"
KIND_I = "I"
KIND_Q = "Q"
KIND_C = "C"
KIND_C1 = "C1"
KIND_C2 = "C2"

# Canonical ordering used for printing and for matrix column layout.
KIND_ORDER = (KIND_L, KIND_G, KIND_I, KIND_Q, KIND_C, KIND_C1, KIND_C2)
_KIND_RANK = {kind: rank for rank, kind in enumerate(KIND_ORDER)}

CENTRAL_KINDS = frozenset((KIND_C, KIND_C1, KIND_C2))
ODD_KINDS = frozenset((KIND_G, KIND_Q))


class FamilyMismatchError(ValueError):
    """Two operands belong to different algebra families."""


class KindNotInFamilyError(ValueError):
    """A generator kind that does not exist in the given family."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class IndexNotInSectorError(ValueError):
    """An index outside the legal sector of a (family, kind) pair."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message)
        self.position = position


class AlgebraFamily(Enum):
    VIR = "vir"
    SVIR0 = "svir0"
    SVIR12 = "svir12"
    SW22 = "sw22"

    @property
    def kinds(self) -> Tuple[str, ...]:
        return _FAMILY_KINDS[self]

    @property
    def noncentral_kinds(self) -> Tuple[str, ...]:
        return tuple(k for k in _FAMILY_KINDS[self] if k not in CENTRAL_KINDS)

    @property
    def central_kinds(self) -> Tuple[str, ...]:
        return tuple(k for k in _FAMILY_KINDS[self] if k in CENTRAL_KINDS)

    @classmethod
    def from_tag(cls, tag: str) -> "AlgebraFamily":
        for fam in cls:
            if fam.value == tag:
                return fam
        raise ValueError("unknown algebra family %r (expected one of %s)"
                         % (tag, ", ".join(f.value for f in cls)))


_FAMILY_KINDS = {
    AlgebraFamily.VIR: (KIND_L, KIND_C),
    AlgebraFamily.SVIR0: (KIND_L, KIND_G, KIND_C),
    AlgebraFamily.SVIR12: (KIND_L, KIND_G, KIND_C),
    AlgebraFamily.SW22: (KIND_L, KIND_G, KIND_I, KIND_Q, KIND_C1, KIND_C2),
}


def _index_in_sector(family: AlgebraFamily, kind: str, index: Fraction) -> bool:
    if kind in CENTRAL_KINDS:
        return index == 0
    if kind == KIND_G and family is AlgebraFamily.SVIR12:
        return index.denominator == 2
    return index.denominator == 1


@dataclass(frozen=True)
class BasisVector:
    """One generator of an algebra family, identified by kind and index.

    Central kinds carry no meaningful index; it is normalised to 0.
    """

    family: AlgebraFamily
    kind: str
    index: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in self.family.kinds:
            raise KindNotInFamilyError(
                "kind %r does not exist in family %r" % (self.kind, self.family.value))
        idx = Fraction(self.index)
        if self.kind in CENTRAL_KINDS:
            idx = Fraction(0)
        if not _index_in_sector(self.family, self.kind, idx):
            raise IndexNotInSectorError(
                "index %s is outside the legal sector for %s in family %s"
                % (idx, self.kind, self.family.value))
        object.__setattr__(self, "index", idx)

    @property
    def parity(self) -> int:
        """0 for even generators, 1 for odd ones."""
        return 1 if self.kind in ODD_KINDS else 0

    @property
    def is_central(self) -> bool:
        return self.kind in CENTRAL_KINDS

    def token(self) -> str:
        if self.kind in CENTRAL_KINDS:
            return self.kind
        return "%s[%s]" % (self.kind, self.index)

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.index)

    def __repr__(self):
        return "BasisVector(%s, %s)" % (self.family.value, self.token())


def parity(b: BasisVector) -> int:
    """Parity of a basis vector: 0 (even) or 1 (odd)."""
    return b.parity


class Element:
    """A finitely supported rational linear combination of basis vectors.

    Canonical form: like terms merged, zero coefficients dropped, terms kept
    sorted by (kind, index).  Instances are immutable by convention; all
    arithmetic returns fresh objects.
    """

    __slots__ = ("family", "terms", "_key")

    def __init__(self, family: AlgebraFamily,
                 terms: Union[Mapping[BasisVector, Scalar],
                              Iterable[Tuple[BasisVector, Scalar]]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for bv, c in items:
            if bv.family is not family:
                raise FamilyMismatchError(
                    "basis vector %r does not belong to family %r"
                    % (bv.token(), family.value))
            c = Fraction(c)
            if c == 0:
                continue
            acc[bv] = acc.get(bv, Fraction(0)) + c
        ordered = sorted(((b, c) for b, c in acc.items() if c != 0),
                         key=lambda t: t[0].sort_key())
        self.family = family
        self.terms = dict(ordered)
        self._key = tuple(ordered)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def zero(cls, family: AlgebraFamily) -> "Element":
        return cls(family)

    @classmethod
    def basis(cls, bv: BasisVector, coeff: Scalar = 1) -> "Element":
        return cls(bv.family, ((bv, coeff),))

    # -- queries -------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, bv: BasisVector) -> Fraction:
        return self.terms.get(bv, Fraction(0))

    def support(self) -> Tuple[BasisVector, ...]:
        return tuple(self.terms)

    def key(self):
        """Hashable canonical key, suitable for caching."""
        return self._key

    # -- arithmetic ----------------------------------------------------------

    def _require_same_family(self, other: "Element"):
        if self.family is not other.family:
            raise FamilyMismatchError(
                "cannot combine elements of families %r and %r"
                % (self.family.value, other.family.value))

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._require_same_family(other)
        acc = dict(self.terms)
        for bv, c in other.terms.items():
            acc[bv] = acc.get(bv, Fraction(0)) + c
        return Element(self.family, acc)

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        self._require_same_family(other)
        acc = dict(self.terms)
        for bv, c in other.terms.items():
            acc[bv] = acc.get(bv, Fraction(0)) - c
        return Element(self.family, acc)

    def __neg__(self) -> "Element":
        return Element(self.family, ((b, -c) for b, c in self.terms.items()))

    def __mul__(self, scalar) -> "Element":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return Element(self.family, ((b, c * scalar) for b, c in self.terms.items()))

    __rmul__ = __mul__

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.family is other.family and self._key == other._key

    def __hash__(self):
        return hash((self.family, self._key))

    def __repr__(self):
        if self.is_zero:
            return "Element(%s, 0)" % self.family.value
        body = " + ".join("%s*%s" % (c, b.token()) for b, c in self.terms.items())
        return "Element(%s, %s)" % (self.family.value, body)


def parity_decompose(x: Element) -> Tuple[Element, Element]:
    """Split an element into its even and odd parts (in that order)."""
    even = {b: c for b, c in x.terms.items() if b.parity == 0}
    odd = {b: c for b, c in x.terms.items() if b.parity == 1}
    return Element(x.family, even), Element(x.family, odd)


# ---------------------------------------------------------------------------
# Structure constants.
#
# The nonzero brackets, on the canonically ordered kind pairs, are
#
#   [L_m, L_n] = (m - n) L_{m+n} + delta_{m+n,0} (m^3 - m)/12 * C   (C1 in sw22)
#   [L_m, G_r] = (m/2 - r) G_{m+r}
#   [G_r, G_s] = 2 L_{r+s} + delta_{r+s,0} (r^2 - 1/4)/3 * C        (C1 in sw22)
#   [L_m, I_n] = (m - n) I_{m+n} + delta_{m+n,0} (m^3 - m)/12 * C2  (sw22)
#   [L_m, Q_r] = (m/2 - r) Q_{m+r}                                  (sw22)
#   [G_r, Q_s] = 2 I_{r+s} + delta_{r+s,0} (r^2 - 1/4)/3 * C2       (sw22)
#   [I_m, G_r] = (m/2 - r) Q_{m+r}                                  (sw22)
#
# Every other pair of non-central generators brackets to zero, central
# generators bracket to zero against everything, and reversed orderings
# follow from super anti-symmetry  [u, v] = -(-1)^{|u||v|} [v, u].
# ---------------------------------------------------------------------------

_QUARTER = Fraction(1, 4)
_THIRD = Fraction(1, 3)
_TWELFTH = Fraction(1, 12)


def _primary_central(family: AlgebraFamily) -> str:
    return KIND_C1 if family is AlgebraFamily.SW22 else KIND_C


def _table_bracket(family: AlgebraFamily, ku: str, m: Fraction,
                   kv: str, n: Fraction):
    """Bracket of a canonically ordered kind pair, or None if unordered."""
    out = []
    if ku == KIND_L and kv == KIND_L:
        if m != n:
            out.append((BasisVector(family, KIND_L, m + n), m - n))
        if m + n == 0 and (m ** 3 - m) != 0:
            out.append((BasisVector(family, _primary_central(family)),
                        (m ** 3 - m) * _TWELFTH))
    elif ku == KIND_L and kv == KIND_G:
        c = m / 2 - n
        if c != 0:
            out.append((BasisVector(family, KIND_G, m + n), c))
    elif ku == KIND_L and kv == KIND_I:
        if m != n:
            out.append((BasisVector(family, KIND_I, m + n), m - n))
        if m + n == 0 and (m ** 3 - m) != 0:
            out.append((BasisVector(family, KIND_C2), (m ** 3 - m) * _TWELFTH))
    elif ku == KIND_L and kv == KIND_Q:
        c = m / 2 - n
        if c != 0:
            out.append((BasisVector(family, KIND_Q, m + n), c))
    elif ku == KIND_G and kv == KIND_G:
        out.append((BasisVector(family, KIND_L, m + n), Fraction(2)))
        if m + n == 0 and m ** 2 != _QUARTER:
            out.append((BasisVector(family, _primary_central(family)),
                        (m ** 2 - _QUARTER) * _THIRD))
    elif ku == KIND_G and kv == KIND_Q:
        out.append((BasisVector(family, KIND_I, m + n), Fraction(2)))
        if m + n == 0 and m ** 2 != _QUARTER:
            out.append((BasisVector(family, KIND_C2), (m ** 2 - _QUARTER) * _THIRD))
    elif ku == KIND_I and kv == KIND_G:
        c = m / 2 - n
        if c != 0:
            out.append((BasisVector(family, KIND_Q, m + n), c))
    else:
        return None
    return tuple(out)


_LISTED_PAIRS = frozenset((
    (KIND_L, KIND_L), (KIND_L, KIND_G), (KIND_L, KIND_I), (KIND_L, KIND_Q),
    (KIND_G, KIND_G), (KIND_G, KIND_Q), (KIND_I, KIND_G),
))


@lru_cache(maxsize=None)
def bracket_terms(u: BasisVector, v: BasisVector) -> Tuple[Tuple[BasisVector, Fraction], ...]:
    """Bracket of two basis vectors of one family, as (vector, coeff) pairs."""
    if u.is_central or v.is_central:
        return ()
    if (u.kind, v.kind) in _LISTED_PAIRS:
        return _table_bracket(u.family, u.kind, u.index, v.kind, v.index)
    if (v.kind, u.kind) in _LISTED_PAIRS:
        # Super anti-symmetry: [u, v] = -(-1)^{|u||v|} [v, u].
        swapped = _table_bracket(u.family, v.kind, v.index, u.kind, u.index)
        sign = 1 if (u.parity and v.parity) else -1
        return tuple((w, sign * c) for w, c in swapped)
    return ()


def bracket(x: Element, y: Element) -> Element:
    """Graded Lie bracket, extended bilinearly from the basis brackets."""
    if x.family is not y.family:
        raise FamilyMismatchError(
            "cannot bracket elements of families %r and %r"
            % (x.family.value, y.family.value))
    acc: dict = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            cuv = cu * cv
            for w, c in bracket_terms(u, v):
                acc[w] = acc.get(w, Fraction(0)) + cuv * c
    return Element(x.family, acc)
