"""Named verification suites and whole-family structure sweeps.

The sweeps exhaustively confirm super anti-symmetry and the graded Jacobi
identity over a bounded index range, and the Leibniz rule for the
distinguished outer derivation of sw22.  The named suites reproduce the
annihilator facts that drive globalization: annihilators of single odd
generators, of even-plus-odd probe elements, and of mixed even elements,
each with an exact predicted basis or dimension.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .algebra import (
    KIND_G,
    KIND_I,
    KIND_L,
    KIND_Q,
    AlgebraFamily,
    BasisVector,
    Element,
    bracket_terms,
)
from .annihilator import GradedWindow, annihilator_basis
from .derivations import SuperDerivation, leibniz_defect


def _clean(acc: dict) -> dict:
    return {k: v for k, v in acc.items() if v}


def _ad_terms(u: BasisVector, terms: dict) -> dict:
    acc: dict = {}
    for b, c in terms.items():
        for w, cw in bracket_terms(u, b):
            acc[w] = acc.get(w, Fraction(0)) + c * cw
    return acc


def antisymmetry_sweep(family: AlgebraFamily, bound) -> Tuple[int, int]:
    """Count violations of [u,v] = -(-1)^{|u||v|} [v,u] over basis pairs."""
    vecs = GradedWindow(Fraction(bound)).basis_vectors(family)
    violations = 0
    pairs = 0
    for u in vecs:
        for v in vecs:
            pairs += 1
            sign = 1 if (u.parity and v.parity) else -1
            lhs = _clean(dict(bracket_terms(u, v)))
            rhs = _clean({w: sign * c for w, c in bracket_terms(v, u)})
            if lhs != rhs:
                violations += 1
    return violations, pairs


def jacobi_sweep(family: AlgebraFamily, bound) -> Tuple[int, int]:
    """Count violations of the graded Jacobi identity over basis triples.

    Uses the ad-Leibniz form [u,[v,w]] = [[u,v],w] + (-1)^{|u||v|} [v,[u,w]].
    """
    vecs = GradedWindow(Fraction(bound)).basis_vectors(family)
    violations = 0
    triples = 0
    for u in vecs:
        for v in vecs:
            sign = -1 if (u.parity and v.parity) else 1
            uv = bracket_terms(u, v)
            for w in vecs:
                triples += 1
                lhs = _ad_terms(u, dict(bracket_terms(v, w)))
                rhs: dict = {}
                for z, c in uv:
                    for z2, c2 in bracket_terms(z, w):
                        rhs[z2] = rhs.get(z2, Fraction(0)) + c * c2
                for z2, c2 in _ad_terms(v, dict(bracket_terms(u, w))).items():
                    rhs[z2] = rhs.get(z2, Fraction(0)) + sign * c2
                if _clean(lhs) != _clean(rhs):
                    violations += 1
    return violations, triples


def outer_derivation_defect_sweep(bound=3) -> Tuple[int, int]:
    """Leibniz defects of the sw22 outer derivation over basis pairs."""
    family = AlgebraFamily.SW22
    outer = SuperDerivation(family, Element.zero(family), Fraction(1))
    vecs = GradedWindow(Fraction(bound)).basis_vectors(family)
    violations = 0
    pairs = 0
    for u in vecs:
        xu = Element.basis(u)
        for v in vecs:
            pairs += 1
            if not leibniz_defect(outer, xu, Element.basis(v)).is_zero:
                violations += 1
    return violations, pairs


# -- named suites ---------------------------------------------------------------


def _index_json(i: Fraction):
    return int(i) if i.denominator == 1 else str(i)


def _odd_generator_annihilators() -> dict:
    """Annihilator of one odd generator G_i is spanned by ad(L_{2i}) alone,
    in both super Virasoro sectors."""
    cases = []
    plans = (
        (AlgebraFamily.SVIR0, [Fraction(i) for i in range(-3, 4)]),
        (AlgebraFamily.SVIR12, [Fraction(m, 2) for m in range(-5, 6, 2)]),
    )
    for family, indices in plans:
        for i in indices:
            target = Element.basis(BasisVector(family, KIND_G, i))
            window = GradedWindow(2 * abs(i) + 2)
            space = annihilator_basis(target, window)
            expected = SuperDerivation.ad(
                Element.basis(BasisVector(family, KIND_L, 2 * i)))
            ok = space.dimension == 1 and space.basis == (expected,)
            cases.append({"i": _index_json(i), "dim": space.dimension,
                          "pass": ok, "family": family.value})
    return {"name": "lemma3.3", "cases": cases,
            "verdict": "pass" if all(c["pass"] for c in cases) else "fail"}


def _sw22_odd_generator_annihilators() -> dict:
    """In sw22 the annihilator of G_r gains ad(I_{2r}) and the outer direction."""
    family = AlgebraFamily.SW22
    cases = []
    for r in range(-2, 3):
        r = Fraction(r)
        target = Element.basis(BasisVector(family, KIND_G, r))
        window = GradedWindow(2 * abs(r) + 2)
        space = annihilator_basis(target, window)
        expected = (
            SuperDerivation.ad(Element.basis(BasisVector(family, KIND_L, 2 * r))),
            SuperDerivation.ad(Element.basis(BasisVector(family, KIND_I, 2 * r))),
            SuperDerivation(family, Element.zero(family), Fraction(1)),
        )
        ok = space.dimension == 3 and space.basis == expected
        cases.append({"r": _index_json(r), "dim": space.dimension, "pass": ok})
    return {"name": "lemma4.4i", "cases": cases,
            "verdict": "pass" if all(c["pass"] for c in cases) else "fail"}


def _even_probe_annihilators() -> dict:
    """The annihilator of I_0 + Q_0 in a window of bound W has dimension
    4W + 4, contains ad(L_0) and ad(L_1 - 1/2 G_1), and meets the outer
    direction trivially."""
    family = AlgebraFamily.SW22
    target = (Element.basis(BasisVector(family, KIND_I, Fraction(0)))
              + Element.basis(BasisVector(family, KIND_Q, Fraction(0))))
    ad_l0 = SuperDerivation.ad(Element.basis(BasisVector(family, KIND_L, Fraction(0))))
    coupled = SuperDerivation.ad(Element(family, (
        (BasisVector(family, KIND_L, Fraction(1)), Fraction(1)),
        (BasisVector(family, KIND_G, Fraction(1)), Fraction(-1, 2)),
    )))
    cases = []
    for w in (2, 3, 4):
        space = annihilator_basis(target, GradedWindow(Fraction(w)))
        ok = (space.dimension == 4 * w + 4
              and ad_l0 in space.basis
              and coupled in space.basis
              and all(b.outer_lambda == 0 for b in space.basis))
        cases.append({"bound": w, "dim": space.dimension,
                      "expected_dim": 4 * w + 4, "pass": ok})
    return {"name": "lemma4.4ii", "cases": cases,
            "verdict": "pass" if all(c["pass"] for c in cases) else "fail"}


def _mixed_element_annihilators() -> dict:
    """For odd p, the annihilator of L_p + I_{2p} + Q_{2p} is spanned by
    ad of the element itself and ad(I_p)."""
    family = AlgebraFamily.SW22
    cases = []
    for p in (-3, -1, 1, 3):
        p = Fraction(p)
        target = Element(family, (
            (BasisVector(family, KIND_L, p), Fraction(1)),
            (BasisVector(family, KIND_I, 2 * p), Fraction(1)),
            (BasisVector(family, KIND_Q, 2 * p), Fraction(1)),
        ))
        space = annihilator_basis(target, GradedWindow(3 * abs(p)))
        expected = (
            SuperDerivation.ad(target),
            SuperDerivation.ad(Element.basis(BasisVector(family, KIND_I, p))),
        )
        ok = space.dimension == 2 and space.basis == expected
        cases.append({"p": _index_json(p), "dim": space.dimension, "pass": ok})
    return {"name": "lemma4.7", "cases": cases,
            "verdict": "pass" if all(c["pass"] for c in cases) else "fail"}


def _outer_derivation_is_derivation() -> dict:
    """The outer direction satisfies the graded Leibniz rule exhaustively."""
    violations, pairs = outer_derivation_defect_sweep(3)
    ok = violations == 0
    case = {"bound": 3, "pairs": pairs, "violations": violations, "pass": ok}
    return {"name": "lemma4.1-derivation", "cases": [case],
            "verdict": "pass" if ok else "fail"}


_LEMMA_RUNNERS = {
    "lemma3.3": _odd_generator_annihilators,
    "lemma4.4i": _sw22_odd_generator_annihilators,
    "lemma4.4ii": _even_probe_annihilators,
    "lemma4.7": _mixed_element_annihilators,
    "lemma4.1-derivation": _outer_derivation_is_derivation,
}

LEMMA_NAMES = tuple(_LEMMA_RUNNERS)


def run_lemma(name: str) -> dict:
    """Run one named suite and return its JSON-ready report."""
    try:
        runner = _LEMMA_RUNNERS[name]
    except KeyError:
        raise ValueError("unknown suite %r (expected one of %s)"
                         % (name, ", ".join(LEMMA_NAMES))) from None
    return runner()
