"""Exact superderivation computations for super Virasoro and super W(2,2)
algebras: graded brackets, Leibniz defects, window annihilators, and
certificate-producing globalization of 2-local superderivations."""

from .algebra import (
    AlgebraFamily,
    BasisVector,
    Element,
    FamilyMismatchError,
    IndexNotInSectorError,
    KindNotInFamilyError,
    Rational,
    bracket,
    bracket_terms,
    parity_decompose,
)
from .annihilator import (
    OUTER_TAG,
    DerivationSpace,
    GradedWindow,
    ZeroTargetError,
    annihilator_basis,
    derivation_coords,
    evaluation_matrix,
    span_contains,
)
from .derivations import (
    RawLinearMap,
    SuperDerivation,
    apply,
    derivation_parity_components,
    evaluate,
    leibniz_defect,
    outer_action,
)
from .expr import (
    ParseError,
    format_derivation,
    format_element,
    parse_derivation,
    parse_element,
)
from .lemmas import (
    LEMMA_NAMES,
    antisymmetry_sweep,
    jacobi_sweep,
    outer_derivation_defect_sweep,
    run_lemma,
)
from .linalg import LabeledMatrix, kernel_basis, matvec, rank
from .two_local import (
    ADVERSARIAL_KINDS,
    Certificate,
    CheckRecord,
    OracleAnswer,
    OracleDefectError,
    TestSet,
    TwoLocalOracle,
    UnsupportedFamilyError,
    anchor_pair,
    checked_query,
    globalize,
    homogeneity_check,
    make_adversarial_oracle,
    make_honest_oracle,
)

__version__ = "0.1.0"

__all__ = [
    "ADVERSARIAL_KINDS",
    "AlgebraFamily",
    "BasisVector",
    "Certificate",
    "CheckRecord",
    "DerivationSpace",
    "Element",
    "FamilyMismatchError",
    "GradedWindow",
    "IndexNotInSectorError",
    "KindNotInFamilyError",
    "LEMMA_NAMES",
    "LabeledMatrix",
    "OUTER_TAG",
    "OracleAnswer",
    "OracleDefectError",
    "ParseError",
    "Rational",
    "RawLinearMap",
    "SuperDerivation",
    "TestSet",
    "TwoLocalOracle",
    "UnsupportedFamilyError",
    "ZeroTargetError",
    "anchor_pair",
    "annihilator_basis",
    "antisymmetry_sweep",
    "apply",
    "bracket",
    "bracket_terms",
    "checked_query",
    "derivation_coords",
    "derivation_parity_components",
    "evaluate",
    "evaluation_matrix",
    "format_derivation",
    "format_element",
    "globalize",
    "homogeneity_check",
    "jacobi_sweep",
    "kernel_basis",
    "leibniz_defect",
    "make_adversarial_oracle",
    "make_honest_oracle",
    "matvec",
    "outer_action",
    "outer_derivation_defect_sweep",
    "parity_decompose",
    "parse_derivation",
    "parse_element",
    "rank",
    "run_lemma",
    "span_contains",
]
