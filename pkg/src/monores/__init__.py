"""monores: exact resolution engine for plane map germs.

Computes ramification invariants of dominant polynomial maps between affine
planes over Q or a small prime field, and runs blow-up pipelines that bring
such maps into monomial form (any characteristic, wildness permitting) and
toroidal form (characteristic zero).
"""

from .exceptions import (AuditFailure, BudgetExceeded, CharacteristicPositive,
                         DegreeLimitExceeded, EliminationDegenerate,
                         EngineError, FieldMismatch, InseparableMap,
                         MonotonicityViolation, NegativeComplexity,
                         NonRationalSingularity, NonRationalTangentCone,
                         NoRationalPointOnComponent, NotAMorphismHere,
                         NotDivisible, NotMonomialInput, NotPrepared,
                         ParseError, RationalityError, ValidationError,
                         WildRamification)
from .charts import Chart, ChartTree, blowup_point
from .divisors import Divisor, DivisorLedger
from .fields import PrimeField, QQ, Rationals, field_from_spec
from .frac import Frac
from .grammar import parse_poly
from .invariants import (classify_monomial, complexity, global_complexity,
                         maximize_admissible, point_complexity, special_points,
                         tame_test, vertical_order)
from .model import MorphismModel, image_curve
from .pipeline import (AlgorithmTrace, Budget, VerificationReport, f_alpha,
                       monomialize, prep, verify_monomial)
from .poly import BivarPoly, exact_div, gcd_exact, order_along, resultant
from .resolve import embedded_resolution
from .snc import is_snc_at, singular_points
from .toroidal import (ToroidalClass, ToroidalState, bad_locus,
                       classify_toroidal, invariant_I, invariant_r,
                       toroidal_state, toroidalize, verify_toroidal)

__version__ = "0.1.0"

__all__ = [
    "AlgorithmTrace", "AuditFailure", "Budget", "BudgetExceeded",
    "BivarPoly", "Chart",
    "CharacteristicPositive", "ChartTree", "DegreeLimitExceeded", "Divisor",
    "DivisorLedger", "EliminationDegenerate", "EngineError", "FieldMismatch",
    "Frac", "InseparableMap", "MonotonicityViolation", "MorphismModel",
    "NegativeComplexity",
    "NonRationalSingularity", "NonRationalTangentCone",
    "NoRationalPointOnComponent", "NotAMorphismHere", "NotDivisible",
    "NotMonomialInput", "NotPrepared", "ParseError", "PrimeField", "QQ",
    "RationalityError",
    "Rationals", "ToroidalClass", "ToroidalState", "ValidationError",
    "VerificationReport", "WildRamification",
    "bad_locus", "blowup_point", "classify_monomial", "classify_toroidal",
    "complexity", "embedded_resolution",
    "exact_div", "f_alpha", "field_from_spec", "gcd_exact",
    "global_complexity", "image_curve", "invariant_I", "invariant_r",
    "is_snc_at", "maximize_admissible",
    "monomialize", "order_along", "parse_poly", "point_complexity", "prep",
    "resultant", "singular_points", "special_points", "tame_test",
    "toroidal_state", "toroidalize",
    "verify_monomial", "verify_toroidal", "vertical_order",
    "__version__",
]
