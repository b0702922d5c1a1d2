"""Error taxonomy for the whole engine.

Everything raised on purpose derives from EngineError so the CLI can map
failures to exit codes in one place.  The rationality family (exit code 3)
shares a base class; WildRamification carries its certificate.
"""


class EngineError(Exception):
    pass


class FieldMismatch(EngineError):
    """Operands live over different coefficient fields."""


class ParseError(EngineError):
    pass


class ValidationError(EngineError):
    """A job description or serialized tree failed a structural check."""


class NotDivisible(EngineError):
    """exact_div was asked for a quotient that does not exist."""


class DegreeLimitExceeded(EngineError):
    """Factorization or elimination left the supported degree envelope."""


class EliminationDegenerate(EngineError):
    """A resultant vanished identically; the caller should reorder variables."""


class RationalityError(EngineError):
    """Base for 'the data exists but not over this ground field' failures."""


class NonRationalSingularity(RationalityError):
    pass


class NonRationalTangentCone(RationalityError):
    pass


class NoRationalPointOnComponent(RationalityError):
    pass


class InseparableMap(EngineError):
    """The Jacobian determinant vanishes identically."""


class NotAMorphismHere(EngineError):
    """Local descent hit a point where the lifted map is undefined."""


class NotPrepared(EngineError):
    """An invariant was requested at a point the preparation has not reached."""


class NotMonomialInput(EngineError):
    """A point fits none of the boundary-relative monomial local forms."""


class NegativeComplexity(EngineError):
    """Internal sanity check: the complexity count went below zero."""


class WildRamification(EngineError):
    """Wildly ramified curve found in positive characteristic.

    The monomialization loop cannot cross such a curve; the certificate
    records where and why.
    """

    def __init__(self, message, certificate: dict):
        super().__init__(message)
        self.certificate = certificate


class CharacteristicPositive(EngineError):
    """A stage that needs characteristic zero was invoked over F_p."""


class BudgetExceeded(EngineError):
    """Blow-up or iteration budget ran out before the goal was reached."""

    def __init__(self, message, spent: dict | None = None):
        super().__init__(message)
        self.spent = spent or {}


class MonotonicityViolation(EngineError):
    """An invariant that must not increase did.  Always a bug, never input."""


class AuditFailure(EngineError):
    """Independent verification disagreed with the pipeline's claim."""
