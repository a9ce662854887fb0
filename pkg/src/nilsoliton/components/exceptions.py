__all__ = [
    "BracketFormatError",
    "SingularOperator",
    "NotTwoStepSplit",
    "WrongKind",
    "BadAlmostComplex",
    "InvalidBracket",
    "NotIntegrable",
    "NotMinimal",
    "AbelianDerivation",
    "NonPositiveTrace",
    "DomainError",
    "ZeroBracket",
    "MaxIterExceeded",
]


class BracketFormatError(ValueError):
    """A bracket file (or structure block) could not be turned into a Bracket.

    Raised for duplicate (i, j, k) terms, i == j, indices outside 1..dim,
    missing keys or matrices of the wrong shape.
    """


class SingularOperator(ArithmeticError):
    """The operator handed to the GL(n) action is not invertible at the
    configured rank tolerance.
    """


class NotTwoStepSplit(ValueError):
    """The bracket does not respect the requested split n = v + z: either
    mu(n, n) leaks out of z or z is not central.
    """


class WrongKind(ValueError):
    """A predicate was asked of a structure of the wrong kind, e.g. closedness
    of something that is not symplectic.
    """


class BadAlmostComplex(ValueError):
    """An operator offered as an almost-complex structure does not square to -I."""


class InvalidBracket(ValueError):
    """The structure constants fail the Jacobi identity (or nilpotency, when
    it is required) beyond tolerance.
    """


class NotIntegrable(ValueError):
    """The geometric structure is not integrable for the starting bracket, so
    its group orbit would leave the variety the flow is supposed to explore.
    """


class NotMinimal(ValueError):
    """An operation that needs a minimal metric received a certificate whose
    residual is above tolerance (or whose structure is not `none`).
    """


class AbelianDerivation(ValueError):
    """The derivation part of the certificate vanishes: the nilpotent algebra
    is abelian and its rank-one extension is flat.
    """


class NonPositiveTrace(ValueError):
    """The derivation part of the certificate has tr(D) <= 0, so it cannot be
    normalized into the extension derivation.
    """


class DomainError(ValueError):
    """A catalog constructor was called outside its parameter domain."""


class ZeroBracket(ValueError):
    """The zero bracket has no scalar-curvature normalization."""


class MaxIterExceeded(RuntimeWarning):
    """A flow run used its whole iteration budget without converging. The
    trace is still returned, flagged as not converged.
    """
