"""Exception types shared across the package.

Everything raised on a contract violation derives from GpinError so the CLI
can turn any of them into a structured report instead of a traceback.
"""


class GpinError(Exception):
    pass


class DegenerateForm(GpinError):
    """The symmetric matrix has zero determinant."""


class IsotropicVector(GpinError):
    """q(v) = 0 where an anisotropic vector is required."""


class SpaceMismatch(GpinError):
    """Operands live in different quadratic spaces."""


class FactorizationUnsupported(GpinError):
    """Rational factorization would need degree >= 4 splitting; supply factors manually."""


class NonUnitGenerator(GpinError):
    """Extension modulus has zero constant term, so x is not invertible."""


class NotMemberError(GpinError):
    """Element fails the group membership test; .reason is one of
    'NonInvertible', 'MixedParity', 'DoesNotStabilizeV'."""

    def __init__(self, reason, detail=""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class ZeroScalar(GpinError):
    """A nonzero scalar multiplier is required."""


class WrongParityDimension(GpinError):
    """Operation defined only for even dimension > 2."""


class CapExceeded(GpinError):
    """Enumeration would exceed the configured cap."""


class NotSemisimple(GpinError):
    """Minimal polynomial is not squarefree."""


class NotSpecial(GpinError):
    """det(h) = -1 where an element of the special orthogonal group is required."""


class NotEven(GpinError):
    """Odd group element where a member of the even subgroup is required."""


class UnreachableDet(GpinError):
    """A determinant target of -1 was demanded on a zero-dimensional block."""


class RepairFailed(GpinError):
    """No conjugator with the required sign could be produced; flags a potential
    counterexample over the given field and must never be swallowed."""


class WitnessNotFound(GpinError):
    """Brute-force search exhausted without a witness (non-semisimple, non-enumerable input)."""


class UnknownSuite(GpinError):
    """Suite id is not registered."""


class ParseError(GpinError):
    """Malformed JSON input."""
