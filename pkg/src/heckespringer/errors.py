"""Exception types shared across the package."""

__all__ = [
    "InputError",
    "DivisibilityError",
    "InvariantViolation",
    "DgValidationError",
    "PurityError",
    "SpectralError",
    "FormalityObstruction",
]


class InputError(ValueError):
    """A caller supplied arguments outside an operation's domain."""


class DivisibilityError(ArithmeticError):
    """Exact division failed; carries the nonzero remainder as a witness.

    A nonzero remainder in the Bernstein commutation kernel signals a violated
    algebra invariant upstream, so callers there re-raise InvariantViolation.
    """

    def __init__(self, message, remainder):
        super().__init__(message)
        self.remainder = remainder


class InvariantViolation(RuntimeError):
    """An internal identity that must hold by construction failed (a bug signal)."""


class DgValidationError(ValueError):
    """A dg-algebra axiom failed; `check` names the axiom, `witness` pins it down."""

    def __init__(self, check, witness):
        super().__init__(f"dg-algebra validation failed: {check} (witness: {witness})")
        self.check = check
        self.witness = witness


class PurityError(ValueError):
    """Cohomology is not pure: H^i(F) is not r^i times the identity."""

    def __init__(self, degree, action):
        super().__init__(f"purity failure in degree {degree}")
        self.degree = degree
        self.action = action


class SpectralError(ValueError):
    """The automorphism has eigenvalues outside the integer powers of r."""

    def __init__(self, degree, missing_dim, witness):
        super().__init__(
            f"spectral failure in degree {degree}: "
            f"{missing_dim} dimensions outside the r-power eigenspaces"
        )
        self.degree = degree
        self.missing_dim = missing_dim
        self.witness = witness


class FormalityObstruction(ValueError):
    """Bigraded cohomology found off the diagonal, blocking the truncation step."""

    def __init__(self, bidegree):
        super().__init__(f"cohomology class off the diagonal at bidegree {bidegree}")
        self.bidegree = bidegree
