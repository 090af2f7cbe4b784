"""
Custom exceptions for theta-forge.

One hierarchy serves both surfaces: ``status_code`` is used by the HTTP API,
``exit_code`` by the command-line front end (1 = verification failure,
2 = usage error).
"""


class AppException(Exception):
    """Base exception for all application exceptions - Open/Closed Principle."""

    def __init__(self, message: str, status_code: int = 500, exit_code: int = 1):
        super().__init__(message)
        self.message = message
        self.status_code = status_code
        self.exit_code = exit_code


# --- malformed input -------------------------------------------------------

class ValidationError(AppException):
    """Raised when input validation fails - Single Responsibility Principle."""

    def __init__(self, message: str):
        super().__init__(message, status_code=400, exit_code=2)


class UnsupportedFamily(ValidationError):
    """Raised for algebra families or ranks outside the presets."""


class OddNonIsotropicRoot(ValidationError):
    """Raised when a realized algebra would carry an odd root with (γ,γ) ≠ 0."""


class IsotropicCoroot(ValidationError):
    """Raised when a coroot of an isotropic root is requested."""


class NonReducedWord(ValidationError):
    """Raised when a Weyl word is longer than its inversion set."""


class NotSimple(ValidationError):
    """Raised when a root is required to be simple for the current basis."""


class NotIsotropic(ValidationError):
    """Raised when a root is required to be isotropic."""


class NotOrthogonalIsotropic(ValidationError):
    """Raised when a root set is not pairwise orthogonal and isotropic."""


class UnevaluatedVariable(ValidationError):
    """Raised when T occurs in an element but no value for it was supplied."""


class PreconditionViolated(ValidationError):
    """Raised when an identity check is called outside its hypotheses."""


class NotGenericSample(ValidationError):
    """Raised when a weight fails the genericity guard of a structure check."""


class NotFoundError(AppException):
    """Raised when a root, letter or cache entry is not found."""

    def __init__(self, message: str):
        super().__init__(message, status_code=404, exit_code=2)


# --- computation signals ---------------------------------------------------

class ComputationError(AppException):
    """Raised when an exact computation has no answer for the given input."""

    def __init__(self, message: str):
        super().__init__(message, status_code=422, exit_code=1)


class NotInEvenOrbit(ComputationError):
    """Raised when γ is not W_even-conjugate to a simple root."""


class NotDivisible(ComputationError):
    """Raised when right division by e_{-α}^p has no exact quotient."""


class NormalizationImpossible(ComputationError):
    """Raised when [e_γ, e_{-γ}] cannot be scaled to h_γ."""


class NotInSpan(ComputationError):
    """Raised when a matrix bracket leaves the realized algebra."""


class SamplingError(AppException):
    """Raised when a sample point is unusable; callers resample."""

    def __init__(self, message: str):
        super().__init__(message, status_code=422, exit_code=1)


class SampleDegeneracy(SamplingError):
    """Raised when a sample grid cannot determine the requested data."""


class ZeroFactorAtSample(SamplingError):
    """Raised when Π (λ+ρ, α_i) vanishes at a Borel-chain sample."""


class DegenerateSample(SamplingError):
    """Raised when a θ-product vanishes at the sampled weight."""


class RankDisagreement(SamplingError):
    """Raised when two T evaluation points give different ranks."""


# --- failed identities -----------------------------------------------------

class VerificationError(AppException):
    """Raised when a stated identity or bound fails - hard failure."""

    def __init__(self, message: str):
        super().__init__(message, status_code=422, exit_code=1)


class PropertyViolated(VerificationError):
    """Raised when e_α θ v_λ does not vanish on the hyperplane."""


class InterpolationMismatch(VerificationError):
    """Raised when interpolated coefficients miss a verification sample."""


class BoundViolated(VerificationError):
    """Raised when a coefficient breaks the degree bound."""


class LeadingTermMismatch(VerificationError):
    """Raised when the top coefficient has the wrong leading monomial."""


class SquareNonzero(VerificationError):
    """Raised when θ_γ(λ-γ)θ_γ(λ) does not vanish."""


class NotProportional(VerificationError):
    """Raised when two vectors expected to be proportional are not."""


class DimensionMismatch(VerificationError):
    """Raised when dimensions or coordinate lengths disagree."""
