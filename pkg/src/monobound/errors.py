"""Exception hierarchy shared across modules.

Validation errors (bad mathematical input) are distinct from malformed
input (bad JSON / CLI usage, raised at the CLI layer) and from unstable
scan certificates; the CLI maps each class to its own exit code.
"""


class ValidationError(ValueError):
    """Mathematically inconsistent input (CLI exit code 2)."""


class NegativeBettiError(ValidationError):
    """A derived middle Betti number came out negative.

    Since each entry of the derived vector is the middle Betti number of
    an iterated hyperplane section when the input data is geometric,
    negativity proves the (b, c) pair cannot come from an actual smooth
    projective variety with a very ample polarization.
    """

    def __init__(self, index, value):
        self.index = index
        self.value = value
        super().__init__(f"derived Betti entry d_{index} = {value} is negative")


class DimensionTooSmallError(ValidationError):
    """Hyperplane descent requested on a curve (dimension 1)."""


class SingularInputError(ValidationError):
    """Matrix operation requiring invertibility got det = 0."""


class PreconditionViolatedError(ValidationError):
    """Operation called outside its stated domain (e.g. trace criterion
    on a matrix that is not quasi-unipotent)."""


class ZeroTauError(ValidationError):
    """The scaling parameter of a Weil-Deligne pair must be nonzero."""


class NotUnipotentError(ValidationError):
    """nilpotent_log received a matrix M with (M - I) not nilpotent."""


class NotNilpotentError(ValidationError):
    """nilpotent_exp received a non-nilpotent matrix."""


class UnstableCertificateError(RuntimeError):
    """A prime scan did not certify stabilization of the gcd; the value
    cannot be reported as the true infinite gcd (CLI exit code 3)."""

    def __init__(self, certificate, message=None):
        self.certificate = certificate
        super().__init__(message or "prime scan certificate is not stable; "
                                    "increase scan depth")
