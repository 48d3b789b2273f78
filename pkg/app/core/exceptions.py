"""
Custom exceptions for the twisted-conjugacy toolkit.

Codes 4xxx are input / usage errors, codes 5xxx are computation errors.
"""


class AppError(Exception):
    """Base exception for all toolkit errors"""

    def __init__(self, message: str, code: int):
        self.message = message
        self.code = code
        super().__init__(self.message)

    @property
    def is_usage_error(self) -> bool:
        return 4000 <= self.code < 5000


class ValidationError(AppError):
    """Exception for malformed specs and invalid input"""

    def __init__(self, message: str, code: int = 4000):
        super().__init__(message, code)


class ConfigurationError(AppError):
    """Exception for configuration errors"""

    def __init__(self, message: str, code: int = 4100):
        super().__init__(message, code)


class FieldArithmeticError(AppError):
    """Exception for prime-field arithmetic errors"""

    def __init__(self, message: str, code: int = 4200):
        super().__init__(message, code)


class RootSystemError(AppError):
    """Exception for invalid root-system requests"""

    def __init__(self, message: str, code: int = 4300):
        super().__init__(message, code)


class AutomorphismError(AppError):
    """Exception for maps that are not usable automorphisms"""

    def __init__(self, message: str, code: int = 4400):
        super().__init__(message, code)


class SubgroupNotInvariantError(AutomorphismError):
    """Exception when phi(N) != N"""

    def __init__(self, message: str = "subgroup not invariant"):
        super().__init__(message, 4410)


class NotNormalError(AutomorphismError):
    """Exception when a subgroup is not normal"""

    def __init__(self, message: str = "subgroup not normal"):
        super().__init__(message, 4420)


class DegenerateTorusError(AppError):
    """Exception when some t_i t_j^-1 equals 1"""

    def __init__(self, message: str = "degenerate torus element"):
        super().__init__(message, 4500)


class ComputationError(AppError):
    """Exception wrapping unexpected failures during a computation"""

    def __init__(self, message: str, code: int = 5000):
        super().__init__(message, code)


class FieldTooSmallError(ComputationError):
    """Exception when no torus coordinates exist over GF(p)"""

    def __init__(self, message: str = "field too small"):
        super().__init__(message, 5100)


class EnumerationCapError(ComputationError):
    """Exception when a group would exceed the enumeration cap"""

    def __init__(self, cap: int, partial_count: int):
        self.cap = cap
        self.partial_count = partial_count
        super().__init__(
            f"enumeration cap {cap} exceeded after {partial_count} elements", 5200
        )


class CacheError(ComputationError):
    """Exception for structure-constant cache failures"""

    def __init__(self, message: str):
        super().__init__(message, 5300)


class InternalConsistencyError(ComputationError):
    """Exception for violated internal invariants (must not happen)"""

    def __init__(self, message: str):
        super().__init__(message, 5900)
