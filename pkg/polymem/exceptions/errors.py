EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_GENERICITY = 2


class BaseCustomError(Exception):
    """Base class for all custom exceptions"""
    def __init__(self, detail: str, exit_code: int = EXIT_FAILURE, error_code: str = None):
        self.detail = detail
        self.exit_code = exit_code
        self.error_code = error_code
        super().__init__(self.detail)


class ConfigurationError(BaseCustomError):
    """Exception raised for unusable settings"""
    def __init__(self, detail: str = "Invalid configuration", error_code: str = "CONFIGURATION_ERROR"):
        super().__init__(detail=detail, error_code=error_code)


class InputError(BaseCustomError):
    """Exception raised for malformed or inconsistent input"""
    def __init__(self, detail: str = "Invalid input", error_code: str = "INPUT_ERROR"):
        super().__init__(detail=detail, error_code=error_code)


class InputFileError(InputError):
    """Exception raised when an input file cannot be read"""
    def __init__(self, detail: str = "Input file not readable", error_code: str = "INPUT_FILE_ERROR"):
        super().__init__(detail=detail, error_code=error_code)


class DimensionMismatchError(InputError):
    def __init__(self, detail: str = "Dimension mismatch", error_code: str = "DIMENSION_MISMATCH"):
        super().__init__(detail=detail, error_code=error_code)


class FieldMismatchError(InputError):
    def __init__(self, detail: str = "Operands live over different primes", error_code: str = "FIELD_MISMATCH"):
        super().__init__(detail=detail, error_code=error_code)


class WrongDimensionError(InputError):
    """Exception raised when an operation is limited to particular ambient dimensions"""
    def __init__(self, detail: str = "Unsupported dimension", error_code: str = "WRONG_DIMENSION"):
        super().__init__(detail=detail, error_code=error_code)


class UnboundedError(InputError):
    def __init__(self, detail: str = "Polytope is unbounded", error_code: str = "UNBOUNDED"):
        super().__init__(detail=detail, error_code=error_code)


class ZeroDirectionError(InputError):
    def __init__(self, detail: str = "Direction vector is zero", error_code: str = "ZERO_DIRECTION"):
        super().__init__(detail=detail, error_code=error_code)


class NonPositiveFactorError(InputError):
    def __init__(self, detail: str = "Factor must be positive", error_code: str = "NON_POSITIVE_FACTOR"):
        super().__init__(detail=detail, error_code=error_code)


class InvalidFacetError(InputError):
    def __init__(self, detail: str = "Facet index out of range", error_code: str = "INVALID_FACET"):
        super().__init__(detail=detail, error_code=error_code)


class OriginNotInteriorError(InputError):
    def __init__(self, detail: str = "Origin is not an interior point", error_code: str = "ORIGIN_NOT_INTERIOR"):
        super().__init__(detail=detail, error_code=error_code)


class EmptySupportError(InputError):
    def __init__(self, detail: str = "Support is empty", error_code: str = "EMPTY_SUPPORT"):
        super().__init__(detail=detail, error_code=error_code)


class SupportViolationError(InputError):
    """Exception raised when a polynomial leaves its admissible support"""
    def __init__(self, detail: str = "Support not contained in target", error_code: str = "SUPPORT_VIOLATION"):
        super().__init__(detail=detail, error_code=error_code)


class ZeroCoordinateError(InputError):
    def __init__(self, detail: str = "Point has a zero coordinate", error_code: str = "ZERO_COORDINATE"):
        super().__init__(detail=detail, error_code=error_code)


class HypothesisError(InputError):
    """Exception raised when a construction's geometric preconditions fail"""
    def __init__(self, detail: str = "Hypotheses not satisfied", error_code: str = "HYPOTHESIS_ERROR"):
        super().__init__(detail=detail, error_code=error_code)


class SegmentBodyError(HypothesisError):
    def __init__(self, detail: str = "Generator support is a segment", error_code: str = "SEGMENT_BODY"):
        super().__init__(detail=detail, error_code=error_code)


class ChainStalledError(BaseCustomError):
    """Exception raised when facet shifts shrink below the configured floor"""
    def __init__(self, detail: str = "Normal chain construction stalled", error_code: str = "CHAIN_STALLED"):
        super().__init__(detail=detail, error_code=error_code)


class GenericityFailureError(BaseCustomError):
    """Exception raised when primes or seeds disagree after all retries"""
    def __init__(self, detail: str = "Runs disagree on dimensions", error_code: str = "GENERICITY_FAILURE"):
        super().__init__(detail=detail, exit_code=EXIT_GENERICITY, error_code=error_code)


class NoSmoothPointError(BaseCustomError):
    def __init__(self, detail: str = "No smooth point found", error_code: str = "NO_SMOOTH_POINT"):
        super().__init__(detail=detail, error_code=error_code)


class LiftFailureError(BaseCustomError):
    """Exception raised when a branch cannot be lifted to the requested precision"""
    def __init__(self, detail: str = "Branch lift failed", error_code: str = "LIFT_FAILURE"):
        super().__init__(detail=detail, error_code=error_code)


class NotFlagGenericError(BaseCustomError):
    def __init__(self, detail: str = "Point is not flag-generic", error_code: str = "NOT_FLAG_GENERIC"):
        super().__init__(detail=detail, error_code=error_code)


class MultiplicityUnreachableError(InputError):
    def __init__(self, detail: str = "Multiplicity cannot be reached", error_code: str = "MULTIPLICITY_UNREACHABLE"):
        super().__init__(detail=detail, error_code=error_code)


class InternalError(BaseCustomError):
    def __init__(self, detail: str = "Internal error", error_code: str = "INTERNAL_ERROR"):
        super().__init__(detail=detail, error_code=error_code)
