class ParseError(Exception):
    """
    Raised for malformed expression strings and scenario configs.
    """
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self._format_message())

    def _format_message(self):
        if self.line is not None and self.column is not None:
            return f"Parse error at line {self.line}, column {self.column}: {self.message}"
        elif self.line is not None:
            return f"Parse error at line {self.line}: {self.message}"
        return f"Parse error: {self.message}"


class UnexpectedTokenError(ParseError):
    def __init__(self, expected, actual, line=None, column=None):
        message = f"Expected {expected}, but found {actual}"
        super().__init__(message, line, column)


class UnexpectedEndOfInputError(ParseError):
    def __init__(self, expected, line=None, column=None):
        message = f"Unexpected end of input, expected {expected}"
        super().__init__(message, line, column)


class InvalidNumberError(ParseError):
    def __init__(self, value, line=None, column=None):
        message = f"Invalid number: '{value}'"
        super().__init__(message, line, column)


class UnknownSymbolError(ParseError):
    def __init__(self, symbol, allowed, line=None, column=None):
        message = f"Unknown symbol '{symbol}' (allowed: {', '.join(allowed) or 'none'})"
        super().__init__(message, line, column)


class ConfigError(ParseError):
    """
    Raised when a scenario config cannot be decoded or fails validation.
    """
    def __init__(self, message, line=None, column=None, key=None):
        self.key = key
        if key is not None:
            message = f"{key}: {message}"
        super().__init__(message, line, column)


class AlgebraError(Exception):
    """Base class for errors raised by the algebraic constructions."""
    pass


class DimensionMismatchError(AlgebraError):
    def __init__(self, expected, actual):
        self.expected = expected
        self.actual = actual
        super().__init__(f"Dimension mismatch: expected {expected}, got {actual}")


class AmbientMismatchError(AlgebraError):
    """Raised when elements of different algebras are combined."""
    pass


class ZeroElementError(AlgebraError):
    """Raised when an operation needs a nonzero element."""
    pass


class NotALieElementError(AlgebraError):
    """Raised when an associative polynomial is not a Lie polynomial."""
    pass


class UnvalidatedVarietyError(AlgebraError):
    def __init__(self):
        super().__init__(
            "Variety spec must be validated as multihomogeneous first "
            "(call validate_multihomogeneous)")


class ClosureViolationError(AlgebraError):
    """Raised when a subspace is not invariant under an action it must be closed under."""
    pass


class RepresentationLawError(AlgebraError):
    """Raised when action matrices do not satisfy [rho(a), rho(b)] = rho([a, b])."""
    pass


class MorphismError(AlgebraError):
    """Raised when generator images do not extend to a homomorphism of pairs."""
    def __init__(self, detail):
        self.detail = detail
        super().__init__(f"Not a morphism into the variety: {detail}")


class SplittingError(AlgebraError):
    """Raised when a retraction fails the splitting equation on a basis pair."""
    def __init__(self, pair):
        self.pair = pair
        super().__init__(
            f"Retraction violates the splitting equation on basis pair g{pair[0] + 1}, g{pair[1] + 1}")


class HypothesisError(AlgebraError):
    """Raised when the inputs of a check violate its hypotheses."""
    pass


class InvalidScenarioError(AlgebraError):
    """Raised for scenarios the pipeline refuses to build."""
    pass


class InternalConsistencyError(AlgebraError):
    """Raised when two independent computations of the same quantity disagree."""
    pass


class BasisSizeExceededError(AlgebraError):
    def __init__(self, estimate, cap):
        self.estimate = estimate
        self.cap = cap
        super().__init__(
            f"Estimated module basis size {estimate} exceeds the cap of {cap}; "
            f"lower the degree or raise max_basis_size")
