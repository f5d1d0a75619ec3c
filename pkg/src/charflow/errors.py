"""Exception types shared across charflow."""


class CharflowError(Exception):
    """Base class for all charflow errors."""


class ExpressionSyntaxError(CharflowError):
    """Malformed field/density expression. Carries the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (position {position})")
        self.position = position


class UnknownIdentifierError(CharflowError):
    """Identifier in an expression that is neither a variable x1..xN nor a known function."""

    def __init__(self, name: str, position: int):
        super().__init__(f"unknown identifier '{name}' (position {position})")
        self.name = name
        self.position = position


class DimensionMismatchError(CharflowError):
    """Point / component-count dimension does not match the field or domain."""


class NonFiniteStateError(CharflowError):
    """Flow integration or field evaluation produced NaN or infinity."""


class NotInteriorError(CharflowError):
    """Operation requires a point strictly inside the domain."""


class NotOnBoundaryError(CharflowError):
    """Operation requires a point on the boundary (within the exit tolerance)."""


class WrongSideError(CharflowError):
    """Boundary point is not classified into the side the operation needs."""


class SideMismatchError(CharflowError):
    """A boundary mesh built for one side was passed where the other is required."""


class StayTimeTooShortError(CharflowError):
    """The probe step exceeds the available stay time at this point."""


class NonpositiveLambdaError(CharflowError):
    """Resolvent / boundary-value problems require lambda > 0."""


class UndefinedNormalError(CharflowError):
    """The outward normal is undefined at this boundary point (corner)."""


class DegenerateSideError(CharflowError):
    """No boundary points classify into the requested side."""


class EmptyDomainError(CharflowError):
    """Monte-Carlo sampling accepted no point of the domain."""


class UnsupportedDomainError(CharflowError):
    """The domain kind does not support the requested operation (e.g. unbounded boundary mesh)."""


class ConfigError(CharflowError):
    """Invalid or missing run-configuration entry. Carries the offending key."""

    def __init__(self, key: str, message: str):
        super().__init__(f"config key '{key}': {message}")
        self.key = key
