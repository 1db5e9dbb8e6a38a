"""Exception types shared across the package."""


class ReconError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(ReconError, ValueError):
    """Inputs have incompatible or unsupported shapes."""


class InvalidSpecError(ReconError, ValueError):
    """A configuration value is outside its legal range."""


class DegenerateMaskError(InvalidSpecError):
    """A sampling mask with no sampled entries."""


class NumericError(ReconError, ArithmeticError):
    """A numeric operation received or produced non-finite values."""


class DivergenceError(NumericError):
    """An iterative solve produced non-finite iterates."""


class CalibrationError(ReconError, ValueError):
    """Sensitivity calibration received unusable autocalibration data."""


class MetricError(ReconError, ValueError):
    """A metric is undefined for the given reference image."""


class FormatError(ReconError, ValueError):
    """An on-disk container is malformed.

    Carries the byte offset at which parsing or validation failed so
    corrupt files can be diagnosed without a hex editor.
    """

    def __init__(self, offset: int, message: str):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset
