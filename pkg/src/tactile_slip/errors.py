"""Exception types and CLI exit codes."""

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_DEGENERATE = 4
EXIT_THRESHOLD = 5


class TactileSlipError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = EXIT_UNEXPECTED


class DimensionMismatchError(TactileSlipError):
    """Two grids that must share dimensions do not."""

    exit_code = EXIT_CONFIG


class ConfigError(TactileSlipError):
    """Invalid configuration value or manifest."""

    exit_code = EXIT_CONFIG


class PgmFormatError(TactileSlipError):
    """Malformed or unsupported PGM data."""

    exit_code = EXIT_IO


class InputError(TactileSlipError):
    """Missing or unreadable input files."""

    exit_code = EXIT_IO


class DegenerateContactError(TactileSlipError):
    """Initial contact region too circular or too small to define an angle."""

    exit_code = EXIT_DEGENERATE


class FrameOrderError(TactileSlipError):
    """Tracker update with a non-increasing frame index."""

    exit_code = EXIT_CONFIG


class ShapeFitError(TactileSlipError):
    """Synthetic shape does not fit its canvas."""

    exit_code = EXIT_CONFIG


class ThinningDivergenceError(TactileSlipError):
    """Thinning failed to converge within the iteration cap (internal bug guard)."""


class EvalPairingError(TactileSlipError):
    """Prediction/ground-truth inputs cannot be paired or compared."""

    exit_code = EXIT_CONFIG


class ThresholdViolation(TactileSlipError):
    """An acceptance threshold supplied on the command line was violated."""

    exit_code = EXIT_THRESHOLD
