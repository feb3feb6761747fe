"""Exception hierarchy shared by every module."""


class QAudioError(Exception):
    """Base class for all package errors."""


class RangeError(QAudioError, ValueError):
    """A value lies outside its legal interval."""


class ShapeError(QAudioError, ValueError):
    """Mismatched widths, lengths, resolutions or layouts."""


class ResourceError(QAudioError, RuntimeError):
    """Not enough ancillas, or a state too wide for the simulator."""


class WiringError(QAudioError, ValueError):
    """Overlapping or out-of-range wires in a gate or layout."""


class NotPermutationError(QAudioError, ValueError):
    """Basis-state fast path used on a circuit containing Hadamards."""


class NotFrqaShapedError(QAudioError, ValueError):
    """State does not hold exactly one amplitude pattern per time index."""


class DegenerateMeasurementError(QAudioError, RuntimeError):
    """Post-measurement projection has (numerically) zero norm."""


class DegenerateRestrictionError(QAudioError, ValueError):
    """Restricted reversal with every time bit fixed."""


class UsageError(QAudioError):
    """Bad command-line input (empty files, malformed pipelines)."""
