# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Exceptions and warnings raised by dga-ann.

"""

__all__ = [
    "AmbiguousRuleWarning",
    "DetectionLimitWarning",
    "DgaError",
    "InvalidConfigurationError",
    "LowConfidenceWarning",
    "ModelFileError",
    "SampleParseError",
    "TrainingError",
    "TrendError",
]


class DgaError(Exception):
    """Base class for all dga-ann errors."""


class InvalidConfigurationError(DgaError):
    """A setting, topology or model selection cannot be used."""


class SampleParseError(DgaError):
    """
    A gas-sample file could not be parsed.

    The physical (1-based) line number of the offending row is available as
    :attr:`line`, or is None when the problem is not tied to one line.

    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ModelFileError(DgaError):
    """A model file is malformed; :attr:`field` names the offending key."""

    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field!r}: {message}"
        super().__init__(message)
        self.field = field


class TrainingError(DgaError):
    """
    Levenberg-Marquardt training could not make progress.

    Carries the partial :attr:`report` and the last accepted :attr:`network`.

    """

    def __init__(self, message, report=None, network=None):
        super().__init__(message)
        self.report = report
        self.network = network


class TrendError(DgaError):
    """A set of samples cannot form a dated gas history."""


class DetectionLimitWarning(Warning):
    """A gas concentration was raised to the detection floor."""


class AmbiguousRuleWarning(Warning):
    """Two equally specific rule rows matched the same code vector."""


class LowConfidenceWarning(Warning):
    """A network decision fell below the confidence threshold."""
