# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Domain types shared by every dga-ann module.

Provides the gas sample record, the fine fault taxonomies of the Rogers and
IEC tables, the coarse scoring vocabulary and the per-method diagnosis value.

"""

from __future__ import annotations

from argparse import Namespace
from collections import namedtuple
from dataclasses import dataclass
import datetime
import enum
import math

__all__ = [
    "GAS_NAMES",
    "CoarseFault",
    "Concentration",
    "Diagnosis",
    "GasSample",
    "IecFault",
    "Method",
    "RogersFault",
    "coarse_of_iec",
    "coarse_of_rogers",
    "options",
]


#: Library-wide settings, overridable at run time.
options = Namespace(
    detection_floor=1.0,
    confidence_threshold=0.5,
    warn_on_clamp=False,
    warn_on_low_confidence=False,
    warn_on_ambiguous=True,
)

#: Order in which the gases are stored, parsed and serialised.
GAS_NAMES = ("h2", "ch4", "c2h2", "c2h4", "c2h6", "co", "co2")


class CoarseFault(enum.Enum):
    NORMAL = "Normal"
    PD = "PD"
    ARC = "ARC"
    OH = "OH"
    NO_DECISION = "NoDecision"

    @classmethod
    def from_label(cls, label):
        """
        Convert a label string, such as 'N' or 'ARC', to a CoarseFault.

        Raises ValueError for an unknown label.

        """
        key = label.strip()
        lookup = {member.value.lower(): member for member in cls}
        lookup["n"] = cls.NORMAL
        try:
            result = lookup[key.lower()]
        except KeyError:
            msg = f"Unknown fault label {label!r}."
            raise ValueError(msg) from None
        return result

    @property
    def short_label(self):
        """The CSV spelling of this class ('N' for Normal)."""
        return "N" if self is CoarseFault.NORMAL else self.value


class Method(enum.Enum):
    ROGERS_TABLE = "rogers"
    IEC_TABLE = "iec"
    ANN_ROGERS = "ann-rogers"
    ANN_IEC = "ann-iec"

    @property
    def is_ann(self):
        return self in (Method.ANN_ROGERS, Method.ANN_IEC)

    @property
    def fault_type(self):
        """The fine fault enumeration this method decides between."""
        if self in (Method.ROGERS_TABLE, Method.ANN_ROGERS):
            result = RogersFault
        else:
            result = IecFault
        return result


class _FineFault(enum.IntEnum):
    def __new__(cls, index, description):
        member = int.__new__(cls, index)
        member._value_ = index
        member.description = description
        return member

    def __str__(self):
        return self.description

    @property
    def coarse(self):
        raise NotImplementedError


class RogersFault(_FineFault):
    NORMAL = (1, "Normal")
    PD_LOW_ENERGY = (2, "Partial discharge of low energy")
    OVERHEATING_BELOW_150 = (3, "Overheating <150 °C")
    OVERHEATING_150_200 = (4, "Overheating 150-200 °C")
    OVERHEATING_200_300 = (5, "Overheating 200-300 °C")
    CONDUCTOR_OVERHEATING = (6, "Conductor overheating")
    WINDING_CIRCULATING_CURRENT = (
        7,
        "Overheating by winding circulating current",
    )
    CORE_TANK_CIRCULATING_CURRENT = (
        8,
        "Overheating by core and tank circulating current",
    )
    ARCING_LOW_ENERGY = (9, "Arcing of low energy")
    ARCING_HIGH_ENERGY = (10, "Arcing of high energy")
    CONTINUOUS_SPARKING = (11, "Continuous sparking to floating potential")
    PD_HIGH_ENERGY = (12, "Partial discharge with high energy")

    @property
    def coarse(self):
        return coarse_of_rogers(self)


class IecFault(_FineFault):
    NO_FAULT = (1, "No fault")
    PD_LOW_DENSITY = (2, "Partial discharge with low energy density")
    PD_HIGH_DENSITY = (3, "Partial discharge with high energy density")
    DISCHARGE_LOW_ENERGY = (4, "Discharge of low energy")
    DISCHARGE_HIGH_ENERGY = (5, "Discharge of high energy")
    OVERHEATING_BELOW_150 = (6, "Overheating T<150 °C")
    OVERHEATING_150_300 = (7, "Overheating 150<T<300 °C")
    OVERHEATING_300_700 = (8, "Overheating 300<=T<=700 °C")
    OVERHEATING_ABOVE_700 = (9, "Overheating >=700 °C")

    @property
    def coarse(self):
        return coarse_of_iec(self)


def coarse_of_rogers(fault):
    """
    Project a Rogers fine fault onto the coarse scoring vocabulary.

    Args:

    * fault:
        A :class:`RogersFault`, or its integer index 1-12.

    Returns:
        A :class:`CoarseFault`, never NO_DECISION.

    """
    index = int(RogersFault(fault))
    if index == 1:
        result = CoarseFault.NORMAL
    elif index in (2, 12):
        result = CoarseFault.PD
    elif 3 <= index <= 8:
        result = CoarseFault.OH
    else:
        result = CoarseFault.ARC
    return result


def coarse_of_iec(fault):
    """
    Project an IEC fine fault onto the coarse scoring vocabulary.

    Args:

    * fault:
        An :class:`IecFault`, or its integer index 1-9.

    Returns:
        A :class:`CoarseFault`, never NO_DECISION.

    """
    index = int(IecFault(fault))
    if index == 1:
        result = CoarseFault.NORMAL
    elif index in (2, 3):
        result = CoarseFault.PD
    elif index in (4, 5):
        result = CoarseFault.ARC
    else:
        result = CoarseFault.OH
    return result


# A single gas reading : value in ppm, and whether it was below detection.
Concentration = namedtuple(
    "Concentration", ("value", "below_detection"), defaults=(False,)
)


@dataclass(frozen=True)
class GasSample:
    """
    One oil chromatography reading.

    Each gas attribute is a :class:`Concentration`.  Plain numbers passed to
    the constructor are converted to unflagged concentrations.

    """

    id: str
    h2: Concentration
    ch4: Concentration
    c2h2: Concentration
    c2h4: Concentration
    c2h6: Concentration
    co: Concentration
    co2: Concentration
    date: datetime.date | None = None
    actual_fault: CoarseFault | None = None

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id.strip():
            msg = f"A gas sample needs a non-empty id, got {self.id!r}."
            raise ValueError(msg)
        for name in GAS_NAMES:
            conc = getattr(self, name)
            if not isinstance(conc, Concentration):
                conc = Concentration(float(conc), False)
            else:
                conc = Concentration(float(conc.value), bool(conc.below_detection))
            if not (math.isfinite(conc.value) and conc.value >= 0):
                msg = (
                    f"Gas {name} of sample {self.id!r} must be a finite "
                    f"non-negative number, got {conc.value}."
                )
                raise ValueError(msg)
            object.__setattr__(self, name, conc)
        if self.actual_fault is CoarseFault.NO_DECISION:
            msg = "NoDecision cannot be a known fault."
            raise ValueError(msg)

    def ppm(self, name):
        """The concentration value of the named gas."""
        return getattr(self, name).value

    def concentrations(self):
        """Return a dict of gas name to :class:`Concentration`, in storage order."""
        return {name: getattr(self, name) for name in GAS_NAMES}

    def below_detection(self):
        """Names of the gases carrying the below-detection flag."""
        return tuple(name for name in GAS_NAMES if getattr(self, name).below_detection)


@dataclass(frozen=True)
class Diagnosis:
    """
    The outcome of one method applied to one sample.

    ``result`` is a :class:`RogersFault` or :class:`IecFault`, or None for the
    "no decision" outcome of a rule table.  ``row`` is the table row number
    for a rule-table hit.

    """

    method: Method
    result: RogersFault | IecFault | None
    coarse: CoarseFault
    confidence: float = 1.0
    low_confidence: bool = False
    ambiguous: bool = False
    row: int | None = None

    def __post_init__(self):
        if (self.result is None) != (self.coarse is CoarseFault.NO_DECISION):
            msg = (
                f"Inconsistent diagnosis: result {self.result!r} "
                f"with coarse class {self.coarse!r}."
            )
            raise ValueError(msg)
        if self.method.is_ann and self.result is None:
            msg = f"Method {self.method.value!r} cannot return no decision."
            raise ValueError(msg)
        if self.result is not None and not isinstance(
            self.result, self.method.fault_type
        ):
            msg = f"Method {self.method.value!r} cannot return {self.result!r}."
            raise ValueError(msg)
        if not 0.0 <= self.confidence <= 1.0:
            msg = f"Confidence {self.confidence} is outside [0, 1]."
            raise ValueError(msg)

    @classmethod
    def no_decision(cls, method):
        return cls(method, None, CoarseFault.NO_DECISION, confidence=0.0)

    @property
    def is_no_decision(self):
        return self.result is None

    def describe(self):
        """A short human readable verdict."""
        if self.result is None:
            text = "No decision"
        else:
            text = f"{self.result.description} ({self.coarse.value})"
        if self.ambiguous:
            text += " [ambiguous]"
        if self.low_confidence:
            text += " [low confidence]"
        return text