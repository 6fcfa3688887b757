# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Gas ratios and their integer codes, for the Rogers and IEC methods.

The interval tables below each partition [0, inf) : any non-negative finite
ratio receives exactly one code.

"""

from __future__ import annotations

from collections import namedtuple
import dataclasses
import warnings

from dga_ann.exceptions import DetectionLimitWarning, InvalidConfigurationError
from dga_ann.gas_model import GAS_NAMES, Concentration, options

__all__ = [
    "ALPHABETS",
    "IEC",
    "ROGERS",
    "CodeVector",
    "IecRatios",
    "RogersRatios",
    "clamp_sample",
    "code_iec",
    "code_rogers",
    "coding_intervals",
    "iec_ratios",
    "rogers_ratios",
]

#: Scheme names, also used as CodeVector tags.
ROGERS = "rogers"
IEC = "iec"

RogersRatios = namedtuple(
    "RogersRatios", ("ch4_h2", "c2h6_ch4", "c2h4_c2h6", "c2h2_c2h4")
)

IecRatios = namedtuple("IecRatios", ("c2h2_c2h4", "ch4_h2", "c2h4_c2h6"))


# One coding interval : codes a ratio r with lower <?= r <?= upper.
_Interval = namedtuple(
    "_Interval", ("lower", "upper", "lower_closed", "upper_closed", "code")
)

_INF = float("inf")

_ROGERS_INTERVALS = (
    # CH4/H2
    (
        _Interval(0.0, 0.1, True, True, 5),
        _Interval(0.1, 1.0, False, False, 0),
        _Interval(1.0, 3.0, True, False, 1),
        _Interval(3.0, _INF, True, False, 2),
    ),
    # C2H6/CH4
    (
        _Interval(0.0, 1.0, True, False, 0),
        _Interval(1.0, _INF, True, False, 1),
    ),
    # C2H4/C2H6
    (
        _Interval(0.0, 1.0, True, False, 0),
        _Interval(1.0, 3.0, True, False, 1),
        _Interval(3.0, _INF, True, False, 2),
    ),
    # C2H2/C2H4
    (
        _Interval(0.0, 0.5, True, False, 0),
        _Interval(0.5, 3.0, True, False, 1),
        _Interval(3.0, _INF, True, False, 2),
    ),
)

# Ranges [0,0.1), [0.1,1), [1,3], (3,inf), with per-ratio codes.
_IEC_RANGES = (
    (0.0, 0.1, True, False),
    (0.1, 1.0, True, False),
    (1.0, 3.0, True, True),
    (3.0, _INF, False, False),
)
_IEC_RANGE_CODES = (
    (0, 1, 1, 2),  # C2H2/C2H4
    (1, 0, 2, 2),  # CH4/H2
    (0, 0, 1, 2),  # C2H4/C2H6
)
_IEC_INTERVALS = tuple(
    tuple(
        _Interval(*bounds, code)
        for bounds, code in zip(_IEC_RANGES, codes, strict=True)
    )
    for codes in _IEC_RANGE_CODES
)

#: Allowed codes per position, for each scheme.
ALPHABETS = {
    ROGERS: tuple(
        frozenset(interval.code for interval in position)
        for position in _ROGERS_INTERVALS
    ),
    IEC: tuple(
        frozenset(interval.code for interval in position)
        for position in _IEC_INTERVALS
    ),
}


class CodeVector(tuple):
    """
    An ordered tuple of ratio codes, tagged with its scheme.

    Compares equal to a plain tuple of the same codes.

    """

    def __new__(cls, codes, scheme):
        codes = tuple(int(code) for code in codes)
        try:
            alphabets = ALPHABETS[scheme]
        except KeyError:
            msg = f"Unknown coding scheme {scheme!r}."
            raise ValueError(msg) from None
        if len(codes) != len(alphabets):
            msg = (
                f"A {scheme} code vector has {len(alphabets)} codes, "
                f"got {len(codes)}: {codes}."
            )
            raise ValueError(msg)
        for position, (code, alphabet) in enumerate(
            zip(codes, alphabets, strict=True)
        ):
            if code not in alphabet:
                msg = (
                    f"Code {code} at position {position + 1} is not in the "
                    f"{scheme} alphabet {sorted(alphabet)}."
                )
                raise ValueError(msg)
        self = super().__new__(cls, codes)
        self.scheme = scheme
        return self

    def __str__(self):
        return "({})".format(",".join(str(code) for code in self))

    def __repr__(self):
        return f"CodeVector({tuple(self)!r}, {self.scheme!r})"

    def __reduce__(self):
        return (CodeVector, (tuple(self), self.scheme))


def _in_interval(ratio, interval):
    if interval.lower_closed:
        above = ratio >= interval.lower
    else:
        above = ratio > interval.lower
    if interval.upper_closed:
        below = ratio <= interval.upper
    else:
        below = ratio < interval.upper
    return above and below


def _code_ratio(ratio, intervals):
    for interval in intervals:
        if _in_interval(ratio, interval):
            return interval.code
    msg = f"Ratio {ratio!r} is not a finite non-negative number."
    raise ValueError(msg)


def clamp_sample(sample, floor=None):
    """
    Raise every concentration below the detection floor up to the floor.

    Raised values carry the below-detection flag.  Values at or above the
    floor are unchanged, so clamping twice equals clamping once.

    Args:

    * sample:
        A :class:`~dga_ann.gas_model.GasSample`.

    Kwargs:

    * floor:
        Detection floor in ppm.  Defaults to ``options.detection_floor``.

    Returns:
        A new GasSample (or the same one, when nothing needed clamping).

    """
    if floor is None:
        floor = options.detection_floor
    if not floor > 0:
        msg = f"Detection floor must be positive, got {floor!r}."
        raise InvalidConfigurationError(msg)
    changes = {}
    for name in GAS_NAMES:
        conc = getattr(sample, name)
        if conc.value < floor:
            changes[name] = Concentration(float(floor), True)
    if not changes:
        return sample
    if options.warn_on_clamp:
        warnings.warn(
            "Sample {!r}: {} raised to the detection floor {} ppm.".format(
                sample.id, ", ".join(changes), floor
            ),
            category=DetectionLimitWarning,
        )
    return dataclasses.replace(sample, **changes)


def _quotient(sample, numerator, denominator):
    top = sample.ppm(numerator)
    bottom = sample.ppm(denominator)
    if bottom == 0:
        msg = (
            f"Sample {sample.id!r}: {denominator} is zero, so "
            f"{numerator}/{denominator} is undefined (clamp the sample first)."
        )
        raise ZeroDivisionError(msg)
    return top / bottom


def rogers_ratios(sample):
    """Compute the four Rogers ratios, CH4/H2, C2H6/CH4, C2H4/C2H6, C2H2/C2H4."""
    return RogersRatios(
        ch4_h2=_quotient(sample, "ch4", "h2"),
        c2h6_ch4=_quotient(sample, "c2h6", "ch4"),
        c2h4_c2h6=_quotient(sample, "c2h4", "c2h6"),
        c2h2_c2h4=_quotient(sample, "c2h2", "c2h4"),
    )


def iec_ratios(sample):
    """Compute the three IEC ratios, C2H2/C2H4, CH4/H2, C2H4/C2H6."""
    return IecRatios(
        c2h2_c2h4=_quotient(sample, "c2h2", "c2h4"),
        ch4_h2=_quotient(sample, "ch4", "h2"),
        c2h4_c2h6=_quotient(sample, "c2h4", "c2h6"),
    )


def code_rogers(ratios):
    """
    Code a set of Rogers ratios.

    >>> str(code_rogers((2.702, 0.286, 0.538, 0.188)))
    '(1,0,0,0)'

    """
    codes = [
        _code_ratio(ratio, intervals)
        for ratio, intervals in zip(ratios, _ROGERS_INTERVALS, strict=True)
    ]
    return CodeVector(codes, ROGERS)


def code_iec(ratios):
    """
    Code a set of IEC ratios.

    >>> str(code_iec((0.188, 2.702, 0.538)))
    '(1,2,0)'

    """
    codes = [
        _code_ratio(ratio, intervals)
        for ratio, intervals in zip(ratios, _IEC_INTERVALS, strict=True)
    ]
    return CodeVector(codes, IEC)


def coding_intervals(scheme):
    """
    Return the coding intervals of a scheme, one tuple per ratio position.

    Each interval has ``lower``, ``upper``, ``lower_closed``, ``upper_closed``
    and ``code`` attributes.

    """
    return {ROGERS: _ROGERS_INTERVALS, IEC: _IEC_INTERVALS}[scheme]
