# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
End-to-end diagnosis of gas samples, method comparison and gas trends.

"""

from __future__ import annotations

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import datetime
from fractions import Fraction

import cf_units

from dga_ann.datasets import claimed_accuracies
from dga_ann.exceptions import InvalidConfigurationError, TrendError
from dga_ann.gas_model import GAS_NAMES, Method
from dga_ann.ratio_coding import (
    clamp_sample,
    code_iec,
    code_rogers,
    iec_ratios,
    rogers_ratios,
)
from dga_ann.rule_engine import IecVariant, iec_lookup, rogers_lookup

__all__ = [
    "COMPARISON_METHODS",
    "DEFAULT_METHODS",
    "DIVERGENT_NOTE",
    "VARIANT_NOTE",
    "ClaimCheck",
    "ComparisonRow",
    "ComparisonTable",
    "DiagnosisReport",
    "TrendPoint",
    "TrendReport",
    "diagnose",
    "evaluate",
    "trend_report",
]

#: Methods run by :func:`diagnose` when none are requested.
DEFAULT_METHODS = (Method.ROGERS_TABLE, Method.IEC_TABLE)

#: Column order of a comparison table.
COMPARISON_METHODS = (
    Method.IEC_TABLE,
    Method.ROGERS_TABLE,
    Method.ANN_IEC,
    Method.ANN_ROGERS,
)

DIVERGENT_NOTE = "divergent (published tables inconsistent)"
VARIANT_NOTE = "differs under corrected IEC table"


@dataclass(frozen=True)
class DiagnosisReport:
    """
    Every requested method's verdict on one sample.

    The ratios and codes are those of the clamped sample; ``diagnoses``
    follows the requested method order.

    """

    sample: object
    clamped: object
    rogers_ratios: tuple
    iec_ratios: tuple
    rogers_codes: tuple
    iec_codes: tuple
    diagnoses: tuple
    iec_variant: IecVariant

    @property
    def sample_id(self):
        return self.sample.id

    @property
    def actual(self):
        return self.sample.actual_fault

    @property
    def methods(self):
        return tuple(diagnosis.method for diagnosis in self.diagnoses)

    def diagnosis(self, method):
        """The diagnosis by one method, or None if it was not requested."""
        method = Method(method)
        for diagnosis in self.diagnoses:
            if diagnosis.method is method:
                return diagnosis
        return None

    def to_dict(self):
        return {
            "id": self.sample_id,
            "date": None if self.sample.date is None else self.sample.date.isoformat(),
            "actual": None if self.actual is None else self.actual.value,
            "gases": {
                name: {
                    "ppm": self.clamped.ppm(name),
                    "below_detection": getattr(self.clamped, name).below_detection,
                }
                for name in GAS_NAMES
            },
            "rogers": {
                "ratios": dict(self.rogers_ratios._asdict()),
                "codes": list(self.rogers_codes),
            },
            "iec": {
                "ratios": dict(self.iec_ratios._asdict()),
                "codes": list(self.iec_codes),
                "table": self.iec_variant.value,
            },
            "diagnoses": [
                {
                    "method": diagnosis.method.value,
                    "fault": (
                        None if diagnosis.result is None else int(diagnosis.result)
                    ),
                    "description": (
                        None
                        if diagnosis.result is None
                        else diagnosis.result.description
                    ),
                    "coarse": diagnosis.coarse.value,
                    "row": diagnosis.row,
                    "confidence": diagnosis.confidence,
                    "low_confidence": diagnosis.low_confidence,
                    "ambiguous": diagnosis.ambiguous,
                }
                for diagnosis in self.diagnoses
            ],
        }


def _methods_list(methods):
    if methods is None:
        methods = DEFAULT_METHODS
    result = []
    for method in methods:
        method = Method(method)
        if method not in result:
            result.append(method)
    return result


def _check_models(methods, models):
    models = dict(models or {})
    for method in methods:
        if not method.is_ann:
            continue
        net = models.get(method)
        if net is None:
            msg = f"Method {method.value!r} needs a trained network model."
            raise InvalidConfigurationError(msg)
        if net.method is not method:
            name = "untagged" if net.method is None else net.method.value
            msg = f"Model for {method.value!r} is a {name} network."
            raise InvalidConfigurationError(msg)
    return models


def _diagnose(sample, methods, iec_variant, models, floor, threshold):
    clamped = clamp_sample(sample, floor)
    r_ratios = rogers_ratios(clamped)
    i_ratios = iec_ratios(clamped)
    r_codes = code_rogers(r_ratios)
    i_codes = code_iec(i_ratios)
    diagnoses = []
    for method in methods:
        if method is Method.ROGERS_TABLE:
            diagnosis = rogers_lookup(r_codes)
        elif method is Method.IEC_TABLE:
            diagnosis = iec_lookup(i_codes, iec_variant)
        elif method is Method.ANN_ROGERS:
            diagnosis = models[method].diagnose(r_codes, threshold)
        else:
            diagnosis = models[method].diagnose(i_codes, threshold)
        diagnoses.append(diagnosis)
    return DiagnosisReport(
        sample=sample,
        clamped=clamped,
        rogers_ratios=r_ratios,
        iec_ratios=i_ratios,
        rogers_codes=r_codes,
        iec_codes=i_codes,
        diagnoses=tuple(diagnoses),
        iec_variant=iec_variant,
    )


def diagnose(
    sample,
    methods=None,
    iec_variant=IecVariant.CORRECTED,
    models=None,
    floor=None,
    threshold=None,
):
    """
    Diagnose one gas sample by each requested method.

    The sample is clamped to the detection floor, then its ratios and codes
    are computed once and shared by all methods.

    Args:

    * sample:
        A :class:`~dga_ann.gas_model.GasSample`.

    Kwargs:

    * methods:
        Iterable of :class:`~dga_ann.gas_model.Method` (or their names).
        Defaults to the two rule tables.
    * iec_variant:
        Which IEC table to use, printed or corrected.
    * models:
        Mapping of network method to :class:`~dga_ann.mlp.MlpNetwork`, needed
        for each network method requested.
    * floor, threshold:
        Detection floor and confidence threshold, overriding the options.

    Returns:
        A :class:`DiagnosisReport`.

    """
    methods = _methods_list(methods)
    models = _check_models(methods, models)
    return _diagnose(sample, methods, IecVariant(iec_variant), models, floor, threshold)


ComparisonRow = namedtuple(
    "ComparisonRow", ("sample_id", "actual", "outcomes", "reference", "notes")
)

ClaimCheck = namedtuple(
    "ClaimCheck", ("method", "source", "claimed", "reference", "computed", "discrepant")
)


@dataclass(frozen=True)
class ComparisonTable:
    """
    Coarse verdicts of every method on a corpus, with scores.

    ``accuracy`` maps each method to the fraction of labelled samples it got
    right (no decision counts as wrong), or None when nothing could be scored.
    ``agreement`` counts, per method, the samples whose verdict equals the
    reference result.  ``reference_accuracy`` scores the reference columns
    themselves against the actual labels.

    """

    rows: tuple
    methods: tuple
    iec_variant: IecVariant
    accuracy: dict
    agreement: dict
    reference_accuracy: dict
    claims: tuple
    reports: tuple

    def column(self, method):
        method = Method(method)
        return tuple(row.outcomes.get(method) for row in self.rows)

    @property
    def n_reference(self):
        return sum(1 for row in self.rows if row.reference is not None)

    def to_dict(self):
        def fraction(value):
            return None if value is None else str(value)

        return {
            "iec_table": self.iec_variant.value,
            "methods": [method.value for method in self.methods],
            "rows": [
                {
                    "id": row.sample_id,
                    "actual": None if row.actual is None else row.actual.value,
                    "outcomes": {
                        method.value: (
                            None
                            if row.outcomes.get(method) is None
                            else row.outcomes[method].value
                        )
                        for method in self.methods
                    },
                    "notes": {
                        method.value: note for method, note in row.notes.items()
                    },
                }
                for row in self.rows
            ],
            "accuracy": {
                method.value: fraction(self.accuracy.get(method))
                for method in self.methods
            },
            "agreement": {
                method.value: self.agreement.get(method) for method in self.methods
            },
            "reference_rows": self.n_reference,
            "reference_accuracy": {
                method.value: fraction(value)
                for method, value in self.reference_accuracy.items()
            },
            "claims": [
                {
                    "method": claim.method.value,
                    "source": claim.source,
                    "claimed": fraction(claim.claimed),
                    "reference": fraction(claim.reference),
                    "computed": fraction(claim.computed),
                    "discrepant": claim.discrepant,
                }
                for claim in self.claims
            ],
        }


def _score(outcomes, actuals):
    pairs = [
        (outcome, actual)
        for outcome, actual in zip(outcomes, actuals, strict=True)
        if actual is not None and outcome is not None
    ]
    if not pairs:
        return None
    correct = sum(1 for outcome, actual in pairs if outcome is actual)
    return Fraction(correct, len(pairs))


def _reference_outcome(ref_row, method):
    return getattr(ref_row, method.value.replace("-", "_"))


def _rule_note(report, method, outcome, expected):
    if outcome is expected:
        return None
    note = DIVERGENT_NOTE
    if method is Method.IEC_TABLE and report.iec_variant is IecVariant.CORRECTED:
        printed = iec_lookup(report.iec_codes, IecVariant.PRINTED).coarse
        if printed is expected:
            note = VARIANT_NOTE
    return note


def evaluate(
    corpus,
    models=None,
    iec_variant=IecVariant.PRINTED,
    reference=None,
    floor=None,
    threshold=None,
    max_workers=None,
):
    """
    Compare all methods on a corpus.

    Args:

    * corpus:
        Iterable of :class:`~dga_ann.gas_model.GasSample`.

    Kwargs:

    * models:
        Mapping of network method to network.  Network methods without a
        model are left out of the comparison.
    * iec_variant:
        IEC table for the traditional column; printed by default.
    * reference:
        :class:`~dga_ann.datasets.ReferenceResults` to compare against,
        matched to samples by id.
    * max_workers:
        Diagnose samples on this many threads.  Results do not depend on it.

    Returns:
        A :class:`ComparisonTable`.

    """
    samples = list(corpus)
    models = dict(models or {})
    iec_variant = IecVariant(iec_variant)
    methods = tuple(
        method
        for method in COMPARISON_METHODS
        if not method.is_ann or models.get(method) is not None
    )
    _check_models(methods, models)

    def run(sample):
        return _diagnose(sample, methods, iec_variant, models, floor, threshold)

    if max_workers is not None and max_workers > 1 and len(samples) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            reports = list(pool.map(run, samples))
    else:
        reports = [run(sample) for sample in samples]

    rows = []
    for report in reports:
        ref_row = None if reference is None else reference.for_sample(report.sample_id)
        outcomes = {}
        notes = {}
        for method in methods:
            outcome = report.diagnosis(method).coarse
            outcomes[method] = outcome
            if ref_row is not None and not method.is_ann:
                expected = _reference_outcome(ref_row, method)
                note = _rule_note(report, method, outcome, expected)
                if note is not None:
                    notes[method] = note
        rows.append(
            ComparisonRow(report.sample_id, report.actual, outcomes, ref_row, notes)
        )

    actuals = [row.actual for row in rows]
    accuracy = {}
    agreement = {}
    for method in COMPARISON_METHODS:
        if method not in methods:
            accuracy[method] = None
            agreement[method] = None
            continue
        accuracy[method] = _score([row.outcomes[method] for row in rows], actuals)
        if any(row.reference is not None for row in rows):
            agreement[method] = sum(
                1
                for row in rows
                if row.reference is not None
                and row.outcomes[method] is _reference_outcome(row.reference, method)
            )
        else:
            agreement[method] = None

    reference_accuracy = {}
    referenced = [row.reference for row in rows if row.reference is not None]
    if referenced:
        ref_actuals = [ref.actual for ref in referenced]
        for method in COMPARISON_METHODS:
            reference_accuracy[method] = _score(
                [_reference_outcome(ref, method) for ref in referenced], ref_actuals
            )

    claims = []
    if referenced:
        for claim in claimed_accuracies():
            ref_value = reference_accuracy.get(claim.method)
            computed = accuracy.get(claim.method)
            basis = ref_value if ref_value is not None else computed
            claims.append(
                ClaimCheck(
                    method=claim.method,
                    source=claim.source,
                    claimed=claim.accuracy,
                    reference=ref_value,
                    computed=computed,
                    discrepant=basis is not None and basis != claim.accuracy,
                )
            )

    return ComparisonTable(
        rows=tuple(rows),
        methods=methods,
        iec_variant=iec_variant,
        accuracy=accuracy,
        agreement=agreement,
        reference_accuracy=reference_accuracy,
        claims=tuple(claims),
        reports=tuple(reports),
    )


TrendPoint = namedtuple(
    "TrendPoint", ("date", "elapsed_days", "ppm", "below_detection", "change")
)


@dataclass(frozen=True)
class TrendReport:
    """Per-gas dated series for one transformer, oldest reading first."""

    sample_id: str
    dates: tuple
    elapsed_days: tuple
    series: dict

    def to_dict(self):
        return {
            "id": self.sample_id,
            "dates": [date.isoformat() for date in self.dates],
            "elapsed_days": list(self.elapsed_days),
            "series": {
                gas: [
                    {
                        "date": point.date.isoformat(),
                        "ppm": point.ppm,
                        "below_detection": point.below_detection,
                        "change": point.change,
                    }
                    for point in points
                ]
                for gas, points in self.series.items()
            },
        }


def trend_report(samples):
    """
    Tabulate how each gas of one transformer changes between readings.

    Args:

    * samples:
        Two or more dated samples sharing one id.

    Returns:
        A :class:`TrendReport`.  Each gas has one :class:`TrendPoint` per
        date; ``change`` is the signed ppm difference from the previous
        reading (None for the first).

    """
    samples = list(samples)
    if len(samples) < 2:
        msg = f"A trend needs at least two samples, got {len(samples)}."
        raise TrendError(msg)
    ids = {sample.id for sample in samples}
    if len(ids) != 1:
        msg = f"Trend samples must share one id, got {sorted(ids)}."
        raise TrendError(msg)
    undated = [sample for sample in samples if sample.date is None]
    if undated:
        msg = f"{len(undated)} of the {samples[0].id!r} samples have no date."
        raise TrendError(msg)
    samples.sort(key=lambda sample: sample.date)

    first = samples[0].date
    unit = cf_units.Unit(
        f"days since {first.isoformat()}", calendar=cf_units.CALENDAR_STANDARD
    )
    elapsed = tuple(
        float(
            unit.date2num(
                datetime.datetime(sample.date.year, sample.date.month, sample.date.day)
            )
        )
        for sample in samples
    )

    series = {}
    for name in GAS_NAMES:
        points = []
        previous = None
        for sample, days in zip(samples, elapsed, strict=True):
            conc = getattr(sample, name)
            change = None if previous is None else conc.value - previous
            points.append(
                TrendPoint(sample.date, days, conc.value, conc.below_detection, change)
            )
            previous = conc.value
        series[name] = tuple(points)
    return TrendReport(
        sample_id=samples[0].id,
        dates=tuple(sample.date for sample in samples),
        elapsed_days=elapsed,
        series=series,
    )

