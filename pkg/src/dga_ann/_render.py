# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Text, CSV and JSON renderings of diagnosis results.

Every renderer takes one result object and a format name, so the three
formats always carry the same content.

"""

import csv
import io
import json

from dga_ann.diagnose_pipeline import COMPARISON_METHODS
from dga_ann.gas_model import GAS_NAMES, RogersFault
from dga_ann.ratio_coding import RogersRatios

FORMATS = ("text", "csv", "json")

_MISSING = "-"


def _check_format(fmt):
    if fmt not in FORMATS:
        msg = f"Unsupported output format {fmt!r}, expected one of {FORMATS}."
        raise ValueError(msg)


def _csv_text(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _json_text(document):
    return json.dumps(document, indent=2) + "\n"


def _percent(value, total=None):
    if value is None:
        return _MISSING
    count = value if total is None else value * total
    if total is not None and count.denominator == 1:
        text = f"{count.numerator}/{total}"
    else:
        text = f"{value.numerator}/{value.denominator}"
    return f"{text} ({float(value):.0%})"


def _fraction(value):
    return _MISSING if value is None else str(value)


def _codes(codes):
    return "(" + ",".join(str(code) for code in codes) + ")"


def _fault_text(diagnosis):
    if diagnosis.result is None:
        return "NoDecision"
    return f"{diagnosis.result.description} [{diagnosis.coarse.value}]"


def _flag_names(diagnosis):
    flags = []
    if diagnosis.ambiguous:
        flags.append("ambiguous")
    if diagnosis.low_confidence:
        flags.append("low confidence")
    return flags


def _flags(diagnosis):
    flags = _flag_names(diagnosis)
    return f"  ({', '.join(flags)})" if flags else ""


def _clamped_gases(report):
    return [
        name for name in GAS_NAMES if getattr(report.clamped, name).below_detection
    ]


def _clamp_note(report, name):
    return f"{name} below detection, using {report.clamped.ppm(name):g} ppm"


def _clamp_notes(report):
    return [_clamp_note(report, name) for name in _clamped_gases(report)]


#
# Per-sample diagnosis reports.
#


def _report_text(report):
    lines = [f"sample {report.sample_id}"]
    if report.sample.date is not None:
        lines[0] += f" ({report.sample.date.isoformat()})"
    if report.actual is not None:
        lines.append(f"  actual fault : {report.actual.value}")
    lines.append(f"  rogers codes : {_codes(report.rogers_codes)}")
    lines.append(
        f"  iec codes    : {_codes(report.iec_codes)}  "
        f"[{report.iec_variant.value} table]"
    )
    lines.append(
        "  gases        : "
        + "  ".join(f"{name} {report.clamped.ppm(name):g}" for name in GAS_NAMES)
    )
    lines.append(
        "  ratios       : "
        + "  ".join(
            f"{name} {float(value):.4g}"
            for name, value in zip(_RATIO_NAMES, report.rogers_ratios, strict=True)
        )
    )
    for diagnosis in report.diagnoses:
        lines.append(
            f"  {diagnosis.method.value:<11}: {_fault_text(diagnosis)}"
            f"  confidence {diagnosis.confidence:.3f}{_flags(diagnosis)}"
        )
    lines.extend(f"  note : {note}" for note in _clamp_notes(report))
    return "\n".join(lines)


# The Rogers ratios include every IEC ratio.
_RATIO_NAMES = RogersRatios._fields

_REPORT_COLUMNS = (
    "id",
    "date",
    "actual",
    *GAS_NAMES,
    *_RATIO_NAMES,
    "iec_table",
    "method",
    "codes",
    "row",
    "fault",
    "description",
    "coarse",
    "confidence",
    "low_confidence",
    "ambiguous",
    "notes",
)


def _report_rows(report):
    shared = (
        report.sample_id,
        "" if report.sample.date is None else report.sample.date.isoformat(),
        "" if report.actual is None else report.actual.value,
        *(repr(float(report.clamped.ppm(name))) for name in GAS_NAMES),
        *(repr(float(value)) for value in report.rogers_ratios),
        report.iec_variant.value,
    )
    notes = "; ".join(_clamp_notes(report))
    for diagnosis in report.diagnoses:
        if diagnosis.method.fault_type is RogersFault:
            codes = report.rogers_codes
        else:
            codes = report.iec_codes
        yield (
            *shared,
            diagnosis.method.value,
            _codes(codes),
            "" if diagnosis.row is None else diagnosis.row,
            "" if diagnosis.result is None else int(diagnosis.result),
            "" if diagnosis.result is None else diagnosis.result.description,
            diagnosis.coarse.value,
            f"{diagnosis.confidence:.6f}",
            diagnosis.low_confidence,
            diagnosis.ambiguous,
            notes,
        )


def render_reports(reports, fmt="text"):
    """Render a sequence of :class:`DiagnosisReport`."""
    _check_format(fmt)
    reports = list(reports)
    if fmt == "json":
        return _json_text(
            [
                {**report.to_dict(), "notes": _clamp_notes(report)}
                for report in reports
            ]
        )
    if fmt == "csv":
        rows = [row for report in reports for row in _report_rows(report)]
        return _csv_text(_REPORT_COLUMNS, rows)
    if not reports:
        return ""
    return "\n\n".join(_report_text(report) for report in reports) + "\n"


#
# Code printouts.
#

# One CSV record per ratio, per verdict and per clamped gas.
_CODES_COLUMNS = ("record", "scheme", "name", "value", "code", "row", "detail")


def _codes_rows(report, schemes):
    for scheme, ratios, codes in schemes:
        for name, value, code in zip(ratios._fields, ratios, codes, strict=True):
            yield ("ratio", scheme, name, repr(float(value)), code, "", "")
    for diagnosis in report.diagnoses:
        yield (
            "verdict",
            diagnosis.method.value,
            "NoDecision" if diagnosis.result is None else diagnosis.result.description,
            diagnosis.coarse.value,
            "",
            "" if diagnosis.row is None else diagnosis.row,
            "; ".join(_flag_names(diagnosis)),
        )
    for name in _clamped_gases(report):
        value = repr(float(report.clamped.ppm(name)))
        yield ("note", "", name, value, "", "", _clamp_note(report, name))


def render_codes(report, fmt="text"):
    """Render the ratios, codes and rule-table verdicts of one sample."""
    _check_format(fmt)
    if fmt == "json":
        document = report.to_dict()
        document["notes"] = _clamp_notes(report)
        return _json_text(document)
    schemes = (
        ("rogers", report.rogers_ratios, report.rogers_codes),
        ("iec", report.iec_ratios, report.iec_codes),
    )
    if fmt == "csv":
        return _csv_text(_CODES_COLUMNS, _codes_rows(report, schemes))
    lines = []
    for scheme, ratios, codes in schemes:
        lines.append(f"{scheme} ratios")
        for name, value, code in zip(ratios._fields, ratios, codes, strict=True):
            lines.append(f"  {name:<10} {float(value):>10.4f}  code {code}")
        lines.append(f"  codes {_codes(codes)}")
    for diagnosis in report.diagnoses:
        row = "" if diagnosis.row is None else f"  row {diagnosis.row}"
        lines.append(
            f"{diagnosis.method.value} verdict : {_fault_text(diagnosis)}"
            f"{row}{_flags(diagnosis)}"
        )
    lines.extend(f"note : {note}" for note in _clamp_notes(report))
    return "\n".join(lines) + "\n"


#
# Method comparison.
#


def _outcome(row, method):
    outcome = row.outcomes.get(method)
    return _MISSING if outcome is None else outcome.value


def _comparison_rows(table):
    # Sample rows first, then one row per score; method cells hold the values.
    blank = ("",) * len(COMPARISON_METHODS)
    yield ("iec_table", table.iec_variant.value, "", *blank, "")
    for row in table.rows:
        yield (
            "sample",
            row.sample_id,
            "" if row.actual is None else row.actual.value,
            *(_outcome(row, method) for method in COMPARISON_METHODS),
            "; ".join(f"{method.value}: {note}" for method, note in row.notes.items()),
        )
    yield (
        "accuracy",
        "",
        "",
        *(_fraction(table.accuracy.get(method)) for method in COMPARISON_METHODS),
        "",
    )
    if table.n_reference:
        agreement = []
        for method in COMPARISON_METHODS:
            count = table.agreement.get(method)
            agreement.append(
                _MISSING if count is None else f"{count}/{table.n_reference}"
            )
        yield ("agreement", "", "", *agreement, "")
        yield (
            "published_accuracy",
            "",
            "",
            *(
                _fraction(table.reference_accuracy.get(method))
                for method in COMPARISON_METHODS
            ),
            "",
        )
    for claim in table.claims:
        cells = [
            str(claim.claimed) if method is claim.method else ""
            for method in COMPARISON_METHODS
        ]
        flag = "discrepant" if claim.discrepant else ""
        yield ("claim", claim.source, "", *cells, flag)


def render_comparison(table, fmt="text"):
    """Render a :class:`ComparisonTable`."""
    _check_format(fmt)
    if fmt == "json":
        return _json_text(table.to_dict())
    if fmt == "csv":
        header = (
            "record",
            "id",
            "actual",
            *(method.value for method in COMPARISON_METHODS),
            "notes",
        )
        return _csv_text(header, _comparison_rows(table))

    width = 12
    header = ["id", "actual", *(method.value for method in COMPARISON_METHODS)]
    lines = [
        f"iec table: {table.iec_variant.value}",
        "".join(f"{name:<{width}}" for name in header).rstrip(),
    ]
    for row in table.rows:
        cells = [
            row.sample_id,
            _MISSING if row.actual is None else row.actual.value,
            *(_outcome(row, method) for method in COMPARISON_METHODS),
        ]
        lines.append("".join(f"{cell:<{width}}" for cell in cells).rstrip())
    notes = [
        f"  {row.sample_id} {method.value}: {note}"
        for row in table.rows
        for method, note in row.notes.items()
    ]
    if notes:
        lines.append("")
        lines.append("notes")
        lines.extend(notes)
    n_labelled = sum(1 for row in table.rows if row.actual is not None)
    lines.append("")
    lines.append("accuracy")
    for method in COMPARISON_METHODS:
        value = _percent(table.accuracy.get(method), n_labelled)
        lines.append(f"  {method.value:<11}{value}")
    if table.n_reference:
        lines.append("")
        lines.append(f"agreement with published results ({table.n_reference} rows)")
        for method in COMPARISON_METHODS:
            count = table.agreement.get(method)
            text = _MISSING if count is None else f"{count}/{table.n_reference}"
            lines.append(f"  {method.value:<11}{text}")
        lines.append("")
        lines.append("published column accuracy")
        n_scored = sum(
            1
            for row in table.rows
            if row.reference is not None and row.reference.actual is not None
        )
        for method in COMPARISON_METHODS:
            value = _percent(table.reference_accuracy.get(method), n_scored)
            lines.append(f"  {method.value:<11}{value}")
    if table.claims:
        lines.append("")
        lines.append("claimed accuracy")
        for claim in table.claims:
            flag = "  DISCREPANT" if claim.discrepant else ""
            lines.append(
                f"  {claim.method.value:<11}{_percent(claim.claimed)}"
                f"  [{claim.source}]{flag}"
            )
    return "\n".join(lines) + "\n"


#
# Gas trends.
#


def render_trend(report, fmt="text"):
    """Render a :class:`TrendReport`."""
    _check_format(fmt)
    if fmt == "json":
        return _json_text(report.to_dict())
    if fmt == "csv":
        rows = [
            (
                gas,
                point.date.isoformat(),
                f"{point.elapsed_days:g}",
                f"{point.ppm:g}",
                point.below_detection,
                "" if point.change is None else f"{point.change:g}",
            )
            for gas, points in report.series.items()
            for point in points
        ]
        return _csv_text(
            ("gas", "date", "elapsed_days", "ppm", "below_detection", "change"), rows
        )
    width = 14
    lines = [
        f"trend {report.sample_id}",
        f"{'gas':<6}"
        + "".join(f"{date.isoformat():>{width}}" for date in report.dates),
        f"{'days':<6}" + "".join(f"{days:>{width}g}" for days in report.elapsed_days),
    ]
    for gas, points in report.series.items():
        cells = []
        for point in points:
            text = f"{point.ppm:g}"
            if point.below_detection:
                text = "<" + text
            if point.change is not None:
                text += f" ({point.change:+g})"
            cells.append(f"{text:>{width}}")
        lines.append(f"{gas:<6}" + "".join(cells))
    return "\n".join(lines) + "\n"


#
# Training history.
#


def render_history(report, fmt="text"):
    """
    Render the per-epoch MSE of a :class:`~dga_ann.lm_trainer.TrainReport`.

    Epoch 0 is the starting error.

    """
    _check_format(fmt)
    if fmt == "json":
        return _json_text(report.to_dict())
    if fmt == "csv":
        rows = [(epoch, repr(mse)) for epoch, mse in enumerate(report.history)]
        return _csv_text(("epoch", "mse"), rows)
    lines = ["epoch  mse"]
    lines.extend(f"{epoch:>5}  {mse:.6g}" for epoch, mse in enumerate(report.history))
    return "\n".join(lines) + "\n"
