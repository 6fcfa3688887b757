# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Built-in data, sample file ingestion and model persistence.

Provides the expanded network training sets, the ten-sample field corpus
with its published comparison results, two dated gas histories, a CSV reader
and writer for gas samples, and the JSON model file format.

"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field
import csv
import datetime
from fractions import Fraction
import functools
import io
import json
import math

import numpy as np

from dga_ann import _fault_table_map as ftm
from dga_ann.exceptions import (
    InvalidConfigurationError,
    ModelFileError,
    SampleParseError,
)
from dga_ann.gas_model import (
    GAS_NAMES,
    CoarseFault,
    Concentration,
    GasSample,
    Method,
    options,
)
from dga_ann.lm_trainer import TrainConfig, TrainingPattern, train_lm
from dga_ann.mlp import ACTIVATIONS, MlpNetwork, init_network
from dga_ann.rule_engine import make_rule_table

__all__ = [
    "CSV_COLUMNS",
    "DEFAULT_LAYER_SIZES",
    "MODEL_FORMAT_VERSION",
    "ClaimedAccuracy",
    "Corpus",
    "ReferenceResults",
    "ReferenceRow",
    "builtin_corpus",
    "builtin_histories",
    "claimed_accuracies",
    "default_network",
    "iec_training_set",
    "load_model",
    "parse_samples",
    "reference_results",
    "rogers_training_set",
    "save_model",
    "serialize_samples",
    "train_default_network",
    "training_set",
]


#
# Training sets.
#


def _expand_training_table(entries, method):
    table = make_rule_table(entries, method)
    n_outputs = len(table.rows)
    patterns = []
    for rule in table.rows:
        for codes in rule.pattern.expand():
            # A member also covered by a more specific row takes that row's class.
            winner = table.resolve(codes).rule
            target = [0.0] * n_outputs
            target[int(winner.fault) - 1] = 1.0
            patterns.append(TrainingPattern(tuple(codes), tuple(target)))
    return patterns


def iec_training_set():
    """
    The IEC network training patterns : 9 table rows expanded to 12 patterns.

    >>> len(iec_training_set())
    12

    """
    return _expand_training_table(ftm.IEC_TRAINING, Method.ANN_IEC)


def rogers_training_set():
    """
    The Rogers network training patterns : 12 table rows expanded to 18.

    >>> len(rogers_training_set())
    18

    """
    return _expand_training_table(ftm.ROGERS_TRAINING, Method.ANN_ROGERS)


_TRAINING_SETS = {
    Method.ANN_IEC: iec_training_set,
    Method.ANN_ROGERS: rogers_training_set,
}


def training_set(method):
    """The expanded training patterns for a network method."""
    try:
        maker = _TRAINING_SETS[Method(method)]
    except KeyError:
        msg = f"{Method(method).value!r} has no training set."
        raise ValueError(msg) from None
    return maker()


#
# Gas sample CSV format.
#

CSV_COLUMNS = ("id", "date", *GAS_NAMES, "label")

_LABELS = {"N", "Normal", "PD", "ARC", "OH"}


def _parse_gas_cell(cell, floor):
    """
    Interpret one gas cell : a number, "<v" or empty.

    Raises ValueError for anything else, or for negative values.

    """
    text = cell.strip()
    if text in ("", "-", "–"):
        return Concentration(float(floor), True)
    below = text.startswith("<")
    if below:
        text = text[1:].strip()
    value = float(text)
    if not math.isfinite(value):
        msg = f"gas value {cell!r} is not finite"
        raise ValueError(msg)
    if value < 0:
        msg = f"gas value {cell!r} is negative"
        raise ValueError(msg)
    return Concentration(value, below)


def _sample_from_cells(cells, floor, line=None):
    values = dict(zip(CSV_COLUMNS, cells, strict=False))
    sample_id = values["id"].strip()
    if not sample_id:
        raise SampleParseError("empty sample id", line)
    date = values["date"].strip()
    if date:
        try:
            date = datetime.date.fromisoformat(date)
        except ValueError:
            msg = f"invalid ISO-8601 date {values['date']!r}"
            raise SampleParseError(msg, line) from None
    else:
        date = None
    label = values.get("label", "").strip()
    if label:
        if label not in _LABELS:
            msg = f"unknown fault label {label!r} (expected N, PD, ARC or OH)"
            raise SampleParseError(msg, line)
        label = CoarseFault.from_label(label)
    else:
        label = None
    gases = {}
    for name in GAS_NAMES:
        try:
            gases[name] = _parse_gas_cell(values[name], floor)
        except ValueError as error:
            msg = f"column {name!r}: {error}"
            raise SampleParseError(msg, line) from None
    return GasSample(id=sample_id, date=date, actual_fault=label, **gases)


def parse_samples(stream, floor=None):
    """
    Read gas samples from CSV text.

    The header must be ``id,date,h2,ch4,c2h2,c2h4,c2h6,co,co2,label``, where
    the final label column may be left out.  Blank lines and lines starting
    with '#' are ignored.  Gas cells hold a number, ``<v`` for a reading below
    the detection limit v, or nothing for a gas not reported (stored at the
    detection floor, flagged).

    Args:

    * stream:
        A text stream, or a string holding the whole file.

    Kwargs:

    * floor:
        Value for empty gas cells.  Defaults to ``options.detection_floor``.

    Returns:
        A :class:`Corpus`.

    Raises :class:`~dga_ann.exceptions.SampleParseError`, carrying the line
    number, for any malformed row.

    """
    if floor is None:
        floor = options.detection_floor
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    header = None
    samples = []
    for i_line, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        cells = next(csv.reader([line]))
        if header is None:
            header = tuple(cell.strip().lower() for cell in cells)
            if header not in (CSV_COLUMNS, CSV_COLUMNS[:-1]):
                msg = (
                    f"unknown header {','.join(header)!r}; expected "
                    f"{','.join(CSV_COLUMNS)!r}"
                )
                raise SampleParseError(msg, i_line)
            continue
        if len(cells) != len(header):
            msg = f"expected {len(header)} columns, found {len(cells)}"
            raise SampleParseError(msg, i_line)
        samples.append(_sample_from_cells(cells, floor, i_line))
    if header is None:
        msg = "no header row"
        raise SampleParseError(msg)
    return Corpus(tuple(samples))


def _format_ppm(value):
    text = repr(float(value))
    if text.endswith(".0"):
        text = text[:-2]
    return text


def serialize_samples(samples):
    """
    Write gas samples as CSV text, the inverse of :func:`parse_samples`.

    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for sample in samples:
        row = [sample.id, "" if sample.date is None else sample.date.isoformat()]
        for name in GAS_NAMES:
            conc = getattr(sample, name)
            text = _format_ppm(conc.value)
            row.append("<" + text if conc.below_detection else text)
        label = sample.actual_fault
        row.append("" if label is None else label.short_label)
        writer.writerow(row)
    return buffer.getvalue()


#
# Built-in field data.
#


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of gas samples, with optional per-sample notes."""

    samples: tuple[GasSample, ...]
    notes: dict = field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter(self.samples)

    def __len__(self):
        return len(self.samples)

    def __getitem__(self, index):
        return self.samples[index]

    @property
    def ids(self):
        return tuple(sample.id for sample in self.samples)

    @property
    def labeled(self):
        """True when every sample has a known fault."""
        return bool(self.samples) and all(
            sample.actual_fault is not None for sample in self.samples
        )


def _printed_sample(sample_id, cells, label=None, date=None):
    # cells in printed order : H2, CH4, CO, CO2, C2H4, C2H6, C2H2
    names = ("h2", "ch4", "co", "co2", "c2h4", "c2h6", "c2h2")
    gases = {
        name: _parse_gas_cell(cell, 1.0)
        for name, cell in zip(names, cells, strict=True)
    }
    return GasSample(
        id=sample_id,
        date=date,
        actual_fault=None if label is None else CoarseFault.from_label(label),
        **gases,
    )


_CORPUS_ROWS = (
    ("17", "15", "292", "6956", "78", "20", "35", "ARC"),
    ("1046", "2809", "681", "7820", "321", "675", "7", "PD"),
    ("127", "76", "879", "3471", "23", "32", "49", "ARC"),
    ("11", "101", "597", "1944", "110", "<1", "<1", "OH"),
    ("107", "27", "-", "1414", "18", "25", "65", "ARC"),
    ("39", "33", "991", "3280", "9", "7", "2", "N"),
    ("72", "278", "53", "610", "176", "289", "<1", "OH"),
    ("1", "39", "361", "4081", "9", "36", "1", "N"),
    ("111", "26", "293", "2188", "31", "9", "65", "PD"),
    ("1443", "3899", "934", "13561", "600", "1115", "113", "OH"),
)

_CORPUS_NOTES = {
    "s4": (
        "Sidi-Aiche 220 kV mobile unit; its own record lists C2H4 <1 and "
        "C2H6 110, swapped relative to this row."
    ),
    "s5": (
        "Darguina autotransformer, 17 April 2001; CO not reported; its own "
        "record lists C2H4 25 and C2H6 18, swapped relative to this row."
    ),
    "s9": "El-Meghier 220 kV mobile unit, 17 April 2001.",
    "s10": "Akbou 60 kV unit.",
}


@functools.cache
def builtin_corpus():
    """
    The ten labelled field samples.

    Ids run "s1" to "s10".  Readings printed as "<1", and the unreported CO
    of sample 5, are stored as 1 ppm with the below-detection flag.

    """
    samples = []
    for i_row, row in enumerate(_CORPUS_ROWS, start=1):
        sample_id = f"s{i_row}"
        samples.append(_printed_sample(sample_id, row[:7], label=row[7]))
    notes = {
        sample.id: _CORPUS_NOTES.get(sample.id, "Setif transformer park database.")
        for sample in samples
    }
    return Corpus(tuple(samples), notes)


_HISTORIES = {
    "el-meghier": (
        ("2001-04-17", ("111", "26", "293", "2188", "31", "9", "65")),
        ("2003-05-06", ("27", "1", "316", "1757", "20", "14", "<1")),
        ("2005-05-24", ("41", "<1", "419", "2737", "<1", "<1", "<1")),
    ),
    "darguina": (
        ("2001-04-17", ("107", "27", "-", "1414", "25", "18", "65")),
        ("2003-03-14", ("<1", "<1", "40", "434", "<1", "<1", "7")),
        ("2005-05-23", ("645", "45", "217", "2099", "51", "<1", "326")),
    ),
}


def builtin_histories():
    """
    Dated gas histories of two transformers, keyed by id.

    Returns:
        A dict of id to a tuple of dated :class:`GasSample`, oldest first.

    """
    return {
        name: tuple(
            _printed_sample(name, cells, date=datetime.date.fromisoformat(date))
            for date, cells in rows
        )
        for name, rows in _HISTORIES.items()
    }


ReferenceRow = namedtuple(
    "ReferenceRow", ("sample_id", "actual", "iec", "rogers", "ann_iec", "ann_rogers")
)

_REFERENCE_COLUMNS = {
    Method.IEC_TABLE: "iec",
    Method.ROGERS_TABLE: "rogers",
    Method.ANN_IEC: "ann_iec",
    Method.ANN_ROGERS: "ann_rogers",
}


@dataclass(frozen=True)
class ReferenceResults:
    """The published per-sample outcome of each method on the built-in corpus."""

    rows: tuple[ReferenceRow, ...]

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, index):
        return self.rows[index]

    def column(self, method):
        """One method's outcomes, in sample order."""
        name = _REFERENCE_COLUMNS[Method(method)]
        return tuple(getattr(row, name) for row in self.rows)

    def actual(self):
        return tuple(row.actual for row in self.rows)

    def for_sample(self, sample_id):
        for row in self.rows:
            if row.sample_id == sample_id:
                return row
        return None


_REFERENCE_GRID = (
    ("ARC", "PD", "NoDecision", "ARC", "ARC"),
    ("PD", "NoDecision", "OH", "OH", "OH"),
    ("ARC", "NoDecision", "ARC", "ARC", "ARC"),
    ("OH", "OH", "NoDecision", "OH", "OH"),
    ("ARC", "NoDecision", "NoDecision", "ARC", "ARC"),
    ("N", "PD", "OH", "PD", "N"),
    ("OH", "NoDecision", "OH", "OH", "OH"),
    ("N", "NoDecision", "OH", "OH", "OH"),
    ("PD", "PD", "ARC", "PD", "OH"),
    ("OH", "NoDecision", "OH", "OH", "OH"),
)


@functools.cache
def reference_results():
    """
    The published comparison grid for the built-in corpus.

    Columns are the actual fault, traditional IEC, traditional Rogers,
    network IEC and network Rogers, all as :class:`CoarseFault`.

    """
    rows = []
    for i_row, cells in enumerate(_REFERENCE_GRID, start=1):
        faults = [CoarseFault.from_label(cell) for cell in cells]
        rows.append(ReferenceRow(f"s{i_row}", *faults))
    return ReferenceResults(tuple(rows))


ClaimedAccuracy = namedtuple("ClaimedAccuracy", ("method", "accuracy", "source"))


def claimed_accuracies():
    """The accuracies stated in the published study's text, for comparison."""
    return (
        ClaimedAccuracy(Method.IEC_TABLE, Fraction(1, 5), "conclusions"),
        ClaimedAccuracy(Method.ROGERS_TABLE, Fraction(2, 5), "conclusions"),
        ClaimedAccuracy(Method.ANN_IEC, Fraction(7, 10), "conclusions"),
        ClaimedAccuracy(Method.ANN_ROGERS, Fraction(7, 10), "conclusions"),
        ClaimedAccuracy(Method.ANN_ROGERS, Fraction(4, 5), "results text"),
    )


#
# Model files.
#

MODEL_FORMAT_VERSION = 1

# Training provenance, copied between MlpNetwork.metadata and the file.
_METADATA_KEYS = ("train_config", "final_mse", "train_report", "created")


def _model_to_dict(net, created=None):
    if net.method is None:
        msg = "Only networks with a method can be saved."
        raise ValueError(msg)
    return {
        "version": MODEL_FORMAT_VERSION,
        "method": net.method.value,
        "layer_sizes": list(net.layer_sizes),
        "weights": [weight.ravel().tolist() for weight in net.weights],
        "biases": [bias.tolist() for bias in net.biases],
        "hidden_activation": net.hidden_activation,
        "output_activation": net.output_activation,
        "input_encoding": "raw-codes",
        "seed": net.seed,
        **{key: net.metadata.get(key) for key in _METADATA_KEYS},
        "created": created,
    }


def save_model(net, path, created=None):
    """
    Write a network to a JSON model file.

    Training settings, final MSE and the per-epoch report are taken from
    ``net.metadata`` when present.  ``created`` is an optional timestamp
    string; without it, the same network always produces the same bytes.

    """
    content = json.dumps(_model_to_dict(net, created), indent=2) + "\n"
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(content)


def _model_field(document, key):
    if key not in document:
        raise ModelFileError("missing", key)
    return document[key]


def _layer_arrays(values, shapes, key):
    if not isinstance(values, list) or len(values) != len(shapes):
        msg = f"expected {len(shapes)} layers"
        raise ModelFileError(msg, key)
    arrays = []
    for i_layer, (flat, shape) in enumerate(zip(values, shapes, strict=True)):
        try:
            array = np.array(flat, dtype=float)
        except (TypeError, ValueError):
            msg = f"layer {i_layer + 1} is not numeric"
            raise ModelFileError(msg, key) from None
        if array.ndim != 1 or array.size != math.prod(shape):
            msg = (
                f"layer {i_layer + 1} holds {array.size} values, "
                f"expected {math.prod(shape)}"
            )
            raise ModelFileError(msg, key)
        if not np.all(np.isfinite(array)):
            msg = f"layer {i_layer + 1} has non-finite values"
            raise ModelFileError(msg, key)
        arrays.append(array.reshape(shape))
    return tuple(arrays)


def _model_from_dict(document):
    if not isinstance(document, dict):
        raise ModelFileError("not a JSON object", "<document>")
    version = _model_field(document, "version")
    if version != MODEL_FORMAT_VERSION:
        msg = f"unsupported version {version!r}, expected {MODEL_FORMAT_VERSION}"
        raise ModelFileError(msg, "version")
    try:
        method = Method(_model_field(document, "method"))
    except ValueError:
        raise ModelFileError("unknown method", "method") from None
    if not method.is_ann:
        raise ModelFileError(f"{method.value!r} is not a network method", "method")
    sizes = _model_field(document, "layer_sizes")
    if (
        not isinstance(sizes, list)
        or len(sizes) < 3
        or not all(isinstance(size, int) and size > 0 for size in sizes)
    ):
        raise ModelFileError("expected a list of positive integers", "layer_sizes")
    pairs = list(zip(sizes[:-1], sizes[1:], strict=True))
    weights = _layer_arrays(_model_field(document, "weights"), pairs, "weights")
    biases = _layer_arrays(
        _model_field(document, "biases"),
        [(fan_out,) for _, fan_out in pairs],
        "biases",
    )
    activations = {}
    for key in ("hidden_activation", "output_activation"):
        tag = _model_field(document, key)
        if tag not in ACTIVATIONS:
            raise ModelFileError(f"unknown activation {tag!r}", key)
        activations[key] = tag
    encoding = document.get("input_encoding", "raw-codes")
    if encoding != "raw-codes":
        raise ModelFileError(f"unsupported encoding {encoding!r}", "input_encoding")
    metadata = {key: document.get(key) for key in _METADATA_KEYS}
    try:
        net = MlpNetwork(
            layer_sizes=tuple(sizes),
            weights=weights,
            biases=biases,
            method=method,
            seed=document.get("seed"),
            metadata=metadata,
            **activations,
        )
    except InvalidConfigurationError as error:
        raise ModelFileError(str(error), "layer_sizes") from None
    return net


def load_model(path):
    """
    Read a network from a JSON model file.

    Raises :class:`~dga_ann.exceptions.ModelFileError`, naming the offending
    field, for a file that is truncated, of another version or inconsistent.

    """
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        msg = f"truncated or invalid JSON ({error.msg})"
        raise ModelFileError(msg, "<document>") from None
    return _model_from_dict(document)


#
# Pinned default networks.
#

#: Layer sizes of the default networks, chosen by cross-validation.
DEFAULT_LAYER_SIZES = {
    Method.ANN_IEC: (3, 10, 9),
    Method.ANN_ROGERS: (4, 12, 12),
}


def train_default_network(method, layer_sizes=None, config=None):
    """
    Train a network for a method on its built-in training set.

    Returns:
        A (network, report) pair; the network's metadata records the
        training settings and final MSE.

    """
    method = Method(method)
    if method not in DEFAULT_LAYER_SIZES:
        msg = f"{method.value!r} is not a network method."
        raise ValueError(msg)
    if layer_sizes is None:
        layer_sizes = DEFAULT_LAYER_SIZES[method]
    if config is None:
        config = TrainConfig()
    start = init_network(layer_sizes, config.seed, method=method)
    net, report = train_lm(start, training_set(method), config)
    net.metadata.update(
        train_config=config.to_dict(),
        final_mse=report.final_mse,
        train_report=report.to_dict(),
    )
    return net, report


@functools.cache
def default_network(method):
    """
    The pinned network for a method, trained on first use with the default
    layer sizes, seed and settings, then cached.

    """
    net, _ = train_default_network(Method(method))
    return net
