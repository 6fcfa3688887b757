# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""Transformer fault diagnosis by dissolved gas analysis.

Interprets oil gas concentrations with the Rogers and IEC ratio tables, and
with small feedforward networks trained on those tables by
Levenberg-Marquardt, so that code vectors the tables leave undecided still
get a fault class.

"""

from .datasets import (
    builtin_corpus,
    builtin_histories,
    default_network,
    iec_training_set,
    load_model,
    parse_samples,
    reference_results,
    rogers_training_set,
    save_model,
    serialize_samples,
)
from .diagnose_pipeline import diagnose, evaluate, trend_report
from .gas_model import (
    CoarseFault,
    Diagnosis,
    GasSample,
    IecFault,
    Method,
    RogersFault,
    options,
)
from .lm_trainer import TrainConfig, cross_validate, train_lm
from .mlp import MlpNetwork, init_network
from .ratio_coding import clamp_sample, code_iec, code_rogers
from .rule_engine import IecVariant, iec_lookup, rogers_lookup

try:
    from ._version import version as __version__
except ModuleNotFoundError:
    __version__ = "unknown"

__all__ = [
    "CoarseFault",
    "Diagnosis",
    "GasSample",
    "IecFault",
    "IecVariant",
    "Method",
    "MlpNetwork",
    "RogersFault",
    "TrainConfig",
    "builtin_corpus",
    "builtin_histories",
    "clamp_sample",
    "code_iec",
    "code_rogers",
    "cross_validate",
    "default_network",
    "diagnose",
    "evaluate",
    "iec_lookup",
    "iec_training_set",
    "init_network",
    "load_model",
    "options",
    "parse_samples",
    "reference_results",
    "rogers_lookup",
    "rogers_training_set",
    "save_model",
    "serialize_samples",
    "train_lm",
    "trend_report",
]
