# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Command-line front end.

Exit status is 0 on success, 2 for unreadable or malformed input, 3 for
configuration errors (bad flags, missing or broken model files, unwritable
paths) and 4 when training fails to converge.

"""

import argparse
import datetime
import os
from pathlib import Path
import sys

from dga_ann import __version__
from dga_ann._render import (
    FORMATS,
    render_codes,
    render_comparison,
    render_history,
    render_reports,
    render_trend,
)
from dga_ann.datasets import (
    DEFAULT_LAYER_SIZES,
    builtin_corpus,
    builtin_histories,
    default_network,
    load_model,
    parse_samples,
    reference_results,
    save_model,
    train_default_network,
    training_set,
)
from dga_ann.diagnose_pipeline import diagnose, evaluate, trend_report
from dga_ann.exceptions import (
    InvalidConfigurationError,
    ModelFileError,
    SampleParseError,
    TrainingError,
    TrendError,
)
from dga_ann.gas_model import GAS_NAMES, GasSample, Method
from dga_ann.lm_trainer import TrainConfig, cross_validate
from dga_ann.rule_engine import IecVariant, export_tables

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_TRAINING = 4

#: Names the default model directory.
MODEL_DIR_ENV = "DGA_ANN_MODEL_DIR"

MODEL_FILENAMES = {
    Method.ANN_IEC: "iec.model.json",
    Method.ANN_ROGERS: "rogers.model.json",
}

BUILTIN = "builtin"

_EPILOG = f"""\
sample files are CSV with the header
  {",".join(("id", "date", *GAS_NAMES, "label"))}
where date (YYYY-MM-DD) and label (N, PD, ARC or OH) may be left empty and
the label column may be omitted.  A gas cell that is empty or written "<v"
is below detection.  Lines starting with '#' are ignored.  The token
'{BUILTIN}' names the built-in ten-sample corpus.

network models default to iec.model.json and rogers.model.json in the
directory named by ${MODEL_DIR_ENV}.

exit status: 0 success, 2 input or parse error, 3 configuration error,
4 training failure.
"""

_NETWORKS = {"iec": Method.ANN_IEC, "rogers": Method.ANN_ROGERS}


class _CliError(Exception):
    def __init__(self, message, status):
        super().__init__(message)
        self.status = status


def _positive(text):
    value = float(text)
    if not value > 0:
        msg = f"must be positive, got {text!r}"
        raise argparse.ArgumentTypeError(msg)
    return value


def _add_common(parser, iec_default=None):
    parser.add_argument(
        "--format", choices=FORMATS, default="text", help="output format"
    )
    parser.add_argument(
        "--output", type=Path, help="write to this file instead of stdout"
    )
    if iec_default is not None:
        parser.add_argument(
            "--iec-table",
            choices=[variant.value for variant in IecVariant],
            default=iec_default,
            help=f"IEC diagnosis table to use (default {iec_default})",
        )


def _add_models(parser):
    parser.add_argument("--model-iec", type=Path, help="ANN-IEC model file")
    parser.add_argument("--model-rogers", type=Path, help="ANN-Rogers model file")


def _add_detection(parser):
    parser.add_argument(
        "--floor",
        type=_positive,
        default=None,
        help="detection floor in ppm (default 1.0)",
    )
    parser.add_argument(
        "--threshold",
        type=float,
        default=None,
        help="network confidence threshold (default 0.5)",
    )


def make_parser():
    parser = argparse.ArgumentParser(
        prog="dga-ann",
        description=(
            "Transformer fault diagnosis from dissolved gases by the Rogers "
            "and IEC ratio tables and by trained neural networks."
        ),
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser(
        "diagnose",
        help="diagnose every sample of a CSV file",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub.add_argument("--input", required=True, help=f"CSV file, or '{BUILTIN}'")
    sub.add_argument(
        "--method",
        action="append",
        choices=[method.value for method in Method],
        help="method to run, repeatable (default rogers and iec)",
    )
    _add_common(sub, iec_default=IecVariant.CORRECTED.value)
    _add_models(sub)
    _add_detection(sub)

    sub = commands.add_parser("train", help="train a network on its built-in set")
    sub.add_argument("--method", required=True, choices=sorted(_NETWORKS))
    sub.add_argument("--seed", type=int, default=TrainConfig.seed)
    sub.add_argument("--out", type=Path, help="model file to write")
    sub.add_argument(
        "--cv", action="store_true", help="choose the hidden layer size first"
    )
    sub.add_argument(
        "--hidden",
        type=int,
        nargs="+",
        help="hidden layer size, or the candidate sizes with --cv",
    )
    sub.add_argument("--max-epochs", type=int, default=TrainConfig.max_epochs)
    sub.add_argument("--mse-goal", type=float, default=TrainConfig.mse_goal)
    sub.add_argument(
        "--stamp", action="store_true", help="record the creation time in the model"
    )
    sub.add_argument(
        "--history",
        choices=FORMATS,
        default="text",
        help="format of the per-epoch MSE listing on stdout",
    )

    sub = commands.add_parser(
        "eval",
        help="compare all methods on a labelled corpus",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub.add_argument("--corpus", default=BUILTIN, help=f"CSV file, or '{BUILTIN}'")
    _add_common(sub, iec_default=IecVariant.PRINTED.value)
    _add_models(sub)
    _add_detection(sub)
    networks = sub.add_mutually_exclusive_group()
    networks.add_argument(
        "--train-first",
        action="store_true",
        help="train both networks in-process instead of loading models",
    )
    networks.add_argument(
        "--rules-only",
        action="store_true",
        help="score the rule tables only, leaving the network columns empty",
    )
    sub.add_argument("--seed", type=int, default=TrainConfig.seed)
    sub.add_argument("--workers", type=int, default=None, help="diagnosis threads")

    sub = commands.add_parser("codes", help="show ratios and codes for given gases")
    for name in GAS_NAMES:
        sub.add_argument(f"--{name}", type=float, help=f"{name} in ppm")
    _add_common(sub, iec_default=IecVariant.CORRECTED.value)
    _add_detection(sub)

    sub = commands.add_parser("trend", help="tabulate a dated gas history")
    source = sub.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--history",
        choices=sorted(builtin_histories()),
        help="a built-in transformer history",
    )
    source.add_argument("--input", type=Path, help="CSV file of dated samples")
    sub.add_argument("--id", help="sample id to follow in --input")
    _add_common(sub)

    sub = commands.add_parser("tables", help="export the fault tables")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--output", type=Path)

    return parser


#
# Shared helpers.
#


def _read_corpus(source, floor):
    if source == BUILTIN:
        return builtin_corpus()
    try:
        with open(source, encoding="utf-8", newline="") as handle:
            return parse_samples(handle, floor)
    except OSError as error:
        msg = f"cannot read {source}: {error.strerror or error}"
        raise _CliError(msg, EXIT_INPUT) from None
    except SampleParseError as error:
        msg = f"{source}: {error}"
        raise _CliError(msg, EXIT_INPUT) from None
    except UnicodeDecodeError as error:
        msg = f"{source}: not UTF-8 text, byte {error.start} ({error.reason})"
        raise _CliError(msg, EXIT_INPUT) from None


def _model_path(method, explicit):
    if explicit is not None:
        return explicit
    directory = os.environ.get(MODEL_DIR_ENV)
    if directory:
        path = Path(directory) / MODEL_FILENAMES[method]
        if path.exists():
            return path
    return None


def _load_models(args, wanted):
    explicit = {Method.ANN_IEC: args.model_iec, Method.ANN_ROGERS: args.model_rogers}
    models = {}
    for method in wanted:
        path = _model_path(method, explicit[method])
        if path is None:
            continue
        try:
            net = load_model(path)
        except OSError as error:
            msg = f"cannot read model {path}: {error.strerror or error}"
            raise _CliError(msg, EXIT_CONFIG) from None
        except ModelFileError as error:
            msg = f"bad model file {path}: {error}"
            raise _CliError(msg, EXIT_CONFIG) from None
        if net.method is not method:
            msg = f"model {path} is a {net.method.value} network, not {method.value}"
            raise _CliError(msg, EXIT_CONFIG)
        models[method] = net
    return models


def _check_writable(path):
    parent = path.parent
    if path.is_dir() or not parent.is_dir() or not os.access(parent, os.W_OK):
        msg = f"cannot write to {path}"
        raise _CliError(msg, EXIT_CONFIG)


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        try:
            output.write_text(text, encoding="utf-8")
        except OSError as error:
            msg = f"cannot write to {output}: {error.strerror or error}"
            raise _CliError(msg, EXIT_CONFIG) from None


#
# Subcommands.
#


def cmd_diagnose(args):
    if args.output is not None:
        _check_writable(args.output)
    methods = [Method(name) for name in args.method or ("rogers", "iec")]
    models = _load_models(args, [method for method in methods if method.is_ann])
    corpus = _read_corpus(args.input, args.floor)
    reports = [
        diagnose(
            sample,
            methods=methods,
            iec_variant=IecVariant(args.iec_table),
            models=models,
            floor=args.floor,
            threshold=args.threshold,
        )
        for sample in corpus
    ]
    _emit(render_reports(reports, args.format), args.output)
    return EXIT_OK


def cmd_train(args):
    method = _NETWORKS[args.method]
    out = args.out
    if out is None:
        directory = Path(os.environ.get(MODEL_DIR_ENV) or ".")
        out = directory / MODEL_FILENAMES[method]
    _check_writable(out)
    # Keep stdout parseable when the history is CSV or JSON.
    info = sys.stdout if args.history == "text" else sys.stderr
    config = TrainConfig(
        max_epochs=args.max_epochs, mse_goal=args.mse_goal, seed=args.seed
    )
    default_sizes = DEFAULT_LAYER_SIZES[method]
    layer_sizes = None
    if args.cv:
        candidates = args.hidden or (6, 8, 10, 12)
        result = cross_validate(candidates, training_set(method), config)
        for sizes, score in result.scores:
            print(f"candidate {sizes}: held-out MSE {score:.6g}", file=info)
        print(f"selected {result.best}", file=info)
        layer_sizes = result.best
    elif args.hidden:
        layer_sizes = (default_sizes[0], *args.hidden, default_sizes[-1])

    try:
        net, report = train_default_network(method, layer_sizes, config)
    except TrainingError as error:
        print(f"training failed: {error}", file=sys.stderr)
        if error.report is not None:
            print(error.report, file=sys.stderr)
        return EXIT_TRAINING
    print(report, file=info)
    sys.stdout.write(render_history(report, args.history))
    if not report.converged:
        print(
            f"training did not reach MSE {config.mse_goal:g} "
            f"in {config.max_epochs} epochs",
            file=sys.stderr,
        )
        return EXIT_TRAINING
    created = None
    if args.stamp:
        created = datetime.datetime.now(datetime.timezone.utc).isoformat(
            timespec="seconds"
        )
    try:
        save_model(net, out, created=created)
    except OSError as error:
        msg = f"cannot write to {out}: {error.strerror or error}"
        raise _CliError(msg, EXIT_CONFIG) from None
    print(f"model written to {out}", file=info)
    return EXIT_OK


def _train_networks(methods, seed):
    models = {}
    for method in methods:
        try:
            if seed == TrainConfig.seed:
                net = default_network(method)
            else:
                config = TrainConfig(seed=seed)
                net, _ = train_default_network(method, config=config)
        except TrainingError as error:
            msg = f"training {method.value} failed: {error}"
            raise _CliError(msg, EXIT_TRAINING) from None
        models[method] = net
    return models


def cmd_eval(args):
    if args.output is not None:
        _check_writable(args.output)
    corpus = _read_corpus(args.corpus, args.floor)
    networks = (Method.ANN_IEC, Method.ANN_ROGERS)
    if args.rules_only:
        models = {}
    elif args.train_first:
        models = _train_networks(networks, args.seed)
    else:
        models = _load_models(args, networks)
        missing = [method for method in networks if method not in models]
        if missing:
            print(
                f"note: no model for {', '.join(method.value for method in missing)}; "
                f"training in process with seed {args.seed}",
                file=sys.stderr,
            )
            models.update(_train_networks(missing, args.seed))
    reference = reference_results() if args.corpus == BUILTIN else None
    table = evaluate(
        corpus,
        models=models,
        iec_variant=IecVariant(args.iec_table),
        reference=reference,
        floor=args.floor,
        threshold=args.threshold,
        max_workers=args.workers,
    )
    _emit(render_comparison(table, args.format), args.output)
    return EXIT_OK


def cmd_codes(args):
    missing = [
        f"--{name}" for name in GAS_NAMES[:5] if getattr(args, name) is None
    ]
    if missing:
        msg = f"missing gas value(s): {' '.join(missing)}"
        raise _CliError(msg, EXIT_CONFIG)
    gases = {name: getattr(args, name) or 0.0 for name in GAS_NAMES}
    try:
        sample = GasSample(id="codes", **gases)
    except ValueError as error:
        raise _CliError(str(error), EXIT_CONFIG) from None
    report = diagnose(
        sample, iec_variant=IecVariant(args.iec_table), floor=args.floor
    )
    _emit(render_codes(report, args.format), args.output)
    return EXIT_OK


def cmd_trend(args):
    if args.history is not None:
        samples = builtin_histories()[args.history]
    else:
        if args.id is None:
            msg = "--input needs --id to pick the transformer"
            raise _CliError(msg, EXIT_CONFIG)
        corpus = _read_corpus(args.input, None)
        samples = [sample for sample in corpus if sample.id == args.id]
    try:
        report = trend_report(samples)
    except TrendError as error:
        raise _CliError(str(error), EXIT_INPUT) from None
    _emit(render_trend(report, args.format), args.output)
    return EXIT_OK


def cmd_tables(args):
    _emit(export_tables(args.format) + "\n", args.output)
    return EXIT_OK


_COMMANDS = {
    "diagnose": cmd_diagnose,
    "train": cmd_train,
    "eval": cmd_eval,
    "codes": cmd_codes,
    "trend": cmd_trend,
    "tables": cmd_tables,
}


def main(argv=None):
    """
    Run the command line, returning the exit status.

    Usage errors detected by the argument parser exit with status 2.

    """
    args = make_parser().parse_args(argv)
    try:
        status = _COMMANDS[args.command](args)
    except _CliError as error:
        print(f"dga-ann: error: {error}", file=sys.stderr)
        status = error.status
    except InvalidConfigurationError as error:
        print(f"dga-ann: error: {error}", file=sys.stderr)
        status = EXIT_CONFIG
    return status


if __name__ == "__main__":
    sys.exit(main())
