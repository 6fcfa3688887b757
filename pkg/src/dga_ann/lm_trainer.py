# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Levenberg-Marquardt training of :class:`~dga_ann.mlp.MlpNetwork` objects.

Each epoch solves ``(J^T J + mu I) delta = -J^T e`` for a parameter step,
where e is the residual vector (network output minus target, pattern by
pattern) and J its Jacobian.  A step is kept only if it lowers the mean
squared error, in which case mu shrinks; otherwise mu grows and the step is
solved again.

"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import asdict, dataclass

import numpy as np

from dga_ann.exceptions import InvalidConfigurationError, TrainingError
from dga_ann.mlp import init_network

__all__ = [
    "CrossValidation",
    "TrainConfig",
    "TrainReport",
    "TrainingPattern",
    "check_jacobian",
    "cross_validate",
    "jacobian",
    "mse",
    "residuals",
    "train_lm",
]


@dataclass(frozen=True)
class TrainingPattern:
    """One input code vector with its one-hot target."""

    input: tuple[float, ...]
    target: tuple[float, ...]

    def __post_init__(self):
        inputs = tuple(float(value) for value in self.input)
        target = tuple(float(value) for value in self.target)
        if not inputs:
            msg = "A training pattern needs at least one input."
            raise ValueError(msg)
        if sorted(target) != [0.0] * (len(target) - 1) + [1.0]:
            msg = f"Target {target} is not a one-hot vector."
            raise ValueError(msg)
        object.__setattr__(self, "input", inputs)
        object.__setattr__(self, "target", target)

    @property
    def target_class(self):
        """The 1-based index of the hot target component."""
        return self.target.index(1.0) + 1


@dataclass(frozen=True)
class TrainConfig:
    mse_goal: float = 1e-3
    max_epochs: int = 1000
    mu_init: float = 1e-3
    mu_factor: float = 10.0
    mu_max: float = 1e10
    seed: int = 42

    def __post_init__(self):
        for name in ("mse_goal", "max_epochs", "mu_init", "mu_factor", "mu_max"):
            value = getattr(self, name)
            if not value > 0:
                msg = f"Training setting {name} must be positive, got {value!r}."
                raise InvalidConfigurationError(msg)
        if not self.mu_factor > 1:
            msg = f"mu_factor must exceed 1, got {self.mu_factor!r}."
            raise InvalidConfigurationError(msg)
        if self.mu_init > self.mu_max:
            msg = f"mu_init {self.mu_init!r} exceeds mu_max {self.mu_max!r}."
            raise InvalidConfigurationError(msg)
        if int(self.max_epochs) != self.max_epochs:
            msg = f"max_epochs must be a whole number, got {self.max_epochs!r}."
            raise InvalidConfigurationError(msg)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class TrainReport:
    """
    The course of one training run.

    ``history`` holds the starting MSE followed by the MSE after each
    accepted step, so ``epochs == len(history) - 1``.

    """

    epochs: int
    final_mse: float
    history: tuple[float, ...]
    converged: bool
    mu: float
    rejected_steps: int = 0

    def to_dict(self):
        result = asdict(self)
        result["history"] = list(self.history)
        return result

    def __str__(self):
        status = "converged" if self.converged else "not converged"
        return (
            f"{status} after {self.epochs} epochs : final MSE "
            f"{self.final_mse:.6g} (mu {self.mu:.3g}, "
            f"{self.rejected_steps} rejected steps)"
        )


def _pattern_arrays(net, patterns):
    patterns = list(patterns)
    if not patterns:
        msg = "The pattern set is empty."
        raise ValueError(msg)
    inputs = np.array([pattern.input for pattern in patterns], dtype=float)
    targets = np.array([pattern.target for pattern in patterns], dtype=float)
    if inputs.ndim != 2 or inputs.shape[1] != net.n_inputs:
        msg = f"Patterns do not all have {net.n_inputs} inputs."
        raise ValueError(msg)
    if targets.ndim != 2 or targets.shape[1] != net.n_outputs:
        msg = f"Patterns do not all have {net.n_outputs} targets."
        raise ValueError(msg)
    return inputs, targets


def _residuals(net, inputs, targets):
    return (net.forward(inputs) - targets).ravel()


def residuals(net, patterns):
    """
    The residual vector, output minus target.

    Entry ``p * n_outputs + k`` belongs to pattern p, output k.

    """
    inputs, targets = _pattern_arrays(net, patterns)
    return _residuals(net, inputs, targets)


def mse(net, patterns):
    """Mean over patterns and outputs of the squared output error."""
    errors = residuals(net, patterns)
    return float(np.mean(errors**2))


# Derivative of each activation, as a function of its output.
_DERIVATIVES = {
    "logsig": lambda out: out * (1.0 - out),
    "linear": np.ones_like,
}


def _jacobian(net, inputs):
    layers = net.activations(inputs)
    n_patterns = inputs.shape[0]
    n_outputs = net.n_outputs
    # sensitivity[p, k, m] : derivative of output k of pattern p with respect
    # to the net input of neuron m in the current layer.
    out_slope = _DERIVATIVES[net.output_activation](layers[-1])
    sensitivity = np.eye(n_outputs)[None, :, :] * out_slope[:, None, :]
    blocks = []
    for i_layer in range(len(net.weights) - 1, -1, -1):
        fan_in, fan_out = net.weights[i_layer].shape
        previous = layers[i_layer]
        d_weights = np.einsum("pi,pkm->pkim", previous, sensitivity)
        blocks.append(sensitivity.reshape(n_patterns * n_outputs, fan_out))
        blocks.append(d_weights.reshape(n_patterns * n_outputs, fan_in * fan_out))
        if i_layer > 0:
            slope = _DERIVATIVES[net.hidden_activation](previous)
            sensitivity = (sensitivity @ net.weights[i_layer].T) * slope[:, None, :]
    return np.hstack(blocks[::-1])


def jacobian(net, patterns):
    """
    Analytic Jacobian of :func:`residuals` with respect to the parameters.

    Rows follow the residual ordering, columns the flat parameter ordering
    of :meth:`~dga_ann.mlp.MlpNetwork.parameters`.

    """
    inputs, _ = _pattern_arrays(net, patterns)
    return _jacobian(net, inputs)


def check_jacobian(net, patterns, step=1e-6):
    """
    Compare :func:`jacobian` with central finite differences.

    Returns:
        The largest entry-wise deviation, each divided by the larger of 1 and
        the magnitudes of the two estimates.

    """
    inputs, targets = _pattern_arrays(net, patterns)
    analytic = _jacobian(net, inputs)
    params = net.parameters()
    numeric = np.empty_like(analytic)
    for i_param in range(params.size):
        shift = np.zeros_like(params)
        shift[i_param] = step
        upper = _residuals(net.with_parameters(params + shift), inputs, targets)
        lower = _residuals(net.with_parameters(params - shift), inputs, targets)
        numeric[:, i_param] = (upper - lower) / (2.0 * step)
    scale = np.maximum(1.0, np.maximum(np.abs(analytic), np.abs(numeric)))
    return float(np.max(np.abs(analytic - numeric) / scale))


def train_lm(net, patterns, config=None):
    """
    Train a network on a pattern set.

    Args:

    * net:
        The starting :class:`~dga_ann.mlp.MlpNetwork`, left unchanged.
    * patterns:
        Sequence of :class:`TrainingPattern`.

    Kwargs:

    * config:
        A :class:`TrainConfig`; defaults apply when omitted.

    Returns:
        A (trained network, :class:`TrainReport`) pair.

    Raises :class:`~dga_ann.exceptions.TrainingError` if mu passes
    ``config.mu_max`` without finding an improving step.

    """
    if config is None:
        config = TrainConfig()
    inputs, targets = _pattern_arrays(net, patterns)
    params = net.parameters()
    errors = _residuals(net, inputs, targets)
    current = float(np.mean(errors**2))
    history = [current]
    mu = config.mu_init
    rejected = 0
    identity = np.eye(params.size)

    def make_report():
        return TrainReport(
            epochs=len(history) - 1,
            final_mse=history[-1],
            history=tuple(history),
            converged=history[-1] <= config.mse_goal,
            mu=mu,
            rejected_steps=rejected,
        )

    while current > config.mse_goal and len(history) - 1 < config.max_epochs:
        jac = _jacobian(net, inputs)
        gradient = jac.T @ errors
        normal = jac.T @ jac
        while True:
            try:
                step = np.linalg.solve(normal + mu * identity, -gradient)
            except np.linalg.LinAlgError:
                step = None
            if step is not None and np.all(np.isfinite(step)):
                candidate = net.with_parameters(params + step)
                candidate_errors = _residuals(candidate, inputs, targets)
                candidate_mse = float(np.mean(candidate_errors**2))
                if candidate_mse < current:
                    net, params, errors = candidate, params + step, candidate_errors
                    current = candidate_mse
                    history.append(current)
                    mu = mu / config.mu_factor
                    break
            rejected += 1
            mu = mu * config.mu_factor
            if mu > config.mu_max:
                msg = (
                    f"No improving step found with mu up to {config.mu_max:g}; "
                    f"MSE stalled at {current:.6g}."
                )
                raise TrainingError(msg, report=make_report(), network=net)

    return net, make_report()


CrossValidation = namedtuple("CrossValidation", ("best", "scores"))


def _candidate_sizes(candidate, n_inputs, n_outputs):
    if np.ndim(candidate) == 0:
        sizes = (n_inputs, int(candidate), n_outputs)
    else:
        sizes = tuple(int(size) for size in candidate)
    if len(sizes) < 3 or sizes[0] != n_inputs or sizes[-1] != n_outputs:
        msg = (
            f"Candidate layer sizes {sizes} do not map {n_inputs} inputs "
            f"to {n_outputs} outputs."
        )
        raise InvalidConfigurationError(msg)
    return sizes


def cross_validate(candidates, patterns, config=None):
    """
    Choose layer sizes by leave-one-out cross-validation.

    Every candidate is trained once per pattern, from the same seeded start,
    on all the other patterns; its score is the mean MSE on the held-out
    patterns.  A fold that stops without converging still counts, using its
    last accepted network.

    Args:

    * candidates:
        Sequence of layer-size tuples, or of plain hidden-layer sizes.
    * patterns:
        Sequence of at least two :class:`TrainingPattern`.

    Returns:
        A ``(best, scores)`` namedtuple : ``best`` is the winning layer sizes
        (the lowest score, ties going to fewer hidden units) and ``scores``
        lists ``(layer_sizes, score)`` in candidate order.

    """
    if config is None:
        config = TrainConfig()
    patterns = list(patterns)
    candidates = list(candidates)
    if not candidates:
        msg = "Cross-validation needs at least one candidate."
        raise InvalidConfigurationError(msg)
    if len(patterns) < 2:
        msg = "Leave-one-out cross-validation needs at least two patterns."
        raise InvalidConfigurationError(msg)
    n_inputs = len(patterns[0].input)
    n_outputs = len(patterns[0].target)
    all_sizes = [_candidate_sizes(cand, n_inputs, n_outputs) for cand in candidates]

    scores = []
    for sizes in all_sizes:
        held_out = []
        for i_fold, pattern in enumerate(patterns):
            training = patterns[:i_fold] + patterns[i_fold + 1 :]
            start = init_network(sizes, config.seed)
            try:
                trained, _ = train_lm(start, training, config)
            except TrainingError as error:
                trained = error.network
            held_out.append(mse(trained, [pattern]))
        scores.append((sizes, float(np.mean(held_out))))

    best_sizes, _ = min(
        scores, key=lambda entry: (entry[1], sum(entry[0][1:-1]))
    )
    return CrossValidation(best_sizes, tuple(scores))
