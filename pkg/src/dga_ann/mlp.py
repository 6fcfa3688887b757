# Copyright dga-ann contributors
#
# This file is part of dga-ann and is released under the BSD license.
# See LICENSE in the root of the repository for full licensing details.
"""
Feedforward multilayer perceptron for ratio-code classification.

Each non-input layer j computes ``S_j = f(sum_i X_i W_ij + theta_j)``, with the
logistic sigmoid as f in hidden layers and the identity at the output.
Networks are immutable : training produces new networks.

"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field
import warnings

import numpy as np

from dga_ann.exceptions import InvalidConfigurationError, LowConfidenceWarning
from dga_ann.gas_model import Diagnosis, Method, options

__all__ = [
    "ACTIVATIONS",
    "Decoded",
    "MlpNetwork",
    "decode_output",
    "forward",
    "init_network",
    "logsig",
]


def logsig(n):
    """
    Logistic sigmoid, 1 / (1 + exp(-n)).

    Accepts scalars or arrays.

    >>> float(logsig(0.0))
    0.5

    """
    # Same function, written so it cannot overflow.
    return 0.5 * (1.0 + np.tanh(0.5 * np.asarray(n, dtype=float)))


def _identity(n):
    return np.asarray(n, dtype=float)


#: Activation functions by tag.
ACTIVATIONS = {"logsig": logsig, "linear": _identity}

# The fixed input and output sizes of each network kind.
_METHOD_ARITY = {Method.ANN_IEC: (3, 9), Method.ANN_ROGERS: (4, 12)}


def _frozen_array(values, dtype=float):
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


def _check_layer_sizes(layer_sizes):
    try:
        sizes = tuple(int(size) for size in layer_sizes)
    except (TypeError, ValueError):
        msg = f"Layer sizes must be integers, got {layer_sizes!r}."
        raise InvalidConfigurationError(msg) from None
    if len(sizes) < 3:
        msg = (
            f"A network needs input, output and at least one hidden layer, "
            f"got layer sizes {sizes}."
        )
        raise InvalidConfigurationError(msg)
    if any(size < 1 for size in sizes):
        msg = f"Layer sizes must be positive, got {sizes}."
        raise InvalidConfigurationError(msg)
    if any(size != orig for size, orig in zip(sizes, layer_sizes, strict=True)):
        msg = f"Layer sizes must be whole numbers, got {layer_sizes!r}."
        raise InvalidConfigurationError(msg)
    return sizes


@dataclass(frozen=True, eq=False)
class MlpNetwork:
    """
    A trained or freshly initialised perceptron.

    ``weights[l]`` has shape (fan_in, fan_out), with entry [i, j] connecting
    neuron i of the previous layer to neuron j; ``biases[l]`` has shape
    (fan_out,).  The flat parameter order, used by the trainer and by model
    files, is each layer's weights in row-major order followed by its biases,
    layer by layer.

    """

    layer_sizes: tuple[int, ...]
    weights: tuple[np.ndarray, ...]
    biases: tuple[np.ndarray, ...]
    method: Method | None = None
    seed: int | None = None
    hidden_activation: str = "logsig"
    output_activation: str = "linear"
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        sizes = _check_layer_sizes(self.layer_sizes)
        n_layers = len(sizes) - 1
        if len(self.weights) != n_layers or len(self.biases) != n_layers:
            msg = (
                f"Layer sizes {sizes} need {n_layers} weight matrices and bias "
                f"vectors, got {len(self.weights)} and {len(self.biases)}."
            )
            raise InvalidConfigurationError(msg)
        weights = []
        biases = []
        for i_layer, (weight, bias) in enumerate(
            zip(self.weights, self.biases, strict=True)
        ):
            shape = (sizes[i_layer], sizes[i_layer + 1])
            weight = _frozen_array(weight)
            bias = _frozen_array(bias)
            if weight.shape != shape or bias.shape != shape[1:]:
                msg = (
                    f"Layer {i_layer + 1} weights {weight.shape} and biases "
                    f"{bias.shape} do not match layer sizes {sizes}."
                )
                raise InvalidConfigurationError(msg)
            if not (np.all(np.isfinite(weight)) and np.all(np.isfinite(bias))):
                msg = f"Layer {i_layer + 1} has non-finite weights."
                raise InvalidConfigurationError(msg)
            weights.append(weight)
            biases.append(bias)
        for tag in (self.hidden_activation, self.output_activation):
            if tag not in ACTIVATIONS:
                msg = f"Unknown activation {tag!r}."
                raise InvalidConfigurationError(msg)
        method = None if self.method is None else Method(self.method)
        if method is not None:
            if method not in _METHOD_ARITY:
                msg = f"{method.value!r} is not a network method."
                raise InvalidConfigurationError(msg)
            arity = _METHOD_ARITY[method]
            if (sizes[0], sizes[-1]) != arity:
                msg = (
                    f"A {method.value} network maps {arity[0]} inputs to "
                    f"{arity[1]} outputs, got layer sizes {sizes}."
                )
                raise InvalidConfigurationError(msg)
        object.__setattr__(self, "layer_sizes", sizes)
        object.__setattr__(self, "weights", tuple(weights))
        object.__setattr__(self, "biases", tuple(biases))
        object.__setattr__(self, "method", method)

    @property
    def n_inputs(self):
        return self.layer_sizes[0]

    @property
    def n_outputs(self):
        return self.layer_sizes[-1]

    @property
    def parameter_count(self):
        return sum(
            (fan_in + 1) * fan_out
            for fan_in, fan_out in zip(
                self.layer_sizes[:-1], self.layer_sizes[1:], strict=True
            )
        )

    def parameters(self):
        """All weights and biases as one flat vector."""
        parts = []
        for weight, bias in zip(self.weights, self.biases, strict=True):
            parts.append(weight.ravel())
            parts.append(bias)
        return np.concatenate(parts)

    def with_parameters(self, vector):
        """Return a copy of this network using the given flat parameters."""
        vector = np.asarray(vector, dtype=float)
        if vector.shape != (self.parameter_count,):
            msg = (
                f"Expected {self.parameter_count} parameters, "
                f"got an array of shape {vector.shape}."
            )
            raise ValueError(msg)
        weights = []
        biases = []
        offset = 0
        for fan_in, fan_out in zip(
            self.layer_sizes[:-1], self.layer_sizes[1:], strict=True
        ):
            size = fan_in * fan_out
            weights.append(vector[offset : offset + size].reshape(fan_in, fan_out))
            offset += size
            biases.append(vector[offset : offset + fan_out])
            offset += fan_out
        return MlpNetwork(
            layer_sizes=self.layer_sizes,
            weights=tuple(weights),
            biases=tuple(biases),
            method=self.method,
            seed=self.seed,
            hidden_activation=self.hidden_activation,
            output_activation=self.output_activation,
            metadata=dict(self.metadata),
        )

    def _check_inputs(self, inputs):
        array = np.asarray(inputs, dtype=float)
        if array.ndim not in (1, 2) or array.shape[-1] != self.n_inputs:
            msg = (
                f"Network expects {self.n_inputs} inputs per pattern, "
                f"got an array of shape {array.shape}."
            )
            raise ValueError(msg)
        return array

    def activations(self, inputs):
        """
        Return the outputs of every layer, input layer first.

        ``inputs`` is one pattern, or a 2-d array of patterns by row.

        """
        layer = self._check_inputs(inputs)
        hidden = ACTIVATIONS[self.hidden_activation]
        result = [layer]
        last = len(self.weights) - 1
        for i_layer, (weight, bias) in enumerate(
            zip(self.weights, self.biases, strict=True)
        ):
            net_input = layer @ weight + bias
            if i_layer == last:
                layer = ACTIVATIONS[self.output_activation](net_input)
            else:
                layer = hidden(net_input)
            result.append(layer)
        return result

    def forward(self, inputs):
        return self.activations(inputs)[-1]

    def diagnose(self, codes, threshold=None):
        """
        Classify a code vector, returning a :class:`Diagnosis`.

        Raises InvalidConfigurationError for a network with no method tag.

        """
        if self.method is None:
            msg = "Cannot diagnose with a network that has no method."
            raise InvalidConfigurationError(msg)
        decoded = decode_output(self.forward(codes), threshold)
        fault = self.method.fault_type(decoded.index)
        if decoded.low_confidence and options.warn_on_low_confidence:
            warnings.warn(
                f"{self.method.value} decision {fault.description!r} for codes "
                f"{tuple(codes)} has confidence {decoded.confidence:.3f}.",
                category=LowConfidenceWarning,
            )
        return Diagnosis(
            method=self.method,
            result=fault,
            coarse=fault.coarse,
            confidence=decoded.confidence,
            low_confidence=decoded.low_confidence,
        )


def init_network(layer_sizes, seed, method=None):
    """
    Make a network with weights and biases drawn uniformly from [-0.5, 0.5].

    Args:

    * layer_sizes:
        Input size, one or more hidden sizes, then output size.
    * seed:
        Integer seed : equal seeds give bit-identical networks.

    Kwargs:

    * method:
        :attr:`Method.ANN_IEC` or :attr:`Method.ANN_ROGERS`, checked against
        the input and output sizes.

    """
    sizes = _check_layer_sizes(layer_sizes)
    rng = np.random.default_rng(seed)
    weights = []
    biases = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:], strict=True):
        weights.append(rng.uniform(-0.5, 0.5, size=(fan_in, fan_out)))
        biases.append(rng.uniform(-0.5, 0.5, size=fan_out))
    return MlpNetwork(
        layer_sizes=sizes,
        weights=tuple(weights),
        biases=tuple(biases),
        method=method,
        seed=seed,
    )


def forward(net, inputs):
    """Run the network on one pattern, or on a 2-d array of patterns."""
    return net.forward(inputs)


Decoded = namedtuple("Decoded", ("index", "confidence", "low_confidence"))


def decode_output(output, threshold=None):
    """
    Turn a network output vector into a class decision.

    The class is the 1-based index of the largest component (the lowest
    index on ties), and the confidence is that component clipped to [0, 1].

    >>> decode_output([-0.2, 1.4, 0.3])
    Decoded(index=2, confidence=1.0, low_confidence=False)

    """
    if threshold is None:
        threshold = options.confidence_threshold
    values = np.asarray(output, dtype=float)
    if values.ndim != 1 or values.size == 0:
        msg = f"Cannot decode an output of shape {values.shape}."
        raise ValueError(msg)
    i_max = int(np.argmax(values))
    confidence = float(np.clip(values[i_max], 0.0, 1.0))
    return Decoded(i_max + 1, confidence, confidence < threshold)
