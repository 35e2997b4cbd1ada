"""Small fully connected networks trained by full-batch gradient descent."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import DimensionError
from .rng import XorShift64Star

MODEL_MAGIC = "mlpv1"


class NumericError(ArithmeticError):
    pass


class Activation(enum.Enum):
    TANH = "tanh"
    LOGISTIC = "logistic"
    IDENTITY = "identity"

    @classmethod
    def parse(cls, name: str) -> "Activation":
        aliases = {"tansig": "tanh", "logsig": "logistic", "sigmoid": "logistic", "purelin": "identity"}
        name = name.strip().lower()
        return cls(aliases.get(name, name))

    def __call__(self, z: np.ndarray) -> np.ndarray:
        if self is Activation.TANH:
            return np.tanh(z)
        if self is Activation.LOGISTIC:
            # split by sign so exp never overflows
            out = np.empty_like(z)
            pos = z >= 0
            out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
            ez = np.exp(z[~pos])
            out[~pos] = ez / (1.0 + ez)
            return out
        return z

    def grad_from_output(self, a: np.ndarray) -> np.ndarray:
        """Derivative expressed through the activation value itself."""
        if self is Activation.TANH:
            return 1.0 - a * a
        if self is Activation.LOGISTIC:
            return a * (1.0 - a)
        return np.ones_like(a)


@dataclass
class Layer:
    weights: np.ndarray  # (n_out, n_in)
    bias: np.ndarray  # (n_out,)
    activation: Activation


@dataclass
class Mlp:
    layers: list[Layer]

    def __post_init__(self):
        if not self.layers:
            raise ValueError("network needs at least one layer")
        for prev, layer in zip(self.layers, self.layers[1:]):
            if layer.weights.shape[1] != prev.weights.shape[0]:
                raise DimensionError("layer shapes do not chain")
        for layer in self.layers:
            if layer.bias.shape != (layer.weights.shape[0],):
                raise DimensionError("bias length must match layer width")

    @property
    def layer_sizes(self) -> list[int]:
        return [self.layers[0].weights.shape[1]] + [l.weights.shape[0] for l in self.layers]

    @property
    def activations(self) -> list[Activation]:
        return [l.activation for l in self.layers]

    @property
    def n_params(self) -> int:
        return sum(l.weights.size + l.bias.size for l in self.layers)

    def copy(self) -> "Mlp":
        return Mlp([Layer(l.weights.copy(), l.bias.copy(), l.activation) for l in self.layers])

    def get_params(self) -> np.ndarray:
        return np.concatenate([np.concatenate([l.weights.ravel(), l.bias]) for l in self.layers])

    def with_params(self, flat: np.ndarray) -> "Mlp":
        flat = np.asarray(flat, dtype=float)
        if flat.shape != (self.n_params,):
            raise DimensionError(f"expected {self.n_params} parameters, got {flat.shape}")
        layers, k = [], 0
        for l in self.layers:
            w = flat[k : k + l.weights.size].reshape(l.weights.shape)
            k += l.weights.size
            b = flat[k : k + l.bias.size]
            k += l.bias.size
            layers.append(Layer(w.copy(), b.copy(), l.activation))
        return Mlp(layers)


@dataclass(frozen=True)
class Dataset:
    inputs: np.ndarray  # (N, n_in)
    targets: np.ndarray  # (N, n_out)

    def __post_init__(self):
        x = np.atleast_2d(np.asarray(self.inputs, dtype=float))
        y = np.asarray(self.targets, dtype=float)
        if y.ndim == 1:
            y = y.reshape(-1, 1)
        if x.shape[0] != y.shape[0]:
            raise DimensionError(f"{x.shape[0]} inputs but {y.shape[0]} targets")
        object.__setattr__(self, "inputs", x)
        object.__setattr__(self, "targets", y)

    def __len__(self) -> int:
        return self.inputs.shape[0]


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.5
    max_epochs: int = 20_000
    target_loss: float = 1e-3
    seed: int = 0
    init_scale: float = 0.5

    def __post_init__(self):
        if self.learning_rate < 0 or self.max_epochs < 0 or self.target_loss < 0 or self.init_scale < 0:
            raise ValueError("training settings must be nonnegative")


class TrainStatus(enum.Enum):
    REACHED_TARGET = "reached-target"
    MAX_EPOCHS = "max-epochs"
    DIVERGED = "diverged"


@dataclass
class TrainReport:
    mlp: Mlp
    status: TrainStatus
    epochs_run: int
    final_loss: float
    loss_history: list[float] = field(default_factory=list)


def mlp_init(
    layer_sizes: Sequence[int],
    activations: Sequence[Activation | str],
    seed: int = 0,
    init_scale: float = 0.5,
) -> Mlp:
    """Draw every weight and bias uniformly from ``[-init_scale, init_scale]``.

    Values come from :class:`XorShift64Star` layer by layer: the weight
    matrix row-major, then the bias vector.
    """
    sizes = [int(s) for s in layer_sizes]
    if len(sizes) < 2 or any(s < 1 for s in sizes):
        raise ValueError(f"invalid architecture {layer_sizes!r}")
    acts = [a if isinstance(a, Activation) else Activation.parse(a) for a in activations]
    if len(acts) != len(sizes) - 1:
        raise ValueError(f"need {len(sizes) - 1} activations, got {len(acts)}")
    rng = XorShift64Star(seed)
    layers = []
    for n_in, n_out, act in zip(sizes, sizes[1:], acts):
        w = np.array(rng.uniform_list(n_out * n_in, -init_scale, init_scale)).reshape(n_out, n_in)
        b = np.array(rng.uniform_list(n_out, -init_scale, init_scale))
        layers.append(Layer(w, b, act))
    return Mlp(layers)


def _forward(mlp: Mlp, x: np.ndarray) -> list[np.ndarray]:
    acts = [x]
    for layer in mlp.layers:
        acts.append(layer.activation(acts[-1] @ layer.weights.T + layer.bias))
    return acts


def _as_batch(mlp: Mlp, x) -> tuple[np.ndarray, bool]:
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    n_in = mlp.layer_sizes[0]
    if x.ndim != 2 or x.shape[1] != n_in:
        raise DimensionError(f"network expects {n_in} inputs, got shape {x.shape}")
    return x, single


def forward(mlp: Mlp, x) -> list[np.ndarray]:
    """Activations of every layer, input first and output last.

    Accepts one input vector or a batch (one sample per row).
    """
    batch, single = _as_batch(mlp, x)
    acts = _forward(mlp, batch)
    if not np.all(np.isfinite(acts[-1])):
        raise NumericError("non-finite network output")
    return [a[0] for a in acts] if single else acts


def predict(mlp: Mlp, x) -> np.ndarray:
    return forward(mlp, x)[-1]


def _check_dataset(mlp: Mlp, data: Dataset) -> None:
    sizes = mlp.layer_sizes
    if len(data) == 0:
        raise ValueError("empty dataset")
    if data.inputs.shape[1] != sizes[0] or data.targets.shape[1] != sizes[-1]:
        raise DimensionError(
            f"dataset is {data.inputs.shape[1]}->{data.targets.shape[1]}, network is {sizes[0]}->{sizes[-1]}"
        )


def loss(mlp: Mlp, data: Dataset) -> float:
    """Half mean squared error, summed over outputs and averaged over samples."""
    _check_dataset(mlp, data)
    err = predict(mlp, data.inputs) - data.targets
    return float(np.sum(err * err) / (2 * len(data)))


def _backward(mlp: Mlp, acts: list[np.ndarray], targets: np.ndarray):
    n = targets.shape[0]
    delta = (acts[-1] - targets) * mlp.layers[-1].activation.grad_from_output(acts[-1]) / n
    grads = [None] * len(mlp.layers)
    for i in reversed(range(len(mlp.layers))):
        layer = mlp.layers[i]
        grads[i] = (delta.T @ acts[i], delta.sum(axis=0))
        if i:
            delta = (delta @ layer.weights) * mlp.layers[i - 1].activation.grad_from_output(acts[i])
    return grads


def backprop_grad(mlp: Mlp, data: Dataset) -> list[tuple[np.ndarray, np.ndarray]]:
    """Exact gradient of :func:`loss` as ``(dW, db)`` per layer."""
    _check_dataset(mlp, data)
    acts = _forward(mlp, data.inputs)
    if not np.all(np.isfinite(acts[-1])):
        raise NumericError("non-finite network output")
    return _backward(mlp, acts, data.targets)


def flatten_grads(grads) -> np.ndarray:
    return np.concatenate([np.concatenate([gw.ravel(), gb]) for gw, gb in grads])


def train_gd(mlp: Mlp, data: Dataset, config: TrainConfig | None = None) -> TrainReport:
    """Plain gradient descent on the whole dataset each epoch.

    ``loss_history[k]`` is the loss after ``k`` updates. Training stops as
    soon as the loss is at or below ``target_loss``. The input network is
    not modified.
    """
    config = config or TrainConfig()
    _check_dataset(mlp, data)
    net = mlp.copy()
    x, y = data.inputs, data.targets
    lr = config.learning_rate
    history: list[float] = []
    with np.errstate(over="ignore", invalid="ignore"):
        epoch, status = _descend(net, x, y, lr, config, history)
    return TrainReport(net, status, epoch, history[-1], history)


def _descend(net: Mlp, x, y, lr: float, config: TrainConfig, history: list[float]):
    n = x.shape[0]
    status = TrainStatus.MAX_EPOCHS
    epoch = 0
    while True:
        acts = _forward(net, x)
        err = acts[-1] - y
        current = float(np.sum(err * err) / (2 * n))
        history.append(current)
        if not math.isfinite(current):
            status = TrainStatus.DIVERGED
            break
        if current <= config.target_loss:
            status = TrainStatus.REACHED_TARGET
            break
        if epoch >= config.max_epochs:
            break
        for layer, (gw, gb) in zip(net.layers, _backward(net, acts, y)):
            layer.weights -= lr * gw
            layer.bias -= lr * gb
        epoch += 1
    return epoch, status


def _fmt(values) -> str:
    return " ".join(repr(float(v)) for v in values)


def dumps_model(mlp: Mlp) -> str:
    """Text model: magic, sizes, activations, then one block per layer.

    Each block holds the weight matrix rows followed by the bias row,
    written with shortest round-trip decimals.
    """
    lines = [MODEL_MAGIC, ",".join(map(str, mlp.layer_sizes)), ",".join(a.value for a in mlp.activations)]
    for layer in mlp.layers:
        lines.append("")
        lines.extend(_fmt(row) for row in layer.weights)
        lines.append(_fmt(layer.bias))
    return "\n".join(lines) + "\n"


def loads_model(text: str) -> Mlp:
    lines = [ln.strip() for ln in text.splitlines()]
    if not lines or lines[0] != MODEL_MAGIC:
        raise ValueError(f"not an {MODEL_MAGIC} model file")
    try:
        sizes = [int(s) for s in lines[1].split(",")]
        acts = [Activation.parse(a) for a in lines[2].split(",")]
    except (IndexError, ValueError) as exc:
        raise ValueError(f"bad model header: {exc}") from None
    if len(sizes) < 2 or len(acts) != len(sizes) - 1:
        raise ValueError("layer sizes and activations disagree")
    rows = [ln for ln in lines[3:] if ln]
    layers, k = [], 0
    for n_in, n_out, act in zip(sizes, sizes[1:], acts):
        block = rows[k : k + n_out + 1]
        k += n_out + 1
        if len(block) != n_out + 1:
            raise ValueError("truncated model file")
        w = np.array([[float(v) for v in r.split()] for r in block[:-1]])
        b = np.array([float(v) for v in block[-1].split()])
        if w.shape != (n_out, n_in) or b.shape != (n_out,):
            raise ValueError("layer block has wrong shape")
        layers.append(Layer(w, b, act))
    if k != len(rows):
        raise ValueError("trailing data in model file")
    return Mlp(layers)


def parse_dataset(text: str) -> Dataset:
    """CSV with a header; columns named ``x*`` are inputs, the rest are targets."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty dataset file")
    header = [h.strip() for h in lines[0].split(",")]
    is_input = [h.startswith("x") for h in header]
    if not any(is_input) or all(is_input):
        raise ValueError("dataset needs both x* input columns and target columns")
    xs, ys = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(header):
            raise ValueError(f"row {lineno}: expected {len(header)} cells")
        vals = [float(c) for c in cells]
        xs.append([v for v, inp in zip(vals, is_input) if inp])
        ys.append([v for v, inp in zip(vals, is_input) if not inp])
    return Dataset(np.array(xs), np.array(ys))
