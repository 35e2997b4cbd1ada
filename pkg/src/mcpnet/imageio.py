"""16x16 monochrome bitmaps: PBM parsing, input encodings, thresholded classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .core import DimensionError
from .mlp import Dataset, Mlp, TrainConfig, TrainReport, mlp_init, predict, train_gd

SIZE = 16
DEFAULT_THRESHOLD = 0.8


class PbmError(ValueError):
    pass


@dataclass(frozen=True)
class Bitmap16:
    """Row-major 16x16 pixels; 1 is ink (black in PBM)."""

    pixels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(p) for p in row) for row in self.pixels)
        if len(rows) != SIZE or any(len(r) != SIZE for r in rows):
            raise DimensionError("bitmap must be 16x16")
        if any(p not in (0, 1) for r in rows for p in r):
            raise ValueError("pixels must be 0 or 1")
        object.__setattr__(self, "pixels", rows)

    @classmethod
    def from_array(cls, arr) -> "Bitmap16":
        return cls(tuple(tuple(int(v) for v in row) for row in np.asarray(arr)))

    def to_array(self) -> np.ndarray:
        return np.array(self.pixels, dtype=np.uint8)


class Encoding(enum.Enum):
    FLAT256 = "flat256"
    ROWWORD16 = "rowword16"

    @property
    def width(self) -> int:
        return 256 if self is Encoding.FLAT256 else 16


def parse_pbm(data: Union[bytes, str]) -> Bitmap16:
    """Read a plain (``P1``) PBM that is exactly 16x16."""
    if isinstance(data, bytes):
        try:
            data = data.decode("ascii")
        except UnicodeDecodeError:
            raise PbmError("PBM must be ASCII") from None
    tokens: list[str] = []
    for line in data.splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    if not tokens or tokens[0] != "P1":
        raise PbmError("missing P1 magic")
    if len(tokens) < 3:
        raise PbmError("missing dimensions")
    try:
        width, height = int(tokens[1]), int(tokens[2])
    except ValueError:
        raise PbmError("dimensions must be integers") from None
    if (width, height) != (SIZE, SIZE):
        raise PbmError(f"expected 16x16 image, got {width}x{height}")
    # P1 pixels may be written without separators
    bits = "".join(tokens[3:])
    if any(ch not in "01" for ch in bits):
        raise PbmError("pixel data must be 0/1")
    if len(bits) < SIZE * SIZE:
        raise PbmError(f"truncated pixel data: {len(bits)} of 256")
    if len(bits) > SIZE * SIZE:
        raise PbmError("trailing pixel data")
    return Bitmap16(tuple(tuple(int(b) for b in bits[r * SIZE : (r + 1) * SIZE]) for r in range(SIZE)))


def render_pbm(bitmap: Bitmap16, comment: str | None = None) -> str:
    lines = ["P1"]
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"{SIZE} {SIZE}")
    lines.extend(" ".join(map(str, row)) for row in bitmap.pixels)
    return "\n".join(lines) + "\n"


def encode(bitmap: Bitmap16, scheme: Encoding = Encoding.FLAT256) -> np.ndarray:
    """Network input vector for a bitmap.

    ``FLAT256`` is one 0/1 entry per pixel. ``ROWWORD16`` reads each row as
    a big-endian 16-bit integer and divides by 65535.
    """
    arr = bitmap.to_array()
    if scheme is Encoding.FLAT256:
        return arr.ravel().astype(float)
    place = 1 << np.arange(SIZE - 1, -1, -1, dtype=np.int64)
    return (arr.astype(np.int64) @ place) / 65535.0


@dataclass(frozen=True)
class Accepted:
    class_index: int
    score: float


@dataclass(frozen=True)
class Rejected:
    reason: str  # "none-above-threshold" or "ambiguous"
    candidates: tuple[tuple[int, float], ...] = ()


ClassDecision = Union[Accepted, Rejected]


def decide_class(scores: Sequence[float], threshold: float = DEFAULT_THRESHOLD) -> ClassDecision:
    """Accept only when exactly one class scores at or above the threshold."""
    cands = [(i, float(s)) for i, s in enumerate(scores) if s >= threshold]
    if not cands:
        return Rejected("none-above-threshold")
    if len(cands) > 1:
        cands.sort(key=lambda c: (-c[1], c[0]))
        return Rejected("ambiguous", tuple(cands))
    return Accepted(*cands[0])


def classify(
    mlp: Mlp,
    bitmap: Bitmap16,
    scheme: Encoding = Encoding.FLAT256,
    labels: Sequence[str] | None = None,
    threshold: float = DEFAULT_THRESHOLD,
) -> ClassDecision:
    sizes = mlp.layer_sizes
    if sizes[0] != scheme.width:
        raise DimensionError(f"{scheme.value} encoding gives {scheme.width} inputs, network takes {sizes[0]}")
    if labels is not None and len(labels) != sizes[-1]:
        raise DimensionError(f"{len(labels)} labels for {sizes[-1]} outputs")
    return decide_class(predict(mlp, encode(bitmap, scheme)), threshold)


def format_decision(decision: ClassDecision, labels: Sequence[str] | None = None) -> str:
    if isinstance(decision, Accepted):
        name = labels[decision.class_index] if labels else str(decision.class_index)
        return f"accepted {name} {decision.score!r}"
    if decision.reason == "ambiguous":
        names = [
            f"{labels[i] if labels else i}:{s!r}" for i, s in decision.candidates
        ]
        return f"rejected ambiguous {' '.join(names)}"
    return f"rejected {decision.reason}"


def parse_labels(text: str) -> list[str]:
    """One label per line; line k names class k."""
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


def train_classifier(
    bitmaps: Sequence[Bitmap16],
    scheme: Encoding = Encoding.FLAT256,
    hidden: int = 32,
    seed: int = 0,
    config: TrainConfig | None = None,
) -> TrainReport:
    """One-hot classifier with a tanh hidden layer and logistic outputs."""
    config = config or TrainConfig(learning_rate=2.0, max_epochs=20_000, target_loss=1e-3, seed=seed)
    x = np.array([encode(b, scheme) for b in bitmaps])
    data = Dataset(x, np.eye(len(bitmaps)))
    net = mlp_init([scheme.width, hidden, len(bitmaps)], ["tanh", "logistic"], seed, config.init_scale)
    return train_gd(net, data, config)
