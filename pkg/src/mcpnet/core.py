"""Truth tables, threshold units and the McCulloch-Pitts firing rule."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

MAX_INPUTS = 8

Bits = tuple[int, ...]


class DimensionError(ValueError):
    """Raised when a unit, input vector or table disagree on size."""


class TableParseError(ValueError):
    """Malformed truth-table text. ``line`` is 1-based, or None."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class ThresholdUnit:
    """One threshold logic unit: fires iff ``dot(weights, x) > threshold``."""

    weights: tuple[float, ...]
    threshold: float

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "threshold", float(self.threshold))
        if not all(math.isfinite(v) for v in (*self.weights, self.threshold)):
            raise ValueError("threshold unit parameters must be finite")

    @classmethod
    def _trusted(cls, weights: tuple[float, ...], threshold: float) -> "ThresholdUnit":
        # skips validation; callers pass finite float tuples
        unit = object.__new__(cls)
        object.__setattr__(unit, "weights", weights)
        object.__setattr__(unit, "threshold", threshold)
        return unit

    @property
    def n_inputs(self) -> int:
        return len(self.weights)

    def scaled(self, factor: float) -> "ThresholdUnit":
        return ThresholdUnit(tuple(w * factor for w in self.weights), self.threshold * factor)

    def __str__(self) -> str:
        parts = [f"w{i + 1}={w!r}" for i, w in enumerate(self.weights)]
        return " ".join(parts + [f"t={self.threshold!r}"])


@dataclass(frozen=True)
class TruthTable:
    """A complete boolean function of ``n_inputs`` bits.

    ``rows`` keeps the order it was given in; every input combination
    must appear exactly once.
    """

    n_inputs: int
    rows: tuple[tuple[Bits, int], ...]

    def __post_init__(self):
        if not 1 <= self.n_inputs <= MAX_INPUTS:
            raise ValueError(f"n_inputs must be in 1..{MAX_INPUTS}, got {self.n_inputs}")
        rows = tuple((tuple(int(b) for b in x), int(f)) for x, f in self.rows)
        seen = set()
        for x, f in rows:
            if len(x) != self.n_inputs:
                raise DimensionError(f"row {x} does not have {self.n_inputs} inputs")
            if any(b not in (0, 1) for b in x) or f not in (0, 1):
                raise ValueError(f"non-binary row {x} -> {f}")
            if x in seen:
                raise ValueError(f"duplicate input row {x}")
            seen.add(x)
        if len(rows) != 2**self.n_inputs:
            raise ValueError(f"expected {2 ** self.n_inputs} rows, got {len(rows)}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_outputs(cls, outputs: Sequence[int], n_inputs: int | None = None) -> "TruthTable":
        """Build a table from targets listed in binary-counting order (x1 is the MSB)."""
        if n_inputs is None:
            n_inputs = max(1, (len(outputs) - 1).bit_length())
        inputs = itertools.product((0, 1), repeat=n_inputs)
        return cls(n_inputs, tuple(zip(inputs, outputs)))

    @classmethod
    def from_function(cls, n_inputs: int, fn) -> "TruthTable":
        inputs = list(itertools.product((0, 1), repeat=n_inputs))
        return cls(n_inputs, tuple((x, int(bool(fn(*x)))) for x in inputs))

    def target(self, inputs: Sequence[int]) -> int:
        key = tuple(inputs)
        for x, f in self.rows:
            if x == key:
                return f
        raise KeyError(key)

    def as_dict(self) -> dict[Bits, int]:
        return dict(self.rows)

    @property
    def outputs(self) -> tuple[int, ...]:
        """Targets in binary-counting order, independent of row order."""
        lookup = self.as_dict()
        return tuple(lookup[x] for x in itertools.product((0, 1), repeat=self.n_inputs))

    def complement(self) -> "TruthTable":
        return TruthTable(self.n_inputs, tuple((x, 1 - f) for x, f in self.rows))

    def permute_inputs(self, perm: Sequence[int]) -> "TruthTable":
        """Input ``i`` of the new table is input ``perm[i]`` of this one."""
        return TruthTable(
            self.n_inputs,
            tuple((tuple(x[p] for p in perm), f) for x, f in self.rows),
        )

    def to_csv(self) -> str:
        header = ",".join([f"x{i + 1}" for i in range(self.n_inputs)] + ["f"])
        lines = [header] + [",".join(map(str, (*x, f))) for x, f in self.rows]
        return "\n".join(lines) + "\n"


def _check_dims(unit: ThresholdUnit, n: int) -> None:
    if unit.n_inputs != n:
        raise DimensionError(f"unit has {unit.n_inputs} weights but input has {n} bits")


def mcp_eval(unit: ThresholdUnit, inputs: Sequence[int]) -> int:
    """Return 1 iff the weighted input sum strictly exceeds the threshold."""
    _check_dims(unit, len(inputs))
    s = sum(w * x for w, x in zip(unit.weights, inputs))
    return 1 if s > unit.threshold else 0


def mcp_eval_table(unit: ThresholdUnit, table: TruthTable) -> list[int]:
    """Indices of the rows the unit gets wrong (empty when it realizes the table)."""
    _check_dims(unit, table.n_inputs)
    return [i for i, (x, f) in enumerate(table.rows) if mcp_eval(unit, x) != f]


def parse_truth_table(text: str) -> TruthTable:
    """Parse the ``x1,...,xn,f`` CSV format.

    Blank lines and ``#`` comments are ignored. Errors carry the offending
    line number.
    """
    header = None
    rows: list[tuple[Bits, int]] = []
    seen: dict[Bits, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cells = [c.strip() for c in line.split(",")]
        if header is None:
            n = len(cells) - 1
            expected = [f"x{i + 1}" for i in range(n)] + ["f"]
            if cells != expected:
                raise TableParseError(f"expected header {','.join(expected)!r}", lineno)
            if not 1 <= n <= MAX_INPUTS:
                raise TableParseError(f"number of inputs must be in 1..{MAX_INPUTS}", lineno)
            header = cells
            continue
        if len(cells) != len(header):
            raise TableParseError(f"expected {len(header)} cells, got {len(cells)}", lineno)
        if any(c not in ("0", "1") for c in cells):
            raise TableParseError(f"non-binary cell in {line!r}", lineno)
        bits = tuple(int(c) for c in cells)
        x, f = bits[:-1], bits[-1]
        if x in seen:
            raise TableParseError(f"duplicate input row {line!r} (first on line {seen[x]})", lineno)
        seen[x] = lineno
        rows.append((x, f))
    if header is None:
        raise TableParseError("empty truth table")
    n = len(header) - 1
    if len(rows) != 2**n:
        raise TableParseError(f"incomplete table: {len(rows)} of {2 ** n} input rows")
    return TruthTable(n, tuple(rows))
