"""Delta-rule training of a single threshold unit, with a full update trace.

Arithmetic inside :func:`delta_train` is done in decimal so that values
such as ``0.1`` and ``0.3`` stay exact; binary floating point would turn
boundary rows (``0 > 0``) into spurious tiny violations and change which
columns get updated.
"""

from __future__ import annotations

import decimal
import enum
from dataclasses import dataclass, field
from decimal import Decimal
from typing import NamedTuple, Sequence

from .core import DimensionError, ThresholdUnit, TruthTable, mcp_eval_table

_CTX = decimal.Context(prec=34)


class ScanOrder(enum.Enum):
    GRAY_CYCLIC = "gray"
    FILE_ORDER_CYCLIC = "file"


class Status(enum.Enum):
    CONVERGED = "converged"
    MAX_UPDATES_EXCEEDED = "max-updates-exceeded"


@dataclass(frozen=True)
class DeltaConfig:
    learning_constant: float = 0.1
    max_updates: int = 10_000
    scan_order: ScanOrder = ScanOrder.GRAY_CYCLIC
    # a column is corrected when its violation exceeds this; a negative
    # value also corrects rows sitting exactly on the boundary
    zero_error_epsilon: float = 0.0

    def __post_init__(self):
        if not self.learning_constant > 0:
            raise ValueError("learning_constant must be positive")
        if self.max_updates < 1:
            raise ValueError("max_updates must be at least 1")


class TraceRow(NamedTuple):
    iteration: int
    column: tuple[int, ...]
    error: float
    correction: float
    updated_unit: ThresholdUnit
    touched: frozenset[str]

    def touched_labels(self) -> list[str]:
        n = len(self.column)
        order = [f"w{i + 1}" for i in range(n)] + ["t"]
        return [k for k in order if k in self.touched]


@dataclass(frozen=True)
class DeltaResult:
    status: Status
    final_unit: ThresholdUnit
    trace: tuple[TraceRow, ...]
    # rows still wrong under the strict firing rule (boundary rows with E == 0)
    mismatches: tuple[int, ...] = field(default=())

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def _dec(x) -> Decimal:
    if isinstance(x, Decimal):
        return x
    # repr gives the shortest decimal that round-trips, so 0.1 -> Decimal("0.1")
    return Decimal(repr(float(x)))


def _dot(weights, column):
    return sum(w for w, b in zip(weights, column) if b)


def delta_error(unit: ThresholdUnit, column: Sequence[int], target: int) -> float:
    """Size of the violation of the row's inequality; 0 when satisfied or on the boundary."""
    if len(column) != unit.n_inputs:
        raise DimensionError(f"unit has {unit.n_inputs} weights, column has {len(column)} bits")
    # same decimal semantics as delta_train, so boundary rows give exactly 0
    with decimal.localcontext(_CTX):
        s = _dot([_dec(w) for w in unit.weights], column)
        t = _dec(unit.threshold)
        gap = t - s if target else s - t
    return max(0.0, float(gap))


def delta_update(unit: ThresholdUnit, column: Sequence[int], target: int, d: float) -> ThresholdUnit:
    """Move the active weights and the threshold by ``d`` toward satisfying the row.

    For a target-1 row the active weights grow and ``t`` shrinks; for a
    target-0 row the signs flip. Weights whose input bit is 0 are left alone.
    """
    if len(column) != unit.n_inputs:
        raise DimensionError(f"unit has {unit.n_inputs} weights, column has {len(column)} bits")
    if d < 0:
        raise ValueError("correction must be nonnegative")
    w, t = _step(list(unit.weights), unit.threshold, column, target, d)
    return ThresholdUnit(tuple(w), t)


def _step(weights, threshold, column, target, d):
    sign = 1 if target else -1
    new_w = [w + sign * d if b else w for w, b in zip(weights, column)]
    return new_w, threshold - sign * d


def gray_order(n: int) -> list[tuple[int, ...]]:
    """Reflected binary Gray sequence, ``x1`` as the most significant bit."""
    out = []
    for i in range(2**n):
        g = i ^ (i >> 1)
        out.append(tuple((g >> (n - 1 - k)) & 1 for k in range(n)))
    return out


def scan_columns(table: TruthTable, order: ScanOrder) -> list[tuple[tuple[int, ...], int]]:
    if order is ScanOrder.GRAY_CYCLIC:
        lookup = table.as_dict()
        return [(x, lookup[x]) for x in gray_order(table.n_inputs)]
    return list(table.rows)


def delta_train(
    table: TruthTable, init: ThresholdUnit, config: DeltaConfig | None = None
) -> DeltaResult:
    """Cycle over the columns, correcting each erring one, until a clean pass."""
    config = config or DeltaConfig()
    if init.n_inputs != table.n_inputs:
        raise DimensionError(f"unit has {init.n_inputs} weights, table has {table.n_inputs} inputs")
    columns = scan_columns(table, config.scan_order)
    touched = [frozenset([f"w{i + 1}" for i, b in enumerate(x) if b] + ["t"]) for x, _ in columns]
    e = _dec(config.learning_constant)
    eps = _dec(config.zero_error_epsilon)
    zero = Decimal(0)
    w = [_dec(v) for v in init.weights]
    t = _dec(init.threshold)
    steps = []
    status = Status.CONVERGED

    with decimal.localcontext(_CTX):
        pos = 0
        clean = 0
        while clean < len(columns):
            x, f = columns[pos]
            s = _dot(w, x)
            gap = t - s if f else s - t
            if gap <= eps:
                clean += 1
            elif len(steps) >= config.max_updates:
                status = Status.MAX_UPDATES_EXCEEDED
                break
            else:
                E = max(zero, gap)
                d = (E + e) / 2
                w, t = _step(w, t, x, f, d)
                clean = 0
                steps.append((pos, E, d, w, t))
            pos = (pos + 1) % len(columns)

    trace = tuple(
        TraceRow(
            k,
            columns[p][0],
            float(E),
            float(d),
            ThresholdUnit._trusted(tuple(map(float, ws)), float(ts)),
            touched[p],
        )
        for k, (p, E, d, ws, ts) in enumerate(steps, start=1)
    )
    final = ThresholdUnit(tuple(float(v) for v in w), float(t))
    return DeltaResult(status, final, trace, tuple(mcp_eval_table(final, table)))


def replay(init: ThresholdUnit, trace: Sequence[TraceRow], table: TruthTable) -> ThresholdUnit:
    """Re-apply the recorded corrections in float arithmetic."""
    unit = init
    for row in trace:
        unit = delta_update(unit, row.column, table.target(row.column), row.correction)
    return unit


def trace_to_csv(trace: Sequence[TraceRow], n_inputs: int) -> str:
    header = ["iteration", "column", "E", "d"]
    header += [f"w{i + 1}" for i in range(n_inputs)] + ["t", "touched"]
    lines = [",".join(header)]
    for r in trace:
        u = r.updated_unit
        cells = [str(r.iteration), "".join(map(str, r.column)), repr(r.error), repr(r.correction)]
        cells += [repr(v) for v in u.weights] + [repr(u.threshold), ";".join(r.touched_labels())]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def render_trace(trace: Sequence[TraceRow], n_inputs: int) -> str:
    """Text table with ``--`` for parameters an update did not touch."""
    names = [f"w{i + 1}" for i in range(n_inputs)] + ["t"]
    header = ["Iter", "Column", "E", "d=(E+e)/2"] + [f"new {k}" for k in names]
    body = []
    for r in trace:
        vals = list(r.updated_unit.weights) + [r.updated_unit.threshold]
        cells = [str(r.iteration), ",".join(map(str, r.column)), f"{r.error:g}", f"{r.correction:g}"]
        cells += [f"{v:g}" if k in r.touched else "--" for k, v in zip(names, vals)]
        body.append(cells)
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    fmt = lambda row: "  ".join(c.rjust(wd) for c, wd in zip(row, widths))  # noqa: E731
    lines = [fmt(header), "  ".join("-" * wd for wd in widths)] + [fmt(r) for r in body]
    return "\n".join(lines) + "\n"
