"""Linear separability of truth tables.

A table is realizable by one threshold unit iff the homogeneous system of
strict inequalities over ``(w_1..w_n, t)`` it induces is feasible. Scaling
turns ``a.v > 0`` into the equivalent ``a.v >= 1``, which is decided exactly
by Fourier-Motzkin elimination in exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Union

from .core import DimensionError, ThresholdUnit, TruthTable, mcp_eval_table

MAX_VARS = 9


class CapacityError(ValueError):
    """System too large for exact elimination."""


class DegenerateUnitError(ValueError):
    pass


@dataclass(frozen=True)
class Constraint:
    """``coeffs . (w_1..w_n, t) > 0``; ``source`` is the generating row."""

    coeffs: tuple[int, ...]
    source: tuple[tuple[int, ...], int] | None = None

    def render(self) -> str:
        """Infix form such as ``w1+w2>t`` or ``0<t``."""
        if self.source is not None:
            x, f = self.source
        else:
            # Recover (x, f) from the coefficient pattern when possible.
            *ws, tc = self.coeffs
            f = 1 if tc < 0 else 0
            x = tuple(abs(c) for c in ws)
        active = [f"w{i + 1}" for i, b in enumerate(x) if b]
        lhs = "+".join(active) if active else "0"
        return f"{lhs}>t" if f else f"{lhs}<t"


@dataclass(frozen=True)
class InequalitySystem:
    n_vars: int
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        for c in self.constraints:
            if len(c.coeffs) != self.n_vars:
                raise DimensionError("constraint width does not match n_vars")

    def render(self, indices=None) -> list[str]:
        idx = range(len(self.constraints)) if indices is None else indices
        return [self.constraints[i].render() for i in idx]


@dataclass(frozen=True)
class Feasible:
    witness: ThresholdUnit
    exact: tuple[Fraction, ...] = field(repr=False, default=())

    @property
    def feasible(self) -> bool:
        return True


@dataclass(frozen=True)
class Infeasible:
    """Nonnegative multipliers over original constraints that sum to zero.

    Since each referenced constraint says ``a_i . v > 0``, a positive
    combination equal to the zero vector is a contradiction.
    """

    certificate: tuple[int, ...]
    multipliers: tuple[Fraction, ...]

    @property
    def feasible(self) -> bool:
        return False


Feasibility = Union[Feasible, Infeasible]


def build_inequalities(table: TruthTable) -> InequalitySystem:
    """One strict constraint per row, in table row order.

    Target 1 gives ``sum x_i w_i - t > 0``; target 0 gives ``t - sum x_i w_i > 0``.
    """
    cons = []
    for x, f in table.rows:
        sign = 1 if f else -1
        coeffs = tuple(sign * b for b in x) + (-sign,)
        cons.append(Constraint(coeffs, (x, f)))
    return InequalitySystem(table.n_inputs + 1, tuple(cons))


@dataclass
class _Row:
    """``coeffs . v >= rhs``, all integers, with integer multipliers over the originals."""

    coeffs: tuple[int, ...]
    rhs: int
    mult: dict[int, int]

    def key(self) -> tuple[tuple[int, ...], Fraction]:
        # direction and strength, independent of the row's overall scale
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        if g == 0:
            return self.coeffs, Fraction(self.rhs)
        return tuple(c // g for c in self.coeffs), Fraction(self.rhs, g)


def _normalize(row: _Row) -> _Row:
    g = row.rhs
    for c in row.coeffs:
        g = gcd(g, c)
    for m in row.mult.values():
        g = gcd(g, m)
    if g <= 1:
        return row
    coeffs = tuple(c // g for c in row.coeffs)
    return _Row(coeffs, row.rhs // g, {k: m // g for k, m in row.mult.items()})


def _prune(rows: list[_Row], max_ancestors: int) -> list[_Row]:
    """Drop rows that are duplicates, dominated, or Chernikov-redundant."""
    best: dict[tuple[int, ...], tuple[Fraction, _Row]] = {}
    for r in rows:
        if len(r.mult) > max_ancestors:
            continue
        if not any(r.coeffs) and r.rhs <= 0:
            continue  # 0 >= nonpositive: always true
        direction, strength = r.key()
        prev = best.get(direction)
        if (
            prev is None
            or strength > prev[0]
            or (strength == prev[0] and len(r.mult) < len(prev[1].mult))
        ):
            best[direction] = (strength, r)
    return [r for _, r in best.values()]


def _eliminate(rows: list[_Row], k: int) -> list[_Row]:
    pos = [r for r in rows if r.coeffs[k] > 0]
    neg = [r for r in rows if r.coeffs[k] < 0]
    out = [r for r in rows if r.coeffs[k] == 0]
    for p in pos:
        for q in neg:
            a, b = -q.coeffs[k], p.coeffs[k]
            coeffs = tuple(a * pc + b * qc for pc, qc in zip(p.coeffs, q.coeffs))
            mult = {src: a * m for src, m in p.mult.items()}
            for src, m in q.mult.items():
                mult[src] = mult.get(src, 0) + b * m
            out.append(_normalize(_Row(coeffs, a * p.rhs + b * q.rhs, mult)))
    return out


def _pick(lo: Fraction | None, hi: Fraction | None) -> Fraction:
    if lo is not None and hi is not None:
        return (lo + hi) / 2
    if lo is not None:
        return lo
    if hi is not None:
        return hi
    return Fraction(0)


def _pair_certificate(system: InequalitySystem) -> Infeasible | None:
    """Two constraints whose sum is cancelled by the sum of two others.

    For truth tables of up to 8 inputs this catches every non-separable
    case (2-asummability), long before elimination would.
    """
    by_sum: dict[tuple[int, ...], tuple[int, int]] = {}
    cons = system.constraints
    for i in range(len(cons)):
        for j in range(i + 1, len(cons)):
            total = tuple(a + b for a, b in zip(cons[i].coeffs, cons[j].coeffs))
            other = by_sum.get(tuple(-v for v in total))
            # pairs cannot overlap: a shared row would force two rows equal
            if other is not None and any(total):
                idx = tuple(sorted((*other, i, j)))
                return Infeasible(idx, (Fraction(1),) * 4)
            by_sum.setdefault(total, (i, j))
    return None


def decide(system: InequalitySystem) -> Feasibility:
    """Decide strict feasibility exactly; return a witness or a certificate."""
    n = system.n_vars
    if n > MAX_VARS:
        raise CapacityError(f"{n} variables exceeds elimination budget of {MAX_VARS}")
    quick = _pair_certificate(system)
    if quick is not None:
        return quick
    rows = [_Row(tuple(con.coeffs), 1, {i: 1}) for i, con in enumerate(system.constraints)]
    # t is the last variable and appears everywhere; eliminate it last.
    stages = []
    rows = _prune(rows, 1)
    for step, k in enumerate(range(n)):
        stages.append(rows)
        rows = _prune(_eliminate(rows, k), step + 2)
        for r in rows:
            if not any(r.coeffs) and r.rhs > 0:
                return _certificate(r)

    # back-substitute, last eliminated variable first
    values: list[Fraction] = [Fraction(0)] * n
    for k in reversed(range(n)):
        lo = hi = None
        for r in stages[k]:
            c = r.coeffs[k]
            if c == 0:
                continue
            rest = r.rhs - sum(r.coeffs[j] * values[j] for j in range(k + 1, n))
            bound = Fraction(rest) / c
            if c > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        values[k] = _pick(lo, hi)

    for con in system.constraints:
        assert sum(c * v for c, v in zip(con.coeffs, values)) >= 1
    witness = ThresholdUnit(tuple(float(v) for v in values[:-1]), float(values[-1]))
    return Feasible(_normalize_float(witness, values), tuple(values))


def _certificate(row: _Row) -> Infeasible:
    items = sorted((i, m) for i, m in row.mult.items() if m != 0)
    return Infeasible(tuple(i for i, _ in items), tuple(Fraction(m) for _, m in items))


def _normalize_float(unit: ThresholdUnit, exact: list[Fraction]) -> ThresholdUnit:
    scale = max(abs(v) for v in exact)
    return ThresholdUnit(tuple(float(v / scale) for v in exact[:-1]), float(exact[-1] / scale))


def replay_certificate(system: InequalitySystem, result: Infeasible) -> bool:
    """True iff the certificate's positive combination cancels to zero."""
    if not result.certificate or any(m <= 0 for m in result.multipliers):
        return False
    total = [Fraction(0)] * system.n_vars
    for i, m in zip(result.certificate, result.multipliers):
        for j, c in enumerate(system.constraints[i].coeffs):
            total[j] += m * c
    return not any(total)


def verify_witness(unit: ThresholdUnit, table: TruthTable) -> bool:
    """Substitute the unit into every row's strict inequality."""
    return not mcp_eval_table(unit, table)


def normalize_witness(unit: ThresholdUnit) -> ThresholdUnit:
    """Rescale so the largest of ``|w_i|, |t|`` is 1; behaviour is unchanged."""
    scale = max(abs(v) for v in (*unit.weights, unit.threshold))
    if scale == 0:
        raise DegenerateUnitError("cannot normalize an all-zero unit")
    if scale <= 1:
        return unit
    return unit.scaled(1 / scale)


def is_separable(table: TruthTable) -> bool:
    return decide(build_inequalities(table)).feasible
