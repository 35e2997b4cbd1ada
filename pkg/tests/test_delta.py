import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcpnet.core import DimensionError, ThresholdUnit, TruthTable, mcp_eval_table
from mcpnet.delta import (
    DeltaConfig,
    ScanOrder,
    Status,
    delta_error,
    delta_train,
    delta_update,
    gray_order,
    render_trace,
    replay,
    trace_to_csv,
)
from mcpnet.separability import is_separable

REFERENCE_INIT = ThresholdUnit((0.2, -0.5), 0.1)

# iteration, column, E, d, new (w1, w2, t), touched
TABLE_1 = [
    (1, (0, 0), 0.1, 0.1, (0.2, -0.5, 0.0), {"t"}),
    (2, (0, 1), 0.5, 0.3, (0.2, -0.2, -0.3), {"w2", "t"}),
    (3, (1, 1), 0.3, 0.2, (0.0, -0.4, -0.1), {"w1", "w2", "t"}),
    (4, (1, 0), 0.1, 0.1, (-0.1, -0.4, 0.0), {"w1", "t"}),
    (5, (0, 1), 0.4, 0.25, (-0.1, -0.15, -0.25), {"w2", "t"}),
    (6, (1, 0), 0.15, 0.125, (-0.225, -0.15, -0.125), {"w1", "t"}),
    (7, (0, 1), 0.025, 0.0625, (-0.225, -0.0875, -0.1875), {"w2", "t"}),
]


def test_error_examples():
    assert delta_error(REFERENCE_INIT, (0, 0), 1) == pytest.approx(0.1, abs=1e-15)
    assert delta_error(ThresholdUnit((0.2, -0.5), 0.0), (0, 1), 1) == pytest.approx(0.5, abs=1e-15)
    assert delta_error(ThresholdUnit((0.7, 0.7), 0.5), (1, 1), 1) == 0


def test_error_dimension():
    with pytest.raises(DimensionError):
        delta_error(REFERENCE_INIT, (0, 0, 1), 1)


def test_update_iteration_1():
    assert delta_update(REFERENCE_INIT, (0, 0), 1, 0.1) == ThresholdUnit((0.2, -0.5), 0.0)


def test_update_iteration_3():
    new = delta_update(ThresholdUnit((0.2, -0.2), -0.3), (1, 1), 0, 0.2)
    assert new.weights == pytest.approx((0.0, -0.4), abs=1e-12)
    assert new.threshold == pytest.approx(-0.1, abs=1e-12)


def test_update_zero_correction_is_identity():
    assert delta_update(REFERENCE_INIT, (1, 1), 0, 0.0) == REFERENCE_INIT


def test_update_rejects_negative_correction():
    with pytest.raises(ValueError):
        delta_update(REFERENCE_INIT, (1, 1), 0, -0.1)


def test_gray_order():
    assert gray_order(2) == [(0, 0), (0, 1), (1, 1), (1, 0)]
    seq = gray_order(4)
    assert len(set(seq)) == 16
    for a, b in zip(seq, seq[1:] + seq[:1]):
        assert sum(x != y for x, y in zip(a, b)) == 1


def test_reference_trace(delta_table):
    result = delta_train(delta_table, REFERENCE_INIT, DeltaConfig(learning_constant=0.1))
    assert result.status is Status.CONVERGED
    assert len(result.trace) == 7
    for row, (it, col, E, d, new, touched) in zip(result.trace, TABLE_1):
        assert row.iteration == it
        assert row.column == col
        assert row.error == pytest.approx(E, abs=1e-12)
        assert row.correction == pytest.approx(d, abs=1e-12)
        got = (*row.updated_unit.weights, row.updated_unit.threshold)
        assert got == pytest.approx(new, abs=1e-12)
        assert row.touched == touched
    assert result.final_unit == ThresholdUnit((-0.225, -0.0875), -0.1875)
    assert result.mismatches == ()


def test_reference_trace_csv(delta_table):
    result = delta_train(delta_table, REFERENCE_INIT)
    lines = trace_to_csv(result.trace, 2).splitlines()
    assert lines[0] == "iteration,column,E,d,w1,w2,t,touched"
    assert lines[-1] == "7,01,0.025,0.0625,-0.225,-0.0875,-0.1875,w2;t"
    assert len(lines) == 8


def test_rendered_trace_marks_untouched(delta_table):
    text = render_trace(delta_train(delta_table, REFERENCE_INIT).trace, 2)
    first = text.splitlines()[2].split()
    assert first == ["1", "0,0", "0.1", "0.1", "--", "--", "0"]


def test_xor_does_not_converge(xor_table):
    assert not is_separable(xor_table)
    result = delta_train(xor_table, REFERENCE_INIT, DeltaConfig(max_updates=10_000))
    assert result.status is Status.MAX_UPDATES_EXCEEDED
    assert len(result.trace) == 10_000


def test_already_correct_unit(or_table):
    result = delta_train(or_table, ThresholdUnit((0.7, 0.7), 0.5))
    assert result.converged and result.trace == ()


def test_boundary_row_is_reported():
    # 0 > 0 on row 00: E is zero, so no update, but the strict rule misses it
    table = TruthTable.from_outputs([1, 1, 1, 1])
    result = delta_train(table, ThresholdUnit((1.0, 1.0), 0.0))
    assert result.converged and result.trace == ()
    assert result.mismatches == (0,)
    forced = delta_train(table, ThresholdUnit((1.0, 1.0), 0.0), DeltaConfig(zero_error_epsilon=-1e-9))
    assert forced.converged and forced.mismatches == ()
    assert forced.trace[0].error == 0 and forced.trace[0].correction == pytest.approx(0.05)


def test_config_validation():
    with pytest.raises(ValueError):
        DeltaConfig(learning_constant=0)
    with pytest.raises(ValueError):
        DeltaConfig(max_updates=0)


def test_file_order_scan(delta_table):
    result = delta_train(delta_table, REFERENCE_INIT, DeltaConfig(scan_order=ScanOrder.FILE_ORDER_CYCLIC))
    assert result.converged
    assert result.trace[0].column == (0, 0)
    assert not mcp_eval_table(result.final_unit, delta_table)


def test_dimension_mismatch(delta_table):
    with pytest.raises(DimensionError):
        delta_train(delta_table, ThresholdUnit((0.1,), 0.0))


separable3 = [t for t in (TruthTable.from_outputs([(k >> i) & 1 for i in range(8)], 3) for k in range(256))
              if is_separable(t)]

inits = st.tuples(*[st.integers(-10, 10).map(lambda v: v / 10) for _ in range(4)])


@settings(max_examples=80, deadline=None)
@given(idx=st.integers(0, len(separable3) - 1), init=inits, order=st.sampled_from(list(ScanOrder)))
def test_trace_properties(idx, init, order):
    table = separable3[idx]
    unit = ThresholdUnit(init[:3], init[3])
    config = DeltaConfig(learning_constant=0.1, scan_order=order)
    result = delta_train(table, unit, config)
    assert result.converged

    prev = unit
    for row in result.trace:
        assert row.correction == pytest.approx((row.error + 0.1) / 2, abs=1e-15)
        target = table.target(row.column)
        k = sum(row.column)
        before = sum(w * b for w, b in zip(prev.weights, row.column)) - prev.threshold
        new = row.updated_unit
        after = sum(w * b for w, b in zip(new.weights, row.column)) - new.threshold
        change = row.correction * (k + 1)
        assert after - before == pytest.approx(change if target else -change, abs=1e-9)
        assert row.touched == {f"w{i + 1}" for i, b in enumerate(row.column) if b} | {"t"}
        prev = new

    replayed = replay(unit, result.trace, table)
    for a, b in zip((*replayed.weights, replayed.threshold), (*result.final_unit.weights, result.final_unit.threshold)):
        assert abs(a - b) <= 1e-12
    for x, f in table.rows:
        assert delta_error(result.final_unit, x, f) == 0

    again = delta_train(table, unit, config)
    assert again.trace == result.trace
