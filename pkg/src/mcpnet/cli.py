"""Command-line front end.

Exit codes: 0 success / feasible / accepted, 1 input error,
2 infeasible / rejected, 3 delta rule did not converge.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import delta as dl
from . import imageio, plot
from .core import ThresholdUnit, parse_truth_table
from .mlp import Dataset, TrainConfig, dumps_model, loads_model, mlp_init, parse_dataset, predict, train_gd
from .rng import XorShift64Star
from .separability import build_inequalities, decide, normalize_witness

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NEGATIVE = 2
EXIT_NO_CONVERGENCE = 3


class InputError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_table(path: str):
    return parse_truth_table(Path(path).read_text())


def _unit_from_flags(args, n: int) -> ThresholdUnit | None:
    if args.w is None and args.t is None:
        return None
    if args.w is None or args.t is None:
        raise InputError("--w and --t must be given together")
    if len(args.w) != n:
        raise InputError(f"--w has {len(args.w)} values but the table has {n} inputs")
    return ThresholdUnit(tuple(args.w), args.t)


def cmd_separability(args) -> int:
    table = _read_table(args.table)
    system = build_inequalities(table)
    result = decide(system)
    if result.feasible:
        print("feasible")
        print(normalize_witness(result.witness))
        return EXIT_OK
    print("infeasible")
    for i, ineq in zip(result.certificate, system.render(result.certificate)):
        print(f"  row {i + 1}: {ineq}")
    return EXIT_NEGATIVE


def cmd_delta(args) -> int:
    table = _read_table(args.table)
    init = _unit_from_flags(args, table.n_inputs)
    if init is None:
        vals = XorShift64Star(args.seed).uniform_list(table.n_inputs + 1, -1.0, 1.0)
        init = ThresholdUnit(tuple(vals[:-1]), vals[-1])
    config = dl.DeltaConfig(
        learning_constant=args.e,
        max_updates=args.max_updates,
        scan_order=dl.ScanOrder(args.order),
        zero_error_epsilon=args.epsilon,
    )
    result = dl.delta_train(table, init, config)
    if args.trace:
        Path(args.trace).write_text(dl.trace_to_csv(result.trace, table.n_inputs))
    print(f"init {init}")
    if len(result.trace) <= args.show:
        sys.stdout.write(dl.render_trace(result.trace, table.n_inputs))
    print(f"{result.status.value} after {len(result.trace)} updates")
    print(result.final_unit)
    if result.converged and result.mismatches:
        rows = ", ".join(str(i + 1) for i in result.mismatches)
        print(f"warning: rows {rows} sit on the boundary and fail the strict firing rule")
    return EXIT_OK if result.converged else EXIT_NO_CONVERGENCE


def _format_outputs(data: Dataset, outputs) -> str:
    n_in, n_out = data.inputs.shape[1], outputs.shape[1]
    header = [f"x{i + 1}" for i in range(n_in)] + [f"y{i + 1}" for i in range(n_out)]
    lines = [",".join(header)]
    for x, y in zip(data.inputs, outputs):
        lines.append(",".join([repr(float(v)) for v in x] + [repr(float(v)) for v in y]))
    return "\n".join(lines) + "\n"


def cmd_mlp_train(args) -> int:
    data = parse_dataset(Path(args.data).read_text())
    acts = args.act.split(",")
    net = mlp_init(args.arch, acts, args.seed, args.init_scale)
    config = TrainConfig(args.lr, args.epochs, args.target_loss, args.seed, args.init_scale)
    report = train_gd(net, data, config)
    Path(args.model).write_text(dumps_model(report.mlp))
    if args.history:
        lines = ["epoch,loss"] + [f"{k},{v!r}" for k, v in enumerate(report.loss_history)]
        Path(args.history).write_text("\n".join(lines) + "\n")
    print(f"{report.status.value} epochs={report.epochs_run} loss={report.final_loss!r}", file=sys.stderr)
    sys.stdout.write(_format_outputs(data, predict(report.mlp, data.inputs)))
    return EXIT_OK


def cmd_mlp_eval(args) -> int:
    net = loads_model(Path(args.model).read_text())
    data = parse_dataset(Path(args.data).read_text())
    if data.inputs.shape[1] != net.layer_sizes[0]:
        raise InputError(f"model takes {net.layer_sizes[0]} inputs, data has {data.inputs.shape[1]}")
    sys.stdout.write(_format_outputs(data, predict(net, data.inputs)))
    return EXIT_OK


def cmd_classify(args) -> int:
    net = loads_model(Path(args.model).read_text())
    bitmap = imageio.parse_pbm(Path(args.image).read_bytes())
    labels = imageio.parse_labels(Path(args.labels).read_text())
    decision = imageio.classify(net, bitmap, imageio.Encoding(args.encoding), labels, args.threshold)
    print(imageio.format_decision(decision, labels))
    return EXIT_OK if isinstance(decision, imageio.Accepted) else EXIT_NEGATIVE


def cmd_plot(args) -> int:
    table = _read_table(args.table)
    if table.n_inputs not in (2, 3):
        raise InputError("plot supports 2-input (SVG) or 3-input (mesh CSV) tables only")
    unit = _unit_from_flags(args, table.n_inputs)
    if unit is None:
        result = decide(build_inequalities(table))
        unit = result.witness if result.feasible else None
    out = Path(args.out)
    if table.n_inputs == 2:
        if out.suffix.lower() != ".svg":
            raise InputError("2-input plots are written as .svg")
        out.write_text(plot.render_svg(plot.plot_spec(table, unit, title=args.title)))
    else:
        if out.suffix.lower() != ".csv":
            raise InputError("3-input meshes are written as .csv")
        if unit is None:
            raise InputError("no separating plane to mesh")
        out.write_text(plot.mesh_csv(plot.mesh_spec(table, unit, args.steps)))
    print(f"wrote {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mcpnet", description="Threshold units, the delta rule and small MLPs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("separability", help="decide whether one threshold unit can realize a truth table")
    s.add_argument("table")
    s.set_defaults(func=cmd_separability)

    d = sub.add_parser("delta", help="train a threshold unit with the delta rule")
    d.add_argument("table")
    d.add_argument("--w", type=_floats, help="initial weights, e.g. 0.2,-0.5")
    d.add_argument("--t", type=float, help="initial threshold")
    d.add_argument("--seed", type=int, default=0, help="seed for random init in [-1, 1] when --w/--t are absent")
    d.add_argument("--e", type=float, default=0.1, help="learning constant")
    d.add_argument("--order", choices=[o.value for o in dl.ScanOrder], default="gray")
    d.add_argument("--max-updates", type=int, default=10_000)
    d.add_argument("--epsilon", type=float, default=0.0, help="errors at or below this count as zero")
    d.add_argument("--trace", help="write the update trace as CSV")
    d.add_argument("--show", type=int, default=50, help="print the trace table when it has at most this many rows")
    d.set_defaults(func=cmd_delta)

    m = sub.add_parser("mlp", help="train or evaluate a feed-forward network")
    msub = m.add_subparsers(dest="mlp_command", required=True)
    mt = msub.add_parser("train")
    mt.add_argument("data", help="CSV with x* input columns and target columns")
    mt.add_argument("--arch", type=_ints, default=[2, 3, 1])
    mt.add_argument("--act", default="tanh,identity")
    mt.add_argument("--seed", type=int, default=0)
    mt.add_argument("--lr", type=float, default=0.5)
    mt.add_argument("--epochs", type=int, default=20_000)
    mt.add_argument("--target-loss", type=float, default=1e-3)
    mt.add_argument("--init-scale", type=float, default=0.5)
    mt.add_argument("--model", required=True, help="output model file")
    mt.add_argument("--history", help="output loss-history CSV")
    mt.set_defaults(func=cmd_mlp_train)
    me = msub.add_parser("eval")
    me.add_argument("model")
    me.add_argument("data")
    me.set_defaults(func=cmd_mlp_eval)

    c = sub.add_parser("classify", help="classify a 16x16 PBM image")
    c.add_argument("model")
    c.add_argument("image")
    c.add_argument("labels")
    c.add_argument("--threshold", type=float, default=imageio.DEFAULT_THRESHOLD)
    c.add_argument("--encoding", choices=[e.value for e in imageio.Encoding], default="flat256")
    c.set_defaults(func=cmd_classify)

    pl = sub.add_parser("plot", help="SVG decision boundary (2 inputs) or hyperplane mesh CSV (3 inputs)")
    pl.add_argument("table")
    pl.add_argument("--w", type=_floats)
    pl.add_argument("--t", type=float)
    pl.add_argument("--out", required=True)
    pl.add_argument("--steps", type=int, default=2, help="mesh grid points per axis")
    pl.add_argument("--title", default="MCP")
    pl.set_defaults(func=cmd_plot)
    return p


_VALUE_FLAGS = ("--w", "--t", "--threshold", "--e", "--lr")


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "--w -0.6,..." as two options; glue numeric values on
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and nxt[1:2].isdigit() or nxt.startswith("-."):
                out.append(f"{tok}={nxt}")
            else:
                out += [tok, nxt]
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, ValueError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
