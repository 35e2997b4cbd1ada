"""Threshold units, exact linear-separability decisions, the delta rule and small MLPs."""

from .core import DimensionError, TableParseError, ThresholdUnit, TruthTable, mcp_eval, mcp_eval_table, parse_truth_table
from .delta import DeltaConfig, DeltaResult, ScanOrder, delta_train
from .mlp import Mlp, TrainConfig, backprop_grad, forward, loss, mlp_init, predict, train_gd
from .separability import Feasible, Infeasible, build_inequalities, decide, is_separable, normalize_witness

__all__ = [
    "DeltaConfig",
    "DeltaResult",
    "DimensionError",
    "Feasible",
    "Infeasible",
    "Mlp",
    "ScanOrder",
    "TableParseError",
    "ThresholdUnit",
    "TrainConfig",
    "TruthTable",
    "backprop_grad",
    "build_inequalities",
    "decide",
    "delta_train",
    "forward",
    "is_separable",
    "loss",
    "mcp_eval",
    "mcp_eval_table",
    "mlp_init",
    "normalize_witness",
    "parse_truth_table",
    "predict",
    "train_gd",
]
