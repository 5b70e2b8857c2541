"""Sprague-Grundy values and periodicity of Lengyel transfer games and other vector games."""

from .closed_form import Prediction, predict
from .game import (
    GameRules,
    LengyelParams,
    SGTable,
    build_lengyel,
    build_multitransfer,
    build_two_move,
    compute_sg_table,
)
from .periodicity import PeriodReport, StructureReport, find_period, structure_report

__version__ = "0.1.0"

__all__ = [
    "GameRules",
    "LengyelParams",
    "PeriodReport",
    "Prediction",
    "SGTable",
    "StructureReport",
    "build_lengyel",
    "build_multitransfer",
    "build_two_move",
    "compute_sg_table",
    "find_period",
    "predict",
    "structure_report",
]
