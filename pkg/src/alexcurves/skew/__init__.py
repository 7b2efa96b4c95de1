"""Certified noncommutative reduction of B(n) for higher-order degrees."""

from .algebra import Context, ExprError, Symbol
from .auto import auto_from, auto_reduce
from .certify import Certificate, certify_nonzero, certify_unit
from .engine import (
    MoveError,
    ReadoutError,
    Readout,
    ReductionState,
    ScriptResult,
    apply_move,
    format_move,
    initial_state,
    parse_script,
    readout_delta,
    replay_ledger,
    run_moves,
    run_script,
)
from .facts import Fact, FactError, FactKind, FactSet, parse_facts
from .fixtures import FFM1_FACTS, FFM1_SCRIPT

__all__ = [
    "Certificate", "Context", "ExprError", "FFM1_FACTS", "FFM1_SCRIPT", "Fact", "FactError",
    "FactKind", "FactSet", "MoveError", "ReadoutError", "Readout", "ReductionState",
    "ScriptResult", "Symbol", "apply_move", "auto_from", "auto_reduce", "certify_nonzero",
    "certify_unit", "format_move", "initial_state", "parse_facts", "parse_script",
    "readout_delta", "replay_ledger", "run_moves", "run_script",
]
