"""Exact localization-game solver."""

from ._backend import DEFAULT_BACKEND, available_backends
from .engine import (Arena, BoundExceeded, BudgetExceeded, GameVerdict, LocalizationResult,
                     cop_win, localization_number, solve_localization)
from .evidence import (CAPTURED, EvidenceError, RobberCertificate, StrategyNode, StrategyTree,
                       check_certificate, check_strategy, extract_certificate, extract_strategy,
                       verify_certificate, verify_evidence, verify_strategy)
from .game import GameError, Variant, expand, members, partition_by_probe, probe_sets, territory
from .reference import reference_cop_win

__all__ = [
    "Arena", "BoundExceeded", "BudgetExceeded", "CAPTURED", "DEFAULT_BACKEND", "EvidenceError",
    "GameError", "GameVerdict", "LocalizationResult", "RobberCertificate", "StrategyNode",
    "StrategyTree", "Variant", "available_backends", "check_certificate", "check_strategy",
    "cop_win", "expand", "extract_certificate", "extract_strategy", "localization_number",
    "members", "partition_by_probe", "probe_sets", "reference_cop_win", "solve_localization",
    "territory", "verify_certificate", "verify_evidence", "verify_strategy",
]
