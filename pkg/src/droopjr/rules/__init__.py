"""Approval-based multiwinner voting rules, each returning a :class:`RuleOutcome`."""

from .equal_shares import EES, MES, BudgetLedger, droop_budget, mes, mes_completed, seq_phragmen
from .greedy import gcr, gjcr
from .monroe import greedy_monroe, is_valid_assignment, monroe, monroe_score
from .outcome import LEXICOGRAPHIC, RuleOutcome, TieBreak, TieBreakError, serialize_outcome
from .pav import av, harmonic, ls_pav, pav_exact, pav_score, swap_delta

__all__ = [
    "EES",
    "LEXICOGRAPHIC",
    "MES",
    "BudgetLedger",
    "RuleOutcome",
    "TieBreak",
    "TieBreakError",
    "av",
    "droop_budget",
    "gcr",
    "gjcr",
    "greedy_monroe",
    "harmonic",
    "is_valid_assignment",
    "ls_pav",
    "mes",
    "mes_completed",
    "monroe",
    "monroe_score",
    "pav_exact",
    "pav_score",
    "seq_phragmen",
    "serialize_outcome",
    "swap_delta",
]
