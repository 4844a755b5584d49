"""Firefighting on plane graphs: embeddings, balanced separators, strategies and bounds."""

from .embedding import PlaneGraph, PlaneGraphError, format_plane_graph, parse_plane_graph
from .engine import BudgetSchedule, GameState, OracleLimitExceeded, SearchLimits, rho_exact, sn_exact
from .generators import generate

__all__ = [
    "PlaneGraph",
    "PlaneGraphError",
    "parse_plane_graph",
    "format_plane_graph",
    "BudgetSchedule",
    "GameState",
    "OracleLimitExceeded",
    "SearchLimits",
    "sn_exact",
    "rho_exact",
    "generate",
]

__version__ = "0.1.0"
