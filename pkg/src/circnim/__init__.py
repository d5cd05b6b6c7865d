"""Circular Nim CN(n,k): n stacks of tokens on a circle, a move removes at
least one token from up to k consecutive stacks, last player to move wins.

The package provides exhaustive game solving, closed-form losing-set
predicates with constructive winning strategies for the solved games,
the 2520-arrangement coverage computation for the 8-stack pipeline,
circuit analysis of the underlying playability complex, a CLI, and an
HTTP service for interactive play.
"""

from circnim.core import (
    CircularNimError,
    DihedralTransform,
    GameSpec,
    IllegalMove,
    Move,
    OutOfRange,
    apply_move,
    canonicalize,
    format_move,
    format_position,
    nim_sum,
    nim_zeroing_reduction,
    options,
    parse_move,
    parse_position,
)
from circnim.losing_sets import (
    NegativeHeight,
    UnsupportedGame,
    is_characterized,
    membership,
    translate,
    two_minima_form,
)
from circnim.solver import (
    Outcome,
    OutcomeTable,
    best_move_bruteforce,
    grundy,
    load_table,
    save_table,
    solve_outcomes,
)
from circnim.strategy import NotApplicable, winning_move

__version__ = "0.1.0"

__all__ = [
    "CircularNimError",
    "DihedralTransform",
    "GameSpec",
    "IllegalMove",
    "Move",
    "NegativeHeight",
    "NotApplicable",
    "OutOfRange",
    "Outcome",
    "OutcomeTable",
    "UnsupportedGame",
    "apply_move",
    "best_move_bruteforce",
    "canonicalize",
    "format_move",
    "format_position",
    "grundy",
    "is_characterized",
    "load_table",
    "membership",
    "nim_sum",
    "nim_zeroing_reduction",
    "options",
    "parse_move",
    "parse_position",
    "save_table",
    "solve_outcomes",
    "translate",
    "two_minima_form",
    "winning_move",
]
