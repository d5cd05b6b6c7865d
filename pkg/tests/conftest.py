"""Shared fixtures and the independent brute-force oracle.

The recursive oracle below classifies positions straight from the
definition (a position is losing iff every option is winning) using
only `options`; the production solver is validated against it at small
heights and never trusted circularly.
"""

from __future__ import annotations

import itertools

import pytest

from circnim.core import GameSpec, Position, options


def recursive_outcome(spec: GameSpec, pos: Position, _memo=None) -> bool:
    """True = losing for the player to move.  Definitionally recursive."""
    if _memo is None:
        _memo = {}
    known = _memo.get(pos)
    if known is not None:
        return known
    _memo[pos] = None  # impartial game, no cycles possible (tokens decrease)
    result = all(not recursive_outcome(spec, q, _memo) for q in options(spec, pos))
    _memo[pos] = result
    return result


def all_positions(n: int, H: int):
    return itertools.product(range(H + 1), repeat=n)


@pytest.fixture(scope="session")
def small_tables():
    """Solved tables for quick cross-module checks."""
    from circnim.solver import solve_outcomes

    specs = {(3, 2): 2, (4, 2): 3, (2, 1): 3, (5, 3): 2, (6, 4): 2}
    return {
        (n, k): solve_outcomes(GameSpec(n, k), H) for (n, k), H in specs.items()
    }
