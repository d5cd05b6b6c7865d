"""Exhaustive cross-checks of the closed-form losing sets against the solver.

For a characterized game and a height bound this module compares the
theorem predicate with the solved outcome on every position, and then
replays the two halves of the partition argument directly: losing
positions must have no losing option (condition I), and every other
position must yield a verified winning move (condition II).

Membership is evaluated both ways: a vectorized grid covers the whole
state space at once for the exhaustive comparisons, while the scalar
predicate in `losing_sets` verifies individual moves.  The two are
cross-checked against each other in the test suite.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from circnim.core import GameSpec, Position, apply_move, dihedral_transforms
from circnim.losing_sets import UnsupportedGame, characterization_tag
from circnim.solver import DEFAULT_BUDGET, OutcomeTable, solve_outcomes
from circnim.strategy import FALLBACK, winning_move


def membership_grid(spec: GameSpec, H: int) -> np.ndarray:
    """Boolean grid over all positions with heights <= H, True = losing
    per the closed-form characterization.  Axis i carries stack i+1."""
    tag = characterization_tag(spec)
    if tag is None:
        raise UnsupportedGame(f"{spec} has no known losing-set characterization")
    n = spec.n
    coords = tuple(_axis(i, n, H) for i in range(n))

    if tag == "CN_n_1":
        acc = np.zeros((H + 1,) * n, dtype=np.int32)
        for g in coords:
            acc = acc ^ g
        return acc == 0
    if tag == "CN_n_n":
        grid = np.ones((H + 1,) * n, dtype=bool)
        for g in coords:
            grid &= g == 0
        return grid
    if tag == "CN_n_nminus1":
        grid = np.ones((H + 1,) * n, dtype=bool)
        for g in coords[1:]:
            grid &= g == coords[0]
        return grid

    lo = coords[0]
    hi = coords[0]
    for g in coords[1:]:
        lo = np.minimum(lo, g)
        hi = np.maximum(hi, g)

    out = np.zeros((H + 1,) * n, dtype=bool)
    for t in dihedral_transforms(n):
        q = t.apply(coords)  # q[i] is the grid of image slot i
        if tag == "CN_4_2":
            cond = (q[0] == q[2]) & (q[1] == q[3])
        elif tag == "CN_5_2":
            cond = (q[1] == q[4]) & (q[0] + q[1] == q[2] + q[3]) & (q[0] == hi)
        elif tag == "CN_5_3":
            cond = (q[0] == 0) & (q[1] == q[4]) & (q[1] == q[2] + q[3])
        elif tag == "CN_6_3":
            cond = _pair_sums(q)
        elif tag == "CN_6_4":
            cond = _pair_sums(q) & ((q[0] ^ q[2] ^ q[4]) == 0) & (q[0] == lo)
        elif tag == "CN_8_6":
            cond = (
                (q[0] == 0)
                & (q[7] == q[1])
                & (q[2] + q[3] == q[1])
                & (q[6] + q[5] == q[1])
                & (q[4] == np.minimum(q[1], q[2] + q[6]))
            )
        else:
            raise AssertionError(f"unhandled tag {tag}")
        out |= cond
    return out


def _pair_sums(q) -> np.ndarray:
    return (q[0] + q[1] == q[3] + q[4]) & (q[1] + q[2] == q[4] + q[5])


def _axis(axis: int, n: int, H: int) -> np.ndarray:
    shape = [1] * n
    shape[axis] = H + 1
    return np.arange(H + 1, dtype=np.int32).reshape(shape)


def _flat_positions(mask: np.ndarray, H: int, n: int) -> list[Position]:
    base = H + 1
    out = []
    for flat in np.flatnonzero(mask.ravel(order="F")):
        idx = int(flat)
        pos = []
        for _ in range(n):
            pos.append(idx % base)
            idx //= base
        out.append(tuple(pos))
    return out


@dataclass
class VerificationReport:
    """Outcome of the oracle-equivalence and condition (I)/(II) checks."""

    spec: GameSpec
    H: int
    positions: int = 0
    loss_solver: int = 0
    loss_membership: int = 0
    mismatches: int = 0
    first_mismatches: list[Position] = field(default_factory=list)
    condition_i_violations: int = 0
    condition_ii_failures: int = 0
    fallback_count: int = 0
    strategy_checked: bool = False
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return (
            self.mismatches == 0
            and self.condition_i_violations == 0
            and self.condition_ii_failures == 0
        )


def verify_game(
    spec: GameSpec,
    H: int,
    *,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    check_strategy: bool = True,
    table: Optional[OutcomeTable] = None,
) -> VerificationReport:
    """Run every exhaustive check for one game at one height bound."""
    start = time.perf_counter()
    report = VerificationReport(spec, H)
    if table is None:
        table = solve_outcomes(spec, H, workers=workers, budget=budget)
    member = membership_grid(spec, H)
    report.positions = member.size
    report.loss_solver = int(table.grid.sum())
    report.loss_membership = int(member.sum())

    mismatch = member != table.grid
    report.mismatches = int(mismatch.sum())
    if report.mismatches:
        report.first_mismatches = _flat_positions(mismatch, H, spec.n)[:5]

    report.condition_i_violations = condition_i_violations(spec, H, member)

    if check_strategy:
        report.strategy_checked = True
        fails, fallbacks = condition_ii_failures(spec, H, member)
        report.condition_ii_failures = fails
        report.fallback_count = fallbacks

    report.seconds = time.perf_counter() - start
    return report


def condition_i_violations(spec: GameSpec, H: int, member: np.ndarray) -> int:
    """Losing positions with a losing option.

    For each member position, every option lies in one of the per-window
    boxes below it; a second member inside any box is a violation."""
    violations = 0
    windows = spec.windows()
    for pos in _flat_positions(member, H, spec.n):
        for window in windows:
            sel = tuple(
                slice(0, pos[i] + 1) if i in window else pos[i] for i in range(spec.n)
            )
            if int(member[sel].sum()) > 1:  # the box always contains pos itself
                violations += 1
                break
    return violations


def condition_ii_failures(
    spec: GameSpec, H: int, member: np.ndarray
) -> tuple[int, int]:
    """Winning positions without a verified winning move, plus the
    CN(8,6) fallback hit count."""

    def grid_member(q: Position) -> bool:
        return bool(member[q])

    stats: dict[str, int] = {}
    failures = 0
    for pos in _flat_positions(~member, H, spec.n):
        try:
            move = winning_move(spec, pos, member=grid_member, stats=stats)
            target = apply_move(spec, pos, move)
            if not grid_member(target):
                failures += 1
        except Exception:
            failures += 1
    return failures, stats.get(FALLBACK, 0)


#: Heights at which each characterized game is verified exhaustively.
ACCEPTANCE_HEIGHTS: dict[tuple[int, int], int] = {
    (4, 2): 8,
    (5, 2): 6,
    (5, 3): 6,
    (6, 3): 6,
    (6, 4): 5,
    (8, 6): 4,
}
