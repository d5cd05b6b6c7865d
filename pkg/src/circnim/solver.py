"""Exhaustive win/loss classification of bounded-height positions.

Positions with all heights <= H are classified by a retrograde sweep in
increasing total-token order: a position is LOSS exactly when none of
the already-discovered LOSS positions is an option of it.  Instead of
scanning the losing list per position, each newly found LOSS position q
marks every superset-within-a-window (all p >= q pointwise that differ
from q only inside one cyclic k-window) as WIN via array slicing; the
two loops compute the same predicate, and the sliced form is what makes
CN(8,6) at H=4 finish in seconds.

Tables index positions mixed-radix with stack 1 least significant:
index(p) = sum p_i * (H+1)^(i-1).  Tables are immutable once built and
safe to share across threads.
"""

from __future__ import annotations

import os
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from circnim.core import (
    CircularNimError,
    GameSpec,
    Move,
    OutOfRange,
    Position,
    iter_options,
    move_between,
)

DEFAULT_BUDGET = 10_000_000

_MAGIC = b"CNIM"
_FORMAT_VERSION = 1
_HEADER = struct.Struct("<4sBBBH")  # magic, version, n, k, H (little-endian)


class ResourceLimit(CircularNimError):
    """The requested state space exceeds the configured budget."""


class NoWinningMove(CircularNimError):
    """Asked for a winning move from a losing position."""


class IoFailure(CircularNimError):
    """Reading or writing a table file failed at the OS level."""


class FormatMismatch(CircularNimError):
    """Table file is not a well-formed table of the expected version."""


class SpecMismatch(CircularNimError):
    """Table file describes a different game or height than requested."""


class Outcome(Enum):
    LOSS = "LOSS"
    WIN = "WIN"


@dataclass(frozen=True)
class OutcomeTable:
    """Bit-packed classification of all positions with heights <= H."""

    spec: GameSpec
    H: int
    grid: np.ndarray = field(repr=False)  # bool, shape (H+1,)*n, True = LOSS

    def __post_init__(self) -> None:
        self.grid.setflags(write=False)

    @property
    def bits(self) -> np.ndarray:
        """Flat LOSS bits in mixed-radix index order."""
        return self.grid.ravel(order="F")

    def index_of(self, pos: Sequence[int]) -> int:
        base = self.H + 1
        idx = 0
        for h in reversed(tuple(pos)):
            idx = idx * base + h
        return idx

    def position_at(self, index: int) -> Position:
        base = self.H + 1
        out = []
        for _ in range(self.spec.n):
            out.append(index % base)
            index //= base
        return tuple(out)

    def loss_count(self) -> int:
        return int(self.grid.sum())

    def loss_positions(self) -> list[Position]:
        """All LOSS positions sorted by total tokens, ties by index."""
        flat = np.flatnonzero(self.grid.ravel(order="F"))
        positions = [self.position_at(int(i)) for i in flat]
        positions.sort(key=lambda p: (sum(p), self.index_of(p)))
        return positions

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OutcomeTable):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.H == other.H
            and bool(np.array_equal(self.grid, other.grid))
        )

    def __hash__(self) -> int:
        return hash((self.spec, self.H))


@dataclass
class LosingList:
    """Working set of the retrograde sweep: LOSS positions found so far,
    sorted by total token count, ties by mixed-radix index."""

    spec: GameSpec
    H: int
    positions: list[Position] = field(default_factory=list)


def _check_budget(spec: GameSpec, H: int, budget: int) -> int:
    size = (H + 1) ** spec.n
    if size > budget:
        raise ResourceLimit(
            f"{spec} at H={H} has {size} positions, over the budget of {budget}"
        )
    return size


def default_height(spec: GameSpec, budget: int = DEFAULT_BUDGET) -> int:
    """Largest H with (H+1)^n within budget."""
    h = 0
    while (h + 2) ** spec.n <= budget:
        h += 1
    return h


def _totals_grid(n: int, H: int) -> np.ndarray:
    totals = np.zeros((H + 1,) * n, dtype=np.int32)
    for axis in range(n):
        shape = [1] * n
        shape[axis] = H + 1
        totals += np.arange(H + 1, dtype=np.int32).reshape(shape)
    return totals


def solve_outcomes(
    spec: GameSpec,
    H: int,
    *,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
    losing_list: Optional[LosingList] = None,
) -> OutcomeTable:
    """Classify every position with heights <= H.

    A position is LOSS iff no option of it is LOSS.  Shells of equal
    total token count are processed in increasing order; inside a shell
    no position is an option of another, so detection may be chunked
    across `workers` threads, with new LOSS positions published only at
    the shell boundary.  Output is bit-identical for any worker count.

    Pass a fresh LosingList to receive the discovery-ordered LOSS set.
    """
    if H < 0:
        raise ValueError("H must be non-negative")
    _check_budget(spec, H, budget)
    n, k = spec.n, spec.k
    shape = (H + 1,) * n
    win = np.zeros(shape, dtype=bool)
    loss = np.zeros(shape, dtype=bool)
    totals = _totals_grid(n, H)
    windows = spec.windows()
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for t in range(n * H + 1):
            shell_loss = _shell_losses(totals, win, t, pool, workers)
            if not shell_loss.any():
                continue
            loss |= shell_loss
            flat = np.flatnonzero(shell_loss.ravel(order="F"))
            base = H + 1
            for flat_idx in flat:
                q = _decode(int(flat_idx), base, n)
                if losing_list is not None:
                    losing_list.positions.append(q)
                for window in windows:
                    sel = tuple(
                        slice(q[i], H + 1) if i in window else q[i] for i in range(n)
                    )
                    win[sel] = True
    finally:
        if pool is not None:
            pool.shutdown()
    if losing_list is not None:
        losing_list.spec = spec
        losing_list.H = H
    return OutcomeTable(spec, H, loss)


def _shell_losses(
    totals: np.ndarray,
    win: np.ndarray,
    t: int,
    pool: Optional[ThreadPoolExecutor],
    workers: int,
) -> np.ndarray:
    if pool is None:
        return (totals == t) & ~win
    # Partition the shell scan along the first axis; the merge is a plain
    # concatenation, so the result matches the sequential scan exactly.
    edges = np.linspace(0, totals.shape[0], workers + 1, dtype=int)
    chunks = [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if a < b]

    def scan(bounds: tuple[int, int]) -> np.ndarray:
        a, b = bounds
        return (totals[a:b] == t) & ~win[a:b]

    parts = list(pool.map(scan, chunks))
    return np.concatenate(parts, axis=0)


def _decode(index: int, base: int, n: int) -> Position:
    out = []
    for _ in range(n):
        out.append(index % base)
        index //= base
    return tuple(out)


def outcome(table: OutcomeTable, pos: Sequence[int]) -> Outcome:
    """Stored classification of a position."""
    pos = table.spec.validate_position(pos)
    if any(h > table.H for h in pos):
        raise OutOfRange(f"{pos} exceeds table height {table.H}")
    return Outcome.LOSS if bool(table.grid[pos]) else Outcome.WIN


def mex(values) -> int:
    """Minimum excludant: smallest non-negative integer not present."""
    seen = set(values)
    g = 0
    while g in seen:
        g += 1
    return g


@dataclass(frozen=True)
class GrundyTable:
    spec: GameSpec
    H: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        self.values.setflags(write=False)

    def value(self, pos: Sequence[int]) -> int:
        pos = self.spec.validate_position(pos)
        if any(h > self.H for h in pos):
            raise OutOfRange(f"{pos} exceeds table height {self.H}")
        return int(self.values[pos])


def grundy(spec: GameSpec, H: int, *, budget: int = DEFAULT_BUDGET) -> GrundyTable:
    """Grundy value of every position with heights <= H.

    Value = minimum excludant over the options' values; zero exactly on
    the LOSS positions of solve_outcomes.
    """
    _check_budget(spec, H, budget)
    n = spec.n
    shape = (H + 1,) * n
    values = np.full(shape, -1, dtype=np.int32)
    totals = _totals_grid(n, H)
    base = H + 1
    for t in range(n * H + 1):
        flat = np.flatnonzero((totals == t).ravel(order="F"))
        for flat_idx in flat:
            p = _decode(int(flat_idx), base, n)
            opts = {values[q] for q in set(iter_options(spec, p))}
            values[p] = mex(int(v) for v in opts)
    return GrundyTable(spec, H, values)


def best_move_bruteforce(spec: GameSpec, pos: Sequence[int], table: OutcomeTable) -> Move:
    """A legal move into the table's LOSS set, from a WIN position.

    Deterministic: targets the LOSS position with the smallest
    mixed-radix index reachable from `pos`.
    """
    if table.spec != spec:
        raise SpecMismatch(f"table is for {table.spec}, not {spec}")
    if outcome(table, pos) is Outcome.LOSS:
        raise NoWinningMove(f"{tuple(pos)} is a losing position")
    pos = tuple(pos)
    flat = np.flatnonzero(table.grid.ravel(order="F"))
    for flat_idx in flat:
        q = table.position_at(int(flat_idx))
        if q == pos or any(qi > pi for qi, pi in zip(q, pos)):
            continue
        move = move_between(spec, pos, q)
        if move is not None:
            return move
    raise AssertionError("WIN position must have a LOSS option")


def diagonal_pair_predicate(m: int, pos: Sequence[int]) -> bool:
    """Conjectured CN(2m,m) losing condition: every adjacent pair of
    stacks has the same sum as the pair diametrically opposite.

    Exact for m=2 and m=3 (the proven CN(4,2)/CN(6,3) losing sets)."""
    n = 2 * m
    pos = tuple(pos)
    return all(
        pos[i] + pos[(i + 1) % n] == pos[(i + m) % n] + pos[(i + m + 1) % n]
        for i in range(m)
    )


def find_conjecture_counterexample(
    m: int, H: int, *, budget: int = DEFAULT_BUDGET
) -> Optional[Position]:
    """Search CN(2m,m) at heights <= H for a position where the
    equal-opposite-pair-sums predicate disagrees with the solved outcome.

    Returns the disagreeing position with the smallest mixed-radix
    index, or None if the predicate is exact up to this height.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    spec = GameSpec(2 * m, m)
    table = solve_outcomes(spec, H, budget=budget)
    n = spec.n
    shape = (H + 1,) * n
    predicate = np.ones(shape, dtype=bool)
    for i in range(m):
        predicate &= _axis_grid(i, n, H) + _axis_grid((i + 1) % n, n, H) == _axis_grid(
            (i + m) % n, n, H
        ) + _axis_grid((i + m + 1) % n, n, H)
    mismatch = predicate != table.grid
    flat = np.flatnonzero(mismatch.ravel(order="F"))
    if flat.size == 0:
        return None
    return table.position_at(int(flat[0]))


def _axis_grid(axis: int, n: int, H: int) -> np.ndarray:
    shape = [1] * n
    shape[axis] = H + 1
    return np.arange(H + 1, dtype=np.int32).reshape(shape)


PathLike = Union[str, "os.PathLike[str]"]


def save_table(table: OutcomeTable, destination: PathLike) -> None:
    """Write the bit-exact table file format (magic CNIM, version 1)."""
    header = _HEADER.pack(_MAGIC, _FORMAT_VERSION, table.spec.n, table.spec.k, table.H)
    payload = np.packbits(
        table.grid.ravel(order="F").astype(np.uint8), bitorder="little"
    ).tobytes()
    try:
        Path(destination).write_bytes(header + payload)
    except OSError as exc:
        raise IoFailure(f"cannot write table to {destination}: {exc}") from exc


def load_table(
    source: PathLike,
    expected_spec: Optional[GameSpec] = None,
    expected_H: Optional[int] = None,
) -> OutcomeTable:
    """Read a table file; byte-exact inverse of save_table."""
    try:
        raw = Path(source).read_bytes()
    except OSError as exc:
        raise IoFailure(f"cannot read table from {source}: {exc}") from exc
    if len(raw) < _HEADER.size:
        raise FormatMismatch(f"{source}: truncated header")
    magic, version, n, k, H = _HEADER.unpack_from(raw)
    if magic != _MAGIC:
        raise FormatMismatch(f"{source}: bad magic {magic!r}")
    if version != _FORMAT_VERSION:
        raise FormatMismatch(f"{source}: unsupported version {version}")
    if n < 1 or not 1 <= k <= n:
        raise FormatMismatch(f"{source}: invalid spec n={n}, k={k}")
    size = (H + 1) ** n
    expected_bytes = (size + 7) // 8
    payload = raw[_HEADER.size :]
    if len(payload) != expected_bytes:
        raise FormatMismatch(
            f"{source}: expected {expected_bytes} payload bytes, found {len(payload)}"
        )
    spec = GameSpec(n, k)
    if expected_spec is not None and spec != expected_spec:
        raise SpecMismatch(f"{source} holds {spec}, requested {expected_spec}")
    if expected_H is not None and H != expected_H:
        raise SpecMismatch(f"{source} holds H={H}, requested H={expected_H}")
    bits = np.unpackbits(
        np.frombuffer(payload, dtype=np.uint8), count=size, bitorder="little"
    ).astype(bool)
    grid = bits.reshape((H + 1,) * n, order="F")
    return OutcomeTable(spec, H, grid)


def cache_path(cache_dir: PathLike, spec: GameSpec, H: int) -> Path:
    name = f"cn{spec.n}-{spec.k}-h{H}-v{_FORMAT_VERSION}.tbl"
    return Path(cache_dir) / name


def cached_table(
    spec: GameSpec,
    H: int,
    cache_dir: Optional[PathLike] = None,
    *,
    workers: int = 1,
    budget: int = DEFAULT_BUDGET,
) -> tuple[OutcomeTable, bool]:
    """Load the table from cache or solve and store it.

    Returns (table, hit): hit is True when the cache supplied the table.
    """
    if cache_dir is not None:
        path = cache_path(cache_dir, spec, H)
        if path.exists():
            return load_table(path, expected_spec=spec, expected_H=H), True
    table = solve_outcomes(spec, H, workers=workers, budget=budget)
    if cache_dir is not None:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        save_table(table, cache_path(cache_dir, spec, H))
    return table, False
