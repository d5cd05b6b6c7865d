"""Rules and value types for circular Nim CN(n,k).

A position is a plain tuple of n non-negative stack heights, listed
clockwise with stack 1 at 12 o'clock.  A move picks a window of k
consecutive stacks (wrapping around the circle) and removes a
non-negative amount from each, at least one token in total.

Everything here is immutable and pure; all functions are safe to call
concurrently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

Position = tuple[int, ...]


class CircularNimError(Exception):
    """Base class for domain errors raised by this package."""


class IllegalMove(CircularNimError):
    """Move violates the rules for the position it is applied to."""


class OutOfRange(CircularNimError):
    """A position or parameter falls outside a table or theorem range."""


@dataclass(frozen=True)
class GameSpec:
    """The game CN(n,k): n stacks on a circle, window width k."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k must be in 1..n, got k={self.k}, n={self.n}")

    @property
    def s(self) -> int:
        """Number of stacks outside the playing window (n - k)."""
        return self.n - self.k

    def validate_position(self, pos: Sequence[int]) -> Position:
        pos = tuple(int(h) for h in pos)
        if len(pos) != self.n:
            raise IllegalMove(f"position has {len(pos)} stacks, spec needs {self.n}")
        if any(h < 0 for h in pos):
            raise IllegalMove(f"negative stack height in {pos}")
        return pos

    def windows(self) -> list[tuple[int, ...]]:
        """Distinct windows of k consecutive 0-based stack indices."""
        return _windows(self.n, self.k)

    def __str__(self) -> str:
        return f"CN({self.n},{self.k})"


@dataclass(frozen=True)
class Move:
    """Removal amounts for the k stacks starting at 1-based stack `start`."""

    start: int
    removals: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "removals", tuple(int(r) for r in self.removals))

    def stacks(self, n: int) -> list[int]:
        """0-based indices the window covers, in removal order."""
        return [(self.start - 1 + j) % n for j in range(len(self.removals))]


@dataclass(frozen=True)
class DihedralTransform:
    """One of the 2n symmetries of the circle: rotate, optionally reflect.

    Applying the transform reads ``pos[(i + rotation) % n]`` per output
    slot, or ``pos[(rotation - i) % n]`` when reflected.
    """

    rotation: int
    reflected: bool = False

    def apply(self, pos: Sequence[int]) -> Position:
        n = len(pos)
        r = self.rotation % n
        if self.reflected:
            return tuple(pos[(r - i) % n] for i in range(n))
        return tuple(pos[(r + i) % n] for i in range(n))

    def inverse(self) -> "DihedralTransform":
        if self.reflected:
            return self
        return DihedralTransform((-self.rotation), False)


@lru_cache(maxsize=None)
def _windows(n: int, k: int) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for start in range(n):
        w = tuple((start + j) % n for j in range(k))
        key = frozenset(w)
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


@lru_cache(maxsize=None)
def dihedral_transforms(n: int) -> tuple[DihedralTransform, ...]:
    """All 2n transforms, rotations first, then reflected rotations."""
    rots = [DihedralTransform(r, False) for r in range(n)]
    refl = [DihedralTransform(r, True) for r in range(n)]
    return tuple(rots + refl)


def dihedral_images(pos: Sequence[int]) -> list[Position]:
    """The 2n (not necessarily distinct) symmetric images of a position."""
    return [t.apply(pos) for t in dihedral_transforms(len(pos))]


def nim_sum(values: Iterable[int]) -> int:
    """Carry-free base-2 sum (XOR fold); 0 for an empty sequence."""
    total = 0
    for v in values:
        total ^= v
    return total


def nim_zeroing_reduction(values: Sequence[int]) -> Optional[tuple[int, int]]:
    """Find a single-entry reduction that zeroes the nim-sum.

    Returns ``(i, v)`` with ``0 <= v < values[i]`` such that replacing
    ``values[i]`` by ``v`` makes the nim-sum zero, picking the smallest
    such index.  Returns None when the nim-sum is already zero.
    """
    if not values:
        raise ValueError("empty sequence")
    total = nim_sum(values)
    if total == 0:
        return None
    for i, x in enumerate(values):
        target = total ^ x
        if target < x:
            return (i, target)
    raise AssertionError("nonzero nim-sum always admits a zeroing reduction")


def apply_move(spec: GameSpec, pos: Sequence[int], move: Move) -> Position:
    """Apply a move, validating legality.

    Raises IllegalMove for wrong lengths, out-of-range start, removals
    exceeding stack heights, or a zero total removal.
    """
    pos = spec.validate_position(pos)
    if len(move.removals) != spec.k:
        raise IllegalMove(
            f"move removes from {len(move.removals)} stacks, window width is {spec.k}"
        )
    if not 1 <= move.start <= spec.n:
        raise IllegalMove(f"start stack {move.start} not in 1..{spec.n}")
    if any(r < 0 for r in move.removals):
        raise IllegalMove("negative removal")
    if sum(move.removals) < 1:
        raise IllegalMove("move must remove at least one token")
    new = list(pos)
    for j, i in enumerate(move.stacks(spec.n)):
        r = move.removals[j]
        if r > new[i]:
            raise IllegalMove(
                f"removal {r} exceeds height {new[i]} of stack {i + 1}"
            )
        new[i] -= r
    return tuple(new)


def move_between(spec: GameSpec, pos: Sequence[int], target: Sequence[int]) -> Optional[Move]:
    """Construct the move taking `pos` to `target`, if one exists.

    The changed stacks must all lie inside one cyclic k-window; the move
    reported uses the smallest 1-based start whose window covers them.
    Returns None if no legal move connects the two positions.
    """
    pos = tuple(pos)
    target = tuple(target)
    if len(pos) != spec.n or len(target) != spec.n:
        return None
    if any(t > p or t < 0 for p, t in zip(pos, target)):
        return None
    changed = {i for i in range(spec.n) if target[i] != pos[i]}
    if not changed:
        return None
    for start0 in range(spec.n):
        window = [(start0 + j) % spec.n for j in range(spec.k)]
        if changed <= set(window):
            removals = tuple(pos[i] - target[i] for i in window)
            return Move(start0 + 1, removals)
    return None


def options(spec: GameSpec, pos: Sequence[int]) -> set[Position]:
    """All positions reachable in one legal move (deduplicated)."""
    pos = spec.validate_position(pos)
    return set(iter_options(spec, pos))


def iter_options(spec: GameSpec, pos: Sequence[int]) -> Iterator[Position]:
    """Yield options; positions reachable via several windows repeat."""
    pos = tuple(pos)
    for window in _windows(spec.n, spec.k):
        yield from _window_reductions(pos, window)


def _window_reductions(pos: Position, window: tuple[int, ...]) -> Iterator[Position]:
    # Odometer over per-stack remaining heights; skips the no-op.
    current = list(pos)
    while True:
        for idx in window:
            if current[idx] > 0:
                current[idx] -= 1
                break
            current[idx] = pos[idx]
        else:
            return
        yield tuple(current)


def canonicalize(pos: Sequence[int]) -> tuple[Position, DihedralTransform]:
    """Lexicographically smallest dihedral image and a transform reaching it.

    Transforms are tried rotations-first, so the returned transform is
    deterministic. Idempotent on its own output.
    """
    pos = tuple(pos)
    best = pos
    best_t = DihedralTransform(0, False)
    for t in dihedral_transforms(len(pos)):
        img = t.apply(pos)
        if img < best:
            best = img
            best_t = t
    return best, best_t


_POSITION_RE = re.compile(r"^\s*\(\s*(-?\d+\s*(?:,\s*-?\d+\s*)*)\)\s*$")


def parse_position(text: str) -> Position:
    """Parse "(1,3,5,4)" (whitespace-tolerant)."""
    m = _POSITION_RE.match(text)
    if not m:
        raise ValueError(f"malformed position {text!r}; expected like (1,2,3)")
    heights = tuple(int(part) for part in m.group(1).split(","))
    if any(h < 0 for h in heights):
        raise ValueError(f"negative stack height in {text!r}")
    return heights


def format_position(pos: Sequence[int]) -> str:
    return "(" + ",".join(str(h) for h in pos) + ")"


_MOVE_RE = re.compile(r"^\s*start\s*=\s*(\d+)\s*;\s*take\s*=\s*(\d+\s*(?:,\s*\d+\s*)*)\s*$")


def parse_move(text: str) -> Move:
    """Parse "start=<i>; take=<r1,...,rk>"."""
    m = _MOVE_RE.match(text)
    if not m:
        raise ValueError(f"malformed move {text!r}; expected like start=2; take=3,1")
    return Move(int(m.group(1)), tuple(int(r) for r in m.group(2).split(",")))


def format_move(move: Move) -> str:
    return f"start={move.start}; take=" + ",".join(str(r) for r in move.removals)
