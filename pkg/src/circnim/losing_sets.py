"""Closed-form membership predicates for every solved losing set.

Each predicate answers "is this position losing for the player to move"
for a game whose losing set has a proven structure: the Nim-like and
take-all families CN(n,1), CN(n,n), CN(n,n-1), and the individually
solved games CN(4,2), CN(5,2), CN(5,3), CN(6,3), CN(6,4), CN(8,6).

Patterns are stated up to symmetry, so membership tries all 2n dihedral
relabelings of the position rather than normalizing first; at n <= 8
that is at most 16 cheap checks.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence

from circnim.core import (
    CircularNimError,
    GameSpec,
    Position,
    dihedral_images,
    nim_sum,
)


class UnsupportedGame(CircularNimError):
    """The game has no known closed-form losing set."""


class NegativeHeight(CircularNimError):
    """A translation would push some stack below zero."""


#: Games with an individually proven losing-set pattern, keyed by (n, k).
SPECIAL_PATTERNS: dict[tuple[int, int], str] = {
    (4, 2): "CN_4_2",
    (5, 2): "CN_5_2",
    (5, 3): "CN_5_3",
    (6, 3): "CN_6_3",
    (6, 4): "CN_6_4",
    (8, 6): "CN_8_6",
}


def characterization_tag(spec: GameSpec) -> Optional[str]:
    """Tag of the theorem covering this game, or None."""
    if spec.k == 1:
        return "CN_n_1"
    if spec.k == spec.n:
        return "CN_n_n"
    if spec.k == spec.n - 1:
        return "CN_n_nminus1"
    return SPECIAL_PATTERNS.get((spec.n, spec.k))


def is_characterized(spec: GameSpec) -> bool:
    return characterization_tag(spec) is not None


def membership(spec: GameSpec, pos: Sequence[int]) -> bool:
    """True iff `pos` belongs to the proven losing set of `spec`.

    Raises UnsupportedGame when no theorem covers the game (for example
    CN(6,2) or CN(7,3)); the solver is the only verdict there.
    """
    pos = spec.validate_position(pos)
    tag = characterization_tag(spec)
    if tag is None:
        raise UnsupportedGame(f"{spec} has no known losing-set characterization")
    return _PREDICATES[tag](pos)


def _cn_n_1(pos: Position) -> bool:
    return nim_sum(pos) == 0


def _cn_n_n(pos: Position) -> bool:
    return all(h == 0 for h in pos)


def _cn_n_nminus1(pos: Position) -> bool:
    return all(h == pos[0] for h in pos)


def _match_any_image(pos: Position, pattern: Callable[[Position], bool]) -> bool:
    return any(pattern(img) for img in dihedral_images(pos))


def _cn42(pos: Position) -> bool:
    # (a,b,a,b): opposite stacks equal.
    return _match_any_image(pos, lambda q: q[0] == q[2] and q[1] == q[3])


def _cn52(pos: Position) -> bool:
    # (a*,b,c,d,b) with a*+b = c+d and a* maximal (ties allowed).
    mx = max(pos)

    def pat(q: Position) -> bool:
        return q[1] == q[4] and q[0] + q[1] == q[2] + q[3] and q[0] == mx

    return _match_any_image(pos, pat)


def _cn53(pos: Position) -> bool:
    # (0,b,c,d,b) with b = c+d.
    def pat(q: Position) -> bool:
        return q[0] == 0 and q[1] == q[4] and q[1] == q[2] + q[3]

    return _match_any_image(pos, pat)


def _pair_sums_equal(q: Sequence[int]) -> bool:
    # a+b = d+e and b+c = e+f; the third pair equality follows.
    return q[0] + q[1] == q[3] + q[4] and q[1] + q[2] == q[4] + q[5]


def _cn63(pos: Position) -> bool:
    return _match_any_image(pos, _pair_sums_equal)


def _cn64(pos: Position) -> bool:
    # CN(6,3) pair sums, plus a digital triangle a^c^e = 0 holding the minimum.
    mn = min(pos)

    def pat(q: Position) -> bool:
        return (
            q[0] == mn
            and _pair_sums_equal(q)
            and (q[0] ^ q[2] ^ q[4]) == 0
        )

    return _match_any_image(pos, pat)


def _cn86(pos: Position) -> bool:
    # (0,x,a1,b1,e,b2,a2,x) with a1+b1 = a2+b2 = x and e = min(x, a1+a2).
    def pat(q: Position) -> bool:
        x = q[1]
        return (
            q[0] == 0
            and q[7] == x
            and q[2] + q[3] == x
            and q[6] + q[5] == x
            and q[4] == min(x, q[2] + q[6])
        )

    return _match_any_image(pos, pat)


_PREDICATES: dict[str, Callable[[Position], bool]] = {
    "CN_n_1": _cn_n_1,
    "CN_n_n": _cn_n_n,
    "CN_n_nminus1": _cn_n_nminus1,
    "CN_4_2": _cn42,
    "CN_5_2": _cn52,
    "CN_5_3": _cn53,
    "CN_6_3": _cn63,
    "CN_6_4": _cn64,
    "CN_8_6": _cn86,
}


def translate(pos: Sequence[int], m: int) -> Position:
    """Add m tokens to every stack (m may be negative)."""
    out = tuple(h + m for h in pos)
    if any(h < 0 for h in out):
        raise NegativeHeight(f"translating {tuple(pos)} by {m} goes negative")
    return out


def two_minima_form(pos: Sequence[int]) -> Optional[tuple[int, int, int]]:
    """Detect the doubled-triple shape of special CN(6,4) losing positions.

    When a losing position of CN(6,4) attains its minimum in both stack
    triples (p1,p3,p5) and (p2,p4,p6), it must read (a,b,c,a,b,c); this
    returns that (a,b,c), and None when the premise fails.
    """
    pos = tuple(pos)
    if len(pos) != 6:
        raise ValueError("two_minima_form needs a 6-stack position")
    if not _cn64(pos):
        return None
    mn = min(pos)
    if min(pos[0], pos[2], pos[4]) != mn or min(pos[1], pos[3], pos[5]) != mn:
        return None
    if pos[:3] != pos[3:]:
        return None
    return (pos[0], pos[1], pos[2])
