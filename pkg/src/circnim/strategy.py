"""Constructive winning moves for every game with a known losing set.

Each generator follows the constructive half of the corresponding
losing-set proof.  The proofs normalize positions "without loss of
generality"; here every recipe is instead tried under all 2n dihedral
relabelings (rotations first, then reflections) and the first candidate
that survives verification wins.  A candidate is accepted only after
checking it is a legal move whose result lies in the losing set, so a
transcription subtlety can never produce a wrong move, only fall
through to the next relabeling.

The CN(8,6) generator is a pipeline of lemma recipes: valley first
(the other lemma proofs assume no valley is present), then trapezoid,
the two double-min lemmas, the max-min window, the clean-up subcase
table, and a brute-force fallback whose use is observable via `stats`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, MutableMapping, Optional, Sequence

from circnim.core import (
    CircularNimError,
    DihedralTransform,
    GameSpec,
    Move,
    Position,
    dihedral_transforms,
    move_between,
    nim_zeroing_reduction,
    options,
)
from circnim.losing_sets import (
    UnsupportedGame,
    characterization_tag,
    membership,
)


class NotApplicable(CircularNimError):
    """No winning move exists (the position is already losing)."""


class LemmaTag(Enum):
    VALLEY = "VALLEY"
    TRAPEZOID = "TRAPEZOID"
    DMIN1 = "DMIN1"
    DMIN2 = "DMIN2"
    MAXMIN = "MAXMIN"
    CLEANUP = "CLEANUP"


FALLBACK = "FALLBACK"

#: The four lemmas whose hypotheses only compare relative stack sizes;
#: these are the ones the 2520-arrangement coverage computation counts.
MAIN_LEMMAS = (LemmaTag.TRAPEZOID, LemmaTag.DMIN1, LemmaTag.DMIN2, LemmaTag.CLEANUP)


@dataclass(frozen=True)
class Valley:
    """Four consecutive stacks (a,b,c,d) with b+c <= min(a,d)."""

    start: int  # 1-based index of stack a
    stacks: tuple[int, int, int, int]

    @property
    def size(self) -> int:
        return self.stacks[1] + self.stacks[2]


@dataclass(frozen=True)
class MaxMinRange:
    """Admissible m values for one variant of the max-min recipe."""

    variant: int
    lower: int
    upper: int

    @property
    def nonempty(self) -> bool:
        return self.lower <= self.upper


def find_valley(pos: Sequence[int]) -> Optional[Valley]:
    """Minimal-size valley of an 8-stack position, smallest start on ties."""
    pos = _eight(pos)
    best: Optional[Valley] = None
    for start in range(8):
        window = tuple(pos[(start + j) % 8] for j in range(4))
        a, b, c, d = window
        if b + c <= a and b + c <= d:
            cand = Valley(start + 1, window)
            if best is None or cand.size < best.size:
                best = cand
    return best


def maxmin_range(pos: Sequence[int], variant: int) -> MaxMinRange:
    """Bounds on m for the max-min recipe; the /2 bound is floored."""
    a, b, c, d, e, f, g, h = _eight(pos)
    if variant == 1:
        lower = max(b, c, b + c - e)
        upper = min(f, h, a + b, b + c, (b + c + d) // 2)
    elif variant == 2:
        lower = max(c, d, c + d - a)
        upper = min(f, h, c + d, d + e, (b + c + d) // 2)
    else:
        raise ValueError(f"variant must be 1 or 2, got {variant}")
    return MaxMinRange(variant, lower, upper)


def _eight(pos: Sequence[int]) -> Position:
    pos = tuple(pos)
    if len(pos) != 8:
        raise ValueError("this lemma machinery needs an 8-stack position")
    return pos


def _trapezoid_holds(q: Sequence[int]) -> bool:
    a, b, c, d, e, f, g, h = q
    return max(a, h) <= min(f, c)


def _dmin1_holds(q: Sequence[int]) -> bool:
    a, b, c, d, e, f, g, h = q
    return a <= min(d, f) and b <= min(a, g)


def _dmin2_holds(q: Sequence[int]) -> bool:
    a, b, c, d, e, f, g, h = q
    return a <= min(e, g) and b <= min(a, d)


def _cleanup_holds(q: Sequence[int]) -> bool:
    a, b, c, d, e, f, g, h = q
    return (
        f >= min(b, h) >= max(d, e)
        and f >= c >= e >= g
        and d >= g
        and a <= min(c, d)
    )


def _maxmin_holds(q: Sequence[int]) -> bool:
    # Integer-safe reading of the two inequalities: m is an integer, so
    # the (b+c+d)/2 upper bound is compared via 2*lhs <= b+c+d.
    a, b, c, d, e, f, g, h = q
    lhs1 = max(b, c, b + c - e)
    if lhs1 <= min(f, h, a + b, b + c) and 2 * lhs1 <= b + c + d:
        return True
    lhs2 = max(c, d, c + d - a)
    return lhs2 <= min(f, h, c + d, d + e) and 2 * lhs2 <= b + c + d


_HYPOTHESES: dict[LemmaTag, Callable[[Sequence[int]], bool]] = {
    LemmaTag.TRAPEZOID: _trapezoid_holds,
    LemmaTag.DMIN1: _dmin1_holds,
    LemmaTag.DMIN2: _dmin2_holds,
    LemmaTag.CLEANUP: _cleanup_holds,
    LemmaTag.MAXMIN: _maxmin_holds,
}


def lemma_applicable(pos: Sequence[int], tag: LemmaTag) -> bool:
    """Does the lemma's hypothesis hold under some dihedral relabeling?"""
    pos = _eight(pos)
    if tag is LemmaTag.VALLEY:
        return find_valley(pos) is not None
    check = _HYPOTHESES[tag]
    return any(check(t.apply(pos)) for t in dihedral_transforms(8))


# ---------------------------------------------------------------------------
# Target generators.  Each yields candidate resulting positions in the
# position's own labeling; legality and membership are verified by the
# shared driver, never assumed.
# ---------------------------------------------------------------------------


def _relabelings(pos: Position) -> Iterator[tuple[DihedralTransform, Position]]:
    for t in dihedral_transforms(len(pos)):
        yield t, t.apply(pos)


def _restore(t: DihedralTransform, target: Sequence[int]) -> Position:
    return t.inverse().apply(tuple(target))


def _targets_nim(spec: GameSpec, pos: Position) -> Iterator[Position]:
    reduction = nim_zeroing_reduction(pos)
    if reduction is not None:
        i, v = reduction
        yield pos[:i] + (v,) + pos[i + 1 :]


def _targets_take_all(spec: GameSpec, pos: Position) -> Iterator[Position]:
    yield (0,) * spec.n


def _targets_equalize(spec: GameSpec, pos: Position) -> Iterator[Position]:
    # k = n-1: level every stack down to the current minimum.
    yield (min(pos),) * spec.n


def _targets_cn42(spec: GameSpec, pos: Position) -> Iterator[Position]:
    # Reduce the larger stack of each diagonal pair to the smaller; the
    # two reduced stacks are always cyclically adjacent.
    a = min(pos[0], pos[2])
    b = min(pos[1], pos[3])
    yield (a, b, a, b)


def _targets_cn52(spec: GameSpec, pos: Position) -> Iterator[Position]:
    # Work on the min-0 translate; the recipes never touch the zero
    # stack, and the CN(5,2) losing set is closed under translation.
    m0 = min(pos)
    base = tuple(p - m0 for p in pos)
    mx = max(base)
    for t, img in _relabelings(base):
        if img[0] != 0:
            continue
        _, w, x, y, z = img
        if w == mx:
            # max adjacent to the zero stack
            tgt = (0, z + y, 0, y, z) if w >= z + y else (0, w, 0, w - z, z)
            yield _back_translated(t, tgt, m0)
        if img[1] >= img[4] and mx in (img[2], img[3]):
            # max separated from the zero stack by one
            y2 = img[4]
            x2 = img[1] - y2
            w2, z2 = img[2], img[3]
            tgt = (0, x2 + y2, 0, x2, y2) if z2 >= x2 else (0, z2 + y2, 0, z2, y2)
            yield _back_translated(t, tgt, m0)


def _back_translated(t: DihedralTransform, target: Sequence[int], m0: int) -> Position:
    return tuple(v + m0 for v in _restore(t, target))


def _targets_cn53(spec: GameSpec, pos: Position) -> Iterator[Position]:
    mn, mx = min(pos), max(pos)
    for t, img in _relabelings(pos):
        if img[0] == mn and img[1] == mx:
            m, M, x, y, z = img
            if y - z >= m:
                yield _restore(t, (m, m + z, 0, m + z, z))
            elif y - z >= 0:
                yield _restore(t, (y - z, y, 0, y, z))
            elif x > z - y:
                yield _restore(t, (0, z, z - y, y, z))
            else:
                yield _restore(t, (0, x + y, x, y, x + y))
        if img[0] == mn and img[2] == mx:
            m, x, M, y, z = img
            if x >= z - m:
                yield _restore(t, (m, z - m, z, 0, z))
            else:
                yield _restore(t, (m, x, x + m, 0, x + m))


def _targets_cn63(spec: GameSpec, pos: Position) -> Iterator[Position]:
    # Normalize to min 0 (losing set is translation-closed), relabel a
    # zero stack into the f slot with a+b >= d+e, then play one of the
    # three proof cases.
    m0 = min(pos)
    base = tuple(p - m0 for p in pos)
    for t, img in _relabelings(base):
        a, b, c, d, e, f = img
        if f != 0 or a + b < d + e:
            continue
        if b > e:
            w = min(a, d)
            yield _back_translated(t, (w, e, 0, w, e, 0), m0)
        elif c >= e - b:
            yield _back_translated(t, (d + e - b, b, e - b, d, e, 0), m0)
        else:
            yield _back_translated(t, (c + d, b, c, d, b + c, 0), m0)


def _targets_cn64(spec: GameSpec, pos: Position) -> Iterator[Position]:
    # Build a digital triangle out of the three diagonal-pair minima,
    # then equalize the pair differences.
    for t, img in _relabelings(pos):
        # Case 1: pair minima alternate (triangle at slots 2, 4, 6).
        if img[0] >= img[3] and img[1] <= img[4] and img[2] >= img[5]:
            A, b, C, a, B, c = img
            at = a if (a ^ b ^ c) == 0 else b ^ c
            if at <= a:
                m = min(A - at, B - b, C - c)
                if m == A - at:
                    yield _restore(t, (A, b, c + m, at, b + m, c))
                if m == B - b:
                    yield _restore(t, (at + m, b, c + m, at, B, c))
                if m == C - c:
                    yield _restore(t, (at + m, b, C, at, b + m, c))
        # Case 2: pair minima consecutive (slots 4, 5, 6).
        if img[0] >= img[3] and img[1] >= img[4] and img[2] >= img[5]:
            A, B, C, a, b, c = img
            at = a if (a ^ b ^ c) == 0 else b ^ c
            if at <= a:
                yield _restore(t, (at, b, c, at, b, c))
            bt = a ^ c
            if bt < b:
                m1 = b - bt
                yield _restore(t, (a + m1, bt, c + m1, a, b, c))
                m2 = C - c
                yield _restore(t, (a + m2, bt, C, a, bt + m2, c))


def _targets_valley(pos: Position) -> Iterator[Position]:
    valley = find_valley(pos)
    if valley is None:
        return
    size = valley.size
    for t, img in _relabelings(pos):
        a, b, c, d, e, f, g, h = img
        if b + c != size or b + c > a or b + c > d:
            continue
        bc = b + c
        if g >= f and g >= bc:
            fp = min(f, bc)
            ep = bc - fp
            yield _restore(t, (bc, b, c, min(bc, b + fp), ep, fp, bc, 0))
        if f <= g < bc:
            cp = min(c, g)
            bp = g - cp
            yield _restore(t, (g, bp, cp, min(g, bp + f), g - f, f, g, 0))


def _targets_trapezoid(pos: Position) -> Iterator[Position]:
    for t, img in _relabelings(pos):
        a, b, c, d, e, f, g, h = img
        if not (_trapezoid_holds(img) and a >= h):
            continue
        dp = min(d, a)
        ep = a - dp
        yield _restore(t, (a, 0, a, dp, ep, min(a, h + dp), a - h, h))


def _targets_dmin1(pos: Position) -> Iterator[Position]:
    for t, img in _relabelings(pos):
        a, b, c, d, e, f, g, h = img
        if not _dmin1_holds(img):
            continue
        if g >= a:
            yield _restore(t, (a, b, a - b, a, 0, a, a, 0))
        else:
            yield _restore(t, (a, b, a - b, a, 0, a, g, a - g))


def _targets_dmin2(pos: Position) -> Iterator[Position]:
    for t, img in _relabelings(pos):
        a, b, c, d, e, f, g, h = img
        if not _dmin2_holds(img):
            continue
        if b + c >= a:
            yield _restore(t, (a, b, a - b, b, a, 0, a, 0))
        else:
            yield _restore(t, (b + c, b, c, b, b + c, 0, b + c, 0))


def _targets_maxmin(pos: Position) -> Iterator[Position]:
    for t, img in _relabelings(pos):
        a, b, c, d, e, f, g, h = img
        for variant in (1, 2):
            rng = maxmin_range(img, variant)
            for m in range(rng.lower, rng.upper + 1):
                if variant == 1:
                    tgt = (m - b, b, c, 2 * m - b - c, b + c - m, m, 0, m)
                else:
                    tgt = (c + d - m, 2 * m - c - d, c, d, m - d, m, 0, m)
                if min(tgt) >= 0:
                    yield _restore(t, tgt)


def _targets_cleanup(pos: Position) -> Iterator[Position]:
    for t, img in _relabelings(pos):
        if not _cleanup_holds(img):
            continue
        a, b, c, d, e, f, g, h = img
        if min(h, b) >= d + e - g:
            m = d + e - g
            yield _restore(t, (0, m, e - g, d, e, m - g, g, m))
        elif h <= b:
            yield _restore(t, (0, h, e - g, h + g - e, e, h - g, g, h))
        elif a + e <= c:
            m = min(h, f, a + b, d + e)
            if m == a + b:
                dp = min(d, m)
                ep = m - dp
                yield _restore(t, (a, b, min(m, a + ep), dp, ep, m, 0, m))
            if m == d + e:
                ap = min(a, m)
                bp = m - ap
                yield _restore(t, (ap, bp, min(m, ap + e), d, e, m, 0, m))
            if m == f:
                ap = min(a, m)
                bp = m - ap
                yield _restore(t, (ap, bp, min(m, ap + e), m - e, e, m, 0, m))
            if m == h:
                dp = min(d, m)
                ep = m - dp
                yield _restore(t, (a, m - a, min(m, a + ep), dp, ep, m, 0, m))
        else:
            m = b + c - e
            mstar = min(h, f, a + b, b + c, d + e)
            if m <= mstar:
                yield _restore(t, (c - e, b, c, m - e, e, m, 0, m))
            else:
                if mstar == f:
                    yield _restore(t, (f - b, b, e + f - b, f - e, e, f, 0, f))
                if mstar == d + e:
                    bp = min(b, mstar)
                    ap = mstar - bp
                    yield _restore(t, (ap, bp, min(mstar, e + ap), d, e, mstar, 0, mstar))
                if mstar == h:
                    mhat = c + d - a
                    if mhat <= h:
                        yield _restore(t, (a, c + d - 2 * a, c, d, c - a, mhat, 0, mhat))
                    else:
                        yield _restore(t, (a, h - a, a + h - d, d, h - d, h, 0, h))


#: CN(8,6) rule order; the valley recipe runs first because the other
#: lemma proofs assume no valley is present.
_CN86_PIPELINE: tuple[tuple[LemmaTag, Callable[[Position], Iterator[Position]]], ...] = (
    (LemmaTag.VALLEY, _targets_valley),
    (LemmaTag.TRAPEZOID, _targets_trapezoid),
    (LemmaTag.DMIN1, _targets_dmin1),
    (LemmaTag.DMIN2, _targets_dmin2),
    (LemmaTag.MAXMIN, _targets_maxmin),
    (LemmaTag.CLEANUP, _targets_cleanup),
)

Member = Callable[[Position], bool]
Stats = MutableMapping[str, int]


def cleanup_move(pos: Sequence[int], *, member: Optional[Member] = None) -> Move:
    """Move given by the clean-up subcase table, verified against the
    CN(8,6) losing set.  Raises NotApplicable when no relabeling admits
    the clean-up hypothesis or no table row verifies."""
    pos = _eight(pos)
    spec = GameSpec(8, 6)
    if member is None:
        member = lambda q: membership(spec, q)
    found = _first_verified(spec, pos, _targets_cleanup(pos), member)
    if found is None:
        raise NotApplicable("clean-up hypothesis fails for every relabeling")
    return found


def _first_verified(
    spec: GameSpec, pos: Position, targets: Iterator[Position], member: Member
) -> Optional[Move]:
    for target in targets:
        move = move_between(spec, pos, target)
        if move is not None and member(tuple(target)):
            return move
    return None


def winning_move(
    spec: GameSpec,
    pos: Sequence[int],
    *,
    member: Optional[Member] = None,
    stats: Optional[Stats] = None,
) -> Move:
    """A legal move into the losing set, built from the proofs.

    `member` may supply a faster membership predicate (e.g. a
    precomputed table); candidates are always verified through it
    before being returned.  `stats`, when given, counts which CN(8,6)
    rule produced the move ("FALLBACK" tracks the brute-force path).

    Raises NotApplicable from losing positions and UnsupportedGame for
    games without a characterization.
    """
    tag = characterization_tag(spec)
    if tag is None:
        raise UnsupportedGame(f"{spec} has no known losing-set characterization")
    pos = spec.validate_position(pos)
    if member is None:
        member = lambda q: membership(spec, q)
    if member(pos):
        raise NotApplicable(f"{pos} is a losing position; no winning move exists")

    if tag == "CN_8_6":
        return _cn86_move(spec, pos, member, stats)

    generators: dict[str, Callable[[GameSpec, Position], Iterator[Position]]] = {
        "CN_n_1": _targets_nim,
        "CN_n_n": _targets_take_all,
        "CN_n_nminus1": _targets_equalize,
        "CN_4_2": _targets_cn42,
        "CN_5_2": _targets_cn52,
        "CN_5_3": _targets_cn53,
        "CN_6_3": _targets_cn63,
        "CN_6_4": _targets_cn64,
    }
    found = _first_verified(spec, pos, generators[tag](spec, pos), member)
    if found is None:
        raise AssertionError(f"no verified winning move found for {spec} at {pos}")
    return found


def _cn86_move(
    spec: GameSpec, pos: Position, member: Member, stats: Optional[Stats]
) -> Move:
    for tag, generator in _CN86_PIPELINE:
        found = _first_verified(spec, pos, generator(pos), member)
        if found is not None:
            if stats is not None:
                stats[tag.name] = stats.get(tag.name, 0) + 1
            return found
    for target in sorted(options(spec, pos)):
        if member(target):
            move = move_between(spec, pos, target)
            if move is not None:
                if stats is not None:
                    stats[FALLBACK] = stats.get(FALLBACK, 0) + 1
                return move
    raise AssertionError(f"no winning move found for {spec} at {pos}")
