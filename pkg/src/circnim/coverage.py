"""Case coverage of the four main 8-stack lemmas.

There are 7!/2 = 2520 ways to arrange eight distinct relative stack
sizes around a circle (up to rotation and reflection).  This module
recomputes, for each arrangement, which of the trapezoid, double-min
and clean-up lemma hypotheses apply when the ranks 1..8 stand in for
heights, and aggregates the counts.  Every arrangement must be covered
by at least one lemma; that exhaustive check is what completes the
CN(8,6) losing-set proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from circnim.strategy import MAIN_LEMMAS, LemmaTag, lemma_applicable

Arrangement = tuple[int, ...]


def canonical_arrangement(ranks: Sequence[int]) -> Arrangement:
    """Lexicographically smallest dihedral image of a rank sequence.

    With distinct ranks the minimum starts at rank 1, read in whichever
    direction compares smaller.
    """
    ranks = tuple(ranks)
    n = len(ranks)
    i = ranks.index(min(ranks))
    forward = tuple(ranks[(i + j) % n] for j in range(n))
    backward = tuple(ranks[(i - j) % n] for j in range(n))
    return min(forward, backward)


def enumerate_arrangements(n: int = 8) -> list[Arrangement]:
    """All canonical circular arrangements of ranks 1..n; (n-1)!/2 of them."""
    out = []
    for perm in permutations(range(2, n + 1)):
        seq = (1,) + perm
        if seq <= (1,) + perm[::-1]:
            out.append(seq)
    return out


def arrangement_coverage(arr: Sequence[int]) -> set[LemmaTag]:
    """Main lemmas whose hypotheses hold for some dihedral relabeling,
    with ranks used as heights."""
    arr = tuple(arr)
    return {tag for tag in MAIN_LEMMAS if lemma_applicable(arr, tag)}


def region_key(tags: set[LemmaTag]) -> str:
    """Stable name for one region of the 4-set Venn decomposition."""
    if not tags:
        return "NONE"
    return "+".join(tag.name for tag in MAIN_LEMMAS if tag in tags)


@dataclass
class CoverageReport:
    """Aggregated lemma coverage over all canonical arrangements."""

    total: int = 0
    lemma_counts: dict[str, int] = field(default_factory=dict)
    region_counts: dict[str, int] = field(default_factory=dict)
    uncovered: list[Arrangement] = field(default_factory=list)

    @property
    def only_cleanup(self) -> int:
        return self.region_counts.get(LemmaTag.CLEANUP.name, 0)

    def count(self, tag: LemmaTag) -> int:
        return self.lemma_counts.get(tag.name, 0)


def coverage_report(n: int = 8) -> CoverageReport:
    """Classify every canonical arrangement by its covering lemma set."""
    report = CoverageReport()
    report.lemma_counts = {tag.name: 0 for tag in MAIN_LEMMAS}
    for arr in enumerate_arrangements(n):
        report.total += 1
        tags = arrangement_coverage(arr)
        for tag in tags:
            report.lemma_counts[tag.name] += 1
        key = region_key(tags)
        report.region_counts[key] = report.region_counts.get(key, 0) + 1
        if not tags:
            report.uncovered.append(arr)
    return report
