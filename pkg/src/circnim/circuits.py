"""Circuits of the playability complex of CN(n,k).

The subsets of stacks a move may touch form a simplicial complex whose
faces are the vertex sets spanning at most k-1 consecutive positions.
A circuit is a minimal non-face.  Circuits are recognized directly from
the cyclic gap lengths between chosen vertices: every gap must be at
most s = n-k and every two consecutive gaps must sum to more than s.

Circuit sizes fill the closed range ceil(n/s) .. floor(2n/(s+1)); both
ends have explicit constructions and intermediate sizes come from
spreading the vertices as evenly as possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from circnim.core import CircularNimError, GameSpec, OutOfRange


class HypothesisViolated(CircularNimError):
    """Circuit-size theorem needs 1 < k < n."""


class ConstructionFailed(CircularNimError):
    """A constructed vertex set failed the circuit criterion (a bug)."""


class ResourceLimit(CircularNimError):
    """Requested enumeration is over the configured size limit."""


@dataclass(frozen=True)
class VertexSet:
    """Nonempty subset of circle vertices 1..n, strictly increasing."""

    vertices: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        v = self.vertices
        if not v:
            raise ValueError("vertex set must be nonempty")
        if any(v[i] >= v[i + 1] for i in range(len(v) - 1)):
            raise ValueError(f"vertices must be strictly increasing, got {v}")
        if v[0] < 1 or v[-1] > self.n:
            raise ValueError(f"vertices must lie in 1..{self.n}, got {v}")

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class DistanceSet:
    """Cyclic gaps between consecutive chosen vertices; sums to n."""

    distances: tuple[int, ...]


@dataclass(frozen=True)
class CircuitSizeRange:
    n: int
    k: int
    s: int
    lower: int
    upper: int

    def __iter__(self):
        return iter(range(self.lower, self.upper + 1))


@dataclass(frozen=True)
class CircuitConstruction:
    """Parameters of the balanced-distance construction for size ell."""

    n: int
    s: int
    ell: int

    @property
    def base(self) -> int:
        return self.n // self.ell

    @property
    def remainder(self) -> int:
        return self.n % self.ell

    @property
    def half_low(self) -> int:
        return (self.s + 1) // 2

    @property
    def half_high(self) -> int:
        return (self.s + 2) // 2


def vertex_set(vertices: Iterable[int], n: int) -> VertexSet:
    return VertexSet(tuple(sorted(set(vertices))), n)


def distance_set(V: VertexSet) -> DistanceSet:
    v = V.vertices
    m = len(v)
    gaps = [v[i + 1] - v[i] for i in range(m - 1)]
    gaps.append(v[0] + V.n - v[-1])
    return DistanceSet(tuple(gaps))


def span(V: VertexSet) -> int:
    """Length of the smallest arc containing V; |V|-1 when consecutive."""
    return V.n - max(distance_set(V).distances)


def is_face(spec: GameSpec, V: VertexSet) -> bool:
    """Faces are exactly the sets a single window can cover."""
    if V.n != spec.n:
        raise ValueError(f"vertex set lives on {V.n} vertices, spec has {spec.n}")
    return span(V) <= spec.k - 1


def is_circuit_by_definition(spec: GameSpec, V: VertexSet) -> bool:
    """Minimal non-face check from the definition: V is not a face but
    every subset missing one vertex is."""
    if is_face(spec, V):
        return False
    if len(V) == 1:
        return True  # the empty set is vacuously a face
    for i in range(len(V)):
        rest = V.vertices[:i] + V.vertices[i + 1 :]
        if not is_face(spec, VertexSet(rest, V.n)):
            return False
    return True


def is_circuit_by_distances(spec: GameSpec, V: VertexSet) -> bool:
    """Gap criterion: every gap <= s and consecutive gaps sum over s."""
    if V.n != spec.n:
        raise ValueError(f"vertex set lives on {V.n} vertices, spec has {spec.n}")
    s = spec.s
    d = distance_set(V).distances
    m = len(d)
    return all(d[i] <= s for i in range(m)) and all(
        d[i] + d[(i + 1) % m] > s for i in range(m)
    )


def enumerate_circuits(spec: GameSpec, *, limit: int = 16) -> list[VertexSet]:
    """All circuits, in lexicographic vertex order."""
    if spec.n > limit:
        raise ResourceLimit(f"n={spec.n} over the enumeration limit {limit}")
    found = []
    for mask in range(1, 1 << spec.n):
        vertices = tuple(i + 1 for i in range(spec.n) if mask >> i & 1)
        V = VertexSet(vertices, spec.n)
        if is_circuit_by_distances(spec, V):
            found.append(V)
    found.sort(key=lambda V: V.vertices)
    return found


def circuit_sizes(spec: GameSpec, *, limit: int = 16) -> set[int]:
    return {len(V) for V in enumerate_circuits(spec, limit=limit)}


def circuit_size_range(spec: GameSpec) -> CircuitSizeRange:
    """Closed range of realizable circuit sizes: n/s <= ell <= 2n/(s+1)."""
    if spec.n <= 1 or spec.k <= 1 or spec.k >= spec.n:
        raise HypothesisViolated(f"circuit-size theorem needs 1 < k < n, got {spec}")
    s = spec.s
    return CircuitSizeRange(
        spec.n, spec.k, s, math.ceil(spec.n / s), (2 * spec.n) // (s + 1)
    )


def construct_circuit(spec: GameSpec, ell: int) -> VertexSet:
    """A circuit of size ell, for any ell in the realizable range.

    The range ends use the explicit extreme constructions; intermediate
    sizes spread vertices as evenly as possible.  The result is checked
    against the gap criterion before being returned.
    """
    rng = circuit_size_range(spec)
    if not rng.lower <= ell <= rng.upper:
        raise OutOfRange(
            f"no circuit of size {ell} in {spec}; sizes run {rng.lower}..{rng.upper}"
        )
    n, s = spec.n, spec.s
    if ell == rng.lower:
        vertices = _lower_bound_circuit(n, s)
    elif ell == rng.upper:
        vertices = _upper_bound_circuit(n, s)
    else:
        vertices = _balanced_circuit(n, ell)
    V = vertex_set(vertices, n)
    if len(V) != ell or not is_circuit_by_distances(spec, V):
        raise ConstructionFailed(f"size-{ell} construction for {spec} produced {V}")
    return V


def _lower_bound_circuit(n: int, s: int) -> list[int]:
    # {1, s+1, 2s+1, ...}: gaps of s, plus one short gap when s misses n.
    count = math.ceil(n / s)
    return [(j * s) % n + 1 for j in range(count)]


def _upper_bound_circuit(n: int, s: int) -> list[int]:
    # Alternate gaps of ceil((s+1)/2) and floor((s+1)/2); when the tail
    # segment is long enough, one extra vertex fits.
    m, r = divmod(n, s + 1)
    h_high = (s + 2) // 2
    vertices = []
    for j in range(m):
        vertices.append(j * (s + 1) + 1)
        vertices.append(j * (s + 1) + 1 + h_high)
    if 2 * r >= s + 1:
        vertices.append(m * (s + 1) + 1)
    return vertices


def _balanced_circuit(n: int, ell: int) -> list[int]:
    return [(j * n) // ell + 1 for j in range(ell)]


def count_circuits_k2(n: int) -> int:
    """Number of circuits of CN(n,2): each vertex pairs with its n-3
    non-neighbors, counted once."""
    if n < 4:
        raise ValueError("count needs n >= 4")
    return n * (n - 3) // 2


# ---------------------------------------------------------------------------
# Floor/ceiling arithmetic used by the algebraic size-range proof, kept
# as scannable predicates so their full quantified ranges can be tested.
# ---------------------------------------------------------------------------


def ceiling_reciprocity_holds(n: int, x: int, y: int) -> bool:
    """ceil(n/x) <= y exactly when ceil(n/y) <= x, for positive integers."""
    return (math.ceil(n / x) <= y) == (math.ceil(n / y) <= x)


def scan_ceiling_reciprocity(limit: int = 200) -> int:
    """Counterexamples to the reciprocity over 1..limit cubed (expect 0)."""
    r = np.arange(1, limit + 1, dtype=np.int64)
    ceils = -(-r[:, None] // r[None, :])  # ceil(n/x) at [n-1, x-1]
    left = ceils[:, :, None] <= r[None, None, :]  # ceil(n/x) <= y
    return int((left != left.transpose(0, 2, 1)).sum())


def first_double_floor_holds(s: int, n: int) -> bool:
    """floor(n / floor(n/s)) equals s iff the remainder of n mod s is
    below the quotient, and exceeds s otherwise."""
    a, b = divmod(n, s)
    inner = n // (n // s)
    if b < a:
        return inner == s
    return inner > s


def scan_first_double_floor(limit: int = 500) -> int:
    bad = 0
    for n in range(1, limit + 1):
        for s in range(1, n + 1):
            if not first_double_floor_holds(s, n):
                bad += 1
    return bad


def second_double_floor_holds(m: int, n: int, f: float) -> bool:
    """With ell = floor(n/(m+f)) and b = n mod ell: if m recovers as
    floor(n/ell) then b/ell >= f.  Needs m+f > 0."""
    ell = math.floor(n / (m + f))
    if ell <= 0:
        return True  # premise m = floor(n/ell) is unstatable
    b = n % ell
    if m != n // ell:
        return True
    return b / ell >= f


def scan_second_double_floor(limit: int = 500, fs: Sequence[float] = (0.0, 0.5)) -> int:
    bad = 0
    for n in range(1, limit + 1):
        for m in range(0, n):
            for f in fs:
                if m == 0 and f == 0:
                    continue  # ell = floor(n/0) undefined
                if not second_double_floor_holds(m, n, f):
                    bad += 1
    return bad


#: (n, k) cells printed in the published size table, with their sizes.
PUBLISHED_SIZE_TABLE: dict[tuple[int, int], set[int]] = {
    (3, 2): {3},
    (4, 2): {2},
    (4, 3): {4},
    (5, 2): {2},
    (5, 3): {3},
    (5, 4): {5},
    (6, 2): {2},
    (6, 3): {2, 3},
    (6, 4): {3, 4},
    (6, 5): {6},
    (7, 2): {2},
    (7, 3): {2},
    (7, 4): {3},
    (7, 5): {4},
    (7, 6): {7},
    (8, 2): {2},
    (8, 3): {2},
    (8, 4): {2, 3},
    (8, 5): {3, 4},
    (8, 6): {4, 5},
    (8, 7): {8},
    (9, 2): {2},
    (9, 3): {2},
    (9, 4): {2, 3},
    (9, 5): {3},
    (9, 6): {3, 4},
    (9, 7): {5, 6},
    (9, 8): {9},
    (10, 2): {2},
    (10, 3): {2},
    (10, 4): {2},
    (10, 5): {2, 3},
    (10, 6): {3, 4},
    (10, 7): {4, 5},
    (10, 8): {5, 6},
    (10, 9): {10},
    (15, 2): {2},
    (15, 3): {2},
    (15, 4): {2},
    (15, 5): {2},
    (15, 6): {2, 3},
    (15, 7): {2, 3},
    (15, 8): {3},
    (15, 9): {3, 4},
    (15, 10): {3, 4, 5},
}
