"""Integer-lattice geometry: directions, generator matrices, cosets, co-lines.

The super-resolution pipeline only ever uses the five canonical
direction pairs, all of which have unimodular generators (a single
coset); the general coset machinery is kept so arbitrary rational-slope
lattices remain representable and testable.
"""

import math
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class Direction:
    """A primitive integer direction vector with a human-readable angle."""

    vector: tuple
    degrees: int

    def __post_init__(self):
        a, b = self.vector
        if (a, b) == (0, 0) or math.gcd(abs(a), abs(b)) != 1:
            raise ValueError(f"direction vector {self.vector} must be primitive")

    # per-position step (row, col) when walking a traversal line
    @property
    def step(self) -> tuple:
        return _STEPS[self.vector]


_STEPS = {
    (1, 0): (0, 1),   # 0 deg: rows, stepping along columns
    (0, 1): (1, 0),   # 90 deg: columns, stepping along rows
    (1, 1): (1, 1),   # 45 deg
    (1, -1): (1, -1),  # -45 deg
}

_BY_DEGREES = {
    0: Direction((1, 0), 0),
    90: Direction((0, 1), 90),
    45: Direction((1, 1), 45),
    -45: Direction((1, -1), -45),
}


def direction(degrees: int) -> Direction:
    try:
        return _BY_DEGREES[degrees]
    except KeyError:
        raise ValueError(
            f"unsupported direction {degrees} deg; expected one of 0, 90, 45, -45"
        ) from None


@dataclass(frozen=True)
class DirectionPair:
    """Transform direction d1 and alignment direction d2.

    The generator matrix stacks the two vectors as rows; every canonical
    pair is unimodular.
    """

    d1: Direction
    d2: Direction

    def __post_init__(self):
        v1, v2 = self.d1.vector, self.d2.vector
        if v1 == v2 or v1 == (-v2[0], -v2[1]):
            raise ValueError("pair directions must not be collinear")

    @property
    def generator(self) -> tuple:
        return (self.d1.vector, self.d2.vector)

    @property
    def name(self) -> str:
        return f"({self.d1.degrees},{self.d2.degrees})"

    @property
    def anisotropy(self) -> tuple:
        return (2, 1)


@lru_cache(maxsize=1)
def canonical_pairs() -> tuple:
    """The five admissible pairs, in tie-break order for direction selection."""
    degs = [(0, 90), (0, 45), (0, -45), (90, 45), (90, -45)]
    return tuple(DirectionPair(direction(a), direction(b)) for a, b in degs)


@dataclass(frozen=True)
class CosetDecomposition:
    generator: tuple
    count: int
    shifts: tuple


def coset_decomposition(g) -> CosetDecomposition:
    """Enumerate residue representatives of Z^2 modulo the row lattice of g.

    Representatives are the first points, scanning (i, j) in row-major
    order over [0, |det|)^2, that fall in previously unseen residue
    classes.
    """
    (a, b), (c, d) = ((int(g[0][0]), int(g[0][1])), (int(g[1][0]), int(g[1][1])))
    det = a * d - b * c
    if det == 0:
        raise ValueError("generator matrix is singular")
    count = abs(det)
    # p and q are congruent iff (p - q) @ adj(g) == 0 (mod det)
    adj = ((d, -b), (-c, a))
    seen = {}
    shifts = []
    for i in range(count):
        for j in range(count):
            key = (
                (i * adj[0][0] + j * adj[1][0]) % count,
                (i * adj[0][1] + j * adj[1][1]) % count,
            )
            if key not in seen:
                seen[key] = (i, j)
                shifts.append((i, j))
                if len(shifts) == count:
                    break
        if len(shifts) == count:
            break
    return CosetDecomposition(((a, b), (c, d)), count, tuple(shifts))


def colines(n: int, d: Direction):
    """Partition the n-by-n toroidal grid into n cyclic lines along d.

    Every cell appears in exactly one line; each line has length n, so
    length-4 periodic filters apply uniformly even on 4x4 patches.
    """
    if n < 1:
        raise ValueError("grid side must be >= 1")
    v = d.vector
    if v not in _STEPS:
        raise ValueError(f"unsupported direction vector {v}")
    if v == (1, 0):
        return [[(k, i) for i in range(n)] for k in range(n)]
    if v == (0, 1):
        return [[(i, k) for i in range(n)] for k in range(n)]
    if v == (1, 1):
        return [[(i, (k + i) % n) for i in range(n)] for k in range(n)]
    return [[(i, (k - i) % n) for i in range(n)] for k in range(n)]
