"""Exact coordinate-level predicates and the separating-line calculus.

Everything here works on exact rational coordinates; there are no floating
point fast paths, so every predicate answer is unconditionally correct.

The central quantity is the separating count n(P, Q): the number of lines
spanned by pairs of the *other* points that separate P from Q.  The Orchard
relation declares P and Q equivalent when n(P, Q) is congruent to n - 3
modulo 2; it is an equivalence relation with at most two classes, and the
induced two-coloring is the Orchard partition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import IndexOutOfRangeError, NonGenericError, PointFormatError

RationalLike = Fraction | int | str


def _frac(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class Point:
    """A point with exact rational coordinates.

    ``Fraction`` keeps coordinates reduced with a positive denominator, so
    the representation invariants hold by construction.
    """

    x: Fraction
    y: Fraction

    def __init__(self, x: RationalLike, y: RationalLike):
        object.__setattr__(self, "x", _frac(x))
        object.__setattr__(self, "y", _frac(y))

    def __iter__(self) -> Iterator[Fraction]:
        yield self.x
        yield self.y

    def __repr__(self) -> str:
        return f"Point({self.x}, {self.y})"


class Configuration:
    """An ordered list of points, indices 0..n-1.

    The constructor only enforces n >= 1; genericity (pairwise distinct,
    no three collinear) is checked by :func:`is_generic` and required by
    the operations that need it.
    """

    __slots__ = ("points",)

    def __init__(self, points: Iterable[Point]):
        pts = tuple(points)
        if not pts:
            raise ValueError("a configuration needs at least one point")
        if not all(isinstance(p, Point) for p in pts):
            raise TypeError("all entries must be Point instances")
        object.__setattr__(self, "points", pts)

    def __setattr__(self, name, value):
        raise AttributeError("Configuration is immutable")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[RationalLike, RationalLike]]) -> "Configuration":
        return cls(Point(x, y) for x, y in pairs)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, Configuration) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"Configuration({list(self.points)!r})"

    def delete(self, index: int) -> "Configuration":
        """The subconfiguration with one point removed (indices shift down)."""
        if not 0 <= index < len(self.points):
            raise IndexOutOfRangeError(f"index {index} out of range for n={len(self.points)}")
        return Configuration(p for i, p in enumerate(self.points) if i != index)

    def replace(self, index: int, point: Point) -> "Configuration":
        if not 0 <= index < len(self.points):
            raise IndexOutOfRangeError(f"index {index} out of range for n={len(self.points)}")
        pts = list(self.points)
        pts[index] = point
        return Configuration(pts)

    def append(self, *points: Point) -> "Configuration":
        return Configuration(self.points + tuple(points))

    def permute(self, perm: Sequence[int]) -> "Configuration":
        """Relabel: new index i holds the point previously at perm[i]."""
        if sorted(perm) != list(range(len(self.points))):
            raise ValueError("perm must be a permutation of the indices")
        return Configuration(self.points[p] for p in perm)

    # -- points text format -------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "Configuration":
        """Parse the points text format: '#' comments, one "x y" per line.

        Coordinates are base-10 integers or fractions "p/q"; index order is
        line order.
        """
        pts = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise PointFormatError(f"line {lineno}: expected 'x y', got {raw!r}")
            try:
                pts.append(Point(Fraction(parts[0]), Fraction(parts[1])))
            except (ValueError, ZeroDivisionError) as exc:
                raise PointFormatError(f"line {lineno}: bad coordinate in {raw!r}: {exc}") from exc
        if not pts:
            raise PointFormatError("no points in input")
        return cls(pts)

    def to_text(self, comments: Iterable[str] = ()) -> str:
        lines = [f"# {c}" for c in comments]
        lines.extend(f"{p.x} {p.y}" for p in self.points)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class OrchardPartition:
    """The at-most-two-class coloring induced by the Orchard relation.

    ``colors[i]`` is 0 or 1; class 0 ("black") is the larger class, and on
    a tie the class containing index 0.  ``sizes`` is the unordered pair
    (a, b) with a <= b and a + b = n.
    """

    colors: tuple[int, ...]
    sizes: tuple[int, int]

    @property
    def is_monochromatic(self) -> bool:
        return self.sizes[0] == 0

    def classes(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Index sets of the black class and the white class."""
        black = tuple(i for i, c in enumerate(self.colors) if c == 0)
        white = tuple(i for i, c in enumerate(self.colors) if c == 1)
        return black, white

    def __str__(self) -> str:
        label = f"({self.sizes[0]},{self.sizes[1]})"
        return label + (" mono" if self.is_monochromatic else "")


@dataclass(frozen=True)
class LemmaDecomposition:
    """Separating-count bookkeeping for one triple (i, j, k).

    ``alpha_i`` counts lines over pairs of the remaining points that
    separate point i from both j and k (similarly alpha_j, alpha_k).  The
    sigma fields count the remaining n-3 points inside the four open
    projective triangles cut out by the lines ij, jk, ik; their sum is
    always n-3.  The three identities

        n(i, j) = alpha_i + alpha_j + sigma_0 + sigma_k
        n(j, k) = alpha_j + alpha_k + sigma_0 + sigma_i
        n(i, k) = alpha_i + alpha_k + sigma_0 + sigma_j

    hold exactly.
    """

    alpha_i: int
    alpha_j: int
    alpha_k: int
    sigma_0: int
    sigma_i: int
    sigma_j: int
    sigma_k: int


def orient(p: Point, q: Point, r: Point) -> int:
    """Sign of the determinant of (q - p, r - p).

    +1 for counterclockwise, -1 for clockwise, 0 for collinear.  Exact.
    """
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def _find_violation(c: Configuration) -> tuple[int, ...] | None:
    pts = c.points
    n = len(pts)
    for i, j in combinations(range(n), 2):
        if pts[i] == pts[j]:
            return (i, j)
    for i, j, k in combinations(range(n), 3):
        if orient(pts[i], pts[j], pts[k]) == 0:
            return (i, j, k)
    return None


def is_generic(c: Configuration) -> bool:
    """True iff the points are pairwise distinct and no three are collinear."""
    return _find_violation(c) is None


def require_generic(c: Configuration) -> None:
    """Raise :class:`NonGenericError` naming the offending indices."""
    bad = _find_violation(c)
    if bad is None:
        return
    if len(bad) == 2:
        raise NonGenericError(f"duplicate points at indices {bad}", bad)
    raise NonGenericError(f"collinear triple at indices {bad}", bad)


def _check_index(c: Configuration, *indices: int) -> None:
    n = len(c)
    for i in indices:
        if not 0 <= i < n:
            raise IndexOutOfRangeError(f"index {i} out of range for n={n}")


def separating_count(c: Configuration, i: int, j: int) -> int:
    """Number of lines through pairs of the other points separating i from j.

    A line through points a, b separates i from j iff orient(a, b, i) and
    orient(a, b, j) differ.  Brute force over all candidate pairs; this is
    the defining computation, used as the oracle for everything combinatorial.
    """
    _check_index(c, i, j)
    if i == j:
        raise ValueError("separating_count needs two distinct indices")
    require_generic(c)
    return _separating_count_unchecked(c, i, j)


def _separating_count_unchecked(c: Configuration, i: int, j: int) -> int:
    pts = c.points
    others = [t for t in range(len(pts)) if t != i and t != j]
    count = 0
    for a, b in combinations(others, 2):
        if orient(pts[a], pts[b], pts[i]) != orient(pts[a], pts[b], pts[j]):
            count += 1
    return count


def partition_from_same_class(same_as_first: Sequence[bool]) -> OrchardPartition:
    """Assemble an :class:`OrchardPartition` from a same-class-as-index-0 mask.

    Applies the deterministic color rule: black is the larger class, and on
    a tie the class containing index 0.
    """
    n = len(same_as_first)
    class_a = [i for i in range(n) if same_as_first[i]]
    class_b = [i for i in range(n) if not same_as_first[i]]
    # index 0 is always in class_a, so the tie rule favors class_a
    black = class_a if len(class_a) >= len(class_b) else class_b
    black_set = set(black)
    colors = tuple(0 if i in black_set else 1 for i in range(n))
    sizes = (min(len(class_a), len(class_b)), max(len(class_a), len(class_b)))
    return OrchardPartition(colors=colors, sizes=sizes)


def orchard_partition(c: Configuration) -> OrchardPartition:
    """The Orchard partition, computed directly from separating counts.

    color(i) == color(j) iff n(P_i, P_j) = n - 3 (mod 2).  The degenerate
    sizes work out of the definition: n = 1 gives (0, 1) and n = 2 gives
    (1, 1) because n(P, Q) = 0 while n - 3 is odd.
    """
    require_generic(c)
    n = len(c)
    parity = (n - 3) % 2
    same = [True] + [
        _separating_count_unchecked(c, 0, i) % 2 == parity for i in range(1, n)
    ]
    part = partition_from_same_class(same)
    # Theorem: the relation is transitive with at most two classes.  Verify
    # on all pairs; a failure would mean a bug in the predicates.
    for i, j in combinations(range(n), 2):
        want = (part.colors[i] == part.colors[j])
        got = _separating_count_unchecked(c, i, j) % 2 == parity
        if want != got:
            raise AssertionError(f"Orchard relation not transitive at pair ({i}, {j})")
    return part


def lemma_decomposition(c: Configuration, i: int, j: int, k: int) -> LemmaDecomposition:
    """Separating-count decomposition of the triple (i, j, k).

    Classifies every remaining point into one of the four open projective
    triangles cut out by the lines ij, jk, ik, and counts the lines over
    pairs of remaining points that separate one triple vertex from the two
    others.
    """
    _check_index(c, i, j, k)
    if len({i, j, k}) != 3:
        raise ValueError("lemma_decomposition needs three distinct indices")
    require_generic(c)
    pts = c.points
    rest = [t for t in range(len(pts)) if t not in (i, j, k)]

    pi, pj, pk = pts[i], pts[j], pts[k]
    sigma = {"0": 0, "i": 0, "j": 0, "k": 0}
    # Flags: on the same side of the opposite edge's line as the triangle.
    # The affine triangle is (1,1,1); each projective triangle Delta_* is the
    # pair of complementary flag patterns with the vertex-* pattern.
    region_of = {
        (True, True, True): "0",
        (True, False, False): "i",
        (False, True, True): "i",
        (False, True, False): "j",
        (True, False, True): "j",
        (False, False, True): "k",
        (True, True, False): "k",
    }
    for t in rest:
        q = pts[t]
        a = orient(pj, pk, q) == orient(pj, pk, pi)
        b = orient(pi, pk, q) == orient(pi, pk, pj)
        cc = orient(pi, pj, q) == orient(pi, pj, pk)
        sigma[region_of[(a, b, cc)]] += 1

    def separates(a: int, b: int, u: int, v: int) -> bool:
        return orient(pts[a], pts[b], pts[u]) != orient(pts[a], pts[b], pts[v])

    alpha = {i: 0, j: 0, k: 0}
    for a, b in combinations(rest, 2):
        for v, (u1, u2) in ((i, (j, k)), (j, (i, k)), (k, (i, j))):
            if separates(a, b, v, u1) and separates(a, b, v, u2):
                alpha[v] += 1

    return LemmaDecomposition(
        alpha_i=alpha[i],
        alpha_j=alpha[j],
        alpha_k=alpha[k],
        sigma_0=sigma["0"],
        sigma_i=sigma["i"],
        sigma_j=sigma["j"],
        sigma_k=sigma["k"],
    )


def hull_indices(c: Configuration) -> tuple[int, ...]:
    """Indices of the convex hull vertices, counterclockwise.

    Starts from the lexicographically smallest point.  Genericity means
    every hull vertex is extreme (no three collinear), so the hull is
    unambiguous.
    """
    require_generic(c)
    pts = c.points
    n = len(pts)
    if n == 1:
        return (0,)
    if n == 2:
        return tuple(sorted(range(2), key=lambda t: (pts[t].x, pts[t].y)))

    order = sorted(range(n), key=lambda t: (pts[t].x, pts[t].y))

    def half(indices: list[int]) -> list[int]:
        out: list[int] = []
        for t in indices:
            while len(out) >= 2 and orient(pts[out[-2]], pts[out[-1]], pts[t]) <= 0:
                out.pop()
            out.append(t)
        return out

    lower = half(order)
    upper = half(order[::-1])
    hull = lower[:-1] + upper[:-1]
    # monotone chain emits counterclockwise starting at the lexicographic
    # minimum already; keep the starting convention explicit anyway
    start = hull.index(min(hull, key=lambda t: (pts[t].x, pts[t].y)))
    return tuple(hull[start:] + hull[:start])
