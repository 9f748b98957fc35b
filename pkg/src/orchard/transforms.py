"""Mutation calculus on configurations: flips, close pairs, contractions.

A flip negates the orientation of exactly one triple; geometrically one
vertex of an almost-flat triangle crosses the line of the other two while
every other triple keeps its orientation.  An infinitesimally-close pair is
a pair with separating count zero; deleting one point of such a pair is an
infinitesimal contraction, and iterating contractions reaches a minimal
representative that is unique up to isomorphism regardless of the
contraction order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations

import numpy as np

from . import _kernel
from .errors import (
    ConeOutOfRangeError,
    IllegalFlipError,
    IndexOutOfRangeError,
    NonGenericError,
    NotClosePairError,
    PlacementFailedError,
)
from .geometry import (
    Configuration,
    Point,
    hull_indices,
    orient,
    partition_from_same_class,
    require_generic,
)
from .ordertype import Chirotope, _catalog4, _catalog5, _require_valid


@dataclass(frozen=True)
class FlipMove:
    """A single-triple mutation; at the chirotope level it negates the sign
    of the (sorted) triple."""

    triple: tuple[int, int, int]

    def __init__(self, r: int, s: int, t: int):
        if len({r, s, t}) != 3:
            raise ValueError("a flip needs three distinct indices")
        object.__setattr__(self, "triple", tuple(sorted((r, s, t))))


@dataclass(frozen=True)
class ClosePair:
    """An infinitesimally-close pair: separating count zero."""

    r: int
    s: int

    def __init__(self, r: int, s: int):
        if r == s:
            raise ValueError("a close pair needs two distinct indices")
        r, s = sorted((r, s))
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.r, self.s)


def _mutated_cube(cube: np.ndarray, triple: tuple[int, int, int]) -> np.ndarray:
    out = cube.copy()
    r, s, t = triple
    _kernel.set_triple(out, r, s, t, -int(cube[r, s, t]))
    return out


def _mutation_valid(cube: np.ndarray, triple: tuple[int, int, int]) -> bool:
    """Does negating this triple keep the sign map realizable-looking?

    Only restrictions containing the whole triple can change, so for n >= 5
    it suffices to recheck the 5-subsets through the triple.
    """
    n = cube.shape[0]
    if n == 3:
        return True
    cand = _mutated_cube(cube, triple)
    if n == 4:
        return _kernel.lex_signs(cand).tobytes() in _catalog4()
    catalog = _catalog5()
    others = [x for x in range(n) if x not in triple]
    for a, b in combinations(others, 2):
        subset = sorted((*triple, a, b))
        sub = _kernel.restrict_cube(cand, subset)
        if _kernel.lex_signs(sub).tobytes() not in catalog:
            return False
    return True


def find_flips(chi: Chirotope) -> list[FlipMove]:
    """All triples whose single-sign negation stays a valid chirotope."""
    _require_valid(chi)
    if chi.n < 3:
        raise ValueError("flips need at least 3 points")
    cube = chi.cube
    return [
        FlipMove(*trip)
        for trip in combinations(range(chi.n), 3)
        if _mutation_valid(cube, trip)
    ]


def apply_flip_chi(chi: Chirotope, move: FlipMove) -> Chirotope:
    """Negate one triple sign; raises IllegalFlipError if the result is not
    a valid chirotope."""
    _require_valid(chi)
    for t in move.triple:
        if not 0 <= t < chi.n:
            raise IndexOutOfRangeError(f"index {t} out of range for n={chi.n}")
    if not _mutation_valid(chi.cube, move.triple):
        raise IllegalFlipError(f"triple {move.triple} is not flippable")
    return Chirotope(chi.n, _mutated_cube(chi.cube, move.triple))


def _reflect_across(a: Point, b: Point, v: Point) -> tuple[Point, Point]:
    """Reflection of v across line(a, b) and the foot of the perpendicular."""
    dx, dy = b.x - a.x, b.y - a.y
    t = ((v.x - a.x) * dx + (v.y - a.y) * dy) / (dx * dx + dy * dy)
    foot = Point(a.x + t * dx, a.y + t * dy)
    return Point(2 * foot.x - v.x, 2 * foot.y - v.y), foot


def apply_flip_geom(c: Configuration, move: FlipMove, budget: int = 128) -> Configuration:
    """Realize a flip by moving one vertex of the triple across the line of
    the other two.

    Tries each vertex of the triple in index order.  The target is the
    reflection of the moving vertex across the line, pulled back toward the
    crossing point by halving until every orientation not involving the
    flipped triple is preserved.  Raises IllegalFlipError when no vertex
    admits such a crossing.
    """
    require_generic(c)
    n = len(c)
    for t in move.triple:
        if not 0 <= t < n:
            raise IndexOutOfRangeError(f"index {t} out of range for n={n}")
    pts = c.points

    for v in move.triple:
        a, b = [t for t in move.triple if t != v]
        mirror, foot = _reflect_across(pts[a], pts[b], pts[v])
        # required signs: everything as seen from v, except line(a, b) negated
        want: dict[tuple[int, int], int] = {}
        ok_pair = True
        for x, y in combinations([t for t in range(n) if t != v], 2):
            s = orient(pts[x], pts[y], pts[v])
            want[(x, y)] = -s if {x, y} == {a, b} else s
        step = Fraction(1)
        for _ in range(budget):
            cand = Point(foot.x + (mirror.x - foot.x) * step, foot.y + (mirror.y - foot.y) * step)
            if all(orient(pts[x], pts[y], cand) == s for (x, y), s in want.items()):
                return c.replace(v, cand)
            step /= 2
        # this vertex cannot cross; try the next one
    raise IllegalFlipError(
        f"no vertex of {move.triple} can cross the opposite line without "
        "meeting another line of the arrangement"
    )


def _cube_of(c: Configuration) -> np.ndarray:
    return _kernel.cube_from_coords([(p.x, p.y) for p in c.points])


def infinitesimal_pairs(c: Configuration) -> list[ClosePair]:
    """All pairs with separating count zero.

    Close pairs are Orchard-equivalent exactly when the total number of
    points is odd; this is asserted on every returned pair.
    """
    require_generic(c)
    n = len(c)
    if n < 2:
        return []
    cube = _cube_of(c)
    pairs = _kernel.close_pairs_cube(cube)
    if pairs:
        colors = partition_from_same_class(_kernel.same_class_mask(cube)).colors
        for r, s in pairs:
            assert (colors[r] == colors[s]) == (n % 2 == 1), (
                "close pair equivalence must match total parity"
            )
    return [ClosePair(r, s) for r, s in pairs]


def contract(c: Configuration, pair: ClosePair) -> Configuration:
    """Infinitesimal contraction: delete the smaller index of a close pair.

    Deleting either point of a close pair gives isotopic configurations;
    this is verified by comparing the canonical keys of both deletions.
    """
    require_generic(c)
    n = len(c)
    r, s = pair.pair
    for t in (r, s):
        if not 0 <= t < n:
            raise IndexOutOfRangeError(f"index {t} out of range for n={n}")
    cube = _cube_of(c)
    if _kernel.separating_count_cube(cube, r, s) != 0:
        raise NotClosePairError(f"pair ({r}, {s}) has nonzero separating count")
    drop_r = _kernel.restrict_cube(cube, [t for t in range(n) if t != r])
    drop_s = _kernel.restrict_cube(cube, [t for t in range(n) if t != s])
    assert _kernel.canonical_bytes(drop_r, oriented=False) == _kernel.canonical_bytes(
        drop_s, oriented=False
    ), "deleting either point of a close pair must give isomorphic results"
    return c.delete(r)


def minimal_representative(c: Configuration) -> Configuration:
    """Contract close pairs until none remains.

    The contraction order does not matter: the minimal representative is
    unique up to isomorphism, so the canonical key of the result is an
    invariant of the input's infinitesimal equivalence class.
    """
    require_generic(c)
    current = c
    while True:
        pairs = infinitesimal_pairs(current)
        if not pairs:
            return current
        current = contract(current, pairs[0])


def _ray_sort_key_factory():
    def half(v: tuple[Fraction, Fraction]) -> int:
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    def cmp(u, v):
        hu, hv = half(u), half(v)
        if hu != hv:
            return hu - hv
        cr = u[0] * v[1] - u[1] * v[0]
        if cr > 0:
            return -1
        if cr < 0:
            return 1
        return 0

    return cmp_to_key(cmp)


def double_point(c: Configuration, i: int, cone: int, budget: int = 256) -> Configuration:
    """Add a point infinitesimally close to point i inside a chosen cone.

    The n-1 lines through point i and the other points delimit n-1 opposite
    cone pairs around i, indexed in angular order.  The new point is placed
    at i plus a shrinking rational offset into the chosen cone until it is
    separated from i by no line; every configuration infinitesimally
    adjacent to c arises from some (i, cone) choice.
    """
    require_generic(c)
    n = len(c)
    if not 0 <= i < n:
        raise IndexOutOfRangeError(f"index {i} out of range for n={n}")
    if n < 2:
        raise ValueError("doubling needs at least 2 points")
    if not 0 <= cone < n - 1:
        raise ConeOutOfRangeError(f"cone {cone} out of range [0, {n - 1})")
    pts = c.points
    base = pts[i]
    rays: list[tuple[Fraction, Fraction]] = []
    for j in range(n):
        if j == i:
            continue
        d = (pts[j].x - base.x, pts[j].y - base.y)
        rays.append(d)
        rays.append((-d[0], -d[1]))
    rays.sort(key=_ray_sort_key_factory())
    m = len(rays)
    r1 = rays[cone]
    r2 = rays[(cone + 1) % m]
    w = (r1[0] + r2[0], r1[1] + r2[1])
    if w == (Fraction(0), Fraction(0)):
        # consecutive rays are antipodal only for n = 2; any perpendicular
        # direction is interior to the half-plane sector
        w = (-r1[1], r1[0])
    eps = Fraction(1)
    for _ in range(budget):
        cand = Point(base.x + eps * w[0], base.y + eps * w[1])
        grown = c.append(cand)
        bad = False
        for a, b in combinations(range(n), 2):
            s = orient(pts[a], pts[b], cand)
            if s == 0:
                bad = True
                break
        if not bad:
            cube = _cube_of(grown)
            if _kernel.separating_count_cube(cube, i, n) == 0:
                return grown
        eps /= 2
    raise PlacementFailedError(f"could not double point {i} into cone {cone}")


def add_hull_infinitesimal_pair(c: Configuration, attempts_per_edge: int = 6) -> Configuration:
    """Append an infinitesimally-close pair of new hull vertices.

    The pair is placed just beyond a hull edge along its outward normal,
    close enough to the edge that every old hull vertex stays extreme and
    tight enough together that no line of the old configuration separates
    the two new points.  For an even input the pair lands in different
    classes, turning partition (a, b) into (a+1, b+1).  For odd
    monochromatic input the placement is retried over hull edges and
    offsets until the enlarged configuration is monochromatic again; if the
    input is odd and not monochromatic the new pair joins one class and no
    balance guarantee exists.
    """
    require_generic(c)
    n = len(c)
    pts = c.points

    if n == 1:
        p = pts[0]
        return c.append(Point(p.x + 1, p.y), Point(p.x + 1, p.y + 1))

    old_part = partition_from_same_class(_kernel.same_class_mask(_cube_of(c)))
    want_mono = (n % 2 == 1) and old_part.is_monochromatic

    hull = hull_indices(c)
    edges = list(zip(hull, hull[1:] + hull[:1])) if len(hull) >= 3 else [
        (hull[0], hull[1]),
        (hull[1], hull[0]),
    ]
    hull_set = set(hull)

    def try_edge(ea: int, eb: int):
        """Yield valid placements beyond this edge, nearest first."""
        a, b = pts[ea], pts[eb]
        mid = Point((a.x + b.x) / 2, (a.y + b.y) / 2)
        d = (b.x - a.x, b.y - a.y)
        # hull is counterclockwise, so the outward normal is d rotated -90
        nrm = (d[1], -d[0])
        h = Fraction(1, 2)
        for _ in range(48):
            s = h / 4
            for _ in range(48):
                p1 = Point(mid.x + h * nrm[0] + s * d[0], mid.y + h * nrm[1] + s * d[1])
                p2 = Point(mid.x + h * nrm[0] - s * d[0], mid.y + h * nrm[1] - s * d[1])
                grown = c.append(p1, p2)
                ok = True
                for x, y, z in combinations(range(n + 2), 3):
                    if z >= n:  # only triples touching the new points can degenerate
                        if orient(grown[x], grown[y], grown[z]) == 0:
                            ok = False
                            break
                if ok:
                    side = {orient(p1, p2, pts[t]) for t in range(n)}
                    if len(side) != 1 or 0 in side:
                        ok = False
                cube = None
                if ok:
                    cube = _cube_of(grown)
                    if _kernel.separating_count_cube(cube, n, n + 1) != 0:
                        ok = False
                if ok:
                    mask = _kernel.extreme_mask(cube)
                    if not (mask[n] and mask[n + 1] and all(mask[t] for t in hull_set)):
                        ok = False
                if ok:
                    yield grown, cube
                    break
                s /= 2
            h /= 2

    fallback: Configuration | None = None
    for ea, eb in edges:
        for attempt, (grown, cube) in enumerate(try_edge(ea, eb)):
            new_part = partition_from_same_class(_kernel.same_class_mask(cube))
            if n % 2 == 0:
                expect = tuple(sorted((old_part.sizes[0] + 1, old_part.sizes[1] + 1)))
                assert new_part.sizes == expect, "even input must split the new pair"
                return grown
            if not want_mono:
                return grown
            if new_part.is_monochromatic:
                return grown
            if fallback is None:
                fallback = grown
            if attempt + 1 >= attempts_per_edge:
                break
    if want_mono:
        raise PlacementFailedError(
            "no hull-edge placement kept the configuration monochromatic"
        )
    if fallback is not None:
        return fallback
    raise PlacementFailedError("no valid hull pair placement found")
