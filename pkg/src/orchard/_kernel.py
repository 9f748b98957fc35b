"""Internal numeric kernel: sign cubes, partitions, canonical keys.

A chirotope on n points is stored as an n*n*n int8 "cube" with
cube[i, j, k] = orientation sign of the triple (i, j, k), antisymmetric
under argument swaps and 0 exactly on repeated indices.  All combinatorial
operations (separating counts, hull detection, Orchard partitions,
canonicalization) reduce to integer work on this tensor, which keeps the
census loops fast without ever touching floating point.

Canonical keys: for every base point p, reference point q and (in the
unoriented case) global sign, the points are relabeled by the circular
angular order around p starting at q, computed purely from signs.  The key
body is the lexicographically smallest serialization of the relabeled
lambda matrix (lambda[i][j] = number of points on the positive side of the
directed line i -> j) concatenated with the relabeled triple signs.  The
lambda matrix of a relabeled chirotope is just a row/column permutation of
the original one, which makes the whole search a handful of vectorized
gathers.  Appending the sign vector makes the key injective on isomorphism
classes by construction.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key, lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

Coords = Sequence[tuple]


def sign_of(value) -> int:
    if value > 0:
        return 1
    if value < 0:
        return -1
    return 0


def orient_coords(a, b, c) -> int:
    """Orientation sign for raw coordinate pairs (ints or Fractions)."""
    return sign_of((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


@lru_cache(maxsize=64)
def triple_arrays(n: int):
    """Index arrays (I, J, K) over all strictly increasing triples."""
    trips = list(combinations(range(n), 3))
    if not trips:
        empty = np.zeros(0, dtype=np.intp)
        return empty, empty, empty
    arr = np.array(trips, dtype=np.intp)
    return arr[:, 0], arr[:, 1], arr[:, 2]


@lru_cache(maxsize=64)
def pair_arrays(n: int):
    """Index arrays (A, B) over all strictly increasing pairs."""
    pairs = list(combinations(range(n), 2))
    if not pairs:
        empty = np.zeros(0, dtype=np.intp)
        return empty, empty
    arr = np.array(pairs, dtype=np.intp)
    return arr[:, 0], arr[:, 1]


def empty_cube(n: int) -> np.ndarray:
    return np.zeros((n, n, n), dtype=np.int8)


def set_triple(cube: np.ndarray, i: int, j: int, k: int, s: int) -> None:
    cube[i, j, k] = cube[j, k, i] = cube[k, i, j] = s
    cube[j, i, k] = cube[i, k, j] = cube[k, j, i] = -s


def cube_from_coords(coords: Coords) -> np.ndarray:
    """Exact sign cube of a coordinate list (no genericity check here)."""
    n = len(coords)
    cube = empty_cube(n)
    for i, j, k in combinations(range(n), 3):
        set_triple(cube, i, j, k, orient_coords(coords[i], coords[j], coords[k]))
    return cube


def cube_from_lex_signs(n: int, signs: Sequence[int]) -> np.ndarray:
    cube = empty_cube(n)
    for (i, j, k), s in zip(combinations(range(n), 3), signs):
        set_triple(cube, i, j, k, s)
    return cube


def lex_signs(cube: np.ndarray) -> np.ndarray:
    n = cube.shape[0]
    i, j, k = triple_arrays(n)
    return cube[i, j, k]


def permute_cube(cube: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    """Cube of the relabeled chirotope: new index t holds old index perm[t]."""
    p = np.asarray(perm, dtype=np.intp)
    return cube[np.ix_(p, p, p)]


def restrict_cube(cube: np.ndarray, subset: Sequence[int]) -> np.ndarray:
    return permute_cube(cube, subset)


# -- separating counts and partitions ---------------------------------------


def separating_count_cube(cube: np.ndarray, i: int, j: int) -> int:
    n = cube.shape[0]
    a, b = pair_arrays(n)
    mask = (a != i) & (a != j) & (b != i) & (b != j)
    return int(np.count_nonzero((cube[a, b, i] != cube[a, b, j]) & mask))


def sep_count_matrix(cube: np.ndarray) -> np.ndarray:
    """All pairwise separating counts as a symmetric integer matrix."""
    n = cube.shape[0]
    a, b = pair_arrays(n)
    out = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        si = cube[a, b, i]
        for j in range(i + 1, n):
            mask = (a != i) & (a != j) & (b != i) & (b != j)
            c = int(np.count_nonzero((si != cube[a, b, j]) & mask))
            out[i, j] = out[j, i] = c
    return out


def same_class_mask(cube: np.ndarray) -> list[bool]:
    """same_class_mask[i]: is point i Orchard-equivalent to point 0.

    Also verifies transitivity across all pairs; raises AssertionError on a
    violation (which would indicate a corrupt cube, not a math failure).
    """
    n = cube.shape[0]
    parity = (n - 3) % 2
    sep = sep_count_matrix(cube)
    same = [True] + [int(sep[0, i]) % 2 == parity for i in range(1, n)]
    for i in range(n):
        for j in range(i + 1, n):
            if (same[i] == same[j]) != (int(sep[i, j]) % 2 == parity):
                raise AssertionError(f"Orchard relation not transitive at ({i}, {j})")
    return same


def close_pairs_cube(cube: np.ndarray) -> list[tuple[int, int]]:
    n = cube.shape[0]
    sep = sep_count_matrix(cube)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if sep[i, j] == 0]


def extreme_mask(cube: np.ndarray) -> list[bool]:
    """extreme_mask[i]: is point i a convex hull vertex (sign test only).

    A point is interior iff it lies inside the triangle of three others,
    i.e. the three signs around the triangle agree.
    """
    n = cube.shape[0]
    i3, j3, k3 = triple_arrays(n)
    out = []
    for t in range(n):
        mask = (i3 != t) & (j3 != t) & (k3 != t)
        s1 = cube[i3, j3, t]
        s2 = cube[j3, k3, t]
        s3 = cube[k3, i3, t]
        inside = mask & (s1 == s2) & (s2 == s3)
        out.append(not bool(inside.any()))
    return out


def hull_size_cube(cube: np.ndarray) -> int:
    return sum(extreme_mask(cube))


# -- canonical keys ----------------------------------------------------------


def _circular_order(cube_list, p: int, n: int) -> list[int]:
    """CCW circular order of the other points around p, from signs alone.

    Starts at the lowest other index; splitting by the side of the line
    through p and that index makes the angular comparator total on each
    side.
    """
    others = [i for i in range(n) if i != p]
    r0 = others[0]
    row = cube_list[p]
    base = row[r0]
    left = [u for u in others[1:] if base[u] > 0]
    right = [u for u in others[1:] if base[u] < 0]
    key = cmp_to_key(lambda u, v: -row[u][v])
    left.sort(key=key)
    right.sort(key=key)
    return [r0] + left + right


def _perm_rows(cube: np.ndarray, n: int) -> np.ndarray:
    """All candidate relabelings: base point, then rotations of its circle."""
    cube_list = cube.tolist()
    rows = []
    for p in range(n):
        order = _circular_order(cube_list, p, n)
        m = len(order)
        for t in range(m):
            rows.append([p] + order[t:] + order[:t])
    return np.array(rows, dtype=np.intp)


def canonical_bytes(cube: np.ndarray, oriented: bool) -> bytes:
    """Complete invariant of the (un)oriented isomorphism class."""
    n = cube.shape[0]
    if n > 255:
        raise ValueError("canonical keys support at most 255 points")
    if n < 3:
        return bytes([n])
    i3, j3, k3 = triple_arrays(n)
    best: bytes | None = None
    sources = (cube,) if oriented else (cube, -cube)
    for src in sources:
        perms = _perm_rows(src, n)
        lam = (src > 0).sum(axis=2).astype(np.uint8)
        body = lam[perms[:, :, None], perms[:, None, :]].reshape(len(perms), -1)
        signs = src[perms[:, i3], perms[:, j3], perms[:, k3]] > 0
        bits = np.packbits(signs, axis=1)
        buf = np.ascontiguousarray(np.concatenate([body, bits], axis=1))
        m, width = buf.shape
        raw = buf.tobytes()
        for t in range(m):
            cand = raw[t * width : (t + 1) * width]
            if best is None or cand < best:
                best = cand
    return bytes([n]) + best


# -- integer coordinate helpers ---------------------------------------------


def normalize_int_coords(coords: Coords) -> list[tuple[int, int]]:
    """Clear denominators and common factors; translate to nonnegative ints."""
    from math import gcd

    fracs = [(Fraction(x), Fraction(y)) for x, y in coords]
    den = 1
    for x, y in fracs:
        den = den * x.denominator // gcd(den, x.denominator)
        den = den * y.denominator // gcd(den, y.denominator)
    ints = [(int(x * den), int(y * den)) for x, y in fracs]
    minx = min(x for x, _ in ints)
    miny = min(y for _, y in ints)
    ints = [(x - minx, y - miny) for x, y in ints]
    g = 0
    for x, y in ints:
        g = gcd(g, gcd(x, y))
    if g > 1:
        ints = [(x // g, y // g) for x, y in ints]
    return ints


def snap_reduce(coords: Coords, cube: np.ndarray, max_grid: int = 1 << 20) -> list[tuple[int, int]]:
    """Round coordinates onto a small integer grid preserving the chirotope.

    Tries geometrically growing grids; each attempt is accepted only when
    every triple sign matches the reference cube exactly, so the result is
    always a faithful representative.  Falls back to exact normalized
    integers when no grid works within the bound.
    """
    n = len(coords)
    fracs = [(Fraction(x), Fraction(y)) for x, y in coords]
    minx = min(x for x, _ in fracs)
    miny = min(y for _, y in fracs)
    span = max(max(x for x, _ in fracs) - minx, max(y for _, y in fracs) - miny)
    if span == 0:
        return normalize_int_coords(coords)
    trips = list(combinations(range(n), 3))
    signs = [int(cube[i, j, k]) for i, j, k in trips]
    grid = 64
    while grid <= max_grid:
        snapped = [
            (round((x - minx) * grid / span), round((y - miny) * grid / span))
            for x, y in fracs
        ]
        if len(set(snapped)) == n and all(
            orient_coords(snapped[i], snapped[j], snapped[k]) == s
            for (i, j, k), s in zip(trips, signs)
        ):
            return [(int(x), int(y)) for x, y in snapped]
        grid *= 2
    return normalize_int_coords(coords)
