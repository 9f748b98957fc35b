"""Pure combinatorial layer: chirotopes, validation, keys, partitions.

A chirotope records the orientation sign of every point triple and is the
combinatorial carrier of an order type: two generic configurations are
isomorphic exactly when some relabeling matches their triple signs either
everywhere or everywhere-negated (the oriented flavor disallows the
negation).  All operations of the coordinate layer that only depend on the
order type are recomputed here purely from signs, and cross-checked against
the coordinate layer in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Sequence

import numpy as np

from . import _kernel
from .errors import (
    IndexOutOfRangeError,
    InvalidChirotopeError,
    NonGenericError,
    PointFormatError,
)
from .geometry import (
    Configuration,
    OrchardPartition,
    partition_from_same_class,
    require_generic,
)


class Chirotope:
    """Orientation signs for all point triples, with alternation built in.

    Immutable.  ``sign(i, j, k)`` is +1/-1 for distinct indices of a
    uniform (generic) chirotope and 0 when an index repeats.
    """

    __slots__ = ("n", "_cube")

    def __init__(self, n: int, cube: np.ndarray):
        if cube.shape != (n, n, n):
            raise ValueError("cube shape does not match n")
        cube = np.asarray(cube, dtype=np.int8).copy()
        cube.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_cube", cube)

    def __setattr__(self, name, value):
        raise AttributeError("Chirotope is immutable")

    @classmethod
    def from_lex_signs(cls, n: int, signs: Sequence[int] | str) -> "Chirotope":
        """Build from signs of the strictly increasing triples in lex order."""
        if isinstance(signs, str):
            try:
                signs = [{"+": 1, "-": -1}[ch] for ch in signs]
            except KeyError as exc:
                raise PointFormatError(f"bad sign character {exc}") from exc
        signs = list(signs)
        want = len(list(combinations(range(n), 3)))
        if len(signs) != want:
            raise PointFormatError(f"expected {want} signs for n={n}, got {len(signs)}")
        if any(s not in (-1, 1) for s in signs):
            raise PointFormatError("signs must be +1 or -1 (uniform chirotope)")
        return cls(n, _kernel.cube_from_lex_signs(n, signs))

    @property
    def cube(self) -> np.ndarray:
        """Read-only n*n*n sign tensor."""
        return self._cube

    def sign(self, i: int, j: int, k: int) -> int:
        n = self.n
        for t in (i, j, k):
            if not 0 <= t < n:
                raise IndexOutOfRangeError(f"index {t} out of range for n={n}")
        return int(self._cube[i, j, k])

    def lex_signs(self) -> list[int]:
        return [int(s) for s in _kernel.lex_signs(self._cube)]

    def negate(self) -> "Chirotope":
        return Chirotope(self.n, -self._cube)

    def permute(self, perm: Sequence[int]) -> "Chirotope":
        """Relabeled chirotope: new index t carries old index perm[t]."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of the indices")
        return Chirotope(self.n, _kernel.permute_cube(self._cube, perm))

    def restrict(self, subset: Sequence[int]) -> "Chirotope":
        """Chirotope of a subset of the points, relabeled 0..len(subset)-1."""
        subset = list(subset)
        if len(set(subset)) != len(subset) or not all(0 <= s < self.n for s in subset):
            raise IndexOutOfRangeError(f"bad subset {subset} for n={self.n}")
        return Chirotope(len(subset), _kernel.restrict_cube(self._cube, subset))

    def delete(self, index: int) -> "Chirotope":
        if not 0 <= index < self.n:
            raise IndexOutOfRangeError(f"index {index} out of range for n={self.n}")
        keep = [t for t in range(self.n) if t != index]
        return self.restrict(keep)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Chirotope)
            and self.n == other.n
            and bool(np.array_equal(self._cube, other._cube))
        )

    def __hash__(self) -> int:
        return hash((self.n, self._cube.tobytes()))

    def __repr__(self) -> str:
        return f"Chirotope(n={self.n})"

    # -- chirotope text format ----------------------------------------------

    def to_text(self) -> str:
        """Two lines: "n=<int>" and the lex-order signs over {+,-}."""
        body = "".join("+" if s > 0 else "-" for s in self.lex_signs())
        return f"n={self.n}\n{body}\n"

    @classmethod
    def from_text(cls, text: str) -> "Chirotope":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if len(lines) < 1 or not lines[0].startswith("n="):
            raise PointFormatError("chirotope text must start with 'n=<int>'")
        try:
            n = int(lines[0][2:])
        except ValueError as exc:
            raise PointFormatError(f"bad point count {lines[0]!r}") from exc
        if n < 3:
            if len(lines) > 1 and lines[1]:
                raise PointFormatError("no signs expected for n < 3")
            return cls(n, _kernel.empty_cube(n))
        if len(lines) != 2:
            raise PointFormatError("expected exactly one sign line")
        return cls.from_lex_signs(n, lines[1])


@dataclass(frozen=True)
class CanonicalKey:
    """Complete invariant of an (un)oriented isomorphism class."""

    data: bytes
    oriented: bool

    def hex(self) -> str:
        return self.data.hex()

    def __str__(self) -> str:
        return self.hex()


@dataclass(frozen=True)
class ChirotopeValidation:
    """Outcome of :func:`validate_chirotope`; carries the offending subset."""

    ok: bool
    offending_subset: tuple[int, ...] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def chirotope_of(c: Configuration) -> Chirotope:
    """Tabulate the exact orientation of every triple of the configuration."""
    require_generic(c)
    coords = [(p.x, p.y) for p in c.points]
    return Chirotope(len(coords), _kernel.cube_from_coords(coords))


# -- realizable-subconfiguration catalogs ------------------------------------
#
# Validation compares every small restriction against the exhaustive set of
# sign vectors achievable by that many generic planar points.  The catalogs
# are generated from explicit reference configurations of each small order
# type, closed under relabeling and mirroring.  Since every circuit of a
# rank-3 uniform chirotope has at most 4 elements, certifying all 4- and
# 5-point restrictions as affinely realizable also certifies acyclicity.

_REF4 = (
    ((0, 0), (1, 0), (1, 1), (0, 1)),    # convex position
    ((0, 0), (4, 0), (2, 3), (2, 1)),    # triangle plus interior point
)
_REF5 = (
    tuple((k, k * k) for k in range(5)),             # convex position
    ((0, 0), (4, 0), (4, 4), (0, 4), (1, 2)),        # hull 4
    ((0, 0), (8, 0), (0, 8), (1, 1), (3, 2)),        # hull 3
)


def _catalog(refs: Iterable[tuple], size: int) -> frozenset[bytes]:
    out = set()
    for coords in refs:
        cube = _kernel.cube_from_coords(coords)
        if 0 in _kernel.lex_signs(cube):
            raise AssertionError("reference configuration is degenerate")
        for perm in permutations(range(size)):
            sub = _kernel.permute_cube(cube, perm)
            row = _kernel.lex_signs(sub)
            out.add(row.tobytes())
            out.add((-row).tobytes())
    return frozenset(out)


@lru_cache(maxsize=None)
def _catalog4() -> frozenset[bytes]:
    return _catalog(_REF4, 4)


@lru_cache(maxsize=None)
def _catalog5() -> frozenset[bytes]:
    return _catalog(_REF5, 5)


@lru_cache(maxsize=64)
def _subset_triple_index(n: int, size: int):
    """For every size-subset of range(n): index triples of its inner triples."""
    subsets = list(combinations(range(n), size))
    local = list(combinations(range(size), 3))
    idx = np.empty((len(subsets), len(local), 3), dtype=np.intp)
    for s, sub in enumerate(subsets):
        for t, (a, b, c) in enumerate(local):
            idx[s, t] = (sub[a], sub[b], sub[c])
    return subsets, idx


def _validate_cube(cube: np.ndarray) -> ChirotopeValidation:
    n = cube.shape[0]
    if n >= 3:
        signs = _kernel.lex_signs(cube)
        if 0 in signs:
            i3, j3, k3 = _kernel.triple_arrays(n)
            at = int(np.flatnonzero(signs == 0)[0])
            trip = (int(i3[at]), int(j3[at]), int(k3[at]))
            return ChirotopeValidation(False, trip, f"zero sign at triple {trip}")
    if n < 4:
        return ChirotopeValidation(True)
    size = 4 if n == 4 else 5
    catalog = _catalog4() if size == 4 else _catalog5()
    subsets, idx = _subset_triple_index(n, size)
    rows = cube[idx[..., 0], idx[..., 1], idx[..., 2]]
    for s, sub in enumerate(subsets):
        if rows[s].tobytes() not in catalog:
            return ChirotopeValidation(
                False, sub, f"subset {sub} is not realizable by generic planar points"
            )
    return ChirotopeValidation(True)


def validate_chirotope(chi: Chirotope) -> ChirotopeValidation:
    """Check that the sign map comes from some generic planar configuration
    as far as small substructures can tell.

    Verifies (a) no zero signs, (b) every 4/5-point restriction matches a
    sign vector achievable by that many generic planar points, which also
    forces acyclicity.  Complete realizability testing is out of scope; for
    small n (through 8) every map passing this check is realizable.
    """
    return _validate_cube(chi.cube)


def _require_valid(chi: Chirotope) -> None:
    v = validate_chirotope(chi)
    if not v.ok:
        raise InvalidChirotopeError(v.message)


def separating_count_chi(chi: Chirotope, i: int, j: int) -> int:
    """Separating count recomputed from signs only.

    A line through a, b separates i from j iff the signs of (a, b, i) and
    (a, b, j) differ; this matches the coordinate-level count of any
    realization.
    """
    n = chi.n
    for t in (i, j):
        if not 0 <= t < n:
            raise IndexOutOfRangeError(f"index {t} out of range for n={n}")
    if i == j:
        raise ValueError("separating_count_chi needs two distinct indices")
    return _kernel.separating_count_cube(chi.cube, i, j)


def orchard_partition_chi(chi: Chirotope) -> OrchardPartition:
    """The Orchard partition computed from the chirotope alone."""
    _require_valid(chi)
    return partition_from_same_class(_kernel.same_class_mask(chi.cube))


def hull_size_chi(chi: Chirotope) -> int:
    """Number of extreme points; a point is extreme iff it lies in no
    open triangle of three other points (pure sign test)."""
    _require_valid(chi)
    if chi.n < 3:
        raise ValueError("hull size needs at least 3 points")
    return _kernel.hull_size_cube(chi.cube)


def canonical_key(chi: Chirotope, oriented: bool = False) -> CanonicalKey:
    """Canonical byte string; equal keys iff isomorphic in the chosen mode.

    Minimizes the serialized lambda matrix plus sign vector over all base
    point / reference point relabelings (and the global sign when
    unoriented); see the kernel module for the construction.
    """
    _require_valid(chi)
    return CanonicalKey(data=_kernel.canonical_bytes(chi.cube, oriented), oriented=oriented)


def is_isomorphic(a: Chirotope, b: Chirotope, oriented: bool = False) -> bool:
    """Whether some bijection matches all triple signs (up to global
    negation unless oriented)."""
    if a.n != b.n:
        return False
    return canonical_key(a, oriented).data == canonical_key(b, oriented).data
