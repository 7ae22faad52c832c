"""Geometry of individual simplicial cones: normals, membership, quotients.

Functions here take the ambient fan plus a cone given as a tuple of ray
indices.  They never mutate the fan and never leave integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import TYPE_CHECKING

from .errors import (
    BadIndexError,
    DimensionMismatchError,
    NotFullDimensionalError,
    NotSimplicialError,
)
from .intlinalg import (
    IntMatrix,
    Vector,
    adjugate,
    det,
    primitivize,
    snf,
)

if TYPE_CHECKING:
    from .fans import Fan

Cone = tuple[int, ...]


@dataclass(frozen=True)
class FaceLattice:
    """All faces of a simplicial cone, listed by ray-index subset.

    Each entry pairs a sorted index tuple with its dimension; subsets are
    ordered by size, then lexicographically, starting at the zero face ().
    """

    cone: Cone
    faces: tuple[tuple[Cone, int], ...]


@dataclass(frozen=True)
class QuotientGroup:
    """Finite abelian quotient of the lattice by a full-rank sublattice.

    invariant_factors keeps only the factors bigger than 1; order is the
    product of all factors, computed independently via a determinant.
    """

    invariant_factors: tuple[int, ...]
    order: int

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors


def _generators(f: "Fan", cone) -> tuple[Vector, ...]:
    gens = []
    for idx in cone:
        if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < len(f.rays):
            raise BadIndexError(
                f"ray index {idx!r} out of range for fan with {len(f.rays)} rays"
            )
        gens.append(f.rays[idx])
    return tuple(gens)


@lru_cache(maxsize=None)
def _span_frame(gens: tuple[Vector, ...]) -> tuple[IntMatrix, int, tuple[Vector, ...]]:
    """Coordinate frame adapted to the span of k independent generators.

    Returns (v, k, span_normals) where v is a unimodular change of basis
    such that x lies in the span exactly when the trailing n - k entries
    of the row product x @ v vanish, and span_normals are the primitive
    inner facet normals written in the leading k coordinates (normal i
    vanishes on every generator except generator i, where it is positive).
    """
    k = len(gens)
    m = IntMatrix.from_rows(gens)
    res = snf(m)
    if len(res.invariant_factors) != k:
        raise NotSimplicialError(f"generators {gens} are rationally dependent")
    v = res.v
    coords = m @ v
    c = IntMatrix.from_rows([row[:k] for row in coords.entries])
    sign = 1 if det(c) > 0 else -1
    adj = adjugate(c)
    span_normals = tuple(
        primitivize(tuple(sign * adj.entries[i][j] for i in range(k)))
        for j in range(k)
    )
    return v, k, span_normals


def facet_normals(f: "Fan", cone) -> tuple[Vector, ...]:
    """Primitive inner facet normals of a simplicial cone, one per generator.

    Normal i evaluates to zero on every generator except generator i, where
    it is positive; the normals are ambient covectors even when the cone is
    lower-dimensional.  The zero cone has no facets and yields ().
    """
    gens = _generators(f, cone)
    if not gens:
        return ()
    v, k, span_normals = _span_frame(gens)
    n = f.ambient_rank
    return tuple(
        tuple(sum(v.entries[j][i] * u[i] for i in range(k)) for j in range(n))
        for u in span_normals
    )


def cone_contains(f: "Fan", cone, point) -> bool:
    """Whether an integer point lies in the closed cone spanned by the rays."""
    pt = tuple(point)
    if len(pt) != f.ambient_rank:
        raise DimensionMismatchError(
            f"point {pt} has length {len(pt)}, expected {f.ambient_rank}"
        )
    gens = _generators(f, cone)
    if not gens:
        return all(x == 0 for x in pt)
    v, k, span_normals = _span_frame(gens)
    coords = tuple(
        sum(pt[j] * v.entries[j][i] for j in range(len(pt))) for i in range(v.cols)
    )
    if any(coords[i] != 0 for i in range(k, len(coords))):
        return False
    return all(sum(u[i] * coords[i] for i in range(k)) >= 0 for u in span_normals)


def face_lattice(cone) -> FaceLattice:
    """Every face of a simplicial cone as a subset of its ray indices."""
    c = tuple(cone)
    for idx in c:
        if isinstance(idx, bool) or not isinstance(idx, int) or idx < 0:
            raise BadIndexError(f"ray index {idx!r} is not a nonnegative integer")
    if len(set(c)) != len(c):
        raise BadIndexError(f"cone {c} repeats a ray index")
    ordered = tuple(sorted(c))
    faces = tuple(
        (sub, size)
        for size in range(len(ordered) + 1)
        for sub in combinations(ordered, size)
    )
    return FaceLattice(cone=ordered, faces=faces)


def orbit_codim(cone) -> int:
    """Codimension of the torus orbit attached to a cone (its dimension)."""
    c = tuple(cone)
    if len(set(c)) != len(c):
        raise BadIndexError(f"cone {c} repeats a ray index")
    return len(c)


def quotient_group(f: "Fan", cone) -> QuotientGroup:
    """Quotient of the ambient lattice by the sublattice the rays generate.

    Requires a full-dimensional cone.  The order comes from a fraction-free
    determinant and the factor list from Smith reduction; the two routes
    stay separate so they can cross-check each other.
    """
    gens = _generators(f, cone)
    n = f.ambient_rank
    if len(gens) != n:
        raise NotFullDimensionalError(
            f"cone {tuple(cone)} has {len(gens)} rays in ambient rank {n}"
        )
    m = IntMatrix.from_rows(gens)
    d = det(m)
    if d == 0:
        raise NotFullDimensionalError(
            f"cone {tuple(cone)} has rationally dependent rays"
        )
    factors = tuple(x for x in snf(m).invariant_factors if x > 1)
    return QuotientGroup(invariant_factors=factors, order=abs(d))
