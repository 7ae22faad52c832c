"""Simplicial rational fans: construction, validation, surgery, serialization.

A fan is stored canonically: rays sorted lexicographically, each maximal
cone a sorted tuple of ray indices, and the cone list itself sorted.  Two
fans built from permuted input therefore compare equal, serialize to
identical bytes, and share one digest.
"""

from __future__ import annotations

import hashlib
import json
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .conegeom import Cone, cone_contains
from .errors import (
    BadConeError,
    BadIndexError,
    BadParameterError,
    FanFormatError,
    InvalidFanError,
    NotPureError,
    NotSimplicialError,
    NotSmoothError,
)
from .intlinalg import (
    IntMatrix,
    Vector,
    extends_to_z_basis,
    kernel_basis,
    rank,
    primitivize,
)


@dataclass(frozen=True)
class Fan:
    """Canonical-form fan data.  Build through make_fan, not directly."""

    ambient_rank: int
    rays: tuple[Vector, ...]
    max_cones: tuple[Cone, ...]


@dataclass(frozen=True)
class FanReport:
    """Outcome of validate_fan.

    valid is True exactly when diagnostics is empty.  simplicial is always
    True for fans this package constructs; the field exists so reports are
    explicit about what was checked.  complete is False whenever the fan is
    invalid or has a lower-dimensional maximal cone.
    """

    valid: bool
    smooth: bool
    simplicial: bool
    nondegenerate: bool
    complete: bool
    torus_factor_rank: int
    diagnostics: tuple[str, ...]


def make_fan(ambient_rank, rays, max_cones) -> Fan:
    """Validate raw fan data and return it in canonical form.

    Rays must be primitive, nonzero, pairwise distinct integer vectors of
    the given length; each maximal cone must list distinct in-range ray
    indices with rationally independent rays.  Violations raise
    InvalidFanError (NotSimplicialError for dependent generators).  The
    pairwise intersection condition is NOT checked here; that is the job
    of validate_fan, so that broken fans can still be loaded and reported.
    """
    if isinstance(ambient_rank, bool) or not isinstance(ambient_rank, int) or ambient_rank < 1:
        raise InvalidFanError(f"ambient_rank must be a positive integer, got {ambient_rank!r}")
    ray_list: list[Vector] = []
    for pos, ray in enumerate(rays):
        vec = tuple(ray)
        for x in vec:
            if isinstance(x, bool) or not isinstance(x, int):
                raise InvalidFanError(f"ray {pos} has a non-integer entry {x!r}")
        if len(vec) != ambient_rank:
            raise InvalidFanError(
                f"ray {pos} {vec} has length {len(vec)}, expected {ambient_rank}"
            )
        if all(x == 0 for x in vec):
            raise InvalidFanError(f"ray {pos} is the zero vector")
        if vec != primitivize(vec):
            raise InvalidFanError(f"ray {pos} {vec} is not primitive")
        ray_list.append(vec)
    if len(set(ray_list)) != len(ray_list):
        dup = next(v for v in ray_list if ray_list.count(v) > 1)
        raise InvalidFanError(f"ray {dup} appears more than once")

    order = sorted(range(len(ray_list)), key=lambda i: ray_list[i])
    remap = {old: new for new, old in enumerate(order)}
    canon_rays = tuple(ray_list[i] for i in order)

    canon_cones: list[Cone] = []
    for cone in max_cones:
        c = tuple(cone)
        for idx in c:
            if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < len(canon_rays):
                raise InvalidFanError(f"maximal cone {c} has a bad ray index {idx!r}")
        if len(set(c)) != len(c):
            raise InvalidFanError(f"maximal cone {c} repeats a ray index")
        mapped = tuple(sorted(remap[i] for i in c))
        if mapped:
            gens = IntMatrix.from_rows([canon_rays[i] for i in mapped])
            if rank(gens) != len(mapped):
                raise NotSimplicialError(f"maximal cone {c} has rationally dependent rays")
        canon_cones.append(mapped)
    canon_cones.sort()
    return Fan(ambient_rank=ambient_rank, rays=canon_rays, max_cones=tuple(canon_cones))


def _check_cone(f: Fan, cone) -> Cone:
    c = tuple(cone)
    for idx in c:
        if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < len(f.rays):
            raise BadIndexError(
                f"ray index {idx!r} out of range for fan with {len(f.rays)} rays"
            )
    if len(set(c)) != len(c):
        raise BadIndexError(f"cone {c} repeats a ray index")
    return c


def cone_dim(f: Fan, cone) -> int:
    """Dimension of the cone spanned by the indexed rays (0 for the zero cone)."""
    c = _check_cone(f, cone)
    if not c:
        return 0
    return rank(IntMatrix.from_rows([f.rays[i] for i in c]))


def is_smooth_cone(f: Fan, cone) -> bool:
    """Whether the indexed rays extend to a basis of the ambient lattice."""
    c = _check_cone(f, cone)
    if not c:
        return True
    return extends_to_z_basis([f.rays[i] for i in c], f.ambient_rank)


def is_smooth_fan(f: Fan) -> bool:
    # Faces of smooth simplicial cones are smooth, so maximal cones suffice.
    return all(is_smooth_cone(f, c) for c in f.max_cones)


def first_nonsmooth_cone(f: Fan) -> Cone | None:
    for c in f.max_cones:
        if not is_smooth_cone(f, c):
            return c
    return None


def torus_factor_rank(f: Fan) -> int:
    """Corank of the span of all rays; 0 means the rays span the ambient space."""
    if not f.rays:
        return f.ambient_rank
    return f.ambient_rank - rank(IntMatrix.from_rows(f.rays))


def is_nondegenerate(f: Fan) -> bool:
    return torus_factor_rank(f) == 0


def is_complete(f: Fan) -> bool:
    """Facet-pairing completeness test.

    Requires a pure fan (every maximal cone full-dimensional); raises
    NotPureError otherwise.  A valid pure fan covers all of space exactly
    when every facet, i.e. every (n-1)-subset of a maximal cone, occurs in
    exactly two maximal cones.  Only meaningful on fans that validate.
    """
    n = f.ambient_rank
    if not f.max_cones or any(len(c) != n for c in f.max_cones):
        raise NotPureError("completeness needs every maximal cone full-dimensional")
    facets: Counter[Cone] = Counter()
    for c in f.max_cones:
        for facet in combinations(c, n - 1):
            facets[facet] += 1
    return all(count == 2 for count in facets.values())


def _pair_finding(f: Fan, ia: int, ib: int) -> str | None:
    """Diagnostic if two maximal cones intersect beyond their shared face.

    First a cheap membership test with a pointed message: a ray of one cone
    lying inside the other without being shared.  Crossings without any ray
    inside the other cone exist, so the decisive test enumerates minimal
    rational dependencies (circuits) among the rays of the first cone and
    the negated rays of the second.  A circuit with uniform coefficient
    signs equates a positive combination from each side, i.e. exhibits a
    common interior point; the intersection condition holds exactly when
    every such circuit stays within the shared rays.
    """
    ca, cb = f.max_cones[ia], f.max_cones[ib]
    shared = set(ca) & set(cb)
    for idx in cb:
        if idx not in shared and cone_contains(f, ca, f.rays[idx]):
            return (
                f"ray {idx} {f.rays[idx]} of maximal cone {cb} lies in "
                f"maximal cone {ca} but is not a shared ray"
            )
    for idx in ca:
        if idx not in shared and cone_contains(f, cb, f.rays[idx]):
            return (
                f"ray {idx} {f.rays[idx]} of maximal cone {ca} lies in "
                f"maximal cone {cb} but is not a shared ray"
            )
    cols = [f.rays[i] for i in ca] + [tuple(-x for x in f.rays[i]) for i in cb]
    owners = [("first", i) for i in ca] + [("second", i) for i in cb]
    shared_cols = {j for j, (_, idx) in enumerate(owners) if idx in shared}
    n = f.ambient_rank
    for size in range(2, min(len(cols), n + 1) + 1):
        for subset in combinations(range(len(cols)), size):
            if all(j in shared_cols for j in subset):
                continue
            m = IntMatrix.from_rows(
                [[cols[j][row] for j in subset] for row in range(n)]
            )
            kern = kernel_basis(m)
            if len(kern) != 1:
                continue
            gen = kern[0]
            if any(x == 0 for x in gen):
                continue
            if all(x > 0 for x in gen) or all(x < 0 for x in gen):
                left = sorted({owners[j][1] for j in subset if owners[j][0] == "first"})
                right = sorted({owners[j][1] for j in subset if owners[j][0] == "second"})
                return (
                    f"maximal cones {ca} and {cb} overlap beyond their shared rays: "
                    f"a positive combination of rays {left} of the first equals "
                    f"one of rays {right} of the second"
                )
    return None


def validate_fan(f: Fan) -> FanReport:
    """Check the fan axioms and report every problem found.

    Diagnostics cover: no maximal cones, rays unused by every cone,
    duplicated maximal cones, a maximal cone contained in another, and
    pairs of maximal cones whose intersection is not their shared face.
    The fan is valid exactly when the list is empty.
    """
    diags: list[str] = []
    if not f.max_cones:
        diags.append("fan has no maximal cones")
    used = {i for c in f.max_cones for i in c}
    for i, ray in enumerate(f.rays):
        if i not in used:
            diags.append(f"ray {i} {ray} is not used by any maximal cone")

    seen: set[Cone] = set()
    duplicated: set[Cone] = set()
    for c in f.max_cones:
        if c in seen and c not in duplicated:
            diags.append(f"maximal cone {c} appears more than once")
            duplicated.add(c)
        seen.add(c)

    sets = [frozenset(c) for c in f.max_cones]
    skip: set[tuple[int, int]] = set()
    for a, b in combinations(range(len(f.max_cones)), 2):
        if sets[a] == sets[b]:
            skip.add((a, b))
            continue
        if sets[a] < sets[b]:
            diags.append(
                f"maximal cone {f.max_cones[a]} is a face of maximal cone {f.max_cones[b]}"
            )
            skip.add((a, b))
        elif sets[b] < sets[a]:
            diags.append(
                f"maximal cone {f.max_cones[b]} is a face of maximal cone {f.max_cones[a]}"
            )
            skip.add((a, b))

    for a, b in combinations(range(len(f.max_cones)), 2):
        if (a, b) in skip:
            continue
        finding = _pair_finding(f, a, b)
        if finding is not None:
            diags.append(finding)

    valid = not diags
    pure = bool(f.max_cones) and all(len(c) == f.ambient_rank for c in f.max_cones)
    complete = is_complete(f) if valid and pure else False
    return FanReport(
        valid=valid,
        smooth=is_smooth_fan(f),
        simplicial=True,
        nondegenerate=is_nondegenerate(f),
        complete=complete,
        torus_factor_rank=torus_factor_rank(f),
        diagnostics=tuple(diags),
    )


def star_subdivision(f: Fan, cone) -> Fan:
    """Subdivide at the primitive sum of the cone's rays.

    The cone must be a face of some maximal cone with dimension at least 2,
    and the fan must be smooth.  Every maximal cone containing the face is
    replaced by the cones obtained by swapping one face generator for the
    new ray; the result is returned in canonical form.
    """
    c = tuple(cone)
    for idx in c:
        if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < len(f.rays):
            raise BadConeError(
                f"ray index {idx!r} out of range for fan with {len(f.rays)} rays"
            )
    if len(set(c)) != len(c):
        raise BadConeError(f"cone {c} repeats a ray index")
    c = tuple(sorted(c))
    if len(c) < 2:
        raise BadConeError(
            f"cone {c} has dimension {len(c)}; star subdivision needs dimension at least 2"
        )
    cset = set(c)
    if not any(cset <= set(mc) for mc in f.max_cones):
        raise BadConeError(f"cone {c} is not a face of any maximal cone")
    if not is_smooth_fan(f):
        raise NotSmoothError(f"maximal cone {first_nonsmooth_cone(f)} is not smooth")

    gens = [f.rays[i] for i in c]
    new_ray = primitivize(tuple(sum(col) for col in zip(*gens)))
    new_idx = len(f.rays)
    cones: list[Cone] = []
    for mc in f.max_cones:
        if cset <= set(mc):
            for drop in c:
                cones.append(tuple(sorted((set(mc) - {drop}) | {new_idx})))
        else:
            cones.append(mc)
    return make_fan(f.ambient_rank, f.rays + (new_ray,), cones)


def iterated_star_subdivisions(f: Fan, rounds: int, cone_dimension: int = 2) -> tuple[Fan, ...]:
    """Breadth-first star subdivisions, deduplicated by canonical form.

    Each round subdivides every distinct face of the given dimension in
    every fan of the current frontier.  Returns the starting fan followed
    by each new fan in first-discovery order, which is deterministic.
    """
    _need_positive("rounds", rounds)
    if isinstance(cone_dimension, bool) or not isinstance(cone_dimension, int) or cone_dimension < 2:
        raise BadParameterError(
            f"cone_dimension must be an integer of at least 2, got {cone_dimension!r}"
        )
    seen: dict[bytes, Fan] = {canonical_fan_bytes(f): f}
    frontier = list(seen.values())
    for _ in range(rounds):
        fresh: list[Fan] = []
        for fan in frontier:
            faces = sorted(
                {sub for mc in fan.max_cones for sub in combinations(mc, cone_dimension)}
            )
            for face in faces:
                child = star_subdivision(fan, face)
                key = canonical_fan_bytes(child)
                if key not in seen:
                    seen[key] = child
                    fresh.append(child)
        frontier = fresh
    return tuple(seen.values())


def _need_positive(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise BadParameterError(f"{name} must be a positive integer, got {value!r}")
    return value


def fan_affine_space(n: int) -> Fan:
    """Fan of affine n-space: one maximal cone on the standard basis."""
    _need_positive("n", n)
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return make_fan(n, rays, [tuple(range(n))])


def fan_projective_space(n: int) -> Fan:
    """Fan of projective n-space."""
    _need_positive("n", n)
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = list(combinations(range(n + 1), n))
    return make_fan(n, rays, cones)

def fan_hirzebruch(a: int) -> Fan:
    """Fan of the degree-a ruled surface over the projective line."""
    if isinstance(a, bool) or not isinstance(a, int) or a < 0:
        raise BadParameterError(f"twist must be a nonnegative integer, got {a!r}")
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    cones = [(0, 1), (1, 2), (2, 3), (3, 0)]
    return make_fan(2, rays, cones)


def fan_product(f: Fan, g: Fan) -> Fan:
    """Fan of the product variety: pairwise sums of cones in the direct sum."""
    n1, n2 = f.ambient_rank, g.ambient_rank
    rays = [r + (0,) * n2 for r in f.rays] + [(0,) * n1 + r for r in g.rays]
    shift = len(f.rays)
    cones = [
        ca + tuple(shift + i for i in cb)
        for ca in f.max_cones
        for cb in g.max_cones
    ]
    return make_fan(n1 + n2, rays, cones)


def fan_punctured_affine(n: int) -> Fan:
    """Fan of affine n-space minus the origin: the rays of the octant only."""
    _need_positive("n", n)
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return make_fan(n, rays, [(i,) for i in range(n)])


def fan_to_dict(f: Fan) -> dict:
    return {
        "rank": f.ambient_rank,
        "rays": [list(r) for r in f.rays],
        "max_cones": [list(c) for c in f.max_cones],
    }


def fan_from_dict(doc) -> Fan:
    """Build a fan from parsed JSON, checking shape before semantics.

    Shape problems (wrong types, missing keys) raise FanFormatError; value
    problems (bad rank, non-primitive ray, dependent cone) surface as
    InvalidFanError from make_fan.
    """
    if not isinstance(doc, dict):
        raise FanFormatError("fan document must be a JSON object")
    missing = {"rank", "rays", "max_cones"} - doc.keys()
    if missing:
        raise FanFormatError(f"fan document is missing keys: {sorted(missing)}")
    ambient = doc["rank"]
    if isinstance(ambient, bool) or not isinstance(ambient, int):
        raise FanFormatError("rank must be an integer")
    for key in ("rays", "max_cones"):
        rows = doc[key]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise FanFormatError(f"{key} must be a list of integer lists")
        for row in rows:
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise FanFormatError(f"{key} entries must be integers, got {x!r}")
    return make_fan(
        ambient,
        [tuple(r) for r in doc["rays"]],
        [tuple(c) for c in doc["max_cones"]],
    )


def fan_to_json(f: Fan, pretty: bool = True) -> str:
    doc = fan_to_dict(f)
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)


def fan_from_json(text: str) -> Fan:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanFormatError(f"fan document is not valid JSON: {exc}") from exc
    return fan_from_dict(doc)


def canonical_fan_bytes(f: Fan) -> bytes:
    """Byte form underlying the digest; canonical fans map to equal bytes."""
    return fan_to_json(f, pretty=False).encode("utf-8")


def fan_digest(f: Fan) -> str:
    return hashlib.sha256(canonical_fan_bytes(f)).hexdigest()


def report_to_dict(r: FanReport) -> dict:
    return {
        "valid": r.valid,
        "smooth": r.smooth,
        "simplicial": r.simplicial,
        "nondegenerate": r.nondegenerate,
        "complete": r.complete,
        "torus_factor_rank": r.torus_factor_rank,
        "diagnostics": list(r.diagnostics),
    }


def report_from_dict(doc) -> FanReport:
    if not isinstance(doc, dict):
        raise FanFormatError("fan report must be a JSON object")
    flags = ("valid", "smooth", "simplicial", "nondegenerate", "complete")
    missing = set(flags + ("torus_factor_rank", "diagnostics")) - doc.keys()
    if missing:
        raise FanFormatError(f"fan report is missing keys: {sorted(missing)}")
    for key in flags:
        if not isinstance(doc[key], bool):
            raise FanFormatError(f"report field {key} must be a boolean")
    tfr = doc["torus_factor_rank"]
    if isinstance(tfr, bool) or not isinstance(tfr, int) or tfr < 0:
        raise FanFormatError("torus_factor_rank must be a nonnegative integer")
    diags = doc["diagnostics"]
    if not isinstance(diags, list) or not all(isinstance(s, str) for s in diags):
        raise FanFormatError("diagnostics must be a list of strings")
    return FanReport(
        valid=doc["valid"],
        smooth=doc["smooth"],
        simplicial=doc["simplicial"],
        nondegenerate=doc["nondegenerate"],
        complete=doc["complete"],
        torus_factor_rank=tfr,
        diagnostics=tuple(diags),
    )
