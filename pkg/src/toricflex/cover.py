"""Flexibility cover certificates for smooth nondegenerate fans.

For each maximal cone this module builds a chart record: a full-dimensional
cone gives an affine space outright, while a lower-dimensional cone is
extended to a full-dimensional pointed cone by adjoining further fan rays,
and the chart is the extended cone's affine variety minus the toric locus
of the faces that use an added ray.  The certificate stores everything an
independent checker needs: the extension, its quotient group, and every
removed face with its codimension.  verify_certificate recomputes all of
it from the fan alone, never trusting how the certificate was produced.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

from .conegeom import (
    Cone,
    QuotientGroup,
    face_lattice,
    orbit_codim,
    quotient_group,
)
from .errors import (
    BadIndexError,
    CertificateFormatError,
    DegenerateError,
    FanFormatError,
    InvalidFanError,
    NotSmoothError,
)
from .fans import (
    Fan,
    FanReport,
    fan_digest,
    first_nonsmooth_cone,
    is_smooth_cone,
    report_from_dict,
    report_to_dict,
    torus_factor_rank,
    validate_fan,
)
from .intlinalg import IntMatrix, rank

KIND_AFFINE_SPACE = "AffineSpace"
KIND_FLEXIBLE_COMPLEMENT = "FlexibleComplement"
FORMAT_VERSION = 1
DIGEST_ALGORITHM = "sha256"

# The two published results the certificate leans on; the verifier checks
# the combinatorial hypotheses, the flexibility conclusions are cited.
CITATIONS = (
    "Arzhantsev, Kuyumzhiyan, Zaidenberg 2012, Theorem 0.2: the smooth locus"
    " of a nondegenerate affine toric variety is flexible.",
    "Flenner, Kaliman, Zaidenberg 2016, Theorem 0.1: flexibility of the"
    " smooth locus passes to the complement of a subvariety of codimension"
    " at least 2.",
)


@dataclass(frozen=True)
class ChartCertificate:
    """Chart record for one maximal cone.

    k is the cone's dimension and n the ambient rank; the chart before any
    extension is a product of k affine lines and n - k tori.  For kind
    FlexibleComplement, cprime_ray_indices lists the n rays of the extended
    cone (the cone's own rays plus added_ray_indices), quotient describes
    the lattice quotient by the extended cone's generators, and
    complement_faces lists every face of the extended cone that is neither
    a face of the original cone nor a single added ray nor the zero face,
    together with its codimension.  min_complement_codim is n + 1 when the
    complement is empty.
    """

    cone_index: int
    kind: str
    k: int
    n: int
    added_ray_indices: tuple[int, ...]
    cprime_ray_indices: tuple[int, ...]
    quotient: QuotientGroup
    complement_faces: tuple[tuple[Cone, int], ...]
    min_complement_codim: int


@dataclass(frozen=True)
class CoverCertificate:
    """One chart per maximal cone, plus fan identity and hypothesis report."""

    format_version: int
    digest_algorithm: str
    fan_digest: str
    citations: tuple[str, ...]
    report: FanReport
    charts: tuple[ChartCertificate, ...]
    a_covered: bool


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of verify_certificate: passed is True iff findings is empty."""

    passed: bool
    findings: tuple[str, ...]


def _in_extension_skeleton(face: Cone, cone: set[int], added: set[int]) -> bool:
    # The kept faces: every face of the original cone, each added ray
    # alone, and the zero face.
    if not face:
        return True
    if set(face) <= cone:
        return True
    return len(face) == 1 and face[0] in added


def build_chart(f: Fan, cone_index: int) -> ChartCertificate:
    """Build the chart certificate for one maximal cone.

    A full-dimensional cone yields an AffineSpace chart.  Otherwise the
    cone's generators are completed to n rationally independent vectors by
    scanning the fan's rays in canonical order and greedily taking any ray
    that enlarges the span; nondegeneracy guarantees this reaches n.  The
    scan order makes the output deterministic.
    """
    if (
        isinstance(cone_index, bool)
        or not isinstance(cone_index, int)
        or not 0 <= cone_index < len(f.max_cones)
    ):
        raise BadIndexError(
            f"cone index {cone_index!r} out of range for fan with "
            f"{len(f.max_cones)} maximal cones"
        )
    c = f.max_cones[cone_index]
    n = f.ambient_rank
    k = len(c)
    if not is_smooth_cone(f, c):
        raise NotSmoothError(
            f"maximal cone {c} with rays {[f.rays[i] for i in c]} is not smooth"
        )
    if k == n:
        return ChartCertificate(
            cone_index=cone_index,
            kind=KIND_AFFINE_SPACE,
            k=k,
            n=n,
            added_ray_indices=(),
            cprime_ray_indices=c,
            quotient=QuotientGroup(invariant_factors=(), order=1),
            complement_faces=(),
            min_complement_codim=n + 1,
        )

    span = [f.rays[i] for i in c]
    added: list[int] = []
    for idx in range(len(f.rays)):
        if len(span) == n:
            break
        candidate = f.rays[idx]
        if rank(IntMatrix.from_rows(span + [candidate])) == len(span) + 1:
            span.append(candidate)
            added.append(idx)
    if len(span) < n:
        raise DegenerateError(
            f"cannot complete maximal cone {c} to a rational basis; "
            f"torus_factor_rank = {torus_factor_rank(f)}"
        )

    cprime = tuple(sorted(set(c) | set(added)))
    cone_set, added_set = set(c), set(added)
    complement = tuple(
        (face, dim)
        for face, dim in face_lattice(cprime).faces
        if not _in_extension_skeleton(face, cone_set, added_set)
    )
    return ChartCertificate(
        cone_index=cone_index,
        kind=KIND_FLEXIBLE_COMPLEMENT,
        k=k,
        n=n,
        added_ray_indices=tuple(sorted(added)),
        cprime_ray_indices=cprime,
        quotient=quotient_group(f, cprime),
        complement_faces=complement,
        min_complement_codim=min(d for _, d in complement) if complement else n + 1,
    )


def build_cover(f: Fan) -> CoverCertificate:
    """Build the full cover certificate, checking the hypotheses first.

    The fan must be valid, smooth, and nondegenerate; violations raise
    InvalidFanError, NotSmoothError, or DegenerateError with the reason.
    Charts are listed in maximal-cone index order, so the certificate is
    byte-stable across runs.
    """
    report = validate_fan(f)
    if not report.valid:
        raise InvalidFanError("fan is invalid: " + "; ".join(report.diagnostics))
    if not report.smooth:
        raise NotSmoothError(f"maximal cone {first_nonsmooth_cone(f)} is not smooth")
    if not report.nondegenerate:
        raise DegenerateError(
            "fan rays do not span the ambient space; "
            f"torus_factor_rank = {report.torus_factor_rank}"
        )
    charts = tuple(build_chart(f, i) for i in range(len(f.max_cones)))
    return CoverCertificate(
        format_version=FORMAT_VERSION,
        digest_algorithm=DIGEST_ALGORITHM,
        fan_digest=fan_digest(f),
        citations=CITATIONS,
        report=report,
        charts=charts,
        a_covered=all(ch.kind == KIND_AFFINE_SPACE for ch in charts),
    )


def _chart_findings(f: Fan, ch: ChartCertificate) -> list[str]:
    """Re-derive one chart from the fan and list every disagreement."""
    out: list[str] = []
    c = f.max_cones[ch.cone_index]
    n = f.ambient_rank
    k = len(c)
    tag = f"chart for maximal cone {ch.cone_index}"
    if ch.n != n:
        out.append(f"{tag}: n = {ch.n}, fan ambient rank is {n}")
    if ch.k != k:
        out.append(f"{tag}: k = {ch.k}, maximal cone {c} has {k} rays")
    expected_kind = KIND_AFFINE_SPACE if k == n else KIND_FLEXIBLE_COMPLEMENT
    if ch.kind != expected_kind:
        out.append(
            f"{tag}: kind is {ch.kind!r}, a cone of dimension {k} in ambient "
            f"rank {n} requires {expected_kind!r}"
        )

    if expected_kind == KIND_AFFINE_SPACE:
        if ch.added_ray_indices:
            out.append(
                f"{tag}: an affine space chart has no added rays, "
                f"certificate lists {list(ch.added_ray_indices)}"
            )
        if tuple(ch.cprime_ray_indices) != c:
            out.append(
                f"{tag}: extended cone rays {tuple(ch.cprime_ray_indices)} "
                f"must equal the maximal cone {c}"
            )
        if not is_smooth_cone(f, c):
            out.append(f"{tag}: maximal cone {c} is not smooth")
        if ch.quotient.invariant_factors or ch.quotient.order != 1:
            out.append(
                f"{tag}: quotient must be trivial, certificate has factors "
                f"{list(ch.quotient.invariant_factors)} and order {ch.quotient.order}"
            )
        if ch.complement_faces:
            out.append(
                f"{tag}: complement must be empty, certificate lists "
                f"{len(ch.complement_faces)} faces"
            )
        if ch.min_complement_codim != n + 1:
            out.append(
                f"{tag}: empty complement encodes min codim as {n + 1}, "
                f"certificate says {ch.min_complement_codim}"
            )
        return out

    added = tuple(ch.added_ray_indices)
    bad = [
        i
        for i in added
        if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < len(f.rays)
    ]
    if bad:
        out.append(f"{tag}: added ray indices {bad} are out of range")
        return out
    if len(set(added)) != len(added):
        out.append(f"{tag}: added ray indices {list(added)} repeat")
        return out
    overlap = sorted(set(added) & set(c))
    if overlap:
        out.append(
            f"{tag}: added rays {overlap} already belong to the maximal cone"
        )
        return out
    expected_cprime = tuple(sorted(set(c) | set(added)))
    if tuple(ch.cprime_ray_indices) != expected_cprime:
        out.append(
            f"{tag}: extended cone rays {tuple(ch.cprime_ray_indices)} do not "
            f"equal the maximal cone plus added rays {expected_cprime}"
        )
        return out
    cprime = expected_cprime
    if len(cprime) != n:
        out.append(f"{tag}: extended cone has {len(cprime)} rays, ambient rank is {n}")
        return out
    if rank(IntMatrix.from_rows([f.rays[i] for i in cprime])) != n:
        out.append(f"{tag}: extended cone generators are rationally dependent")
        return out

    cone_set, added_set = set(c), set(added)
    lattice = face_lattice(cprime)
    for face, dim in lattice.faces:
        if dim <= 1 and not _in_extension_skeleton(face, cone_set, added_set):
            out.append(f"{tag}: edge {face} of the extended cone is not retained")

    expected = {
        face: orbit_codim(face)
        for face, _ in lattice.faces
        if not _in_extension_skeleton(face, cone_set, added_set)
    }
    listed: dict[Cone, int] = {}
    for face, codim in ch.complement_faces:
        key = tuple(face)
        if key in listed:
            out.append(f"{tag}: face {key} listed more than once in the complement")
        listed[key] = codim
    for face, codim in expected.items():
        if face not in listed:
            out.append(f"{tag}: face {face} of the extended cone unaccounted")
        elif listed[face] != codim:
            out.append(
                f"{tag}: face {face} has codimension {codim}, "
                f"certificate says {listed[face]}"
            )
    for face in listed:
        if face not in expected:
            out.append(
                f"{tag}: face {face} is retained by the chart, not removed"
            )
    for face, codim in ch.complement_faces:
        if codim < 2:
            out.append(
                f"{tag}: complement face {tuple(face)} has codimension {codim}, "
                f"below the required 2"
            )
    expected_min = min(expected.values()) if expected else n + 1
    if ch.min_complement_codim != expected_min:
        out.append(
            f"{tag}: min_complement_codim is {ch.min_complement_codim}, "
            f"recomputation gives {expected_min}"
        )

    actual_q = quotient_group(f, cprime)
    if tuple(ch.quotient.invariant_factors) != actual_q.invariant_factors:
        out.append(
            f"{tag}: quotient invariant factors "
            f"{list(ch.quotient.invariant_factors)} differ from recomputed "
            f"{list(actual_q.invariant_factors)}"
        )
    if ch.quotient.order != actual_q.order:
        out.append(
            f"{tag}: quotient order {ch.quotient.order} differs from "
            f"recomputed {actual_q.order}"
        )
    return out


def verify_certificate(f: Fan, cert: CoverCertificate) -> VerificationReport:
    """Independently re-derive every claim in a cover certificate.

    Uses only the fan predicates and cone geometry, never build_chart, so
    the checker does not share the builder's code paths.  All failures are
    reported as findings; nothing raises.
    """
    findings: list[str] = []

    if cert.format_version != FORMAT_VERSION:
        findings.append(
            f"format_version is {cert.format_version!r}, this verifier "
            f"handles {FORMAT_VERSION}"
        )
    if cert.digest_algorithm != DIGEST_ALGORITHM:
        findings.append(
            f"digest_algorithm is {cert.digest_algorithm!r}, this verifier "
            f"handles {DIGEST_ALGORITHM!r}"
        )
    else:
        actual_digest = fan_digest(f)
        if cert.fan_digest != actual_digest:
            findings.append(
                f"fan digest mismatch: certificate names {cert.fan_digest}, "
                f"the fan hashes to {actual_digest}"
            )
    if tuple(cert.citations) != CITATIONS:
        findings.append("citations do not match the two required theorem statements")

    actual_report = validate_fan(f)
    if cert.report != actual_report:
        stored, recomputed = report_to_dict(cert.report), report_to_dict(actual_report)
        for key in recomputed:
            if stored[key] != recomputed[key]:
                findings.append(
                    f"report field {key}: certificate says {stored[key]!r}, "
                    f"recomputation gives {recomputed[key]!r}"
                )
    if not actual_report.valid:
        findings.append(
            "hypothesis failure: fan is invalid: "
            + "; ".join(actual_report.diagnostics)
        )
    if not actual_report.smooth:
        findings.append(
            f"hypothesis failure: maximal cone {first_nonsmooth_cone(f)} is not smooth"
        )
    if not actual_report.nondegenerate:
        findings.append(
            "hypothesis failure: fan rays do not span the ambient space; "
            f"torus_factor_rank = {actual_report.torus_factor_rank}"
        )

    counts: Counter[object] = Counter(ch.cone_index for ch in cert.charts)
    valid_indices = set(range(len(f.max_cones)))
    for i in sorted(valid_indices):
        if counts.get(i, 0) == 0:
            findings.append(f"maximal cone {i} uncovered")
        elif counts[i] > 1:
            findings.append(f"maximal cone {i} covered by {counts[i]} charts")
    for idx in counts:
        if idx not in valid_indices:
            findings.append(f"chart names nonexistent maximal cone {idx!r}")

    for ch in cert.charts:
        if ch.cone_index in valid_indices:
            findings.extend(_chart_findings(f, ch))

    expected_a = all(len(c) == f.ambient_rank for c in f.max_cones)
    if cert.a_covered != expected_a:
        findings.append(
            f"a_covered is {cert.a_covered}, the fan's maximal cone "
            f"dimensions imply {expected_a}"
        )

    return VerificationReport(passed=not findings, findings=tuple(findings))


def _chart_to_dict(ch: ChartCertificate) -> dict:
    return {
        "cone_index": ch.cone_index,
        "kind": ch.kind,
        "k": ch.k,
        "n": ch.n,
        "added_ray_indices": list(ch.added_ray_indices),
        "cprime_ray_indices": list(ch.cprime_ray_indices),
        "quotient": {
            "invariant_factors": list(ch.quotient.invariant_factors),
            "order": ch.quotient.order,
        },
        "complement_faces": [[list(face), codim] for face, codim in ch.complement_faces],
        "min_complement_codim": ch.min_complement_codim,
    }


def certificate_to_dict(cert: CoverCertificate) -> dict:
    return {
        "format_version": cert.format_version,
        "digest_algorithm": cert.digest_algorithm,
        "fan_digest": cert.fan_digest,
        "citations": list(cert.citations),
        "report": report_to_dict(cert.report),
        "charts": [_chart_to_dict(ch) for ch in cert.charts],
        "a_covered": cert.a_covered,
    }


def _require_int(doc: dict, key: str, where: str) -> int:
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise CertificateFormatError(f"{where}: {key} must be an integer")
    return value


def _require_int_list(doc: dict, key: str, where: str) -> tuple[int, ...]:
    value = doc[key]
    if not isinstance(value, list) or any(
        isinstance(x, bool) or not isinstance(x, int) for x in value
    ):
        raise CertificateFormatError(f"{where}: {key} must be a list of integers")
    return tuple(value)


def _chart_from_dict(doc, position: int) -> ChartCertificate:
    where = f"chart {position}"
    if not isinstance(doc, dict):
        raise CertificateFormatError(f"{where} must be a JSON object")
    needed = {
        "cone_index",
        "kind",
        "k",
        "n",
        "added_ray_indices",
        "cprime_ray_indices",
        "quotient",
        "complement_faces",
        "min_complement_codim",
    }
    missing = needed - doc.keys()
    if missing:
        raise CertificateFormatError(f"{where} is missing keys: {sorted(missing)}")
    if not isinstance(doc["kind"], str):
        raise CertificateFormatError(f"{where}: kind must be a string")
    quotient = doc["quotient"]
    if not isinstance(quotient, dict) or {"invariant_factors", "order"} - quotient.keys():
        raise CertificateFormatError(
            f"{where}: quotient must be an object with invariant_factors and order"
        )
    faces = doc["complement_faces"]
    if not isinstance(faces, list):
        raise CertificateFormatError(f"{where}: complement_faces must be a list")
    parsed_faces = []
    for entry in faces:
        if (
            not isinstance(entry, list)
            or len(entry) != 2
            or not isinstance(entry[0], list)
            or any(isinstance(x, bool) or not isinstance(x, int) for x in entry[0])
            or isinstance(entry[1], bool)
            or not isinstance(entry[1], int)
        ):
            raise CertificateFormatError(
                f"{where}: complement_faces entries must be [ray index list, codim]"
            )
        parsed_faces.append((tuple(entry[0]), entry[1]))
    return ChartCertificate(
        cone_index=_require_int(doc, "cone_index", where),
        kind=doc["kind"],
        k=_require_int(doc, "k", where),
        n=_require_int(doc, "n", where),
        added_ray_indices=_require_int_list(doc, "added_ray_indices", where),
        cprime_ray_indices=_require_int_list(doc, "cprime_ray_indices", where),
        quotient=QuotientGroup(
            invariant_factors=_require_int_list(quotient, "invariant_factors", where),
            order=_require_int(quotient, "order", where),
        ),
        complement_faces=tuple(parsed_faces),
        min_complement_codim=_require_int(doc, "min_complement_codim", where),
    )


def certificate_from_dict(doc) -> CoverCertificate:
    """Parse a certificate document, checking shape only.

    Semantic nonsense (out-of-range indices, unknown kinds, wrong codims)
    parses fine and is the verifier's job to flag; shape problems raise
    CertificateFormatError.
    """
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate document must be a JSON object")
    needed = {
        "format_version",
        "digest_algorithm",
        "fan_digest",
        "citations",
        "report",
        "charts",
        "a_covered",
    }
    missing = needed - doc.keys()
    if missing:
        raise CertificateFormatError(
            f"certificate document is missing keys: {sorted(missing)}"
        )
    if not isinstance(doc["fan_digest"], str):
        raise CertificateFormatError("fan_digest must be a string")
    if not isinstance(doc["digest_algorithm"], str):
        raise CertificateFormatError("digest_algorithm must be a string")
    citations = doc["citations"]
    if not isinstance(citations, list) or not all(isinstance(s, str) for s in citations):
        raise CertificateFormatError("citations must be a list of strings")
    if not isinstance(doc["a_covered"], bool):
        raise CertificateFormatError("a_covered must be a boolean")
    charts = doc["charts"]
    if not isinstance(charts, list):
        raise CertificateFormatError("charts must be a list")
    try:
        report = report_from_dict(doc["report"])
    except FanFormatError as exc:
        raise CertificateFormatError(f"report: {exc}") from exc
    return CoverCertificate(
        format_version=_require_int(doc, "format_version", "certificate"),
        digest_algorithm=doc["digest_algorithm"],
        fan_digest=doc["fan_digest"],
        citations=tuple(citations),
        report=report,
        charts=tuple(_chart_from_dict(ch, i) for i, ch in enumerate(charts)),
        a_covered=doc["a_covered"],
    )


def certificate_to_json(cert: CoverCertificate, pretty: bool = True) -> str:
    doc = certificate_to_dict(cert)
    if pretty:
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)


def certificate_from_json(text: str) -> CoverCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"certificate is not valid JSON: {exc}") from exc
    return certificate_from_dict(doc)
