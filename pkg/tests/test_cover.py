"""Chart construction, cover certificates, and the independent verifier."""

import pytest

from toricflex.conegeom import QuotientGroup
from toricflex.cover import (
    CITATIONS,
    DIGEST_ALGORITHM,
    FORMAT_VERSION,
    KIND_AFFINE_SPACE,
    KIND_FLEXIBLE_COMPLEMENT,
    build_chart,
    build_cover,
    certificate_from_dict,
    certificate_from_json,
    certificate_to_dict,
    certificate_to_json,
    verify_certificate,
)
from toricflex.errors import (
    BadIndexError,
    CertificateFormatError,
    DegenerateError,
    InvalidFanError,
    NotSmoothError,
)
from toricflex.fans import (
    Fan,
    fan_hirzebruch,
    fan_product,
    fan_projective_space,
    fan_punctured_affine,
    make_fan,
)


def skew_fan():
    # Two separate rays whose joint lattice has index 2.
    return make_fan(2, [(1, 0), (1, 2)], [(0,), (1,)])


def mixed_fan():
    # One full quadrant plus an opposite half-line: the cover mixes kinds.
    return make_fan(2, [(1, 0), (0, 1), (-1, 0)], [(0, 1), (2,)])


class TestBuildChart:
    def test_punctured_plane_charts(self):
        f = fan_punctured_affine(2)
        ch0 = build_chart(f, 0)
        assert ch0.kind == KIND_FLEXIBLE_COMPLEMENT
        assert (ch0.k, ch0.n) == (1, 2)
        assert ch0.added_ray_indices == (1,)
        assert ch0.cprime_ray_indices == (0, 1)
        assert ch0.quotient.is_trivial
        assert ch0.complement_faces == (((0, 1), 2),)
        assert ch0.min_complement_codim == 2
        ch1 = build_chart(f, 1)
        assert ch1.added_ray_indices == (0,)
        assert ch1.cprime_ray_indices == (0, 1)
        assert ch1.complement_faces == (((0, 1), 2),)

    def test_full_dimensional_cone_gives_affine_space(self):
        f = fan_projective_space(2)
        ch = build_chart(f, 0)
        assert ch.kind == KIND_AFFINE_SPACE
        assert (ch.k, ch.n) == (2, 2)
        assert ch.added_ray_indices == ()
        assert ch.cprime_ray_indices == f.max_cones[0]
        assert ch.quotient == QuotientGroup(invariant_factors=(), order=1)
        assert ch.complement_faces == ()
        assert ch.min_complement_codim == 3

    def test_punctured_three_space_chart(self):
        f = fan_punctured_affine(3)
        ch = build_chart(f, 2)
        assert ch.added_ray_indices == (0, 1)
        assert ch.cprime_ray_indices == (0, 1, 2)
        faces = dict(ch.complement_faces)
        assert set(faces) == {(0, 1), (0, 2), (1, 2), (0, 1, 2)}
        assert sorted(faces.values()) == [2, 2, 2, 3]
        assert ch.min_complement_codim == 2

    def test_punctured_four_space_complement_count(self):
        f = fan_punctured_affine(4)
        for i in range(len(f.max_cones)):
            ch = build_chart(f, i)
            # 16 faces of the extended cone, minus the zero face, the
            # cone's own ray, and the three added rays.
            assert len(ch.complement_faces) == 11
            assert ch.min_complement_codim == 2

    def test_skew_fan_quotient(self):
        f = skew_fan()
        for i in (0, 1):
            ch = build_chart(f, i)
            assert ch.quotient == QuotientGroup(invariant_factors=(2,), order=2)

    def test_bad_cone_index(self):
        f = fan_projective_space(2)
        with pytest.raises(BadIndexError):
            build_chart(f, -1)
        with pytest.raises(BadIndexError):
            build_chart(f, 99)
        with pytest.raises(BadIndexError):
            build_chart(f, True)

    def test_nonsmooth_cone_rejected(self):
        f = make_fan(2, [(1, 0), (1, 2)], [(0, 1)])
        with pytest.raises(NotSmoothError) as err:
            build_chart(f, 0)
        assert "(0, 1)" in str(err.value)

    def test_degenerate_fan_rejected(self):
        f = make_fan(2, [(1, 0)], [(0,)])
        with pytest.raises(DegenerateError) as err:
            build_chart(f, 0)
        assert "torus_factor_rank = 1" in str(err.value)


class TestBuildCover:
    def test_complete_smooth_fan_is_fully_affine(self):
        cert = build_cover(fan_projective_space(2))
        assert cert.a_covered
        assert [ch.kind for ch in cert.charts] == [KIND_AFFINE_SPACE] * 3
        assert cert.format_version == FORMAT_VERSION
        assert cert.digest_algorithm == DIGEST_ALGORITHM
        assert cert.citations == CITATIONS

    def test_punctured_fan_needs_complements(self):
        cert = build_cover(fan_punctured_affine(3))
        assert not cert.a_covered
        assert [ch.kind for ch in cert.charts] == [KIND_FLEXIBLE_COMPLEMENT] * 3

    def test_mixed_kinds(self):
        cert = build_cover(mixed_fan())
        kinds = [ch.kind for ch in cert.charts]
        assert KIND_AFFINE_SPACE in kinds and KIND_FLEXIBLE_COMPLEMENT in kinds
        assert not cert.a_covered

    def test_charts_follow_max_cone_order(self):
        cert = build_cover(fan_hirzebruch(1))
        assert [ch.cone_index for ch in cert.charts] == [0, 1, 2, 3]

    def test_invalid_fan_rejected(self):
        f = make_fan(2, [(1, 0), (0, 1)], [(0, 1), (0, 1)])
        with pytest.raises(InvalidFanError):
            build_cover(f)

    def test_nonsmooth_fan_rejected(self):
        f = make_fan(2, [(1, 0), (1, 2)], [(0, 1)])
        with pytest.raises(NotSmoothError) as err:
            build_cover(f)
        assert "(0, 1)" in str(err.value)

    def test_degenerate_fan_rejected(self):
        f = make_fan(2, [(1, 0)], [(0,)])
        with pytest.raises(DegenerateError) as err:
            build_cover(f)
        assert "torus_factor_rank = 1" in str(err.value)


class TestVerify:
    def all_fans(self):
        return [
            fan_projective_space(1),
            fan_projective_space(3),
            fan_hirzebruch(2),
            fan_product(fan_projective_space(1), fan_projective_space(1)),
            fan_punctured_affine(2),
            fan_punctured_affine(4),
            skew_fan(),
            mixed_fan(),
        ]

    def test_fresh_certificates_verify(self):
        for f in self.all_fans():
            outcome = verify_certificate(f, build_cover(f))
            assert outcome.passed, outcome.findings
            assert outcome.findings == ()

    def test_certificate_against_wrong_fan(self):
        cert = build_cover(fan_projective_space(2))
        outcome = verify_certificate(fan_hirzebruch(0), cert)
        assert not outcome.passed
        assert any("fan digest mismatch" in s for s in outcome.findings)


def mutated(fan: Fan, change) -> tuple[bool, tuple[str, ...]]:
    """Apply a dict-level mutation to a fresh certificate and verify it."""
    doc = certificate_to_dict(build_cover(fan))
    change(doc)
    outcome = verify_certificate(fan, certificate_from_dict(doc))
    return outcome.passed, outcome.findings


class TestVerifyMutations:
    def test_dropped_chart(self):
        def change(doc):
            del doc["charts"][1]

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("maximal cone 1 uncovered" in s for s in findings)

    def test_duplicated_chart(self):
        def change(doc):
            doc["charts"].append(doc["charts"][0])

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("maximal cone 0 covered by 2 charts" in s for s in findings)

    def test_chart_for_nonexistent_cone(self):
        def change(doc):
            doc["charts"][0]["cone_index"] = 7

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("nonexistent maximal cone 7" in s for s in findings)
        assert any("maximal cone 0 uncovered" in s for s in findings)

    def test_dropped_complement_face(self):
        def change(doc):
            doc["charts"][0]["complement_faces"] = []

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any(
            "face (0, 1) of the extended cone unaccounted" in s for s in findings
        )

    def test_extra_complement_face(self):
        def change(doc):
            doc["charts"][0]["complement_faces"].append([[0], 1])

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("retained by the chart, not removed" in s for s in findings)
        assert any("below the required 2" in s for s in findings)

    def test_wrong_face_codimension(self):
        def change(doc):
            doc["charts"][0]["complement_faces"][0][1] = 3

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("has codimension 2, certificate says 3" in s for s in findings)

    def test_wrong_min_codimension(self):
        def change(doc):
            doc["charts"][0]["min_complement_codim"] = 9

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any(
            "min_complement_codim is 9, recomputation gives 2" in s for s in findings
        )

    def test_tampered_quotient_factors(self):
        def change(doc):
            doc["charts"][0]["quotient"]["invariant_factors"] = [5]

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any(
            "quotient invariant factors [5] differ from recomputed [2]" in s
            for s in findings
        )

    def test_tampered_quotient_order(self):
        def change(doc):
            doc["charts"][0]["quotient"]["order"] = 7

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any(
            "quotient order 7 differs from recomputed 2" in s for s in findings
        )

    def test_flipped_kind(self):
        def change(doc):
            doc["charts"][0]["kind"] = KIND_AFFINE_SPACE

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("requires 'FlexibleComplement'" in s for s in findings)

    def test_added_ray_already_in_cone(self):
        def change(doc):
            doc["charts"][0]["added_ray_indices"] = [0]
            doc["charts"][0]["cprime_ray_indices"] = [0]

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any(
            "added rays [0] already belong to the maximal cone" in s
            for s in findings
        )

    def test_added_ray_out_of_range(self):
        def change(doc):
            doc["charts"][0]["added_ray_indices"] = [44]

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("added ray indices [44] are out of range" in s for s in findings)

    def test_wrong_extended_cone(self):
        def change(doc):
            doc["charts"][0]["cprime_ray_indices"] = [0]

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any(
            "do not equal the maximal cone plus added rays" in s for s in findings
        )

    def test_wrong_dimensions(self):
        def change(doc):
            doc["charts"][0]["k"] = 5
            doc["charts"][0]["n"] = 9

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("k = 5" in s for s in findings)
        assert any("n = 9, fan ambient rank is 2" in s for s in findings)

    def test_tampered_digest(self):
        def change(doc):
            doc["fan_digest"] = "0" * 64

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("fan digest mismatch" in s for s in findings)

    def test_wrong_format_version(self):
        def change(doc):
            doc["format_version"] = 2

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("format_version is 2" in s for s in findings)

    def test_wrong_digest_algorithm(self):
        def change(doc):
            doc["digest_algorithm"] = "md5"

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("digest_algorithm is 'md5'" in s for s in findings)

    def test_tampered_citations(self):
        def change(doc):
            doc["citations"] = doc["citations"][:1]

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("citations do not match" in s for s in findings)

    def test_tampered_report_field(self):
        def change(doc):
            doc["report"]["smooth"] = False

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any(
            "report field smooth: certificate says False" in s for s in findings
        )

    def test_flipped_a_covered(self):
        def change(doc):
            doc["a_covered"] = True

        passed, findings = mutated(skew_fan(), change)
        assert not passed
        assert any("a_covered is True" in s for s in findings)

    def test_affine_chart_with_junk_complement(self):
        def change(doc):
            doc["charts"][0]["complement_faces"] = [[[0, 1], 2]]
            doc["charts"][0]["min_complement_codim"] = 2

        passed, findings = mutated(fan_projective_space(2), change)
        assert not passed
        assert any("complement must be empty" in s for s in findings)


class TestCertificateSerialization:
    def test_round_trip(self):
        for f in (fan_projective_space(2), fan_punctured_affine(3), skew_fan()):
            cert = build_cover(f)
            assert certificate_from_json(certificate_to_json(cert)) == cert
            assert certificate_from_dict(certificate_to_dict(cert)) == cert

    def test_byte_determinism(self):
        f = fan_punctured_affine(3)
        assert certificate_to_json(build_cover(f)) == certificate_to_json(
            build_cover(f)
        )
        assert certificate_to_json(build_cover(f), pretty=False) == certificate_to_json(
            build_cover(f), pretty=False
        )

    def test_semantic_nonsense_still_parses(self):
        doc = certificate_to_dict(build_cover(skew_fan()))
        doc["charts"][0]["kind"] = "Banana"
        doc["charts"][0]["cone_index"] = 42
        cert = certificate_from_dict(doc)
        assert cert.charts[0].kind == "Banana"

    def test_shape_errors(self):
        good = certificate_to_dict(build_cover(skew_fan()))

        with pytest.raises(CertificateFormatError):
            certificate_from_json("nope")
        with pytest.raises(CertificateFormatError):
            certificate_from_dict([good])

        for key in ("format_version", "report", "charts", "a_covered"):
            broken = dict(good)
            del broken[key]
            with pytest.raises(CertificateFormatError):
                certificate_from_dict(broken)

        broken = dict(good)
        broken["format_version"] = "1"
        with pytest.raises(CertificateFormatError):
            certificate_from_dict(broken)

        broken = dict(good)
        broken["a_covered"] = "yes"
        with pytest.raises(CertificateFormatError):
            certificate_from_dict(broken)

        broken = dict(good)
        broken["citations"] = [1, 2]
        with pytest.raises(CertificateFormatError):
            certificate_from_dict(broken)

        broken = dict(good)
        broken["charts"] = "many"
        with pytest.raises(CertificateFormatError):
            certificate_from_dict(broken)

        broken = certificate_to_dict(build_cover(skew_fan()))
        del broken["charts"][0]["quotient"]
        with pytest.raises(CertificateFormatError):
            certificate_from_dict(broken)

        broken = certificate_to_dict(build_cover(skew_fan()))
        broken["charts"][0]["complement_faces"] = [[0, 1]]
        with pytest.raises(CertificateFormatError):
            certificate_from_dict(broken)

        broken = certificate_to_dict(build_cover(skew_fan()))
        broken["charts"][0]["added_ray_indices"] = [0.5]
        with pytest.raises(CertificateFormatError):
            certificate_from_dict(broken)

        broken = certificate_to_dict(build_cover(skew_fan()))
        broken["report"] = {"valid": True}
        with pytest.raises(CertificateFormatError):
            certificate_from_dict(broken)
