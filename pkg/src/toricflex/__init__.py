"""Exact toolkit for simplicial rational fans and flexibility cover certificates."""

from .conegeom import (
    FaceLattice,
    QuotientGroup,
    cone_contains,
    face_lattice,
    facet_normals,
    orbit_codim,
    quotient_group,
)
from .cover import (
    ChartCertificate,
    CoverCertificate,
    VerificationReport,
    build_chart,
    build_cover,
    certificate_from_dict,
    certificate_from_json,
    certificate_to_dict,
    certificate_to_json,
    verify_certificate,
)
from .errors import (
    BadConeError,
    BadIndexError,
    BadParameterError,
    CertificateFormatError,
    DegenerateError,
    DimensionMismatchError,
    FanFormatError,
    InvalidFanError,
    NonSquareError,
    NotFullDimensionalError,
    NotPureError,
    NotSimplicialError,
    NotSmoothError,
    ToolkitError,
    ZeroVectorError,
)
from .fans import (
    Fan,
    FanReport,
    canonical_fan_bytes,
    cone_dim,
    fan_affine_space,
    fan_digest,
    fan_from_dict,
    fan_from_json,
    fan_hirzebruch,
    fan_product,
    fan_projective_space,
    fan_punctured_affine,
    fan_to_dict,
    fan_to_json,
    first_nonsmooth_cone,
    is_complete,
    is_nondegenerate,
    is_smooth_cone,
    is_smooth_fan,
    iterated_star_subdivisions,
    make_fan,
    report_from_dict,
    report_to_dict,
    star_subdivision,
    torus_factor_rank,
    validate_fan,
)
from .intlinalg import (
    IntMatrix,
    SnfResult,
    adjugate,
    det,
    extends_to_z_basis,
    kernel_basis,
    primitivize,
    rank,
    snf,
)

__version__ = "0.1.0"

__all__ = [
    "BadConeError",
    "BadIndexError",
    "BadParameterError",
    "CertificateFormatError",
    "ChartCertificate",
    "CoverCertificate",
    "DegenerateError",
    "DimensionMismatchError",
    "FaceLattice",
    "Fan",
    "FanFormatError",
    "FanReport",
    "IntMatrix",
    "InvalidFanError",
    "NonSquareError",
    "NotFullDimensionalError",
    "NotPureError",
    "NotSimplicialError",
    "NotSmoothError",
    "QuotientGroup",
    "SnfResult",
    "ToolkitError",
    "VerificationReport",
    "ZeroVectorError",
    "adjugate",
    "build_chart",
    "build_cover",
    "canonical_fan_bytes",
    "certificate_from_dict",
    "certificate_from_json",
    "certificate_to_dict",
    "certificate_to_json",
    "cone_contains",
    "cone_dim",
    "det",
    "extends_to_z_basis",
    "face_lattice",
    "facet_normals",
    "fan_affine_space",
    "fan_digest",
    "fan_from_dict",
    "fan_from_json",
    "fan_hirzebruch",
    "fan_product",
    "fan_projective_space",
    "fan_punctured_affine",
    "fan_to_dict",
    "fan_to_json",
    "first_nonsmooth_cone",
    "is_complete",
    "is_nondegenerate",
    "is_smooth_cone",
    "is_smooth_fan",
    "iterated_star_subdivisions",
    "kernel_basis",
    "make_fan",
    "orbit_codim",
    "primitivize",
    "quotient_group",
    "rank",
    "report_from_dict",
    "report_to_dict",
    "snf",
    "star_subdivision",
    "torus_factor_rank",
    "validate_fan",
    "verify_certificate",
]
