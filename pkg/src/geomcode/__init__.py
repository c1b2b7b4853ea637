"""Incidence geometries from quadrics over odd finite fields, their
strongly regular point graphs, and the regular LDPC codes they define."""

__version__ = "0.1.0"

from .constructions import (
    ConicLabel,
    HyperbolicLabel,
    IncidenceStructure,
    block_label_dedup,
    build_conic_structure,
    build_hyperbolic_structure,
)
from .fields import Field, FieldElement, field_from_string, make_field
from .gf2 import BinaryMatrix, RankPrediction, brouwer_predict, dimension_and_rate, gram2, rank2
from .metrics import CycleReport, DistanceBounds, six_cycles, tanner_bounds, tanner_girth
from .projective import (
    LineMatrix,
    ProjectivePoint,
    Quadric,
    collinear,
    enumerate_points,
    line_in_quadric,
    lines_skew,
    normalize_point,
    quadric_contains,
)
from .sim import (
    BerResult,
    ChannelConfig,
    LdpcCode,
    PointStats,
    SumProductDecoder,
    awgn_llrs,
    ber_sweep,
    noise_sigma,
    random_regular_h,
    simulate_point,
    sum_product_decode,
    wilson_interval,
)
from .srpg import (
    AlphaProfile,
    AxiomViolation,
    DegenerateStructure,
    FeasibilityReport,
    SrgSpectrum,
    SrpgParams,
    alpha_profiles,
    check_gpg_axioms,
    check_strongly_regular,
    feasibility_check,
    is_connected,
    spectrum,
)

__all__ = [name for name in dir() if not name.startswith("_")]
