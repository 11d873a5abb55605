"""Certified upper bounds for sum-rank-metric codes.

Exact classical bounds, spectral (ratio-type) bounds, Fiol-style and
Delsarte-style linear programs over exact rationals, Lovász-theta and
three-point semidefinite strengthenings, and mechanical non-existence
verdicts for codes meeting the Singleton or sphere-packing bounds.
"""

from .classical import ALL_CLASSICAL, BoundMethod, BoundResult, classical_bounds
from .delsarte import delsarte_lp, krawtchouk_lp, scheme_eigenmatrix, theta_lp
from .existence import (
    Existence,
    RtSpComparison,
    Verdict,
    VerdictTarget,
    Witness,
    additive_perfect_congruence,
    msrd_verdict,
    perfect_verdict,
    rt_vs_sp_report,
)
from .graphs import (
    ExplicitGraph,
    IndependenceResult,
    build_graph,
    graph_spectrum_of_power,
    independence_number,
)
from .ratio import (
    ratio_type_22_closed_form,
    ratio_type_bound,
    ratio_type_d3,
    ratio_type_family_closed_form,
    ratio_type_lp,
)
from .sdp import (
    SdpSolution,
    code_indicator_feasibility,
    lovasz_theta,
    schrijver_sdp,
    sdp_dominance_check,
)
from .space import (
    SpaceParams,
    SumRankVector,
    ball_volume,
    gaussian_binomial,
    iter_vectors,
    one_big_block_space,
    sphere_volume,
    srk_distance,
    v1_one_big_block,
)
from .spectrum import Spectrum, bilinear_forms_spectrum, sum_rank_spectrum
from .tables import ReplayCaps, ReplayReport, load_table, replay_table

__all__ = [
    "ALL_CLASSICAL",
    "BoundMethod",
    "BoundResult",
    "Existence",
    "ExplicitGraph",
    "IndependenceResult",
    "ReplayCaps",
    "ReplayReport",
    "RtSpComparison",
    "SdpSolution",
    "SpaceParams",
    "Spectrum",
    "SumRankVector",
    "Verdict",
    "VerdictTarget",
    "Witness",
    "additive_perfect_congruence",
    "ball_volume",
    "bilinear_forms_spectrum",
    "build_graph",
    "classical_bounds",
    "code_indicator_feasibility",
    "delsarte_lp",
    "gaussian_binomial",
    "graph_spectrum_of_power",
    "independence_number",
    "iter_vectors",
    "krawtchouk_lp",
    "load_table",
    "lovasz_theta",
    "msrd_verdict",
    "one_big_block_space",
    "perfect_verdict",
    "ratio_type_22_closed_form",
    "ratio_type_bound",
    "ratio_type_d3",
    "ratio_type_family_closed_form",
    "ratio_type_lp",
    "replay_table",
    "rt_vs_sp_report",
    "scheme_eigenmatrix",
    "schrijver_sdp",
    "sdp_dominance_check",
    "sphere_volume",
    "srk_distance",
    "sum_rank_spectrum",
    "theta_lp",
    "v1_one_big_block",
]
__version__ = "0.1.0"
