"""Exact-arithmetic l1 embeddings of two-terminal bipartite metrics.

Three independent routes to the same constant, all in exact rationals:

* an explicit cut embedding of theta graphs whose distortion is measured
  pair by pair (`embedding`, `reduction`),
* hypermetric-inequality certificates bounding the distortion from below
  (`bounds`),
* a cut-cone linear program computing the true minimum distortion of any
  small metric (`oracle`).

The FastAPI app in `cutbound.service` exposes each route over HTTP and the
CLI in `cutbound.cli` is a thin client over the same handlers.
"""

from fractions import Fraction

from .bounds import (
    HypermetricCertificate,
    distortion_lower_bound,
    hypermetric_value,
    k2n_certificate,
    search_b_vectors,
)
from .cuts import (
    Cut,
    CutMeasure,
    cut_pseudometric,
    l1_distance,
    materialize_coordinates,
    measure_from_json,
)
from .embedding import (
    DistortionReport,
    closed_form_d1,
    combine_d1,
    distortion_report,
    enumerate_cuts_I,
    enumerate_cuts_II,
    theta_distortion_target,
)
from .errors import (
    CutboundError,
    DisconnectedGraphError,
    GuardExceededError,
    InfiniteDistortionError,
    InputError,
)
from .graphs import ThetaGraph, WeightedGraph, build_k2n, build_theta
from .metrics import FiniteMetric, metric_from_json, restrict_metric, shortest_path_metric
from .oracle import LPResult, enumerate_nontrivial_cuts, exact_c1, is_l1_isometric
from .rationals import decimal_approx, format_rational, parse_rational, rat
from .reduction import (
    PipelineResult,
    ReductionTrace,
    TraceStep,
    WeightedInstance,
    embed_weighted_instance,
    equalize_paths,
    instance_from_json,
    scale_and_subdivide,
    shrink_step,
    simplest_rational_between,
)

__version__ = "0.1.0"


def c1_formula(n: int) -> "Fraction":
    """The exact minimum l1 distortion constant for K_{2,n}: with
    k = ceil(n/2), the value is (3k-2)/(2k-1)."""
    if n < 1:
        raise InputError("n must be a positive integer")
    k = (n + 1) // 2
    return Fraction(3 * k - 2, 2 * k - 1)
