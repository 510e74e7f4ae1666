"""Ambiguity functions, Wigner distributions and weighted norm bounds on sampled waveforms."""

from . import bounds, io, phase_plane, signal_core, verify, weights
from ._kernels import BACKEND
from .bounds import (
    BoundReport,
    EqualityCertificate,
    best_bound_closed,
    best_bound_gaussian,
    best_bound_indicator,
    best_bound_numeric,
    bound_at,
    equality_certificate,
    lieb_bound_check,
    lieb_constant,
    main_bound,
    renyi_entropy,
)
from .errors import *  # noqa: F401,F403
from .phase_plane import (
    AmbiguitySurface,
    Grid2D,
    cross_ambiguity,
    surface_lp_norm,
    weighted_r_norm,
    wigner,
    woodward_ambiguity,
)
from .signal_core import (
    GaussianParams,
    PhasePoint,
    Waveform,
    inner_product,
    lp_norm,
    make_gaussian,
    normalize_l2,
    tf_shift,
)
from .verify import ScenarioResult, run_all, run_scenario
from .weights import GaussianWeight, GridMask, IndicatorWeight, Rect, SampledWeight, area, evaluate, weight_lq_norm

__version__ = "0.1.0"
