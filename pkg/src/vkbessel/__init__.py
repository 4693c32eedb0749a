"""Bessel functions of root systems A and B through Jack expansions,
Vershik-Kerov spectral sequences, and their rank-infinity limits."""

from .partitions import Partition, dominance_leq, enumerate_partitions, z_lambda
from .symfun import (
    JackParam,
    PExpansion,
    g_coeffs,
    g_explicit,
    g_vs_jack_identity,
    jack_at_ones,
    jack_eval,
    jack_p_expansion,
    phi_eval,
    power_sum,
)
from .bessel import (
    MultiplicityB,
    SeriesConfig,
    SeriesResult,
    bessel_a,
    bessel_b,
    gen_pochhammer,
    gram_min_eig,
    moments_a,
    moments_b,
    project_pi,
)
from .vk import (
    TriangularArray,
    VKParams,
    VKParamsPlus,
    estimate_params,
    generate_vk,
    generate_vk_plus,
    geometric_preset,
    ll_compare,
    sort_ll_desc,
)
from .limits import (
    lim_bessel_a,
    lim_bessel_b,
    psi_eval,
    psi_hat,
    series_psi_hat,
    tilde_c,
    tilde_p,
)
from .experiments import ExperimentSpec, make_grid, run_convergence
from .errors import DomainError

__version__ = "0.1.0"
