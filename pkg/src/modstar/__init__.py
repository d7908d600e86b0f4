"""modstar: a desk-scale laboratory for renormalized characteristic functions.

Finite weighted-atom laws, Gaussian/Poisson/Cauchy renormalizers, cumulant
limits of i.i.d. sums, constructive densities with prescribed renormalized
transforms, and two arithmetic ensembles with renormalized-Cauchy behavior:
Dedekind sums over coprime pairs and winding numbers of primitive hyperbolic
classes of the modular group.
"""

from .charfn import (
    CharTrace,
    LambdaGrid,
    Renormalizer,
    WeightedEnsemble,
    cauchy_law_distance,
    counterexample_fourier,
    empirical_cf,
    inverse_fourier_limit,
    mod_star_value,
    renormalizer_multiplier,
)
from .cumulants import (
    BaseLaw,
    cum1_lhs,
    cum1_limit,
    cum1_trace,
    cumulants_to_moments,
    gaussian_moment,
    moments_to_cumulants,
)
from .dedekind import (
    FareySet,
    FigureTrace,
    enumerate_farey,
    figure_trace,
    vardi_gamma,
    vardi_law_check,
    vardi_phi,
    vardi_phi_quadrature,
)
from .density import (
    DensityReport,
    find_sigma0,
    g_density,
    g_fourier_closed,
    gaussian_deriv,
    s0_element,
)
from .geodesics import (
    GeodesicClass,
    GeodesicEnsembleX,
    enumerate_classes,
    norm_of_trace,
    phi1,
    psi_matrix,
    psi_word,
    sarnak_gamma,
    sarnak_trace,
    selberg_check,
)
from .specialfn import (
    barnes_g,
    dedekind_eta,
    dedekind_sum_fast,
    dedekind_sum_naive,
    sawtooth,
    wieand_limit,
)

__version__ = "0.1.0"
