"""trigcrystal: zero statistics of random trigonometric polynomials under
repeated differentiation.

Sampling and exact differentiation (`poly`), real/complex root finding by
two independent methods (`roots`), Monte Carlo ensemble statistics in the
unit-mean-spacing coordinate (`ensemble`), exact Kac-Rice and
pair-correlation formulas with quadrature (`analytic`), large-order
asymptotics of the approach to equal spacing (`asymptotics`), and a CLI
(`crystallize`) that tabulates curves and renders SVG figures.
"""

__version__ = "0.1.0"

from .poly import (  # noqa: E402,F401
    EnsembleSpec,
    TrigPolynomial,
    VarianceProfile,
    derivative_rescaled,
    differentiate,
    evaluate,
    evaluate_rescaled,
    sample,
)
from .roots import (  # noqa: E402,F401
    RootSet,
    all_roots_companion,
    fraction_real,
    real_roots_sampled,
)
from .ensemble import (  # noqa: E402,F401
    Histogram,
    PairCorrelationEstimate,
    circular_gaps,
    empirical_pair_correlation,
    empirical_real_fraction,
    gap_ensemble,
    nearest_neighbor_spacings,
    real_zero_ensemble,
    rescale_zeros,
)
from .analytic import (  # noqa: E402,F401
    BBLTerms,
    KacRiceInputs,
    LimitTerms,
    bbl_terms,
    expected_real_fraction,
    g_limit_integrals,
    g_limit_integrals_recurrence,
    kac_rice_density,
    kac_rice_inputs,
    limit_terms,
    pair_correlation_finite_n,
    pair_correlation_finite_n_rescaled,
    pair_correlation_limit,
    pair_correlation_limit_curve,
    v_p,
)
from .asymptotics import (  # noqa: E402,F401
    TRIPLE_ZERO_CRITICAL,
    PeakProfile,
    TripleZeroDemo,
    gap_function,
    gap_function_derivative,
    new_real_fraction,
    nn_cdf,
    nn_density,
    peak_location,
    repulsion_curvature,
    repulsion_expansion,
    repulsion_slope,
    series_abc,
    theorem_profile,
    triple_zero_count,
    triple_zero_demo,
    triple_zero_threshold,
)
