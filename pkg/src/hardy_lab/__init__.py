"""Numerical toolkit for Hardy-type spaces, Toeplitz operators and multipliers on the circle."""

from hardy_lab.errors import ConfigurationError, DegreeBudgetError, GridMismatchError
from hardy_lab.fourier import (
    CoeffVector,
    analytic_extend,
    analyze,
    cauchy_singular,
    character,
    fejer_smooth,
    half_circle_conjugate,
    hilbert_fft,
    hilbert_multiplier,
    hilbert_pv,
    poisson_extend,
    poisson_integral,
    power_map,
    preimage_fraction,
    riesz_project,
    synthesize,
)
from hardy_lab.grid import Grid, GridFunction, integrate, make_grid, pairing, pointwise_multiply
from hardy_lab.multipliers import (
    MultiplierReport,
    TrivialMultipliers,
    holder_exponent,
    multiplier_norm_lower,
    verify_multiplier_identity,
)
from hardy_lab.spaces import (
    ExponentFunction,
    Lebesgue,
    VariableLebesgue,
    Weight,
    WeightedLorentz,
    ap_characteristic,
    associate_spec,
    distribution_function,
    lebesgue_norm,
    log_holder_constant,
    lorentz_norm,
    luxemburg_norm,
    modular,
    norm_by_duality,
    rearrangement,
    space_norm,
    weighted_lorentz_norm,
)
from hardy_lab.toeplitz import (
    NormBound,
    StructureViolation,
    ToeplitzMatrix,
    apply_toeplitz,
    brown_halmos_entry,
    l2_operator_norm,
    matrix_to_symbol,
    operator_norm_lower,
    toeplitz_matrix,
)

__version__ = "0.1.0"
