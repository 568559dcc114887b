"""Exact Q(q) computations for Cartan-cell volumes, germ expansions of contracted
orbital integrals on GL_2n / GL_n x GL_n, unramified L-factors, transfer factors
and compact branching multiplicities."""

from .branching import branching_multiplicity, lr_coeff, self_associate
from .cartan import SignedPartition, cell_volume, count_cosets_oracle
from .errors import ConfigError, DegenerateInputError, DomainError, FitError
from .germs import GermExpansion, eval_germ, fit_germ, germ_of_vol
from .invariants import car_lin, check_equivariance, is_strongly_regular, project_sym, transfer_factor
from .lfactors import (
    SatakeData,
    TruncatedSeries,
    UnramifiedTorusData,
    bf_unramified_check,
    check_ext_sq_shift,
    ext_sq_lfactor,
    std_lfactor,
    tate_series,
)
from .orbital import OrbitalProfile, check_linear_term, orbital_coeffs, orbital_direct, orbital_germ
from .qring import LaurentPolyQ, RationalFunctionQ, mu_gl, q, qbinom, qpow, verify_newton_identity
from .verify import VerifyConfig, VerifyReport, run_verify
from .volumes import const_term_A, linear_coeff_B, vol, vol_direct, vol_recur, vol_recur2

__version__ = "0.1.0"
