"""Numerical verification of the log-growth of ``||e^{in phi}||_U`` for piecewise-linear circle maps.

Modules:

* ``phase``        piecewise-linear circle maps, corners, case reduction
* ``spectral``     coefficient vectors, certified sup-norms, U / A / star norms
* ``closed_form``  exact Fourier coefficients of piecewise exponential pieces
* ``certificates`` the corner lower-bound certificates
* ``multipliers``  the shift identity and star-norm multiplier bound
* ``experiments``  n-sweeps, log-growth fits, CSV output
"""

from .closed_form import (PiecewiseExpPoly, Piece, Triangle, Indicator, coeff, eq2_coeff, phase_to_pexp,
                          triangle_coeffs)
from .phase import (CornerData, PhaseError, PiecewiseLinearPhase, canonical_case, eval_phase,
                    normalize_at_corner, validate)
from .spectral import (Enclosure, NormReport, SpectralVector, a_norm, eval_grid, lebesgue_constant, partial_sum,
                       star_norm, sup_norm_certified, u_norm)
from .certificates import CertificateReport, certify, q_lambda
from .multipliers import multiply, shift_identity_residual

__version__ = "0.1.0"
