"""Matrix elements of Schrodinger group elements and their matrix orthogonal polynomials.

The group element ``S = exp(v a - conj(v) a+) exp((w a^2 - conj(w) a+^2)/2)``
is parametrised by ``v = sigma e^{i delta}`` and ``w = rho e^{i theta}``.  Its
oscillator-basis elements ``psi_{n,k} = <k|S|n>`` can be computed by a
two-vector recurrence, a Charlier/Meixner convolution, two-variable Hermite
polynomials, or brute-force exponentiation of truncated ladder matrices.
"""

from .decompose import chi, convolved_table, phi, psi_convolved
from .elements import PsiTable, compute_table, psi00, psi_oracle, psi_seed, psi_table, unitarity_defect
from .errors import ConditioningWarning, ConvergenceError, SingularParameterError, TruncationError
from .genfun import f_closed, g_closed, g_series, hermite2_table, psi_via_hermite2
from .group import GroupParams, block_matrices, ladder_matrices
from .mops import MatPoly, apply_lower, apply_raise, gram, mop, mop_from_table, mop_sequence, rodrigues, weight
from .position import affine_vector_defect, dilate_defect, phi_wave, translate_defect
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "GroupParams",
    "PsiTable",
    "MatPoly",
    "VerificationReport",
    "SingularParameterError",
    "ConvergenceError",
    "TruncationError",
    "ConditioningWarning",
    "psi00",
    "psi_seed",
    "psi_table",
    "psi_oracle",
    "compute_table",
    "unitarity_defect",
    "block_matrices",
    "ladder_matrices",
    "mop",
    "mop_sequence",
    "mop_from_table",
    "weight",
    "gram",
    "apply_raise",
    "apply_lower",
    "rodrigues",
    "chi",
    "phi",
    "psi_convolved",
    "convolved_table",
    "g_closed",
    "g_series",
    "psi_via_hermite2",
    "hermite2_table",
    "f_closed",
    "phi_wave",
    "translate_defect",
    "dilate_defect",
    "affine_vector_defect",
    "run_suite",
]
