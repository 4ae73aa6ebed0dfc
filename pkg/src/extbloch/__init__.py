"""Extended Bloch representation of finite-dimensional quantum states."""

__version__ = "0.1.0"

from .basis import CompositeBasis, GeneratorBasis, adapted_basis, composite_basis, gell_mann_basis
from .bloch import (
    BlochConstants, BlochVector, bloch_to_density, c_n, density_to_bloch, e_n, is_valid_bloch,
    purity, state_overlap,
)
from .entangle import (
    DecompCoefficients, EntangledSpec, TripartiteDecomposition, build_density, build_state_vector,
    decompose, decompose_operator, interference_components, interference_operator, reduced_states,
    separable_operator,
)
from .errors import InputError, NumericalError, VerificationError
from .kernels import BACKEND
from .matrix import DensityOperator, hermitian_eigensystem, is_psd, kron, partial_trace
from .measure import (
    MeasurementSimplex, SampleReport, born_probabilities, collapse, project_to_simplex,
    sample_outcomes, simplex_from_basis,
)
