"""Bell-nonlocality certificates from anticommuting Pauli-string correlations."""
from .errors import (
    BellCertError,
    ConstructionInvalid,
    DegenerateRow,
    FrameRejected,
    InvalidArgument,
    InvalidState,
    NonDichotomic,
    StateFileError,
)
from .pauli import PauliString, anticommutes, multiply, pauli_basis, to_dense
from .states import (
    bell_diagonal,
    check_state,
    correlation_matrix,
    diagonalize_two_qubit,
    m_copies,
    maximally_mixed,
    random_state,
    singlet,
    werner,
)
from .anticommuting import AnticommutingSet, count_maximal_sets, iter_maximal_sets, maximal_sets, n_subsets
from .functional import bell_value, hadamard_extension, local_bound, local_bound_bruteforce, quantum_optimum, sign_matrix
from .criterion import (
    CriterionReport,
    appendix_b_value,
    horodecki_chsh,
    m3_two_qubit,
    m_n,
    m_n_bell_diagonal,
    m_n_with_frame,
    threshold,
    violates,
)
from .observables import ObservableSet, appendix_b, construct, construct_n3, construct_optimal, verify_proposition1
from .seesaw import OracleResult, SeesawConfig, balanced_sign_decomposition, seesaw, sign_decomposition
from .proofs import constraint_matrix, exact_rank, rank_full, verify_proofs

__version__ = "0.1.0"
