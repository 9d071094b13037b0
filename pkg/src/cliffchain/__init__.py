"""Clifford-algebra matrix product states for SO(n) symmetric spin chains."""

__version__ = "0.1.0"

from .checks import VerificationReport
from .clifford import (
    CliffordElement,
    GammaIndex,
    MatrixRealization,
    alpha,
    dist,
    gamma0,
    gamma_mul,
    hodge_star,
    hs_inner,
    matrix_rep,
    projectors_pm,
    realize,
    realized_dim,
    trace,
    trace_pair,
    transpose_antiauto,
)
from .hamiltonians import (
    ChainHamiltonian,
    InteractionSpec,
    KernelBasis,
    aklt_su2,
    bilinear_biquadratic,
    build_interaction,
    chain_hamiltonian,
    cluster_degeneracies,
    embedded_term,
    frustration_free_check,
    heisenberg,
    kernel_basis,
    low_spectrum,
    majumdar_ghosh,
    mps_ground_space,
    parent_check,
    projector_distance,
    q_matrix,
    so_n_aklt,
    south_pole,
    subspace_intersection,
    swap_matrix,
    swap_q,
)
from .mps import (
    DensityMatrix,
    MpsFamily,
    SpectralSummary,
    apply_E,
    fcs_expectation,
    frame_operator_distance,
    frame_product_trace,
    gram_matrix,
    injectivity_rank,
    mps_vector,
    overlap_kernel,
    psi_minus,
    psi_plus,
    rdm_eigen_by_grade,
    rdm_frame,
    reduced_density_matrix,
    transfer_eigenvalue,
    transfer_spectrum,
    two_point_correlation,
)
from .reporting import CampaignConfig, emit, run_campaign
from .so_n import (
    clebsch_gordan_dims,
    isotypic_decomposition,
    pieri_dimension_check,
    so_generator,
    so_n_casimir,
    spin_matrices,
    spin_projector,
    wedge_generator,
)
from .spt import (
    BondSymmetry,
    CptReport,
    RotationPair,
    TensorFamily,
    aklt_tensors,
    clifford_tensors,
    cocycle_sign,
    conjugation_check,
    cpt_report,
    extract_bond_symmetry,
    mps_spt_index,
    on_site_breaking_check,
    product_tensors,
    reflection_check,
    rotation_matrix,
    rotation_pair,
    spin_lift,
    spin_rep_element,
    theta_matrix,
    time_reversal_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
