"""Gaussian separability toolkit.

Covariance-matrix physicality and PPT tests, LMI-based separability
classification with witnesses and infeasibility certificates, randomized
search for bound-entangled Gaussian states, and synthesis of beam-splitter
plus squeezer preparation circuits.
"""

from gsep._core import (
    TOL_PHYS,
    BeamSplitterOp,
    CertificateCheck,
    CircuitDescription,
    Classification,
    ClassifyOptions,
    CovarianceMatrix,
    EulerForm,
    Feasibility,
    FeasibilityReport,
    GaussianRecipe,
    InfeasibilityCertificate,
    LmiBlock,
    LmiProblem,
    ModePartition,
    ModeSqueezer,
    NetworkCheck,
    PassiveNetwork,
    PassivePolicy,
    PhysicalityReport,
    PptReport,
    RandomStream,
    SearchConfig,
    SearchHit,
    SearchSummary,
    SeparabilityProblem,
    SolveOptions,
    StateClass,
    WilliamsonForm,
    __version__,
    beam_splitter_unitary,
    build_separability_problem,
    classify,
    compose_covariance,
    eval_constraints,
    euler_decompose,
    haar_unitary,
    hermitian_embedding,
    is_physical,
    is_symplectic,
    network_unitary,
    pack_witness,
    partial_transpose,
    partial_transpose_signs,
    perturb_recipe,
    ppt_check,
    random_candidate,
    reference_example,
    reference_recipe,
    reference_unitary,
    reordering_permutation,
    replay_circuit,
    search,
    solve_feasibility,
    squeezer_direct_sum,
    symplectic_eigenvalues,
    symplectic_form,
    symplectic_residual,
    symplectic_to_unitary,
    synthesize_circuit,
    synthesize_passive,
    unitary_to_symplectic,
    unpack_witness,
    validate_witness,
    verify_certificate,
    verify_network,
    williamson_decompose,
)

__all__ = [
    "TOL_PHYS",
    "BeamSplitterOp",
    "CertificateCheck",
    "CircuitDescription",
    "Classification",
    "ClassifyOptions",
    "CovarianceMatrix",
    "EulerForm",
    "Feasibility",
    "FeasibilityReport",
    "GaussianRecipe",
    "InfeasibilityCertificate",
    "LmiBlock",
    "LmiProblem",
    "ModePartition",
    "ModeSqueezer",
    "NetworkCheck",
    "PassiveNetwork",
    "PassivePolicy",
    "PhysicalityReport",
    "PptReport",
    "RandomStream",
    "SearchConfig",
    "SearchHit",
    "SearchSummary",
    "SeparabilityProblem",
    "SolveOptions",
    "StateClass",
    "WilliamsonForm",
    "__version__",
    "beam_splitter_unitary",
    "build_separability_problem",
    "classify",
    "compose_covariance",
    "eval_constraints",
    "euler_decompose",
    "haar_unitary",
    "hermitian_embedding",
    "is_physical",
    "is_symplectic",
    "network_unitary",
    "pack_witness",
    "partial_transpose",
    "partial_transpose_signs",
    "perturb_recipe",
    "ppt_check",
    "random_candidate",
    "reference_example",
    "reference_recipe",
    "reference_unitary",
    "reordering_permutation",
    "replay_circuit",
    "search",
    "solve_feasibility",
    "squeezer_direct_sum",
    "symplectic_eigenvalues",
    "symplectic_form",
    "symplectic_residual",
    "symplectic_to_unitary",
    "synthesize_circuit",
    "synthesize_passive",
    "unitary_to_symplectic",
    "unpack_witness",
    "validate_witness",
    "verify_certificate",
    "verify_network",
    "williamson_decompose",
]
