"""Antimaximum principle laboratory for the Dirichlet Laplacian and a 2x2 non-cooperative system."""

from .spectral import (
    Decomposition,
    Domain,
    SpectralFn,
    decompose,
    eigenpair,
    eigenvalues,
    evaluate,
    mode_indices,
    norm,
    normal_derivative,
    project_grid,
)
from .scalar import (
    AmpInterval,
    BoundaryConstants,
    KUndefinedError,
    ResonanceError,
    SignReport,
    Verdict,
    classify_sign,
    empirical_amp_interval,
    estimate_K,
    solve_resolvent,
    theory_constants,
)
from .system import (
    CouplingMatrix,
    HypothesisError,
    counterexample_part1,
    counterexample_part2,
    decouple_thm2,
    decouple_thm6,
    gammas,
    lemma_L_check,
    solve_system,
    spectrum,
    theorem2_budget,
    verify_theorem,
)

__version__ = "0.1.0"

__all__ = [
    "Decomposition",
    "Domain",
    "SpectralFn",
    "decompose",
    "eigenpair",
    "eigenvalues",
    "evaluate",
    "mode_indices",
    "norm",
    "normal_derivative",
    "project_grid",
    "AmpInterval",
    "BoundaryConstants",
    "KUndefinedError",
    "ResonanceError",
    "SignReport",
    "Verdict",
    "classify_sign",
    "empirical_amp_interval",
    "estimate_K",
    "solve_resolvent",
    "theory_constants",
    "CouplingMatrix",
    "HypothesisError",
    "counterexample_part1",
    "counterexample_part2",
    "decouple_thm2",
    "decouple_thm6",
    "gammas",
    "lemma_L_check",
    "solve_system",
    "spectrum",
    "theorem2_budget",
    "verify_theorem",
]
