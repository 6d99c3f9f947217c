"""Steady-state entanglement and EPR steering of a squeezed-vacuum-driven
two-cavity optomechanical system. Thin wrapper over the C++ core."""

from ._optosqz import (
    NumericalError,
    SqueezedField,
    SteadyState,
    SystemParams,
    ValidationError,
    characteristic_polynomial,
    diffusion_matrix,
    drift_matrix,
    effective_detuning_roots,
    evaluate_point,
    pair_measures,
    preset_names,
    run_preset,
    solve_lyapunov,
    solve_steady_state,
    stability,
)

__all__ = [
    "NumericalError",
    "SqueezedField",
    "SteadyState",
    "SystemParams",
    "ValidationError",
    "characteristic_polynomial",
    "diffusion_matrix",
    "drift_matrix",
    "effective_detuning_roots",
    "evaluate_point",
    "pair_measures",
    "preset_names",
    "run_preset",
    "solve_lyapunov",
    "solve_steady_state",
    "stability",
]
