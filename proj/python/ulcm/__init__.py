"""Linear coupling and universal gradient methods."""

from ._ulcm import (
    LineSearchConfig,
    MaxQuadProblem,
    Objective,
    QuadraticProblem,
    RunConfig,
    SolverOptions,
    SolverReport,
    function_objective,
    inexact_lipschitz,
    localize,
    make_random_composite,
    maxquad_eval,
    maxquad_subgrad,
    minimize_ray,
    ncg_solve,
    quad_eval,
    quad_grad,
    run_one,
    step_coefficients,
    ufgm_solve,
    ulcm_fixed_step,
    ulcm_solve,
)

__all__ = [
    "LineSearchConfig",
    "MaxQuadProblem",
    "Objective",
    "QuadraticProblem",
    "RunConfig",
    "SolverOptions",
    "SolverReport",
    "function_objective",
    "inexact_lipschitz",
    "localize",
    "make_random_composite",
    "maxquad_eval",
    "maxquad_subgrad",
    "minimize_ray",
    "ncg_solve",
    "quad_eval",
    "quad_grad",
    "run_one",
    "step_coefficients",
    "ufgm_solve",
    "ulcm_fixed_step",
    "ulcm_solve",
]
