"""Preference-based multi-objective inverse RL."""

from ._moirl import (
    MoMdp,
    PreferenceDataset,
    angular_distance,
    build_env,
    default_env_params,
    dominates,
    estimate_cone,
    evaluate_policy,
    fit_direction,
    generate_dataset,
    load_mdp,
    logistic_loss,
    logistic_loss_gradient,
    mdp_from_json,
    pareto_front,
    preference_probability,
    resolve_config,
    run_experiment,
    solve_scalarized,
)

__all__ = [
    "MoMdp",
    "PreferenceDataset",
    "angular_distance",
    "build_env",
    "default_env_params",
    "dominates",
    "estimate_cone",
    "evaluate_policy",
    "fit_direction",
    "generate_dataset",
    "load_mdp",
    "logistic_loss",
    "logistic_loss_gradient",
    "mdp_from_json",
    "pareto_front",
    "preference_probability",
    "resolve_config",
    "run_experiment",
    "solve_scalarized",
]
