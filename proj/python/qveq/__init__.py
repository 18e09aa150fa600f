"""Exact workbench for the degree-25 difference equation."""

from qveq._core import (
    ConfigError,
    auto_eliminate,
    binomial,
    coefficient,
    combine,
    eval_h,
    eval_h_poly,
    expand_instance,
    expand_instance_raw,
    factorial,
    fixed_point_iterate,
    fuzzy_norm,
    gamma_time_scales,
    kappa_for_power,
    multiplier_pattern,
    omega0_constants,
    padic_abs,
    padic_valuation,
    run,
    scripted_cascade,
    sigma_star_power,
    __version__,
)

__all__ = [
    "ConfigError",
    "auto_eliminate",
    "binomial",
    "coefficient",
    "combine",
    "eval_h",
    "eval_h_poly",
    "expand_instance",
    "expand_instance_raw",
    "factorial",
    "fixed_point_iterate",
    "fuzzy_norm",
    "gamma_time_scales",
    "kappa_for_power",
    "multiplier_pattern",
    "omega0_constants",
    "padic_abs",
    "padic_valuation",
    "run",
    "scripted_cascade",
    "sigma_star_power",
    "__version__",
]
