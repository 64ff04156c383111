"""Secrecy outage and ergodic secrecy capacity of RIS-assisted links with randomly located eavesdroppers."""

import json

from ._core import (  # noqa: F401
    ConfigError,
    ConvergenceError,
    SystemConfig,
    UnsupportedPath,
    cdf_gamma_d,
    cdf_gamma_e,
    cli,
    diversity_order,
    esc,
    gamma_fit,
    mean_gamma_d,
    pdf_gamma_d,
    preset_config,
    presets,
    rd_closed_form,
    rd_quadrature,
    rd_upper_bound,
    re_quadrature,
    run_preset,
    simulate,
    sop,
    specfun,
    sweep,
)


def config(**fields):
    """A validated SystemConfig with the given fields overriding the defaults."""
    cfg = SystemConfig.from_json(json.dumps(fields))
    cfg.validate()
    return cfg


def config_dict(cfg):
    return json.loads(cfg.to_json())
