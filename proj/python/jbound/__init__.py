"""Congruence-subgroup invariants and effective j-invariant height bounds.

Heavy quantities are returned as natural logarithms in decimal strings, rounded
in the requested direction ("up" never underestimates, "down" never
overestimates).
"""

from ._jbound import (
    SCHEMA_VERSION,
    CapExceeded,
    Inapplicable,
    SpecError,
    applicability,
    covering_degree,
    euler_phi,
    group_order,
    invariants,
    lambda_ln,
    ln_delta,
    ln_delta0,
    ln_dstar,
    prime_power_level,
    run,
    table,
)

__all__ = [
    "SCHEMA_VERSION",
    "CapExceeded",
    "Inapplicable",
    "SpecError",
    "applicability",
    "covering_degree",
    "euler_phi",
    "group_order",
    "invariants",
    "lambda_ln",
    "ln_delta",
    "ln_delta0",
    "ln_dstar",
    "prime_power_level",
    "run",
    "table",
]
