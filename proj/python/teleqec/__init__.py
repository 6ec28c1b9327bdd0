"""Stabilizer codes, Pauli frames and teleportation error correction."""

from ._teleqec import (
    Code,
    CodeValidationError,
    PauliParseError,
    SizeGuardError,
    commutes,
    concatenated_rate,
    concatenation_bound,
    dense_teleport,
    depolarizing_effective_rate,
    depolarizing_oracle_rate,
    eigenvalue_exponent,
    erasure_effective_rate,
    multiply,
    nu,
    run_cli,
    threshold_curve_point,
)

__all__ = [
    "Code",
    "CodeValidationError",
    "PauliParseError",
    "SizeGuardError",
    "commutes",
    "concatenated_rate",
    "concatenation_bound",
    "dense_teleport",
    "depolarizing_effective_rate",
    "depolarizing_oracle_rate",
    "eigenvalue_exponent",
    "erasure_effective_rate",
    "multiply",
    "nu",
    "run_cli",
    "threshold_curve_point",
]
