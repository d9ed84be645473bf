"""Python access to the ptwell solvers."""

from ._core import (
    DomainError,
    SolverError,
    cli,
    complex_spectrum,
    count_real,
    critical_couplings,
    format_number,
    lattice_levels,
    quantization_function,
    real_levels,
    residual_real,
    separation_sigma,
)

__all__ = [
    "DomainError",
    "SolverError",
    "cli",
    "complex_spectrum",
    "count_real",
    "critical_couplings",
    "format_number",
    "lattice_levels",
    "quantization_function",
    "real_levels",
    "residual_real",
    "separation_sigma",
]
