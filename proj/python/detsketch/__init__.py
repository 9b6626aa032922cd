"""Deterministic linear sketches.

Matrices are numpy arrays of shape (m, n); sketches are A @ x.
"""

from ._detsketch import (
    ConstructionError,
    DimensionError,
    FormatError,
    ParameterError,
    SolverError,
    build_matrix,
    estimate_ip,
    estimate_norm,
    l1_minimize,
    measurement_table,
    point_query,
    point_query_tail,
    separation_oracle,
    verify_coherence,
)

__all__ = [
    "ConstructionError",
    "DimensionError",
    "FormatError",
    "ParameterError",
    "SolverError",
    "build_matrix",
    "estimate_ip",
    "estimate_norm",
    "l1_minimize",
    "measurement_table",
    "point_query",
    "point_query_tail",
    "separation_oracle",
    "verify_coherence",
]
