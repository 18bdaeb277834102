"""Quaternionic matrix spectra, S-functional calculus and generalized inverses.

Matrices are float64 arrays of shape (n, n, 4); entry [i, j] holds the
quaternion a + b i + c j + d k as (a, b, c, d).
"""

from ._core import (
    DimensionError,
    Error,
    FormatError,
    MathError,
    complex_adjoint,
    drazin,
    func_calc,
    gelfand,
    group_inverse,
    index,
    matmul,
    moore_penrose,
    operator_norm,
    pseudo_resolvent_series,
    rank,
    riesz,
    s_resolvent_left,
    s_spectrum,
    verify_drazin,
)

__all__ = [
    "DimensionError",
    "Error",
    "FormatError",
    "MathError",
    "complex_adjoint",
    "drazin",
    "func_calc",
    "gelfand",
    "group_inverse",
    "index",
    "matmul",
    "moore_penrose",
    "operator_norm",
    "pseudo_resolvent_series",
    "rank",
    "riesz",
    "s_resolvent_left",
    "s_spectrum",
    "verify_drazin",
]
