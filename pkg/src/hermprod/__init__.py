"""Integrals of products of four Hermite functions.

Exact values live in :mod:`hermprod.linearize`, the quadrature oracle in
:mod:`hermprod.quadrature`, decay bounds in :mod:`hermprod.asymptotics`
and matrix norms in :mod:`hermprod.matrix`.
"""
import os

from .errors import ConvergenceError, DomainError, HermprodError, ResourceError
from .hermite import Convention, hermite_fn, hermite_fn_table, hermite_poly
from .radical import ExactRadical
from .linearize import (
    Index4,
    LinearizationExpansion,
    a_coeff,
    c_integral,
    f2_sum,
    i_factor,
    linearize,
    w2_00,
    w4_single_sum,
    w4_exact,
    w4_float,
    w4_via_ifactors,
)
from .quadrature import QuadratureRule, gauss_hermite_rule, w4_quadrature
from .asymptotics import (
    BoundReport,
    CpqFit,
    cpq_fit,
    f1_bound,
    f1_exact,
    log_factorial,
    phi,
    theorem_bound,
    w2_asymptotic,
    w2_bound,
)
from .matrix import NormReport, WMatrix, build_wmatrix, operator_norm, schur_norm
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    name for name, value in dict(globals()).items()
    if not name.startswith("_") and not isinstance(value, type(os))
]
