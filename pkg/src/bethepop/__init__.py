"""Exact computations with discrete Bethe critical points, their populations and fundamental spaces."""

from .bethe import InitialData, verify_critical
from .errors import BetheError
from .exactalg import INFINITY, Poly, X
from .fundamental import PolySpace, frame_of_space, fundamental_basis, fundamental_operator
from .reproduction import c1_population, immediate_descendant, population_atlas
from .selfdual import canonical_form, check_witt, fold_bn, fold_cn, lift_data, witt_basis
from .wronskian import Frame, divided_wronskian

__all__ = [
    "BetheError",
    "Frame",
    "INFINITY",
    "InitialData",
    "Poly",
    "PolySpace",
    "X",
    "c1_population",
    "canonical_form",
    "check_witt",
    "divided_wronskian",
    "fold_bn",
    "fold_cn",
    "frame_of_space",
    "fundamental_basis",
    "fundamental_operator",
    "immediate_descendant",
    "lift_data",
    "population_atlas",
    "verify_critical",
    "witt_basis",
]
