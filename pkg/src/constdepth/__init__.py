"""Depth functions of powers of monomial ideals: Betti tables, analytic spread,
and constancy classifiers for edge, matroidal, forest and transversal ideals."""

from .analysis import Analysis, analyze, exact_spread, recognize_cm
from .betti import Guards, betti_table, depth, depth_series, taylor_betti_oracle
from .errors import ConstDepthError, GuardExceeded, InternalInconsistency, ParseError, PreconditionError
from .monomial import Field, Monomial, MonomialIdeal, PolyContext, parse_ideal

__all__ = [
    "Analysis", "analyze", "exact_spread", "recognize_cm",
    "Guards", "betti_table", "depth", "depth_series", "taylor_betti_oracle",
    "ConstDepthError", "GuardExceeded", "InternalInconsistency", "ParseError", "PreconditionError",
    "Field", "Monomial", "MonomialIdeal", "PolyContext", "parse_ideal",
]
