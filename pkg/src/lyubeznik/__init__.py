"""Lyubeznik tables and related local cohomology invariants of monomial ideals."""

__version__ = "0.1.0"

from .errors import InternalError, LyubeznikError, UserInputError
from .field_linalg import QQ, FieldSpec
from .invariants import (
    HochsterHunekeGraph,
    LyubeznikTable,
    MultiplicityTable,
    bound_B,
    generalized_lyu,
    highest_lyu_via_graph,
    hochster_huneke_graph,
    is_trivial_table,
    lyubeznik_table,
    lyubeznik_table_at_face,
    lyubeznik_table_monomial,
    multiplicities,
)
from .monomial import MonomialIdeal, PolynomialRing, alexander_dual, parse_ideal, polarize, radical, stanley_reisner
from .simplicial import SimplicialComplex

__all__ = [
    "FieldSpec",
    "QQ",
    "LyubeznikError",
    "UserInputError",
    "InternalError",
    "SimplicialComplex",
    "PolynomialRing",
    "MonomialIdeal",
    "parse_ideal",
    "radical",
    "polarize",
    "alexander_dual",
    "stanley_reisner",
    "LyubeznikTable",
    "HochsterHunekeGraph",
    "MultiplicityTable",
    "lyubeznik_table",
    "lyubeznik_table_at_face",
    "lyubeznik_table_monomial",
    "hochster_huneke_graph",
    "highest_lyu_via_graph",
    "multiplicities",
    "generalized_lyu",
    "bound_B",
    "is_trivial_table",
]
