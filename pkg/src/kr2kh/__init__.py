"""Khovanov homology, sl2 Khovanov-Rozansky homology, and the explicit
chain-level isomorphism between the two cube constructions."""

from .bridge import compute_tau, run_verification, verify_proposition, verify_theorem
from .diagram import BUILTIN_DIAGRAMS, LinkDiagram, builtin, parse_pd
from .khcube import jones_string, kauffman_bracket_jones, kh_homology
from .krcube import KrCube, kr_homology, oracle_edge_map, reduced_edge_map
from .linalg import BigradedDimTable
from .poly import MultiPoly

__all__ = [
    "BUILTIN_DIAGRAMS",
    "BigradedDimTable",
    "KrCube",
    "LinkDiagram",
    "MultiPoly",
    "builtin",
    "compute_tau",
    "jones_string",
    "kauffman_bracket_jones",
    "kh_homology",
    "kr_homology",
    "oracle_edge_map",
    "parse_pd",
    "reduced_edge_map",
    "run_verification",
    "verify_proposition",
    "verify_theorem",
]
