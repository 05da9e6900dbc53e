"""Knot invariants computed from planar diagram codes."""

from knotmosaic.invariants.alexander import alexander, determinant
from knotmosaic.invariants.bracket import jones, kauffman_bracket, naive_bracket
from knotmosaic.invariants.diagram import (
    DiagramCode,
    diagram_from_braid,
    diagram_from_pd,
    is_connected_sum,
    mirror,
    parse_code,
    to_diagram_code,
    writhe,
)
from knotmosaic.invariants.fingerprint import Fingerprint, fingerprint
from knotmosaic.invariants.goeritz import goeritz_matrix, linking_form
from knotmosaic.invariants.polynomial import LaurentPolynomial

__all__ = [
    "DiagramCode",
    "Fingerprint",
    "LaurentPolynomial",
    "alexander",
    "determinant",
    "diagram_from_braid",
    "diagram_from_pd",
    "fingerprint",
    "goeritz_matrix",
    "is_connected_sum",
    "jones",
    "kauffman_bracket",
    "linking_form",
    "mirror",
    "naive_bracket",
    "parse_code",
    "to_diagram_code",
    "writhe",
]
