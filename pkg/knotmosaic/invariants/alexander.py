"""
Alexander Polynomial

Alexander matrix over the arcs of the diagram, one relation per crossing,
with the first row and column removed. The minor's determinant is taken
in Z[t] by fraction-free elimination and normalized to lowest degree 0
with a positive leading coefficient.
"""

from sympy import ZZ, Poly, Symbol, sympify
from sympy.polys.matrices import DomainMatrix

from knotmosaic.invariants.diagram import DiagramCode
from knotmosaic.invariants.polynomial import ONE, LaurentPolynomial

t = Symbol("t")
_RING = ZZ[t]


def _arc_indices(code: DiagramCode) -> list[tuple[int, int, int]]:
    """(over arc, incoming under arc, outgoing under arc) per crossing."""
    k = code.k
    over = [0] * k
    under_in = [0] * k
    under_out = [0] * k
    arc = 0
    for visit in code.gauss:
        if visit.over:
            over[visit.crossing] = arc % k
        else:
            under_in[visit.crossing] = arc % k
            arc += 1
            under_out[visit.crossing] = arc % k
    return list(zip(over, under_in, under_out))


def alexander_matrix(code: DiagramCode) -> list[list]:
    """k x k Alexander matrix as sympy expressions in t."""
    k = code.k
    rows = [[0 for _ in range(k)] for _ in range(k)]
    for i, (o, u_in, u_out) in enumerate(_arc_indices(code)):
        if code.signs[i] > 0:
            rows[i][o] += 1 - t
            rows[i][u_in] += t
            rows[i][u_out] += -1
        else:
            rows[i][o] += t - 1
            rows[i][u_in] += 1
            rows[i][u_out] += -t
    return rows


def normalize(poly: LaurentPolynomial) -> LaurentPolynomial:
    """Shift to lowest degree 0 and make the leading coefficient positive."""
    if poly.is_zero:
        return poly
    shifted = poly.shift(-poly.min_degree)
    return -shifted if shifted.leading_coefficient < 0 else shifted


def alexander(code: DiagramCode) -> LaurentPolynomial:
    """
    Normalized Alexander polynomial; the unknot and one-crossing
    diagrams give 1.
    """
    if code.k <= 1:
        return ONE
    rows = alexander_matrix(code)
    minor = [
        [_RING.from_sympy(sympify(entry)) for entry in row[1:]] for row in rows[1:]
    ]
    size = code.k - 1
    determinant = DomainMatrix(minor, (size, size), _RING).det()
    expression = _RING.to_sympy(determinant)
    if expression == 0:
        return LaurentPolynomial()
    terms = Poly(expression, t).terms()
    return normalize(LaurentPolynomial.from_dict({e[0]: int(c) for e, c in terms}))


def determinant(code: DiagramCode) -> int:
    """Knot determinant |Alexander(-1)|."""
    return abs(int(alexander(code).evaluate(-1)))
