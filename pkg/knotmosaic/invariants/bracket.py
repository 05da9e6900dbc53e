"""
Kauffman Bracket and Jones Polynomial

The bracket is evaluated by contracting crossings one at a time while
tracking how the open edge ends are joined, so states sharing a boundary
pattern are summed together. A plain sum over all 2^k smoothings is kept
as an independent check.

Smoothing X[a, b, c, d]: the A-smoothing joins (a, b) and (c, d), the
B-smoothing joins (a, d) and (b, c).
"""

import logging
from itertools import product

from knotmosaic.errors import DiagramCodeError
from knotmosaic.invariants.diagram import DiagramCode, writhe
from knotmosaic.invariants.polynomial import ONE, LaurentPolynomial

logger = logging.getLogger(__name__)

DELTA = LaurentPolynomial.from_dict({2: -1, -2: -1})
_A = LaurentPolynomial.monomial(1, 1)
_A_INV = LaurentPolynomial.monomial(1, -1)

Matching = tuple[tuple[int, int], ...]


def _smoothings(
    x: tuple[int, int, int, int]
) -> tuple[tuple[LaurentPolynomial, Matching], ...]:
    a, b, c, d = x
    return (
        (_A, ((a, b), (c, d))),
        (_A_INV, ((a, d), (b, c))),
    )


def _join(mate: dict[int, int], x: int, y: int) -> int:
    """Add an arc x-y to the open ends; return the number of loops closed."""
    if x == y:
        return 1
    if x in mate:
        far_x = mate.pop(x)
        if far_x == y:
            mate.pop(y)
            return 1
        mate.pop(far_x)
    else:
        far_x = x
    if y in mate:
        far_y = mate.pop(y)
        mate.pop(far_y)
    else:
        far_y = y
    mate[far_x] = far_y
    mate[far_y] = far_x
    return 0


def _contraction_order(code: DiagramCode) -> list[int]:
    """Greedy order: next crossing shares the most edges with the open ends."""
    remaining = set(range(code.k))
    seen: dict[int, int] = {}
    order: list[int] = []
    while remaining:
        best = min(
            remaining,
            key=lambda i: (
                -sum(1 for label in code.crossings[i] if seen.get(label) == 1),
                i,
            ),
        )
        remaining.remove(best)
        order.append(best)
        for label in code.crossings[best]:
            seen[label] = seen.get(label, 0) + 1
    return order


def kauffman_bracket(code: DiagramCode) -> LaurentPolynomial:
    """
    Kauffman bracket <K> in A, normalized so the unknot is 1.

    Args:
        code: Single-component diagram code

    Returns:
        Sum over smoothings of A^(a-b) * delta^(loops-1)
    """
    if code.k == 0:
        return ONE

    # key: (open-end matching, some loop already closed)
    states: dict[tuple[Matching, bool], LaurentPolynomial] = {((), False): ONE}
    for i in _contraction_order(code):
        updated: dict[tuple[Matching, bool], LaurentPolynomial] = {}
        for (matching, closed_any), weight in states.items():
            for factor, pairs in _smoothings(code.crossings[i]):
                mate = {u: v for u, v in matching}
                mate.update({v: u for u, v in matching})
                term = weight * factor
                closed = closed_any
                for x, y in pairs:
                    for _ in range(_join(mate, x, y)):
                        if closed:
                            term = term * DELTA
                        closed = True
                key = (tuple(sorted((u, v) for u, v in mate.items() if u < v)), closed)
                updated[key] = updated.get(key, LaurentPolynomial()) + term
        states = {key: value for key, value in updated.items() if not value.is_zero}
        logger.debug("crossing %d contracted, %d boundary states", i, len(states))

    total = LaurentPolynomial()
    for (matching, _), value in states.items():
        if matching:
            raise DiagramCodeError("open edges left after contraction")
        total = total + value
    return total


def naive_bracket(code: DiagramCode) -> LaurentPolynomial:
    """Kauffman bracket as the plain sum over all 2^k smoothing states."""
    if code.k == 0:
        return ONE
    total = LaurentPolynomial()
    for choice in product((0, 1), repeat=code.k):
        parent: dict[int, int] = {}

        def find(u: int) -> int:
            parent.setdefault(u, u)
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        a_count = 0
        for x, pick in zip(code.crossings, choice):
            factor, pairs = _smoothings(x)[pick]
            a_count += 1 if pick == 0 else -1
            for u, v in pairs:
                parent[find(u)] = find(v)
        loops = len({find(label) for x in code.crossings for label in x})
        total = total + LaurentPolynomial.monomial(1, a_count) * DELTA ** (loops - 1)
    return total


def jones(code: DiagramCode) -> LaurentPolynomial:
    """
    Jones polynomial V(t) of a knot diagram.

    Raises:
        DiagramCodeError: If the normalized bracket has an A-exponent not
            divisible by 4, which cannot happen for a knot.
    """
    w = writhe(code)
    sign = (-1) ** (w % 2)
    normalized = kauffman_bracket(code) * LaurentPolynomial.monomial(sign, -3 * w)
    try:
        return normalized.divide_exponents(-4)
    except ValueError as exc:
        raise DiagramCodeError(str(exc)) from exc
