"""
Goeritz Matrix

Checkerboard colouring of the diagram's faces and the Goeritz matrix of
the white faces. Its reduced form presents the first homology of the
double branched cover, and the linking form is recorded on its odd
primary parts.

The form is encoded as "p:+" or "p:-" for each odd prime p whose part of
the homology is cyclic (the Legendre symbol of the form on a generator)
and "p:0" where it is not, joined by commas.
"""

from collections import deque

from sympy import ZZ, factorint, legendre_symbol
from sympy.polys.matrices import DomainMatrix

from knotmosaic.errors import DiagramCodeError
from knotmosaic.invariants.diagram import DiagramCode

Corner = tuple[int, int]


def faces(code: DiagramCode) -> list[list[Corner]]:
    """
    Faces of the diagram as cycles of (crossing, slot) corners.

    Corner (i, p) is the face between slots p and p + 1 of crossing i
    (counterclockwise). From a corner, the face continues along the edge
    at slot p to its other end and turns to the previous slot there.
    """
    ends: dict[int, list[Corner]] = {}
    for i, x in enumerate(code.crossings):
        for p, label in enumerate(x):
            ends.setdefault(label, []).append((i, p))

    seen: set[Corner] = set()
    found: list[list[Corner]] = []
    for i in range(code.k):
        for p in range(4):
            corner = (i, p)
            face: list[Corner] = []
            while corner not in seen:
                seen.add(corner)
                face.append(corner)
                ci, cp = corner
                a, b = ends[code.crossings[ci][cp]]
                oi, op = b if a == corner else a
                corner = (oi, (op + 3) % 4)
            if face:
                found.append(face)
    return found


def _colouring(code: DiagramCode, face_of: dict[Corner, int], n: int) -> list[int]:
    adjacent: list[set[int]] = [set() for _ in range(n)]
    for i in range(code.k):
        for p in range(4):
            a, b = face_of[(i, p)], face_of[(i, (p + 3) % 4)]
            adjacent[a].add(b)
            adjacent[b].add(a)

    colour = [-1] * n
    colour[0] = 0
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for g in adjacent[f]:
            if colour[g] < 0:
                colour[g] = 1 - colour[f]
                queue.append(g)
            elif colour[g] == colour[f]:
                raise DiagramCodeError("faces of the diagram are not 2-colourable")
    return colour


def goeritz_matrix(code: DiagramCode) -> list[list[int]]:
    """Unreduced Goeritz matrix over the white faces (colour 0)."""
    found = faces(code)
    face_of = {corner: f for f, face in enumerate(found) for corner in face}
    colour = _colouring(code, face_of, len(found))
    white = [f for f in range(len(found)) if colour[f] == 0]
    index = {f: w for w, f in enumerate(white)}

    size = len(white)
    g = [[0] * size for _ in range(size)]
    for i in range(code.k):
        f0, f1, f2, f3 = (face_of[(i, p)] for p in range(4))
        eta, a, b = (1, f1, f3) if colour[f1] == 0 else (-1, f0, f2)
        if a == b:
            continue
        x, y = index[a], index[b]
        g[x][y] -= eta
        g[y][x] -= eta
        g[x][x] += eta
        g[y][y] += eta
    return g


def _det(rows: list[list[int]]) -> int:
    if not rows:
        return 1
    size = len(rows)
    matrix = DomainMatrix([[ZZ(v) for v in row] for row in rows], (size, size), ZZ)
    return int(matrix.det())


def _minor(rows: list[list[int]], i: int) -> list[list[int]]:
    return [
        [v for c, v in enumerate(row) if c != i]
        for r, row in enumerate(rows)
        if r != i
    ]


def _encode(symbols: dict[int, int]) -> str:
    marks = {1: "+", -1: "-", 0: "0"}
    return ",".join(f"{p}:{marks[s]}" for p, s in sorted(symbols.items()))


def linking_form(code: DiagramCode) -> str:
    """
    Linking form of the double branched cover, up to mirror image.

    Returns:
        The encoding of the form or of its negative, whichever sorts
        first; the empty string when the determinant is a power of 2.
    """
    if code.k == 0:
        return ""
    g = goeritz_matrix(code)
    reduced = [row[1:] for row in g[1:]]
    det = abs(_det(reduced))
    if det <= 1:
        return ""

    symbols: dict[int, int] = {}
    for p, multiplicity in factorint(det).items():
        if p == 2:
            continue
        cofactor = (det // p**multiplicity) % p
        # a nonzero diagonal cofactor mod p exists iff the p-part is cyclic
        symbols[p] = 0
        for i in range(len(reduced)):
            u = cofactor * (_det(_minor(reduced, i)) % p) % p
            if u:
                symbols[p] = legendre_symbol(u, p)
                break

    form = _encode(symbols)
    negated = _encode({p: s * legendre_symbol(p - 1, p) for p, s in symbols.items()})
    return min(form, negated)
