"""
Fingerprints

Mirror-insensitive invariants used to look diagrams up in the knot table:
the Jones polynomial, the Alexander polynomial, the determinant and the
linking form of the double branched cover.
"""

from dataclasses import dataclass

from knotmosaic.invariants.alexander import alexander, determinant
from knotmosaic.invariants.bracket import jones
from knotmosaic.invariants.diagram import DiagramCode
from knotmosaic.invariants.goeritz import linking_form
from knotmosaic.invariants.polynomial import LaurentPolynomial

FingerprintKey = tuple[str, str, int, str]


@dataclass(frozen=True)
class Fingerprint:
    """
    Canonical invariants of a knot up to mirror image.

    Attributes:
        jones: V(t) or V(1/t), whichever serializes first
        alexander: Normalized Alexander polynomial
        determinant: |Alexander(-1)|
        linking: Linking form encoding, see `goeritz.linking_form`
    """

    jones: LaurentPolynomial
    alexander: LaurentPolynomial
    determinant: int
    linking: str = ""

    @property
    def key(self) -> FingerprintKey:
        return (
            self.jones.serialize(),
            self.alexander.serialize(),
            self.determinant,
            self.linking,
        )

    @property
    def is_unknot(self) -> bool:
        return self.key == ("1:0", "1:0", 1, "")

    def as_dict(self) -> dict[str, str | int]:
        return {
            "jones": self.jones.serialize(),
            "alexander": self.alexander.serialize(),
            "determinant": self.determinant,
            "linking": self.linking,
        }


def canonical_jones(polynomial: LaurentPolynomial) -> LaurentPolynomial:
    mirrored = polynomial.substitute_inverse()
    return min(polynomial, mirrored, key=lambda p: p.serialize())


def fingerprint(code: DiagramCode) -> Fingerprint:
    """Compute the fingerprint of a single-component diagram code."""
    return Fingerprint(
        jones=canonical_jones(jones(code)),
        alexander=alexander(code),
        determinant=determinant(code),
        linking=linking_form(code),
    )
