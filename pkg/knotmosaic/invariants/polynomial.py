"""
Laurent Polynomials

Sparse integer Laurent polynomials in a single variable with exact
arithmetic. The fixed text form lists "coefficient:exponent" pairs in
ascending exponent order joined by ';', so equal polynomials serialize
to equal strings.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

Number = Union[int, Fraction]


@dataclass(frozen=True)
class LaurentPolynomial:
    """
    Integer Laurent polynomial.

    Attributes:
        terms: (exponent, coefficient) pairs, ascending, no zero coefficients
    """

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_dict(cls, coefficients: Mapping[int, int]) -> "LaurentPolynomial":
        return cls(tuple(sorted((e, c) for e, c in coefficients.items() if c != 0)))

    @classmethod
    def constant(cls, value: int) -> "LaurentPolynomial":
        return cls.from_dict({0: value})

    @classmethod
    def monomial(cls, coefficient: int, exponent: int) -> "LaurentPolynomial":
        return cls.from_dict({exponent: coefficient})

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def min_degree(self) -> int:
        return self.terms[0][0] if self.terms else 0

    @property
    def max_degree(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    @property
    def leading_coefficient(self) -> int:
        return self.terms[-1][1] if self.terms else 0

    def __add__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        other = _coerce(other)
        result = self.as_dict()
        for e, c in other.terms:
            result[e] = result.get(e, 0) + c
        return LaurentPolynomial.from_dict(result)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> "LaurentPolynomial":
        return _coerce(other) - self

    def __mul__(self, other: "LaurentPolynomial | int") -> "LaurentPolynomial":
        other = _coerce(other)
        result: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                result[e1 + e2] = result.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial.from_dict(result)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPolynomial":
        if power < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise ValueError("only unit monomials have negative powers")
            (e, c), = self.terms
            return LaurentPolynomial.monomial(c**-power, e * power)
        result = LaurentPolynomial.constant(1)
        for _ in range(power):
            result = result * self
        return result

    def shift(self, offset: int) -> "LaurentPolynomial":
        """Multiply by the monomial x**offset."""
        return LaurentPolynomial(tuple((e + offset, c) for e, c in self.terms))

    def substitute_inverse(self) -> "LaurentPolynomial":
        """Return p(1/x)."""
        return LaurentPolynomial.from_dict({-e: c for e, c in self.terms})

    def divide_exponents(self, divisor: int) -> "LaurentPolynomial":
        """
        Replace x**e by x**(e / divisor).

        Raises:
            ValueError: If some exponent is not divisible by `divisor`.
        """
        if any(e % divisor for e, _ in self.terms):
            raise ValueError(
                f"exponents of {self.serialize()} not divisible by {divisor}"
            )
        return LaurentPolynomial.from_dict({e // divisor: c for e, c in self.terms})

    def evaluate(self, x: Number) -> Number:
        total: Number = 0
        for e, c in self.terms:
            total += c * (Fraction(x) ** e if e < 0 else x**e)
        return total

    def serialize(self) -> str:
        if not self.terms:
            return "0:0"
        return ";".join(f"{c}:{e}" for e, c in self.terms)

    @classmethod
    def parse(cls, text: str) -> "LaurentPolynomial":
        coefficients: dict[int, int] = {}
        for part in text.strip().split(";"):
            coefficient, exponent = part.split(":")
            e = int(exponent)
            coefficients[e] = coefficients.get(e, 0) + int(coefficient)
        return cls.from_dict(coefficients)

    def pretty(self, variable: str = "t") -> str:
        """Human-readable form, highest degree first."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e, c in reversed(self.terms):
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if e == 0:
                body = str(magnitude)
            else:
                power = variable if e == 1 else f"{variable}^{e}"
                body = power if magnitude == 1 else f"{magnitude}{power}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self) -> str:
        return self.pretty()


def _coerce(value: "LaurentPolynomial | int") -> LaurentPolynomial:
    if isinstance(value, LaurentPolynomial):
        return value
    return LaurentPolynomial.constant(value)


ONE = LaurentPolynomial.constant(1)
