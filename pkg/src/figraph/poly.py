"""Exact univariate polynomials with rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class Polynomial:
    """Coefficients stored low degree first, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (m - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (m - len(other.coeffs))
        return Polynomial(x + y for x, y in zip(a, b))

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def format(self, var: str = "n") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for power in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if power == 0:
                body = str(mag)
            else:
                mono = var if power == 1 else f"{var}^{power}"
                if mag == 1:
                    body = mono
                elif mag.denominator == 1:
                    body = f"{mag.numerator}*{mono}"
                else:
                    body = f"{mag.numerator}*{mono}/{mag.denominator}" if mag.numerator != 1 \
                        else f"{mono}/{mag.denominator}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = format

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def interpolate(xs: Sequence[int], ys: Sequence) -> Polynomial:
    """Lagrange interpolation through the given points, exact over Q."""
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    result = Polynomial()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = Polynomial([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Polynomial([-xj, 1])
                denom *= xi - xj
        result = result + basis * Polynomial([Fraction(yi) / denom])
    return result
