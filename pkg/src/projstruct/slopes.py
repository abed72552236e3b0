"""Polynomials in the slope variable p = y' with 2-jet coefficients.

Everything a projective structure produces along the way — the cubic
right-hand side A + Bp + Cp^2 + Dp^3, prolongations of vector fields,
transformed equations before degree bookkeeping — is a polynomial in p
whose coefficients are germs in (x, y).  This thin wrapper keeps that
arithmetic readable.
"""

from .jets import Jet2


class SlopePoly:
    """c[0] + c[1] p + ... + c[k] p^k with Jet2 coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("need at least one coefficient")
        self.coeffs = coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coeff(self, k):
        if k < len(self.coeffs):
            return self.coeffs[k]
        return Jet2.zero(self.coeffs[0].order)

    def map(self, fn):
        return SlopePoly([fn(c) for c in self.coeffs])

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return SlopePoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return SlopePoly([self.coeff(k) - other.coeff(k) for k in range(n)])

    def __neg__(self):
        return SlopePoly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, SlopePoly):
            order = min(c.order for c in self.coeffs + other.coeffs)
            out = [Jet2.zero(order) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return SlopePoly(out)
        return self.scale(other)

    def scale(self, jet_or_scalar):
        return SlopePoly([c * jet_or_scalar for c in self.coeffs])

    def eval(self, p0):
        """Evaluate at an exact slope value (Fraction)."""
        acc = Jet2.zero(self.coeffs[0].order)
        power = 1
        for c in self.coeffs:
            acc = acc + c.scale(power)
            power = power * p0
        return acc

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def agree(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coeff(k).agree(other.coeff(k)) for k in range(n))

    def __repr__(self):
        return "SlopePoly(%r)" % (self.coeffs,)
