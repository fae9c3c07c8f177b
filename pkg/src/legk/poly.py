"""Sparse one-variable Laurent polynomials with integer coefficients."""

from __future__ import annotations

from fractions import Fraction


class LaurentPolynomial:
    """Immutable Laurent polynomial stored as {exponent: coefficient}.

    Zero coefficients are trimmed on construction, so two polynomials are
    equal iff their trimmed coefficient maps and variable names agree.
    """

    __slots__ = ("_coeffs", "var", "_key")

    def __init__(self, coeffs=None, var="t"):
        items = dict(coeffs or {})
        self._coeffs = {int(k): int(v) for k, v in items.items() if v != 0}
        self.var = var
        self._key = (var, tuple(sorted(self._coeffs.items())))

    @classmethod
    def monomial(cls, exponent, coefficient=1, var="t"):
        return cls({exponent: coefficient}, var=var)

    @classmethod
    def zero(cls, var="t"):
        return cls({}, var=var)

    def coefficients(self):
        """Coefficient map as a plain dict, exponents ascending."""
        return {k: self._coeffs[k] for k in sorted(self._coeffs)}

    def coefficient(self, exponent):
        return self._coeffs.get(exponent, 0)

    __getitem__ = coefficient

    def is_zero(self):
        return not self._coeffs

    @property
    def degree(self):
        """Largest exponent with nonzero coefficient (None when zero)."""
        return max(self._coeffs) if self._coeffs else None

    @property
    def valuation(self):
        return min(self._coeffs) if self._coeffs else None

    @property
    def leading_coefficient(self):
        return self._coeffs[max(self._coeffs)] if self._coeffs else 0

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentPolynomial(out, var=self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) - v
        return LaurentPolynomial(out, var=self.var)

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPolynomial(out, var=self.var)

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, int):
            return LaurentPolynomial({0: other}, var=self.var)
        raise TypeError(f"cannot combine LaurentPolynomial with {type(other)!r}")

    def __call__(self, x):
        """Evaluate at x; exact for integer/rational x (negative exponents included)."""
        total = Fraction(0)
        for k, c in self._coeffs.items():
            total += c * Fraction(x) ** k
        return int(total) if total.denominator == 1 else total

    def to_json_dict(self):
        """JSON form: exponent (as string) -> coefficient, exponents ascending."""
        return {str(k): v for k, v in sorted(self._coeffs.items())}

    @classmethod
    def from_json_dict(cls, data, var="t"):
        return cls({int(k): v for k, v in data.items()}, var=var)

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for k in sorted(self._coeffs):
            c = self._coeffs[k]
            if k == 0:
                term = str(abs(c))
            else:
                power = self.var if k == 1 else f"{self.var}^{k}"
                term = power if abs(c) == 1 else f"{abs(c)}{power}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPolynomial({self._coeffs!r}, var={self.var!r})"
