"""Polynomials in the complex variable z and its conjugate.

A ``Poly2`` is a finite sum ``sum c[p,q] * z**p * conj(z)**q`` stored sparsely
as a mapping ``(p, q) -> complex``.  All the disc-basis machinery is built on
top of this: monomial coefficients of the disc polynomials are (sums of
products of) small integers, so the ring operations below are exact in double
precision for every degree used in practice.
"""
from __future__ import annotations

import numbers

import numpy as np

__all__ = ["Poly2"]


class Poly2:
    """Sparse polynomial in ``z`` and ``conj(z)`` with complex coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for (p, q), c in coeffs.items():
                if p < 0 or q < 0:
                    raise ValueError(f"negative exponent in monomial ({p}, {q})")
                c = complex(c)
                if c != 0:
                    self.coeffs[(int(p), int(q))] = c

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls) -> "Poly2":
        return cls()

    @classmethod
    def one(cls) -> "Poly2":
        return cls({(0, 0): 1.0})

    @classmethod
    def monomial(cls, p: int, q: int, c=1.0) -> "Poly2":
        """The single term ``c * z**p * conj(z)**q``."""
        return cls({(p, q): c})

    # -- structure ---------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Total degree in (z, conj z); -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(p + q for p, q in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly2):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def max_abs_coeff(self) -> float:
        return max((abs(c) for c in self.coeffs.values()), default=0.0)

    # -- ring operations ---------------------------------------------------
    def __add__(self, other: "Poly2") -> "Poly2":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0.0) + c
        return Poly2(out)

    def __sub__(self, other: "Poly2") -> "Poly2":
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0.0) - c
        return Poly2(out)

    def __neg__(self) -> "Poly2":
        return Poly2({key: -c for key, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, Poly2):
            out: dict = {}
            for (p1, q1), c1 in self.coeffs.items():
                for (p2, q2), c2 in other.coeffs.items():
                    key = (p1 + p2, q1 + q2)
                    out[key] = out.get(key, 0.0) + c1 * c2
            return Poly2(out)
        if isinstance(other, numbers.Number):
            return Poly2({key: c * other for key, c in self.coeffs.items()})
        return NotImplemented

    __rmul__ = __mul__

    # -- calculus ----------------------------------------------------------
    def dz(self) -> "Poly2":
        """Wirtinger derivative with respect to z."""
        return Poly2({(p - 1, q): p * c for (p, q), c in self.coeffs.items() if p > 0})

    def dzbar(self) -> "Poly2":
        """Wirtinger derivative with respect to conj(z)."""
        return Poly2({(p, q - 1): q * c for (p, q), c in self.coeffs.items() if q > 0})

    def conj_poly(self) -> "Poly2":
        """The polynomial whose value is ``conj(self(z))`` for every z."""
        return Poly2({(q, p): np.conj(c) for (p, q), c in self.coeffs.items()})

    # -- evaluation --------------------------------------------------------
    def __call__(self, z):
        """Evaluate at a complex scalar or ndarray of points."""
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        out = np.zeros_like(z)
        for (p, q), c in self.coeffs.items():
            out = out + c * z**p * zb**q
        if out.ndim == 0:
            return complex(out)
        return out

    def __repr__(self):
        if not self.coeffs:
            return "Poly2(0)"
        terms = [
            f"({c:.6g})*z^{p}*zb^{q}"
            for (p, q), c in sorted(self.coeffs.items())
        ]
        return "Poly2(" + " + ".join(terms) + ")"
