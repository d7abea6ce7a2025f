"""Orthogonal basis of divergence-free (solenoidal) polynomial tensor fields.

Each basis element is indexed by ``BasisIndex(sign, m, n, k)``: tensor rank m,
polynomial degree n, offset k in 0..(n+m)//2, and a sign picking the "real"
(+1) or "imaginary" (-1) combination of disc polynomials.  The fan-beam
transform maps every (normalized) basis field to an explicit product of
cosines/sines on the angle torus -- the singular value decomposition used by
the inversion routines.

Degenerate indices (``2k == m + n`` with the parity that kills the
combination) correspond to the zero field; they are skipped by
:func:`enumerate_basis` and rejected by :func:`basis_norm`.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, pi, sqrt

import numpy as np

from .fields import PolyField
from .zernike import zernike_poly

__all__ = [
    "BasisIndex",
    "binomial_window_sum",
    "singular_value",
    "basis_field",
    "basis_norm",
    "singular_function",
    "subspace_dim",
    "enumerate_basis",
]


@dataclass(frozen=True)
class BasisIndex:
    """Index of one solenoidal basis field; hashable, validated on creation."""

    sign: int
    m: int
    n: int
    k: int

    def __post_init__(self):
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.m < 0 or self.n < 0:
            raise ValueError("rank and degree must be >= 0")
        if not 0 <= self.k <= (self.n + self.m) // 2:
            raise ValueError(
                f"k={self.k} outside 0..{(self.n + self.m) // 2} for (m={self.m}, n={self.n})"
            )

    @property
    def degenerate(self) -> bool:
        """True when the index labels the identically-zero combination."""
        if 2 * self.k != self.m + self.n:
            return False
        odd = self.n % 2 == 1
        return (self.sign == +1 and odd) or (self.sign == -1 and not odd)


def binomial_window_sum(m: int, n: int, k: int) -> int:
    """``sum of C(m, p) for p in [max(0, k-n), min(k, m)]`` (>= 1 for valid indices).

    This windowed binomial sum is the squared-norm multiplicity shared by the
    basis norms and the singular values.
    """
    return sum(comb(m, p) for p in range(max(0, k - n), min(k, m) + 1))


def singular_value(idx: BasisIndex) -> float:
    """Singular value of the fan-beam transform at this index (sign-independent)."""
    a = binomial_window_sum(idx.m, idx.n, idx.k)
    return sqrt(8.0 * pi * a / ((idx.n + 1) * 2**idx.m))


def basis_field(idx: BasisIndex) -> PolyField:
    """The (unnormalized) solenoidal basis field as a :class:`PolyField`.

    Component ``A_{m-s}`` combines ``Z[n, k-s]`` with the conjugate of
    ``Z[n, k-m+s]`` (out-of-range indices contribute zero); the whole field is
    halved when ``2k == m + n``.  Degenerate indices yield the zero field.
    """
    m, n, k = idx.m, idx.n, idx.k
    comps = []
    for s in range(m + 1):
        t1 = zernike_poly(n, k - s)
        t2 = zernike_poly(n, k - m + s).conj_poly()
        if idx.sign == +1:
            c = (-1.0) ** n * (t1 + t2)
        else:
            c = -1j * (t1 - t2)
        if 2 * k == m + n:
            c = 0.5 * c
        comps.append(c)
    return PolyField(m, comps)


def basis_norm(idx: BasisIndex) -> float:
    """L2(disc) norm of :func:`basis_field`; rejects degenerate (zero) indices."""
    if idx.degenerate:
        raise ValueError(f"{idx} is degenerate (zero field has no basis norm)")
    a = binomial_window_sum(idx.m, idx.n, idx.k)
    if 2 * idx.k == idx.m + idx.n:
        return sqrt(2.0**idx.m * pi * a / (idx.n + 1))
    return sqrt(2.0 ** (idx.m + 1) * pi * a / (idx.n + 1))


def singular_function(idx: BasisIndex, beta, phi):
    """Normalized data-space singular function evaluated at angles (beta, phi).

    Products of ``cos/sin((n+1)(beta-phi))`` with ``cos/sin((n-2k+m) phi)``
    over 1/pi (or 1/(sqrt(2) pi) when ``2k == m + n``); which trigonometric
    pair appears depends on the sign and the parity of n.  Vectorized over
    ``beta``/``phi``.  Degenerate indices evaluate to 0 automatically.
    """
    beta = np.asarray(beta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    c1 = (idx.n + 1) * (beta - phi)
    c2 = (idx.n - 2 * idx.k + idx.m) * phi
    even = idx.n % 2 == 0
    if idx.sign == +1:
        val = np.cos(c1) * np.cos(c2) if even else np.sin(c1) * np.sin(c2)
    else:
        val = np.cos(c1) * np.sin(c2) if even else np.sin(c1) * np.cos(c2)
    if 2 * idx.k == idx.m + idx.n:
        out = val / (sqrt(2.0) * pi)
    else:
        out = val / pi
    return float(out) if out.ndim == 0 else out


def subspace_dim(m: int, n_max: int) -> int:
    """Dimension of the degree <= n_max solenoidal subspace: (N+1)(N+2+2m)/2."""
    if m < 0 or n_max < 0:
        raise ValueError("rank and degree bound must be >= 0")
    return (n_max + 1) * (n_max + 2 + 2 * m) // 2


def enumerate_basis(m: int, n_max: int) -> list[BasisIndex]:
    """Canonical enumeration: n ascending, k ascending, +1 before -1, no degenerates.

    The length always equals ``subspace_dim(m, n_max)``.
    """
    out = []
    for n in range(n_max + 1):
        for k in range((n + m) // 2 + 1):
            for sign in (+1, -1):
                idx = BasisIndex(sign, m, n, k)
                if not idx.degenerate:
                    out.append(idx)
    return out
