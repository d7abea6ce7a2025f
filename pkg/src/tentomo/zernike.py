"""Disc polynomials in complex form and their closed-form fan-beam transform.

The family ``Z[n, k]`` (degree n, index k = 0..n) is orthogonal over the unit
disc with the normalized area measure and restricts to ``(-1)**k t**(n-2k)``
on the boundary circle.  Its fan-beam transform along chords of the disc has
an elementary closed form, which is what makes the whole SVD machinery here
explicit.

Conventions
-----------
* ``jacobi`` evaluates classical Jacobi polynomials by the standard
  three-term recurrence in the degree.
* ``zernike_eval(n, k, z)`` evaluates through the radial representation
  ``(-1)**k * z**(n-2k) * P_k^{(0, n-2k)}(2|z|^2 - 1)`` for ``2k <= n`` and
  through the reflection identity ``Z[n, n-k] = (-1)**n conj(Z[n, k])``
  otherwise.  Out-of-range k (k < 0 or k > n) evaluates to 0, which keeps
  index-shifted sums over tensor components free of special cases.
* Chord/fan-beam angles: the vertex sits at ``exp(1j*beta)`` on the boundary
  and the chord leaves it in direction ``exp(1j*phi)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poly import Poly2

__all__ = [
    "jacobi",
    "jacobi_sequence",
    "zernike_eval",
    "zernike_poly",
    "zernike_boundary",
    "zernike_inner",
    "fanbeam_zernike",
    "QuadratureSpec",
    "disc_quadrature",
]


def jacobi(k: int, a: int, b: int, s):
    """Evaluate the Jacobi polynomial ``P_k^{(a, b)}`` at ``s``.

    Parameters
    ----------
    k : int
        Degree, >= 0.
    a, b : int
        Jacobi exponents; here always small non-negative integers.
    s : float or ndarray
        Evaluation points.

    Returns
    -------
    float or ndarray matching the shape of ``s``.
    """
    if k < 0:
        raise ValueError("jacobi degree must be >= 0")
    return jacobi_sequence(k, a, b, s)[-1]


def jacobi_sequence(kmax: int, a: int, b: int, s):
    """All Jacobi values ``P_j^{(a, b)}(s)`` for j = 0..kmax, stacked.

    One shared recurrence pass over the degree; used directly when a whole
    column of radial values is needed on a grid.
    """
    s = np.asarray(s, dtype=float)
    scalar = s.ndim == 0
    s = np.atleast_1d(s)
    out = np.empty((kmax + 1,) + s.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = 0.5 * (a - b + (a + b + 2) * s)
    for j in range(2, kmax + 1):
        c = 2 * j + a + b
        a1 = 2 * j * (j + a + b) * (c - 2)
        a2 = (c - 1) * (a * a - b * b)
        a3 = (c - 1) * c * (c - 2)
        a4 = 2 * (j + a - 1) * (j + b - 1) * c
        out[j] = ((a2 + a3 * s) * out[j - 1] - a4 * out[j - 2]) / a1
    if scalar:
        return out[:, 0]
    return out


def zernike_eval(n: int, k: int, z):
    """Evaluate the disc polynomial ``Z[n, k]`` at complex points ``z``.

    Returns 0 for k outside 0..n.  Exact (to roundoff) for every point of the
    complex plane, although only the closed unit disc is meaningful here.
    """
    z = np.asarray(z, dtype=complex)
    if k < 0 or k > n:
        out = np.zeros_like(z)
        return complex(out) if out.ndim == 0 else out
    ell = n - 2 * k
    r2 = (z * np.conj(z)).real
    rad = jacobi(min(k, n - k), 0, abs(ell), 2.0 * r2 - 1.0)
    ang = z**ell if ell >= 0 else np.conj(z) ** (-ell)
    out = (-1.0) ** k * ang * rad
    return complex(out) if out.ndim == 0 else out


def zernike_poly(n: int, k: int) -> Poly2:
    """Exact monomial form of ``Z[n, k]`` as a :class:`Poly2`.

    For ``2k <= n`` the coefficient of ``z^(n-k-s) * conj(z)^(k-s)`` is
    ``(-1)^(k-s) * C(n-k, s) * C(n-s, k-s)``; larger k go through the
    reflection identity.  Out-of-range k gives the zero polynomial.
    """
    from math import comb

    if k < 0 or k > n:
        return Poly2.zero()
    if 2 * k > n:
        return (-1.0) ** n * zernike_poly(n, n - k).conj_poly()
    coeffs = {}
    for s in range(k + 1):
        coeffs[(n - k - s, k - s)] = (-1.0) ** (k - s) * comb(n - k, s) * comb(n - s, k - s)
    return Poly2(coeffs)


def zernike_boundary(n: int, k: int, t):
    """Boundary values ``(-1)**k t**(n-2k)`` for ``|t| = 1``.

    Raises if any point is farther than 1e-12 from the unit circle.
    """
    t = np.asarray(t, dtype=complex)
    if np.any(np.abs(np.abs(t) - 1.0) > 1e-12):
        raise ValueError("boundary evaluation requires |t| = 1")
    ell = n - 2 * k
    ang = t**ell if ell >= 0 else np.conj(t) ** (-ell)
    out = (-1.0) ** k * ang
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor quadrature on the unit disc: Gauss-Legendre in r^2, uniform in angle.

    ``n_radial`` Gauss points in u = r^2 over [0, 1] integrate radial
    polynomials of degree <= 2*n_radial - 1 in u exactly; ``n_angular``
    equispaced angle samples integrate trigonometric polynomials of degree
    < n_angular exactly.  ``for_degree(d)`` returns a spec that is exact for
    any integrand of combined polynomial degree <= d in (z, conj z).
    """

    n_radial: int
    n_angular: int

    def __post_init__(self):
        if self.n_radial < 1 or self.n_angular < 1:
            raise ValueError("quadrature needs at least one node per axis")

    @classmethod
    def for_degree(cls, degree: int) -> "QuadratureSpec":
        degree = max(degree, 0)
        return cls(n_radial=degree + 2, n_angular=2 * degree + 4)


def disc_quadrature(spec: QuadratureSpec):
    """Nodes and weights with ``sum(w * f(z))`` approximating the disc integral of f.

    Returns complex nodes ``z`` and real weights ``w`` as flat arrays.
    """
    u, wu = np.polynomial.legendre.leggauss(spec.n_radial)
    u = 0.5 * (u + 1.0)  # map [-1,1] -> [0,1]
    wu = 0.5 * wu
    psi = 2.0 * np.pi * np.arange(spec.n_angular) / spec.n_angular
    wpsi = 2.0 * np.pi / spec.n_angular
    r = np.sqrt(u)
    z = (r[:, None] * np.exp(1j * psi)[None, :]).ravel()
    w = (0.5 * wu[:, None] * np.full(spec.n_angular, wpsi)[None, :]).ravel()
    return z, w


def zernike_inner(idx1, idx2, quad: QuadratureSpec) -> complex:
    """Disc inner product ``<<Z[idx1], Z[idx2]>>`` by quadrature.

    ``idx1``/``idx2`` are (n, k) pairs.  The quadrature must resolve the
    combined degree: ``n_radial >= n1 + n2 + 2`` and
    ``n_angular >= n1 + n2 + 1`` (both comfortably sufficient), otherwise a
    ValueError is raised.
    """
    n1, k1 = idx1
    n2, k2 = idx2
    need_rad = n1 + n2 + 2
    need_ang = n1 + n2 + 1
    if quad.n_radial < need_rad or quad.n_angular < need_ang:
        raise ValueError(
            f"quadrature {quad} under-resolves combined degree {n1 + n2}: "
            f"needs n_radial >= {need_rad}, n_angular >= {need_ang}"
        )
    z, w = disc_quadrature(quad)
    vals = zernike_eval(n1, k1, z) * np.conj(zernike_eval(n2, k2, z))
    return complex(np.sum(w * vals))


def fanbeam_zernike(n: int, k: int, beta, phi):
    """Closed-form fan-beam transform of ``Z[n, k]`` at vertex/direction angles.

    For even n the value is ``2/(n+1) * exp(1j*(n-2k)*phi) * cos((n+1)*(beta-phi))``,
    for odd n the cosine is replaced by ``1j*sin``.  The formula is valid for
    every angle pair: for chords it is the line integral, and beyond
    ``|beta - phi| > pi/2`` it continues smoothly into the odd/even extension
    ``f(beta, phi + pi) = -f(beta, phi)`` of the scalar transform.
    Out-of-range k gives 0.
    """
    beta = np.asarray(beta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if k < 0 or k > n:
        out = np.zeros(np.broadcast(beta, phi).shape, dtype=complex)
        return complex(out) if out.ndim == 0 else out
    pref = 2.0 / (n + 1) * np.exp(1j * (n - 2 * k) * phi)
    if n % 2 == 0:
        out = pref * np.cos((n + 1) * (beta - phi))
    else:
        out = pref * 1j * np.sin((n + 1) * (beta - phi))
    return complex(out) if out.ndim == 0 else out
