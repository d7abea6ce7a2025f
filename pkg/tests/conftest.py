"""Shared reference machinery for the test suite.

Everything here is deliberately independent of the package's own forward
models: chords are integrated with plain Gauss-Legendre quadrature and the
directional contraction is written out in Cartesian components, so agreement
with the package is a genuine cross-check rather than a tautology.
"""
from math import comb

import numpy as np

from tentomo import Poly2, PolyField, complex_to_real, eval_field, real_to_complex


def chord_gauss(beta, phi, nodes=200):
    """Gauss-Legendre points/weights along the chord (beta, phi).

    The chord starts at -exp(1j*(2*phi - beta)), runs in direction
    exp(1j*phi) and has length 2*cos(beta - phi); empty arrays are returned
    when there is no chord.
    """
    L = 2.0 * np.cos(beta - phi)
    if L <= 0.0:
        return np.empty(0, dtype=complex), np.empty(0)
    x, w = np.polynomial.legendre.leggauss(nodes)
    t = 0.5 * L * (x + 1.0)
    tau = -np.exp(1j * (2.0 * phi - beta))
    return tau + t * np.exp(1j * phi), 0.5 * L * w


def directional_weights(m, phi):
    """Contraction weights for descending Cartesian components.

    Pairing a rank-m tensor with the direction (cos phi, sin phi) in every
    slot gives sum_s C(m, m-s) cos^(m-s) sin^s times component a_{m-s}.
    """
    return [comb(m, m - s) * np.cos(phi) ** (m - s) * np.sin(phi) ** s
            for s in range(m + 1)]


def reference_transform(m, cart_xy, beta, phi, nodes=200):
    """Fan-beam value of one chord by direct quadrature.

    ``cart_xy(x, y)`` must return the m+1 Cartesian components in descending
    order, vectorized over point arrays.
    """
    z, w = chord_gauss(beta, phi, nodes)
    if z.size == 0:
        return 0.0
    comps = cart_xy(z.real, z.imag)
    cw = directional_weights(m, phi)
    total = 0.0
    for cwi, ci in zip(cw, comps):
        total = total + cwi * np.asarray(ci)
    return float(np.sum(w * total).real)


def polyfield_cart(F: PolyField):
    """Wrap a real-valued PolyField as a Cartesian component callable."""
    def cart(x, y):
        return complex_to_real(F.m, eval_field(F, x + 1j * y))
    return cart


def proper_angles(rng, count, margin=0.15):
    """Random (beta, phi) pairs whose rays are genuine chords."""
    beta = rng.uniform(0.0, 2.0 * np.pi, count)
    phi = beta + rng.uniform(-np.pi / 2 + margin, np.pi / 2 - margin, count)
    return beta, phi


def pole_safe_angles(rng, count, margin=0.3, pole_margin=0.3):
    """Chord angle pairs whose endpoints stay away from (+-1, 0) and (0, +-1).

    Bilinear interpolation on a pixel grid covering [-1, 1]^2 has no valid
    cell beyond the outermost pixel centers; chords ending near the four
    axis points leave that hull.  Keeping both endpoint angles at least
    ``pole_margin`` away from every multiple of pi/2 keeps every chord point
    strictly inside the interpolable region.
    """
    betas, phis = [], []
    while len(betas) < count:
        b, p = proper_angles(rng, 1, margin)
        ends = np.array([b[0], 2.0 * p[0] - b[0] + np.pi])
        dist = np.abs((ends + np.pi / 4) % (np.pi / 2) - np.pi / 4)
        if np.min(dist) > pole_margin:
            betas.append(b[0])
            phis.append(p[0])
    return np.array(betas), np.array(phis)


def random_real_scalar_poly(rng, degree, scale=1.0):
    """Random real-valued Poly2 of total degree <= degree."""
    coeffs = {}
    for p in range(degree + 1):
        for q in range(degree - p + 1):
            g = scale * complex(rng.normal(), rng.normal())
            coeffs[(p, q)] = coeffs.get((p, q), 0.0) + 0.5 * g
            coeffs[(q, p)] = coeffs.get((q, p), 0.0) + 0.5 * np.conj(g)
    return Poly2(coeffs)


def random_real_polyfield(rng, m, degree):
    """Random real-valued rank-m PolyField with polynomial components."""
    carts = [random_real_scalar_poly(rng, degree) for _ in range(m + 1)]
    return PolyField(m, real_to_complex(m, carts))
