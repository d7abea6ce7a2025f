"""Closed-form and raster test fields.

The vector phantoms are the classic pair for exercising solenoidal-only
reconstruction: ``solenoidal_vector`` is divergence-free (it is the rotated
gradient of the stream function ``x*sin(x^2+y^2) + y*cos(6xy)``), and
``mixed_vector`` adds the gradient of ``sin(pi*(x^2+y^2))``, a potential that
vanishes on the boundary circle and is therefore invisible to the fan-beam
transform.  ``vortex_vector`` is a smoother divergence-free field whose
expansion decays fast enough to survive very sparse chord sets.
"""
from __future__ import annotations

import numpy as np

from .fields import GridField, grid_coords, inside_disc_mask

__all__ = [
    "solenoidal_vector_xy",
    "potential_gradient_xy",
    "mixed_vector_xy",
    "vortex_vector_xy",
    "solenoidal_vector",
    "mixed_vector",
    "vortex_vector",
    "synthetic_scalar",
    "grid_from_xy",
]


def solenoidal_vector_xy(x, y):
    """Cartesian components (a1, a2) of the divergence-free vector phantom."""
    r2 = x * x + y * y
    a1 = 2.0 * x * y * np.cos(r2) + np.cos(6.0 * x * y) - 6.0 * x * y * np.sin(6.0 * x * y)
    a2 = -np.sin(r2) - 2.0 * x * x * np.cos(r2) + 6.0 * y * y * np.sin(6.0 * x * y)
    return a1, a2


def potential_gradient_xy(x, y):
    """Gradient of ``sin(pi*(x^2+y^2))``; the potential vanishes at r = 1."""
    r2 = x * x + y * y
    g = 2.0 * np.pi * np.cos(np.pi * r2)
    return g * x, g * y


def mixed_vector_xy(x, y):
    """Solenoidal phantom plus the boundary-vanishing potential gradient."""
    a1, a2 = solenoidal_vector_xy(x, y)
    g1, g2 = potential_gradient_xy(x, y)
    return a1 + g1, a2 + g2


def vortex_vector_xy(x, y):
    """A gentler divergence-free field (stream function
    ``sin(0.8*(x+y)) + 0.4*x*y*(1-x^2-y^2)``).

    Its expansion over the disc decays fast -- degrees above 8 carry less
    than 1e-4 of the energy -- so it stays recoverable from very sparse
    sets of chords where the oscillatory ``solenoidal_vector`` does not.
    """
    c = 0.8 * np.cos(0.8 * (x + y))
    a1 = c + 0.4 * x * (1.0 - x * x - 3.0 * y * y)
    a2 = -c - 0.4 * y * (1.0 - 3.0 * x * x - y * y)
    return a1, a2


def grid_from_xy(m: int, comps_fn, nx: int, ny: int) -> GridField:
    """Sample Cartesian component functions (descending order) to a GridField."""
    X, Y = grid_coords(nx, ny)
    comps = comps_fn(X, Y)
    if len(comps) != m + 1:
        raise ValueError(f"component function returned {len(comps)} arrays for rank {m}")
    mask = inside_disc_mask(nx, ny)
    data = np.stack([np.where(mask, np.asarray(comp, dtype=float), 0.0) for comp in comps])
    return GridField(m, data)


def solenoidal_vector(nx: int, ny: int) -> GridField:
    return grid_from_xy(1, solenoidal_vector_xy, nx, ny)


def mixed_vector(nx: int, ny: int) -> GridField:
    return grid_from_xy(1, mixed_vector_xy, nx, ny)


def vortex_vector(nx: int, ny: int) -> GridField:
    return grid_from_xy(1, vortex_vector_xy, nx, ny)


# Ellipses as (cx, cy, half-axis-x, half-axis-y, rotation in radians, value);
# values add where ellipses overlap.  Discontinuous on purpose: plenty of
# high-degree content for truncation experiments.
_ELLIPSES = (
    (0.00, 0.00, 0.78, 0.90, 0.0, 1.0),
    (0.00, 0.25, 0.45, 0.28, 0.3, -0.4),
    (-0.32, -0.30, 0.20, 0.30, -0.5, 0.6),
    (0.35, -0.28, 0.16, 0.16, 0.0, -0.8),
    (0.05, -0.05, 0.08, 0.11, 0.0, 0.9),
)


def synthetic_scalar(nx: int, ny: int) -> GridField:
    """Piecewise-constant scalar raster: overlapping ellipse indicators."""
    X, Y = grid_coords(nx, ny)
    vals = np.zeros_like(X)
    for cx, cy, ax, ay, rot, value in _ELLIPSES:
        c, s = np.cos(rot), np.sin(rot)
        u = (X - cx) * c + (Y - cy) * s
        v = -(X - cx) * s + (Y - cy) * c
        vals += np.where((u / ax) ** 2 + (v / ay) ** 2 <= 1.0, value, 0.0)
    mask = inside_disc_mask(nx, ny)
    return GridField(0, np.where(mask, vals, 0.0)[None, :, :])
