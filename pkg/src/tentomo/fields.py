"""Symmetric 2-D tensor fields: complex pseudovector representation and calculus.

A symmetric m-tensor on the plane has m+1 independent Cartesian components
``a_k`` (the one with k indices equal to 1, i.e. k "x" slots).  In the complex
variable ``z = x + i y`` the same tensor is carried by m+1 complex components
``A_0..A_m``; real-valued tensors satisfy ``A_k = conj(A_{m-k})``.

Storage convention used EVERYWHERE in this package: component sequences are
descending, ``[C_m, C_{m-1}, ..., C_0]``, for both the real and the complex
representation.  Helper ``asc()`` converts to ascending index order
internally; all index arithmetic below is written against ascending order and
converted at the boundaries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .poly import Poly2

__all__ = [
    "PolyField",
    "GridField",
    "real_to_complex",
    "complex_to_real",
    "pointwise_inner",
    "pointwise_norm_sq",
    "d_sym",
    "divergence",
    "eval_field",
    "sample_to_grid",
    "grid_coords",
    "inside_disc_mask",
]


def _asc(comps):
    """Descending sequence -> list in ascending component order."""
    return list(reversed(list(comps)))


def _desc(comps_asc):
    return list(reversed(list(comps_asc)))


# ---------------------------------------------------------------------------
# pointwise conversions
# ---------------------------------------------------------------------------
def real_to_complex(m: int, a):
    """Complex pseudovector ``[A_m..A_0]`` from real components ``[a_m..a_0]``.

    ``A_k = i**(m-k) / 2**m * sum_{r<=m-k, s<=k} C(m-k,r) C(k,s) (-i)**(k+r-s)
    * a_{r+s}``.  Components may be scalars, ndarrays, or any values with
    linear arithmetic (e.g. :class:`Poly2`).
    """
    if len(a) != m + 1:
        raise ValueError(f"expected {m + 1} components, got {len(a)}")
    a_asc = _asc(a)
    out_asc = []
    for k in range(m + 1):
        acc = None
        for r in range(m - k + 1):
            for s in range(k + 1):
                c = (1j**(m - k) / 2**m) * comb(m - k, r) * comb(k, s) * (-1j) ** (k + r - s)
                term = c * a_asc[r + s]
                acc = term if acc is None else acc + term
        out_asc.append(acc)
    return _desc(out_asc)


def complex_to_real(m: int, A):
    """Real components ``[a_m..a_0]`` from complex pseudovector ``[A_m..A_0]``.

    ``a_k = (-i)**(m-k) * sum_{p<=m-k, q<=k} C(m-k,p) C(k,q) (-1)**p A_{p+q}``.
    Assumes the reality condition ``A_k = conj(A_{m-k})``; imaginary residue
    is discarded.  Accepts scalars or ndarrays.
    """
    if len(A) != m + 1:
        raise ValueError(f"expected {m + 1} components, got {len(A)}")
    A_asc = _asc([np.asarray(c, dtype=complex) for c in A])
    out_asc = []
    for k in range(m + 1):
        acc = 0
        for p in range(m - k + 1):
            for q in range(k + 1):
                acc = acc + comb(m - k, p) * comb(k, q) * (-1.0) ** p * A_asc[p + q]
        val = ((-1j) ** (m - k) * acc).real
        out_asc.append(float(val) if np.ndim(val) == 0 else val)
    return _desc(out_asc)


def pointwise_inner(m: int, A, B):
    """Tensor inner product in complex components: ``2**m sum_k C(m,k) A_k B_{m-k}``.

    For two real-valued tensors this equals the full Cartesian contraction
    ``a^{i1..im} b_{i1..im}`` and is real.
    """
    if len(A) != m + 1 or len(B) != m + 1:
        raise ValueError("component count mismatch")
    A_asc, B_asc = _asc(A), _asc(B)
    acc = 0
    for k in range(m + 1):
        acc = acc + comb(m, k) * np.asarray(A_asc[k]) * np.asarray(B_asc[m - k])
    return 2**m * acc


def pointwise_norm_sq(m: int, A):
    """``pointwise_inner(m, A, A)`` reduced to its (non-negative) real part."""
    val = pointwise_inner(m, A, A)
    return np.real(val)


# ---------------------------------------------------------------------------
# polynomial fields
# ---------------------------------------------------------------------------
@dataclass
class PolyField:
    """Polynomial tensor field in complex components, descending storage.

    ``comps[s]`` holds the polynomial for ``A_{m-s}``, i.e. ``comps`` reads
    ``[A_m, ..., A_0]``.
    """

    m: int
    comps: list  # list[Poly2], length m+1

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("tensor rank must be >= 0")
        if len(self.comps) != self.m + 1:
            raise ValueError(f"rank {self.m} needs {self.m + 1} components")
        self.comps = [c if isinstance(c, Poly2) else Poly2(c) for c in self.comps]

    @property
    def degree(self) -> int:
        return max(c.degree for c in self.comps)

    @property
    def real_valued(self) -> bool:
        """Whether ``A_k == conj(A_{m-k})`` holds coefficient-by-coefficient."""
        scale = max(c.max_abs_coeff() for c in self.comps) or 1.0
        asc = _asc(self.comps)
        for k in range(self.m + 1):
            diff = asc[k] - asc[self.m - k].conj_poly()
            if diff.max_abs_coeff() > 1e-12 * scale:
                return False
        return True

    @classmethod
    def zero(cls, m: int) -> "PolyField":
        return cls(m, [Poly2.zero() for _ in range(m + 1)])


def eval_field(F: PolyField, z):
    """Complex component values ``[A_m(z), ..., A_0(z)]`` at points ``z``."""
    return [c(z) for c in F.comps]


def d_sym(V: PolyField) -> PolyField:
    """Symmetric inner differentiation: rank m-1 field -> rank m field.

    In complex components ``(dV)_k = (m-k)/m * dzbar(V_k) + k/m * dz(V_{k-1})``
    with out-of-range components read as zero.  The image fields (with zero
    boundary potential) are exactly the ones invisible to the fan-beam
    transform.
    """
    m = V.m + 1
    V_asc = _asc(V.comps)

    def vcomp(j):
        if 0 <= j < m:
            return V_asc[j]
        return Poly2.zero()

    out_asc = []
    for k in range(m + 1):
        out_asc.append(
            ((m - k) / m) * vcomp(k).dzbar() + (k / m) * vcomp(k - 1).dz()
        )
    return PolyField(m, _desc(out_asc))


def divergence(F: PolyField) -> PolyField:
    """Divergence, rank m -> rank m-1: ``(div A)_j = 2 (dz(A_j) + dzbar(A_{j+1}))``."""
    if F.m < 1:
        raise ValueError("divergence needs rank >= 1")
    A_asc = _asc(F.comps)
    out_asc = [2.0 * (A_asc[j].dz() + A_asc[j + 1].dzbar()) for j in range(F.m)]
    return PolyField(F.m - 1, _desc(out_asc))


# ---------------------------------------------------------------------------
# grid sampling
# ---------------------------------------------------------------------------
def grid_coords(nx: int, ny: int):
    """Pixel-center coordinates covering [-1, 1]^2: X, Y arrays of shape (ny, nx)."""
    x = -1.0 + (2.0 * np.arange(nx) + 1.0) / nx
    y = -1.0 + (2.0 * np.arange(ny) + 1.0) / ny
    return np.meshgrid(x, y)


def inside_disc_mask(nx: int, ny: int):
    X, Y = grid_coords(nx, ny)
    return X * X + Y * Y <= 1.0


@dataclass
class GridField:
    """Tensor field sampled at pixel centers of a regular grid on [-1, 1]^2.

    ``data`` has shape (m+1, ny, nx); ``data[s]`` samples the real Cartesian
    component ``a_{m-s}`` (descending storage, same as :class:`PolyField`).
    Samples at pixel centers outside the unit disc are zero by construction.
    """

    m: int
    data: np.ndarray

    def __post_init__(self):
        self.data = np.ascontiguousarray(self.data, dtype=float)
        if self.data.ndim != 3 or self.data.shape[0] != self.m + 1:
            raise ValueError(f"data must have shape ({self.m + 1}, ny, nx)")

    @property
    def ny(self) -> int:
        return self.data.shape[1]

    @property
    def nx(self) -> int:
        return self.data.shape[2]


def sample_to_grid(F: PolyField, nx: int, ny: int) -> GridField:
    """Sample a real-valued PolyField to Cartesian components on the pixel grid."""
    if not F.real_valued:
        raise ValueError("sample_to_grid requires a real-valued field")
    X, Y = grid_coords(nx, ny)
    Z = X + 1j * Y
    comps = eval_field(F, Z)
    cart = complex_to_real(F.m, comps)
    mask = inside_disc_mask(nx, ny)
    data = np.stack([np.where(mask, c, 0.0) for c in cart])
    return GridField(F.m, data)
