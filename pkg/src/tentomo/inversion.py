"""Coefficient recovery and reconstruction on the solenoidal SVD basis.

All routines here speak one coefficient convention: an entry ``c[idx]`` of a
:class:`CoefficientSet` multiplies the *unit-normalized* basis field
``basis_field(idx) / basis_norm(idx)``.  With that convention the forward
transform of the field is exactly ``sum_idx c[idx] * sigma[idx] * f_idx`` with
``f_idx`` the data-space singular functions, and the three inversion routes
(explicit sums for scalar regular scans, data-space projections, least
squares) all estimate the same numbers.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from math import floor, pi, sqrt

import numpy as np
import scipy.linalg

from .basis import (
    BasisIndex,
    basis_field,
    basis_norm,
    enumerate_basis,
    singular_function,
    singular_value,
    subspace_dim,
)
from .fields import GridField, complex_to_real, grid_coords, inside_disc_mask
from .forward import IrregularScan, RegularScan, Sinogram

logger = logging.getLogger(__name__)

__all__ = [
    "CoefficientSet",
    "MaxTerms",
    "Threshold",
    "RankDeficiencyError",
    "predict_sinogram",
    "invert_scalar_regular",
    "invert_projection",
    "invert_lsq",
    "truncate",
    "reconstruct_grid",
    "relative_error",
]


@dataclass
class CoefficientSet:
    """Real coefficients on the canonical basis enumeration for (m, n_max)."""

    m: int
    n_max: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        dim = subspace_dim(self.m, self.n_max)
        if self.values.shape != (dim,):
            raise ValueError(
                f"need {dim} values for (m={self.m}, n_max={self.n_max}), "
                f"got shape {self.values.shape}"
            )

    @property
    def indices(self) -> list[BasisIndex]:
        return enumerate_basis(self.m, self.n_max)

    @classmethod
    def zeros(cls, m: int, n_max: int) -> "CoefficientSet":
        return cls(m, n_max, np.zeros(subspace_dim(m, n_max)))

    @classmethod
    def from_dict(cls, m: int, n_max: int, entries: dict) -> "CoefficientSet":
        out = cls.zeros(m, n_max)
        pos = {idx: i for i, idx in enumerate(out.indices)}
        for idx, val in entries.items():
            if idx not in pos:
                raise KeyError(f"{idx} is not in the (m={m}, n_max={n_max}) enumeration")
            out.values[pos[idx]] = val
        return out

    def as_dict(self) -> dict:
        return dict(zip(self.indices, self.values))

    def get(self, idx: BasisIndex) -> float:
        pos = {i: j for j, i in enumerate(self.indices)}
        return float(self.values[pos[idx]])


def predict_sinogram(c: CoefficientSet, geometry) -> Sinogram:
    """Closed-form sinogram ``sum c * sigma * f_idx`` on the geometry's rays."""
    betas, phis = geometry.ray_angles()
    vals = np.zeros_like(betas)
    for i, idx in enumerate(c.indices):
        ci = c.values[i]
        if ci == 0.0:
            continue
        vals += ci * singular_value(idx) * singular_function(idx, betas, phis)
    return Sinogram(geometry, c.m, vals.reshape(geometry.shape))


# ---------------------------------------------------------------------------
# scalar explicit inversion (regular scans)
# ---------------------------------------------------------------------------
def _raw_scalar_sums_direct(f: np.ndarray, n_max: int):
    """Double sums ``sum f * sin/cos(eps*(p*(2k-n) + q/2*(2k+1)))`` for all (n, k)."""
    P = f.shape[0]
    eps = 2.0 * pi / P
    p = np.arange(P)[:, None] * np.ones(P)[None, :]
    q = np.ones(P)[:, None] * np.arange(P)[None, :]
    sin_sums = {}
    cos_sums = {}
    for n in range(n_max + 1):
        for k in range(n // 2 + 1):
            arg = eps * (p * (2 * k - n) + q / 2.0 * (2 * k + 1))
            sin_sums[(n, k)] = float(np.sum(f * np.sin(arg)))
            cos_sums[(n, k)] = float(np.sum(f * np.cos(arg)))
    return sin_sums, cos_sums


def _raw_scalar_sums_fft(f: np.ndarray, n_max: int):
    """Same sums through one zero-padded 2-D FFT (O(M^2 log M))."""
    P = f.shape[0]
    g = np.zeros((P, 2 * P))
    g[:, :P] = f
    # sum_{p,q} f e^{2i pi (p*u/P + q*v/(2P))} for u = (2k-n) mod P, v = 2k+1
    H = P * 2 * P * np.fft.ifft2(g)
    sin_sums = {}
    cos_sums = {}
    for n in range(n_max + 1):
        for k in range(n // 2 + 1):
            val = H[(2 * k - n) % P, 2 * k + 1]
            sin_sums[(n, k)] = float(val.imag)
            cos_sums[(n, k)] = float(val.real)
    return sin_sums, cos_sums


def invert_scalar_regular(s: Sinogram, n_max: int, method: str = "direct") -> CoefficientSet:
    """Scalar-field coefficients from a regular scan by the explicit sums.

    Implements the closed-form double sums (``method="direct"``) or their FFT
    evaluation (``method="fft"``); the two agree to roundoff.  Exact recovery
    of degree <= n_max polynomials holds on the matched geometry M = n_max;
    n_max > M is rejected.  The raw sums are rescaled into the orthonormal
    coefficient convention of :class:`CoefficientSet`.
    """
    if s.m != 0:
        raise ValueError("explicit inversion applies to scalar (m=0) data")
    if not isinstance(s.geometry, RegularScan):
        raise ValueError("explicit inversion needs a regular scan geometry")
    if n_max > s.geometry.M:
        raise ValueError(f"n_max={n_max} exceeds geometry M={s.geometry.M}")
    if method == "direct":
        sin_sums, cos_sums = _raw_scalar_sums_direct(s.values, n_max)
    elif method == "fft":
        sin_sums, cos_sums = _raw_scalar_sums_fft(s.values, n_max)
    else:
        raise ValueError(f"unknown method {method!r}")

    P = s.geometry.M + 2
    out = CoefficientSet.zeros(0, n_max)
    pos = {idx: i for i, idx in enumerate(out.indices)}
    for n in range(n_max + 1):
        for k in range(n // 2 + 1):
            pref = (n + 1) / P**2
            a_raw = (-1.0) ** k * pref * sin_sums[(n, k)]
            b_raw = (-1.0) ** (k + 1) * pref * cos_sums[(n, k)]
            plus = BasisIndex(+1, 0, n, k)
            out.values[pos[plus]] = (-1.0) ** n * basis_norm(plus) * a_raw
            if 2 * k != n:
                minus = BasisIndex(-1, 0, n, k)
                out.values[pos[minus]] = -basis_norm(minus) * b_raw
    return out


# ---------------------------------------------------------------------------
# projection inversion (any rank, regular scans)
# ---------------------------------------------------------------------------
def invert_projection(s: Sinogram, n_max: int) -> CoefficientSet:
    """Coefficients by rectangle-rule projection onto the singular functions.

    The measured directions cover only half the angle torus; the other half
    is filled by the extension rule, which on a regular scan with even M is a
    pure index remap (``phi -> phi + pi`` lands back on the grid).  The
    projection ``c = <f, f_idx> / sigma`` is then a rectangle rule on the
    extended (M+2) x 2(M+2) grid.  Recovery of degree <= n_max data is exact
    when M is even and M >= 2*n_max + 2 (below that, distinct singular
    functions alias on the beta grid).
    """
    if not isinstance(s.geometry, RegularScan):
        raise ValueError("projection inversion needs a regular scan geometry")
    M = s.geometry.M
    if M % 2 != 0:
        raise ValueError("projection inversion needs even M (extension remap)")
    eps = s.geometry.eps
    fe = np.concatenate([s.values, (-1.0) ** (s.m + 1) * s.values], axis=1)
    p = np.arange(M + 2)
    j = np.arange(2 * (M + 2))
    beta = np.broadcast_to((p * eps)[:, None], fe.shape)
    phi = beta - pi / 2.0 + (j * eps / 2.0)[None, :]
    w = eps * (eps / 2.0)

    out = CoefficientSet.zeros(s.m, n_max)
    for i, idx in enumerate(out.indices):
        fi = singular_function(idx, beta, phi)
        out.values[i] = float(np.sum(fe * fi)) * w / singular_value(idx)
    return out


# ---------------------------------------------------------------------------
# least-squares inversion (any geometry)
# ---------------------------------------------------------------------------
class RankDeficiencyError(ValueError):
    """Raised when the unridged least-squares system is rank deficient."""


def invert_lsq(s: Sinogram, n_max: int, ridge: float = 0.0) -> CoefficientSet:
    """Least-squares fit of ``sum c * sigma * f_idx`` to the measured rays.

    With ``ridge=0`` the system is solved by orthogonal factorization and a
    rank-deficient design matrix raises :class:`RankDeficiencyError` instead
    of being silently regularized.  With ``ridge > 0`` the ridge normal
    equations are solved.  A condition estimate is logged either way.
    """
    if ridge < 0:
        raise ValueError("ridge must be >= 0")
    betas, phis = s.geometry.ray_angles()
    vals = s.ray_values()
    idxs = enumerate_basis(s.m, n_max)
    design = np.empty((vals.size, len(idxs)))
    for i, idx in enumerate(idxs):
        design[:, i] = singular_value(idx) * singular_function(idx, betas, phis)
    if ridge == 0.0:
        c, _, rank, sv = np.linalg.lstsq(design, vals, rcond=None)
        cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
        logger.info("lsq design matrix: rank %d of %d, condition estimate %.3e",
                    rank, len(idxs), cond)
        if rank < len(idxs):
            raise RankDeficiencyError(
                f"design matrix rank {rank} < {len(idxs)} unknowns "
                f"(condition estimate {cond:.3e}); pass ridge > 0 to regularize"
            )
    else:
        gram = design.T @ design
        gram[np.diag_indices_from(gram)] += ridge
        cond = float(np.linalg.cond(gram))
        logger.info("ridge normal matrix condition estimate %.3e (ridge %.3e)",
                    cond, ridge)
        c = scipy.linalg.solve(gram, design.T @ vals, assume_a="pos")
    return CoefficientSet(s.m, n_max, c)


# ---------------------------------------------------------------------------
# truncation
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class MaxTerms:
    """Keep the ``count`` largest-singular-value terms."""

    count: int

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be >= 0")


@dataclass(frozen=True)
class Threshold:
    """Keep singular-value-ordered terms with 1-based position <= 1/gamma."""

    gamma: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError("gamma must be > 0")


def truncate(c: CoefficientSet, policy) -> CoefficientSet:
    """Zero all but the leading terms in descending singular-value order.

    Ties in sigma are broken by canonical enumeration position, so the result
    is deterministic.
    """
    if isinstance(policy, MaxTerms):
        keep = policy.count
    elif isinstance(policy, Threshold):
        keep = int(floor(1.0 / policy.gamma))
    else:
        raise TypeError(f"unknown truncation policy {policy!r}")
    idxs = c.indices
    sigmas = np.array([singular_value(idx) for idx in idxs])
    order = sorted(range(len(idxs)), key=lambda i: (-sigmas[i], i))
    out = CoefficientSet.zeros(c.m, c.n_max)
    for i in order[:keep]:
        out.values[i] = c.values[i]
    return out


# ---------------------------------------------------------------------------
# grid reconstruction and error
# ---------------------------------------------------------------------------
def _zernike_grid_sum(weights: dict, z: np.ndarray) -> np.ndarray:
    """``sum_{(n, kappa)} w * Z[n, kappa]`` on a grid, by shared radial recurrences.

    Groups terms by the angular index l = n - 2*kappa and runs one Jacobi
    degree recurrence per l, so the cost is one grid operation per (n, kappa)
    rather than one recurrence each.
    """
    out = np.zeros(z.shape, dtype=complex)
    if not weights:
        return out
    x = 2.0 * (z * np.conj(z)).real - 1.0
    by_ell: dict = {}
    for (n, kappa), w in weights.items():
        if w == 0.0:
            continue
        ell = n - 2 * kappa
        d = min(kappa, n - kappa)
        by_ell.setdefault(ell, {})[d] = by_ell.get(ell, {}).get(d, 0.0) + w * (-1.0) ** kappa
    for ell, col in by_ell.items():
        ang = z**ell if ell >= 0 else np.conj(z) ** (-ell)
        dmax = max(col)
        a, b = 0, abs(ell)
        radial_acc = np.zeros(z.shape, dtype=complex)
        prev2 = None
        prev = np.ones(z.shape)
        if 0 in col:
            radial_acc += col[0] * prev
        for j in range(1, dmax + 1):
            if j == 1:
                cur = 0.5 * (a - b + (a + b + 2) * x)
            else:
                cc = 2 * j + a + b
                a1 = 2 * j * (j + a + b) * (cc - 2)
                a2 = (cc - 1) * (a * a - b * b)
                a3 = (cc - 1) * cc * (cc - 2)
                a4 = 2 * (j + a - 1) * (j + b - 1) * cc
                cur = ((a2 + a3 * x) * prev - a4 * prev2) / a1
            if j in col:
                radial_acc += col[j] * cur
            prev2, prev = prev, cur
        out += ang * radial_acc
    return out


def reconstruct_grid(c: CoefficientSet, nx: int, ny: int) -> GridField:
    """Evaluate ``sum c * basis_field/basis_norm`` on the pixel grid.

    Basis fields are expanded into weighted disc polynomials per complex
    component (conjugates folded through the reflection identity), which are
    then evaluated in one pass per angular index.  Samples outside the unit
    disc are zero.
    """
    m = c.m
    X, Y = grid_coords(nx, ny)
    z = X + 1j * Y
    slot_weights: list[dict] = [{} for _ in range(m + 1)]  # slot s: A_{m-s}

    def add(s, n, kappa, w):
        if 0 <= kappa <= n and w != 0.0:
            key = (n, kappa)
            slot_weights[s][key] = slot_weights[s].get(key, 0.0) + w

    for i, idx in enumerate(c.indices):
        ci = c.values[i]
        if ci == 0.0:
            continue
        w = ci / basis_norm(idx)
        if 2 * idx.k == idx.m + idx.n:
            w = 0.5 * w
        n, k = idx.n, idx.k
        for s in range(m + 1):
            # conj(Z[n, j]) = (-1)**n Z[n, n-j]
            if idx.sign == +1:
                add(s, n, k - s, (-1.0) ** n * w)
                add(s, n, n - (k - m + s), w)
            else:
                add(s, n, k - s, -1j * w)
                add(s, n, n - (k - m + s), 1j * (-1.0) ** n * w)

    comps = [_zernike_grid_sum(slot_weights[s], z) for s in range(m + 1)]
    cart = complex_to_real(m, comps)
    mask = inside_disc_mask(nx, ny)
    data = np.stack([np.where(mask, comp, 0.0) for comp in cart])
    return GridField(m, data)


def relative_error(x: GridField, ref: GridField) -> float:
    """Relative discrete L2 error over in-disc pixels, ``||x - ref|| / ||ref||``."""
    from math import comb

    if x.m != ref.m or x.data.shape != ref.data.shape:
        raise ValueError("fields must share rank and grid shape")
    mask = inside_disc_mask(ref.nx, ref.ny)
    num = 0.0
    den = 0.0
    for s in range(ref.m + 1):
        w = comb(ref.m, ref.m - s)
        num += w * float(np.sum(((x.data[s] - ref.data[s])[mask]) ** 2))
        den += w * float(np.sum((ref.data[s][mask]) ** 2))
    if den == 0.0:
        raise ValueError("reference field is zero on the disc")
    return sqrt(num / den)
