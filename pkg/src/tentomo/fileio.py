"""On-disk formats for grids, sinograms, coefficients, and rendered images.

All formats are self-describing and byte-deterministic (floats serialized
with ``repr``, which is shortest-round-trip exact).

GridField  -- text (``.csv``) or binary (anything else):
    text:   header lines ``tentomo-grid 1`` / ``m`` / ``nx`` / ``ny``,
            then for each component (descending: a_m first) a line
            ``component <k>`` followed by ny comma-separated rows.
    binary: magic ``TTGF1\\n``, three little-endian int64 (m, ny, nx),
            then (m+1)*ny*nx little-endian float64, C order, descending
            components.

Sinogram   -- text (``.csv``) or binary:
    text:   ``tentomo-sinogram 1`` / ``m`` / ``geometry regular|fan|irregular``;
            regular:   ``M <int>``, ``values``, M+2 comma-separated rows.
            fan:       ``vertices <count>``, ``rays <count>``, ``values``,
            one comma-separated row per fan vertex.
            irregular: ``vertices <count>``, one comma-separated line of
            vertex angles, ``values``, one comma-separated line of
            V*(V-1)/2 ray values (vertex-pair order i<j, lexicographic).
    binary: magic ``TTSG1\\n``, int64 m, int64 geometry code (0 regular,
            1 irregular, 2 fan), then int64 M plus (M+2)^2 float64 values,
            or int64 V plus V float64 vertices plus V*(V-1)/2 float64
            values, or int64 V, int64 K plus V*K float64 values.
            All little-endian.

CoefficientSet -- text only: ``tentomo-coefficients 1`` / ``m`` / ``n_max``,
    then one line per canonical basis index: ``<sign> <m> <n> <k> <value>``
    with sign written as ``+`` or ``-``.

PGM render -- binary P5, maxval 65535, big-endian samples (PNM convention),
    linear map [vmin, vmax] -> [0, 65535]; the mapping is recorded in a
    ``<path>.meta.txt`` sidecar.
"""
from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .basis import BasisIndex
from .fields import GridField
from .forward import FanScan, IrregularScan, RegularScan, Sinogram
from .inversion import CoefficientSet

__all__ = [
    "save_grid",
    "load_grid",
    "save_sinogram",
    "load_sinogram",
    "save_coefficients",
    "load_coefficients",
    "write_pgm",
]

_GRID_MAGIC = b"TTGF1\n"
_SINO_MAGIC = b"TTSG1\n"


def _fmt_row(row) -> str:
    return ",".join(repr(float(v)) for v in row)


def _parse_row(line: str):
    return np.array([float(tok) for tok in line.strip().split(",")], dtype=float)


# ---------------------------------------------------------------------------
# GridField
# ---------------------------------------------------------------------------
def save_grid(gf: GridField, path):
    path = Path(path)
    if path.suffix == ".csv":
        with open(path, "w", newline="\n") as fh:
            fh.write("tentomo-grid 1\n")
            fh.write(f"m {gf.m}\n")
            fh.write(f"nx {gf.nx}\n")
            fh.write(f"ny {gf.ny}\n")
            for s in range(gf.m + 1):
                fh.write(f"component {gf.m - s}\n")
                for row in gf.data[s]:
                    fh.write(_fmt_row(row) + "\n")
    else:
        with open(path, "wb") as fh:
            fh.write(_GRID_MAGIC)
            np.array([gf.m, gf.ny, gf.nx], dtype="<i8").tofile(fh)
            gf.data.astype("<f8").tofile(fh)


def load_grid(path) -> GridField:
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(len(_GRID_MAGIC))
    if head == _GRID_MAGIC:
        with open(path, "rb") as fh:
            fh.read(len(_GRID_MAGIC))
            m, ny, nx = (int(v) for v in np.fromfile(fh, dtype="<i8", count=3))
            data = np.fromfile(fh, dtype="<f8", count=(m + 1) * ny * nx)
        if data.size != (m + 1) * ny * nx:
            raise ValueError(f"truncated grid file {path}")
        return GridField(m, data.reshape(m + 1, ny, nx))
    with open(path) as fh:
        if fh.readline().strip() != "tentomo-grid 1":
            raise ValueError(f"{path} is not a tentomo grid file")
        m = int(fh.readline().split()[1])
        nx = int(fh.readline().split()[1])
        ny = int(fh.readline().split()[1])
        data = np.empty((m + 1, ny, nx))
        for s in range(m + 1):
            tag = fh.readline().split()
            if tag[:1] != ["component"] or int(tag[1]) != m - s:
                raise ValueError(f"bad component header in {path}: {' '.join(tag)}")
            for j in range(ny):
                row = _parse_row(fh.readline())
                if row.size != nx:
                    raise ValueError(f"row length {row.size} != nx {nx} in {path}")
                data[s, j] = row
    return GridField(m, data)


# ---------------------------------------------------------------------------
# Sinogram
# ---------------------------------------------------------------------------
def save_sinogram(s: Sinogram, path):
    path = Path(path)
    geom = s.geometry
    if path.suffix == ".csv":
        with open(path, "w", newline="\n") as fh:
            fh.write("tentomo-sinogram 1\n")
            fh.write(f"m {s.m}\n")
            if isinstance(geom, RegularScan):
                fh.write("geometry regular\n")
                fh.write(f"M {geom.M}\n")
                fh.write("values\n")
                for row in s.values:
                    fh.write(_fmt_row(row) + "\n")
            elif isinstance(geom, FanScan):
                fh.write("geometry fan\n")
                fh.write(f"vertices {geom.vertices}\n")
                fh.write(f"rays {geom.rays}\n")
                fh.write("values\n")
                for row in s.values:
                    fh.write(_fmt_row(row) + "\n")
            else:
                fh.write("geometry irregular\n")
                fh.write(f"vertices {len(geom.vertices)}\n")
                fh.write(_fmt_row(geom.vertices) + "\n")
                fh.write("values\n")
                fh.write(_fmt_row(s.values) + "\n")
    else:
        with open(path, "wb") as fh:
            fh.write(_SINO_MAGIC)
            if isinstance(geom, RegularScan):
                np.array([s.m, 0], dtype="<i8").tofile(fh)
                np.array([geom.M], dtype="<i8").tofile(fh)
            elif isinstance(geom, FanScan):
                np.array([s.m, 2], dtype="<i8").tofile(fh)
                np.array([geom.vertices, geom.rays], dtype="<i8").tofile(fh)
            else:
                np.array([s.m, 1], dtype="<i8").tofile(fh)
                np.array([len(geom.vertices)], dtype="<i8").tofile(fh)
                np.asarray(geom.vertices, dtype="<f8").tofile(fh)
            s.values.astype("<f8").tofile(fh)


def load_sinogram(path) -> Sinogram:
    path = Path(path)
    with open(path, "rb") as fh:
        head = fh.read(len(_SINO_MAGIC))
    if head == _SINO_MAGIC:
        with open(path, "rb") as fh:
            fh.read(len(_SINO_MAGIC))
            m, code = (int(v) for v in np.fromfile(fh, dtype="<i8", count=2))
            if code == 0:
                M = int(np.fromfile(fh, dtype="<i8", count=1)[0])
                geom = RegularScan(M)
                vals = np.fromfile(fh, dtype="<f8", count=(M + 2) ** 2).reshape(M + 2, M + 2)
            elif code == 2:
                V, K = (int(v) for v in np.fromfile(fh, dtype="<i8", count=2))
                geom = FanScan(V, K)
                vals = np.fromfile(fh, dtype="<f8", count=V * K).reshape(V, K)
            else:
                V = int(np.fromfile(fh, dtype="<i8", count=1)[0])
                verts = np.fromfile(fh, dtype="<f8", count=V)
                geom = IrregularScan(tuple(verts))
                vals = np.fromfile(fh, dtype="<f8", count=V * (V - 1) // 2)
        return Sinogram(geom, m, vals)
    with open(path) as fh:
        if fh.readline().strip() != "tentomo-sinogram 1":
            raise ValueError(f"{path} is not a tentomo sinogram file")
        m = int(fh.readline().split()[1])
        kind = fh.readline().split()[1]
        if kind == "regular":
            M = int(fh.readline().split()[1])
            if fh.readline().strip() != "values":
                raise ValueError(f"missing values section in {path}")
            vals = np.stack([_parse_row(fh.readline()) for _ in range(M + 2)])
            return Sinogram(RegularScan(M), m, vals)
        if kind == "fan":
            V = int(fh.readline().split()[1])
            K = int(fh.readline().split()[1])
            if fh.readline().strip() != "values":
                raise ValueError(f"missing values section in {path}")
            vals = np.stack([_parse_row(fh.readline()) for _ in range(V)])
            return Sinogram(FanScan(V, K), m, vals)
        if kind == "irregular":
            _v = int(fh.readline().split()[1])
            verts = _parse_row(fh.readline())
            if verts.size != _v:
                raise ValueError(f"vertex count mismatch in {path}")
            if fh.readline().strip() != "values":
                raise ValueError(f"missing values section in {path}")
            vals = _parse_row(fh.readline())
            return Sinogram(IrregularScan(tuple(verts)), m, vals)
    raise ValueError(f"unknown sinogram geometry in {path}")


# ---------------------------------------------------------------------------
# CoefficientSet
# ---------------------------------------------------------------------------
def save_coefficients(c: CoefficientSet, path):
    with open(path, "w", newline="\n") as fh:
        fh.write("tentomo-coefficients 1\n")
        fh.write(f"m {c.m}\n")
        fh.write(f"n_max {c.n_max}\n")
        for idx, val in zip(c.indices, c.values):
            sign = "+" if idx.sign > 0 else "-"
            fh.write(f"{sign} {idx.m} {idx.n} {idx.k} {repr(float(val))}\n")


def load_coefficients(path) -> CoefficientSet:
    with open(path) as fh:
        if fh.readline().strip() != "tentomo-coefficients 1":
            raise ValueError(f"{path} is not a tentomo coefficients file")
        m = int(fh.readline().split()[1])
        n_max = int(fh.readline().split()[1])
        entries = {}
        for line in fh:
            if not line.strip():
                continue
            sign_s, m_s, n_s, k_s, val_s = line.split()
            idx = BasisIndex(+1 if sign_s == "+" else -1, int(m_s), int(n_s), int(k_s))
            if idx.m != m:
                raise ValueError(f"rank mismatch on line {line!r} in {path}")
            entries[idx] = float(val_s)
    return CoefficientSet.from_dict(m, n_max, entries)


# ---------------------------------------------------------------------------
# PGM rendering
# ---------------------------------------------------------------------------
def write_pgm(path, values: np.ndarray, vmin: float | None = None,
              vmax: float | None = None):
    """Write a 16-bit binary PGM plus a sidecar with the value mapping.

    Returns the (vmin, vmax) actually used.  Values are mapped linearly onto
    0..65535 and clipped; a constant image maps to 0.
    """
    path = Path(path)
    values = np.asarray(values, dtype=float)
    if values.ndim != 2:
        raise ValueError("PGM rendering needs a 2-D array")
    lo = float(np.min(values)) if vmin is None else float(vmin)
    hi = float(np.max(values)) if vmax is None else float(vmax)
    if hi > lo:
        scaled = np.clip((values - lo) / (hi - lo), 0.0, 1.0)
    else:
        scaled = np.zeros_like(values)
    pix = np.round(scaled * 65535.0).astype(">u2")
    with open(path, "wb") as fh:
        fh.write(f"P5\n{values.shape[1]} {values.shape[0]}\n65535\n".encode("ascii"))
        pix.tofile(fh)
    with open(str(path) + ".meta.txt", "w", newline="\n") as fh:
        fh.write(f"vmin {repr(lo)}\n")
        fh.write(f"vmax {repr(hi)}\n")
        fh.write(f"rows {values.shape[0]}\n")
        fh.write(f"cols {values.shape[1]}\n")
    return lo, hi
