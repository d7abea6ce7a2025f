"""Command-line pipeline: phantom -> forward -> noise -> invert -> render/error.

Every command that writes an output also writes a ``<out>.config.txt`` sidecar
holding the fully-resolved run configuration as versioned flat key-value text,
so any result can be reproduced byte-for-byte from its sidecar (same seed,
same backend, same parameters).
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from ._kernels import backend
from .basis import BasisIndex, basis_field
from .fields import sample_to_grid
from .fileio import (
    load_coefficients,
    load_grid,
    load_sinogram,
    save_coefficients,
    save_grid,
    save_sinogram,
    write_pgm,
)
from .forward import (
    IrregularScan,
    LineQuadratureSpec,
    FanScan,
    RegularScan,
    add_noise,
    irregular_vertices,
    make_sinogram,
)
from .inversion import (
    MaxTerms,
    Threshold,
    invert_lsq,
    invert_projection,
    invert_scalar_regular,
    reconstruct_grid,
    relative_error,
    truncate,
)
from .phantoms import mixed_vector, solenoidal_vector, synthetic_scalar, vortex_vector

logger = logging.getLogger(__name__)

CONFIG_VERSION = 1


def _write_config(out_path, command: str, params: dict):
    lines = [f"config_version {CONFIG_VERSION}", f"command {command}",
             f"package_version {__version__}"]
    for key in sorted(params):
        lines.append(f"{key} {params[key]}")
    with open(f"{out_path}.config.txt", "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _positive(kind):
    def convert(text):
        val = kind(text)
        if val <= 0:
            raise argparse.ArgumentTypeError(f"{text} is not positive")
        return val
    return convert


def _load_field_or_sinogram(path):
    try:
        return load_grid(path)
    except ValueError:
        return load_sinogram(path)


def _read_vertices_file(path):
    text = Path(path).read_text()
    toks = [t for t in text.replace(",", " ").split() if t]
    return tuple(float(t) for t in toks)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------
def cmd_phantom(args) -> int:
    kind = args.kind
    if kind == "solenoidal_v":
        gf = solenoidal_vector(args.nx, args.ny)
    elif kind == "mixed_v":
        gf = mixed_vector(args.nx, args.ny)
    elif kind == "vortex_v":
        gf = vortex_vector(args.nx, args.ny)
    elif kind == "synthetic_scalar":
        gf = synthetic_scalar(args.nx, args.ny)
    elif kind == "zernike":
        if args.n is None or args.k is None or args.m is None:
            raise ValueError("zernike phantom needs --n, --k and --m")
        field = basis_field(BasisIndex(+1, args.m, args.n, args.k))
        gf = sample_to_grid(field, args.nx, args.ny)
    elif kind == "coeffs":
        if args.coeffs_file is None:
            raise ValueError("coeffs phantom needs --coeffs-file")
        gf = reconstruct_grid(load_coefficients(args.coeffs_file), args.nx, args.ny)
    elif kind == "raster":
        if args.raster_file is None:
            raise ValueError("raster phantom needs --raster-file")
        gf = load_grid(args.raster_file)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown phantom kind {kind}")
    save_grid(gf, args.out)
    params = {"kind": kind, "nx": gf.nx, "ny": gf.ny, "m": gf.m, "out": args.out}
    if kind == "zernike":
        params.update(n=args.n, k=args.k, zernike_m=args.m)
    if args.coeffs_file:
        params["coeffs_file"] = args.coeffs_file
    if args.raster_file:
        params["raster_file"] = args.raster_file
    _write_config(args.out, "phantom", params)
    print(f"wrote {args.out}")
    return 0


def cmd_forward(args) -> int:
    gf = load_grid(args.field)
    if args.geometry == "regular":
        if args.M is None:
            raise ValueError("regular geometry needs --M")
        geom = RegularScan(args.M)
        geom_params = {"M": args.M}
    elif args.geometry == "fan":
        if args.fan_vertices is None or args.fan_rays is None:
            raise ValueError("fan geometry needs --fan-vertices and --fan-rays")
        geom = FanScan(args.fan_vertices, args.fan_rays)
        geom_params = {"fan_vertices": args.fan_vertices, "fan_rays": args.fan_rays}
    else:
        if args.vertices_file:
            verts = _read_vertices_file(args.vertices_file)
            geom_params = {"vertices_file": args.vertices_file}
        elif args.vertex_count:
            verts = irregular_vertices(args.vertex_count, args.vertex_seed)
            geom_params = {"vertex_count": args.vertex_count,
                           "vertex_seed": args.vertex_seed}
        else:
            raise ValueError("irregular geometry needs --vertices-file or --vertex-count")
        geom = IrregularScan(verts)
    quad = LineQuadratureSpec(args.intervals)
    sino = make_sinogram(gf, geom, quad)
    save_sinogram(sino, args.out)
    params = {"field": args.field, "geometry": args.geometry,
              "intervals": args.intervals, "kernel_backend": backend(),
              "out": args.out, **geom_params}
    _write_config(args.out, "forward", params)
    print(f"wrote {args.out}")
    return 0


def cmd_noise(args) -> int:
    sino = load_sinogram(args.sinogram)
    noisy, realized = add_noise(sino, args.model, args.level, args.seed,
                                poisson_scale=args.poisson_scale)
    save_sinogram(noisy, args.out)
    params = {"sinogram": args.sinogram, "model": args.model, "level": args.level,
              "seed": args.seed, "out": args.out,
              "realized_level": repr(realized)}
    if args.poisson_scale is not None:
        params["poisson_scale"] = args.poisson_scale
    _write_config(args.out, "noise", params)
    print(f"realized_level {repr(realized)}")
    return 0


def cmd_invert(args) -> int:
    sino = load_sinogram(args.sinogram)
    if args.method in ("explicit", "fft"):
        variant = "direct" if args.method == "explicit" else "fft"
        coeffs = invert_scalar_regular(sino, args.n_max, method=variant)
    elif args.method == "projection":
        coeffs = invert_projection(sino, args.n_max)
    else:
        coeffs = invert_lsq(sino, args.n_max, ridge=args.ridge)
    if args.max_terms is not None:
        coeffs = truncate(coeffs, MaxTerms(args.max_terms))
        logger.info("kept %d largest-sigma terms", args.max_terms)
    elif args.gamma is not None:
        coeffs = truncate(coeffs, Threshold(args.gamma))
        logger.info("threshold gamma=%g", args.gamma)
    if args.coeffs_out is None and args.field_out is None:
        raise ValueError("nothing to do: pass --coeffs-out and/or --field-out")
    params = {"sinogram": args.sinogram, "n_max": args.n_max, "method": args.method,
              "ridge": args.ridge, "m": sino.m}
    if args.max_terms is not None:
        params["max_terms"] = args.max_terms
    if args.gamma is not None:
        params["gamma"] = args.gamma
    if args.coeffs_out:
        save_coefficients(coeffs, args.coeffs_out)
        _write_config(args.coeffs_out, "invert", {**params, "out": args.coeffs_out})
        print(f"wrote {args.coeffs_out}")
    if args.field_out:
        gf = reconstruct_grid(coeffs, args.nx, args.ny)
        save_grid(gf, args.field_out)
        _write_config(args.field_out, "invert",
                      {**params, "out": args.field_out, "nx": args.nx, "ny": args.ny})
        print(f"wrote {args.field_out}")
    return 0


def cmd_render(args) -> int:
    obj = _load_field_or_sinogram(args.input)
    base = args.out_base
    written = []
    if hasattr(obj, "data"):  # GridField
        for s in range(obj.m + 1):
            comp = obj.m - s
            pgm = f"{base}_a{comp}.pgm"
            csv = f"{base}_a{comp}.csv"
            write_pgm(pgm, obj.data[s])
            with open(csv, "w", newline="\n") as fh:
                for row in obj.data[s]:
                    fh.write(",".join(repr(float(v)) for v in row) + "\n")
            written += [pgm, csv]
    else:
        import numpy as np

        vals = obj.values if obj.values.ndim == 2 else obj.values[None, :]
        pgm = f"{base}.pgm"
        csv = f"{base}.csv"
        write_pgm(pgm, np.asarray(vals))
        with open(csv, "w", newline="\n") as fh:
            for row in np.atleast_2d(vals):
                fh.write(",".join(repr(float(v)) for v in row) + "\n")
        written += [pgm, csv]
    _write_config(base, "render", {"input": args.input, "out_base": base})
    for name in written:
        print(f"wrote {name}")
    return 0


def cmd_error(args) -> int:
    x = load_grid(args.input)
    ref = load_grid(args.reference)
    err = relative_error(x, ref)
    print(f"relative_error {err:.6g}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tentomo",
        description="Fan-beam tomography of tensor fields on the unit disc",
    )
    parser.add_argument("--log-level", default="WARNING",
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phantom", help="generate a test field on a pixel grid")
    p.add_argument("--kind", required=True,
                   choices=["solenoidal_v", "mixed_v", "vortex_v", "zernike",
                            "coeffs", "raster", "synthetic_scalar"])
    p.add_argument("--nx", type=_positive(int), default=256)
    p.add_argument("--ny", type=_positive(int), default=256)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--coeffs-file")
    p.add_argument("--raster-file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_phantom)

    p = sub.add_parser("forward", help="compute a sinogram from a gridded field")
    p.add_argument("--field", required=True)
    p.add_argument("--geometry", required=True,
                   choices=["regular", "fan", "irregular"])
    p.add_argument("--M", type=int)
    p.add_argument("--fan-vertices", type=int)
    p.add_argument("--fan-rays", type=int)
    p.add_argument("--vertices-file")
    p.add_argument("--vertex-count", type=int)
    p.add_argument("--vertex-seed", type=int, default=0)
    p.add_argument("--intervals", type=int, default=1024)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("noise", help="perturb a sinogram")
    p.add_argument("--sinogram", required=True)
    p.add_argument("--model", required=True, choices=["uniform", "poisson"])
    p.add_argument("--level", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--poisson-scale", type=float)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("invert", help="recover basis coefficients from a sinogram")
    p.add_argument("--sinogram", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--method", required=True,
                   choices=["explicit", "fft", "projection", "lsq"])
    p.add_argument("--ridge", type=float, default=0.0)
    trunc = p.add_mutually_exclusive_group()
    trunc.add_argument("--max-terms", type=int)
    trunc.add_argument("--gamma", type=float)
    p.add_argument("--coeffs-out")
    p.add_argument("--field-out")
    p.add_argument("--nx", type=_positive(int), default=256)
    p.add_argument("--ny", type=_positive(int), default=256)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("render", help="render a field or sinogram to PGM + CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--out-base", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("error", help="relative L2 error between two gridded fields")
    p.add_argument("--input", required=True)
    p.add_argument("--reference", required=True)
    p.set_defaults(func=cmd_error)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
