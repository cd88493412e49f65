"""Command-line interface: ``weberbeams {field-map,verify,constants,photon}``.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
Lengths are in wavelengths.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .config import ConfigError, load_config
from .dynamics import cesaro_tail, conserved_report
from .em import clip_focal, polarization_ellipse, potential_sample
from .coords import uv_from_xy
from .quantum import (
    TwoModeState,
    commutator,
    diagonal_matrix,
    expectation,
    helicity_eigensystem,
    helicity_matrix,
    photon_constants,
)
from .verification import SUITES, run_suites

CSV_HEADER = "x,y,Ex_re,Ex_im,Ey_re,Ey_im,Ez_re,Ez_im,intensity,orientation,ellipticity"
ROWS_PER_TILE = 8
NODE_THRESHOLD = 1e-2


class UsageError(Exception):
    pass


# -- field map ---------------------------------------------------------------

def symmetric_axis(n, half_width):
    """``n`` equispaced points on ``[-half_width, half_width]`` that are exactly antisymmetric."""
    i = np.arange(n)
    return (2 * i - (n - 1)) / (n - 1) * half_width if n > 1 else np.zeros(1)


def field_grid(cfg, n=None, threads=1):
    """Sample E on the configured plane; returns ``(x, y, E)`` with shapes (n, n) and (n, n, 3).

    Row index runs over the second coordinate, column index over the first.
    For ``plane="uv"`` the grid is uniform in (u, v) with ``v >= 0`` and the
    returned x, y are the Cartesian images of the sample points.
    """
    n = n or cfg.grid_n
    mode = cfg.mode()
    pol = cfg.polarization()
    L = cfg.extent * cfg.wavelength
    if cfg.plane == "xy":
        g = symmetric_axis(n, L)
        X, Y = np.meshgrid(g, g)
        U, V = uv_from_xy(X, Y)
    else:
        s = np.sqrt(2 * L)
        U, V = np.meshgrid(symmetric_axis(n, s), np.linspace(0.0, s, n))
        X, Y = 0.5 * (U * U - V * V), U * V
    U, V, _ = clip_focal(U, V)
    E = np.empty(U.shape + (3,), dtype=complex)
    tiles = [slice(i, min(i + ROWS_PER_TILE, n)) for i in range(0, n, ROWS_PER_TILE)]

    def work(sl):
        E[sl] = potential_sample(mode, pol, U[sl], V[sl]).E

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            list(ex.map(work, tiles))
    else:
        for sl in tiles:
            work(sl)
    return X, Y, E


def format_csv(X, Y, E):
    """CSV text with the fixed header, rows ordered y-outer, x-inner, 17 significant digits."""
    ell = polarization_ellipse(E)
    cols = [X, Y, E[..., 0].real, E[..., 0].imag, E[..., 1].real, E[..., 1].imag,
            E[..., 2].real, E[..., 2].imag, ell.intensity, ell.orientation, ell.ellipticity]
    flat = np.stack([np.ravel(c) for c in cols], axis=-1)
    lines = [CSV_HEADER]
    lines.extend(",".join("%.17g" % x for x in row) for row in flat)
    return "\n".join(lines) + "\n"


def pgm_bytes(intensity):
    """8-bit binary PGM of intensity normalised to its maximum; top row is the largest y."""
    img = np.asarray(intensity, dtype=float)[::-1]
    peak = float(np.max(img))
    scaled = np.zeros_like(img) if peak <= 0 else img / peak
    data = np.clip(np.rint(255 * scaled), 0, 255).astype(np.uint8)
    h, w = data.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + data.tobytes()


def mirror_asymmetry(intensity):
    """``max |I(x, y) - I(x, -y)| / max I`` on a grid symmetric in y."""
    I = np.asarray(intensity, dtype=float)
    peak = float(np.max(I))
    return float(np.max(np.abs(I - I[::-1]))) / peak if peak > 0 else 0.0


def count_nodes(values, threshold=NODE_THRESHOLD):
    """Number of interior local minima deeper than ``threshold`` times both flanking maxima."""
    I = np.asarray(values, dtype=float)
    count = 0
    for i in range(1, len(I) - 1):
        if I[i] <= I[i - 1] and I[i] < I[i + 1]:
            left = np.max(I[: i + 1])
            right = np.max(I[i:])
            if I[i] < threshold * min(left, right):
                count += 1
    return count


def x_axis_cut(cfg, n):
    """Intensity along y = 0 at ``n`` points over ``[-extent, extent]``."""
    mode = cfg.mode()
    x = symmetric_axis(n, cfg.extent * cfg.wavelength)
    u, v = uv_from_xy(x, np.zeros_like(x))
    u, v, _ = clip_focal(u, v)
    E = potential_sample(mode, cfg.polarization(), u, v).E
    return x, np.sum(np.abs(E) ** 2, axis=-1)


def nodal_summary(cfg, n):
    counts = {}
    for m in (max(n, 64), 2 * max(n, 64)):
        counts[str(m)] = count_nodes(x_axis_cut(cfg, m)[1])
    vals = list(counts.values())
    return {"node_counts": counts, "stable": vals[0] == vals[1]}


def cmd_field_map(cfg, args):
    X, Y, E = field_grid(cfg, threads=cfg.threads)
    text = format_csv(X, Y, E)
    ell = polarization_ellipse(E)
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="ascii", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {cfg.out}: {exc}") from None
    else:
        sys.stdout.write(text)
    if cfg.pgm:
        try:
            with open(cfg.pgm, "wb") as fh:
                fh.write(pgm_bytes(ell.intensity))
        except OSError as exc:
            raise UsageError(f"cannot write {cfg.pgm}: {exc}") from None
    summary = {
        "version": __version__,
        "config": cfg.echo(),
        "rows": int(X.size),
        "mirror_asymmetry": mirror_asymmetry(ell.intensity) if cfg.plane == "xy" else None,
        "x_axis_nodes": nodal_summary(cfg, cfg.grid_n),
        "max_ellipticity": float(np.nanmax(ell.ellipticity)),
    }
    if cfg.small_grid:
        summary["warning"] = "grid smaller than 16 points per axis"
    if cfg.out:
        _emit(summary, args, human=_field_map_text(summary))
    elif cfg.small_grid:
        print("warning: grid smaller than 16 points per axis", file=sys.stderr)
    return 0


def _field_map_text(s):
    nodes = s["x_axis_nodes"]
    return (f"wrote {s['rows']} rows; mirror asymmetry {s['mirror_asymmetry']}; "
            f"x-axis nodes {nodes['node_counts']} (stable: {nodes['stable']})")


# -- verify ------------------------------------------------------------------

def parse_suites(values):
    if not values:
        return list(SUITES)
    names = []
    for v in values:
        names.extend(x.strip() for x in v.split(",") if x.strip())
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    return names


def cmd_verify(cfg, args):
    names = parse_suites(args.suite)
    results = run_suites(names, cfg)
    suites = []
    for r in results:
        d = r.to_dict()
        if not args.timings:
            d.pop("runtime")
        suites.append(d)
    passed = all(r.passed for r in results)
    report = {"version": __version__, "config": cfg.echo(), "suites": suites, "passed": passed}
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: max {r.max:.3e} median {r.median:.3e} "
             f"tol {r.tol:.0e} ({r.runtime:.1f}s)" + (f"\n  {r.error.splitlines()[0]}" if r.error else "")
             for r in results]
    _write_report(report, cfg.out)
    _emit(report, args, human="\n".join(lines))
    return 0 if passed else 1


# -- constants ---------------------------------------------------------------

def _c(z):
    return [float(np.real(z)), float(np.imag(z))]


def cmd_constants(cfg, args):
    mode = cfg.mode()
    pol = cfg.polarization()
    extents = list(cfg.scan_extents)
    rows = []
    for ext in extents:
        w = cfg.integration_window(ext)
        r = conserved_report(mode, pol, w, branch=args.branch, threads=cfg.threads)
        rows.append({
            "extent": ext,
            "window": {"u_max": w.u_max, "v_max": w.v_max, "n_u": w.n_u, "n_v": w.n_v},
            "energy": r.energy.value,
            "energy_error": r.energy.error,
            "momentum_z": r.momentum_z.value,
            "helicity": r.helicity.value,
            "Lz": _c(r.Lz.value),
            "cPz_over_E": r.ratios["cPz_over_E"],
            "Sz_over_E": r.ratios["Sz_over_E"],
            "A_scalar_over_kperp": r.ratios["A_scalar_over_kperp"],
            "A_em_over_EA_over_kperp": _c(r.ratios["A_em_over_EA_over_kperp"]),
        })
    cols = ("cPz_over_E", "Sz_over_E", "A_scalar_over_kperp")
    for i, row in enumerate(rows):
        row["deltas"] = {c: (None if i == 0 else abs(row[c] - rows[i - 1][c])) for c in cols}
    k = mode.k
    pc = photon_constants(mode)
    targets = {
        "cPz_over_E": mode.kz / k,
        "A_scalar_over_kperp": mode.a,
        # per-photon helicity over per-photon energy, c = 1
        "Sz_over_E_quantum_per_photon": pc.helicity_eigenvalues[0] / pc.energy,
    }
    tails = {c: cesaro_tail([r[c] for r in rows]) for c in cols}
    status = "ok"
    checks = {
        "cPz_over_E": abs(tails["cPz_over_E"] - targets["cPz_over_E"]) <= 1e-3,
        "A_scalar_over_kperp": abs(tails["A_scalar_over_kperp"] - mode.a) <= 0.01 * max(abs(mode.a), 1.0),
    }
    if not all(checks.values()):
        status = "warning: not converged"
    report = {
        "version": __version__,
        "config": cfg.echo(),
        "branch": args.branch,
        "k_perp": mode.k_perp,
        "rows": rows,
        "cesaro_tail": tails,
        "targets": targets,
        "checks": checks,
        "status": status,
    }
    head = f"{'extent':>8} {'energy':>14} {'cPz/E':>12} {'Sz/E':>12} {'<A>/kperp':>12}"
    lines = [head] + [f"{r['extent']:8.2f} {r['energy']:14.6e} {r['cPz_over_E']:12.8f} "
                      f"{r['Sz_over_E']:12.4e} {r['A_scalar_over_kperp']:12.8f}" for r in rows]
    lines.append(f"status: {status}")
    _write_report(report, cfg.out)
    _emit(report, args, human="\n".join(lines))
    return 0


# -- photon --------------------------------------------------------------------

def cmd_photon(cfg, args):
    mode = cfg.photon_mode()
    hbar = cfg.hbar
    pc = photon_constants(mode, hbar)
    H = helicity_matrix(mode, hbar)
    vals, vecs = helicity_eigensystem(mode, hbar)
    comm = {obs: float(np.max(np.abs(commutator(H, diagonal_matrix(mode, obs, hbar)))))
            for obs in ("energy", "momentum_z", "A")}
    fock = TwoModeState.fock(args.n_te, args.n_tm)
    pol = cfg.polarization()
    coh = TwoModeState.coherent(pol.amp_te, pol.amp_tm)
    states = {}
    for label, st in (("fock", fock), ("coherent", coh)):
        states[label] = {obs: expectation(st, obs, mode, hbar, args.normal_ordered)
                         for obs in ("energy", "momentum_z", "A", "helicity")}
    spacing = (expectation(fock.added_photon("TE"), "energy", mode, hbar)
               - expectation(fock, "energy", mode, hbar))
    report = {
        "version": __version__,
        "config": cfg.echo(),
        "units": {"hbar": hbar, "c": 1.0, "omega": mode.omega},
        "constants": {
            "energy": pc.energy,
            "momentum_z": pc.momentum_z,
            "k_perp": mode.k_perp,
            "A_value": pc.A_value,
            "helicity_eigenvalues": list(pc.helicity_eigenvalues),
            "field_per_photon_sq": pc.field_per_photon_sq,
        },
        "helicity_matrix": [[_c(x) for x in row] for row in H],
        "helicity_eigenvalues": [float(v) for v in vals],
        "helicity_eigenvectors": [[_c(x) for x in col] for col in vecs.T],
        "commutators_max_abs": comm,
        "energy_spacing": spacing,
        "normal_ordered": bool(args.normal_ordered),
        "states": {"fock": {"n_te": fock.te, "n_tm": fock.tm, **states["fock"]},
                   "coherent": {"alpha_te": _c(coh.te), "alpha_tm": _c(coh.tm), **states["coherent"]}},
        "note": "classical window ratio |S_z|/E for circular polarization is twice the per-photon value",
    }
    lines = [
        f"energy        {pc.energy!r}",
        f"momentum_z    {pc.momentum_z!r}",
        f"A_value       {pc.A_value!r}",
        f"helicity      +-{pc.helicity_eigenvalues[0]!r}",
        f"spacing       {spacing!r}",
        f"[H, E], [H, P_z], [H, A]: {comm['energy']:.1e} {comm['momentum_z']:.1e} {comm['A']:.1e}",
    ]
    _write_report(report, cfg.out)
    _emit(report, args, human="\n".join(lines))
    return 0


# -- plumbing --------------------------------------------------------------------

def _write_report(report, path):
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(report, indent=2) + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write {path}: {exc}") from None


def _emit(report, args, human):
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        print(human)


def _common(p):
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--a", type=float, help="separation constant a")
    p.add_argument("--kz-ratio", type=float, help="k_z / k")
    p.add_argument("--parity", choices=("even", "odd"))
    p.add_argument("--amp-te", metavar="RE,IM", help="TE amplitude")
    p.add_argument("--amp-tm", metavar="RE,IM", help="TM amplitude")
    p.add_argument("--grid-n", type=int, help="points per axis")
    p.add_argument("--extent", type=float, help="half-width in wavelengths")
    p.add_argument("--out", help="output path (CSV for field-map, JSON report otherwise)")
    p.add_argument("--threads", type=int, help="maximum worker threads")
    p.add_argument("--json", action="store_true", help="print the JSON document to stdout")


def build_parser():
    parser = argparse.ArgumentParser(prog="weberbeams", description="Weber beam modes and their constants")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-map", help="export E on a transverse grid")
    _common(p)
    p.add_argument("--plane", choices=("xy", "uv"))
    p.add_argument("--pgm", help="also write an 8-bit grayscale intensity image")

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", action="append", help=f"suite name(s), comma separated: {', '.join(SUITES)}")
    p.add_argument("--timings", action="store_true", help="include runtimes in the JSON report")

    p = sub.add_parser("constants", help="windowed conserved quantities over a window scan")
    _common(p)
    p.add_argument("--windows", help="comma-separated window extents in wavelengths")
    p.add_argument("--branch", choices=("+", "-"), help="use a traveling mode")

    p = sub.add_parser("photon", help="per-photon constants and helicity algebra")
    _common(p)
    p.add_argument("--omega", type=float, help="angular frequency (default 1)")
    p.add_argument("--hbar", type=float, help="Planck constant (default 1)")
    p.add_argument("--n-te", type=int, default=0)
    p.add_argument("--n-tm", type=int, default=0)
    p.add_argument("--normal-ordered", action="store_true")
    return parser


def _overrides(args):
    o = {
        "a": args.a,
        "kz_over_k": args.kz_ratio,
        "parity": args.parity,
        "amp_te": args.amp_te,
        "amp_tm": args.amp_tm,
        "grid_n": args.grid_n,
        "extent": args.extent,
        "out": args.out,
        "threads": args.threads,
        "plane": getattr(args, "plane", None),
        "pgm": getattr(args, "pgm", None),
        "omega": getattr(args, "omega", None),
        "hbar": getattr(args, "hbar", None),
    }
    windows = getattr(args, "windows", None)
    if windows:
        o["scan_extents"] = windows.split(",")
    return o


COMMANDS = {
    "field-map": cmd_field_map,
    "verify": cmd_verify,
    "constants": cmd_constants,
    "photon": cmd_photon,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "n_te", 0) < 0 or getattr(args, "n_tm", 0) < 0:
            raise ConfigError("occupations must be non-negative")
        cfg = load_config(args.config, _overrides(args))
        return COMMANDS[args.command](cfg, args)
    except (ConfigError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
