"""Command line driver: configuration in, deterministic artifacts out.

Subcommands: spectrum, sweep, field, calr, selfcheck.  One YAML config per
run; no interactive mode.  Exit codes: 0 success, 2 configuration errors
(with location where the parser provides one), 3 numeric failures.  A
manifest.json with the config hash, library version, wall time and status
is written to the output directory even when a run fails.
"""
from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .artifacts import ManifestWriter, write_csv, write_heatmap_svg, write_line_svg
from .calr import calr_energy, recipe_config, tune_p
from .fields import eval_total_field, polar_grid
from .media import AnnulusGeometry, LameParams
from .nocore import SourceModes, SourceTerm, solve_nocore, sweep
from .np_spectrum import np_eigensystem, np_matrix
from .potentials import vector_slp_eval


class ConfigError(ValueError):
    """Invalid or incomplete run configuration."""


def _get(cfg: dict, path: str, cast=None, default=..., choices=None):
    node = cfg
    parts = path.split(".")
    for key in parts:
        if not isinstance(node, dict) or key not in node:
            if default is not ...:
                return default
            raise ConfigError(f"missing required key '{path}'")
        node = node[key]
    if choices is not None and node not in choices:
        raise ConfigError(f"key '{path}' must be one of {sorted(choices)}, got {node!r}")
    if cast is not None:
        try:
            return cast(node)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"key '{path}': {exc}") from exc
    return node


def _as_complex(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise ValueError(f"expected a number or [re, im] pair, got {v!r}")


def _material(cfg: dict, path: str) -> LameParams:
    lam = _get(cfg, f"{path}.lam", _as_complex)
    mu = _get(cfg, f"{path}.mu", _as_complex)
    return LameParams(lam, mu)


def _modes(cfg: dict) -> list[int]:
    node = _get(cfg, "modes")
    if isinstance(node, dict):
        start = _get(node, "start", int)
        stop = _get(node, "stop", int)
        return list(range(start, stop + 1))
    if isinstance(node, list):
        return [int(v) for v in node]
    raise ConfigError("key 'modes' must be a list or {start, stop}")


def _source(cfg: dict, path: str = "source") -> SourceModes:
    terms_node = _get(cfg, f"{path}.terms")
    if not isinstance(terms_node, list) or not terms_node:
        raise ConfigError(f"key '{path}.terms' must be a nonempty list")
    terms = []
    for i, t in enumerate(terms_node):
        if not isinstance(t, dict):
            raise ConfigError(f"key '{path}.terms[{i}]' must be a mapping")
        try:
            n = _get(t, "n", int)
            k1 = _as_complex(t.get("kappa1", 0.0))
            k2 = _as_complex(t.get("kappa2", 0.0))
            terms.append(SourceTerm(n, k1, k2))
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"key '{path}.terms[{i}]': {exc}") from exc
    try:
        return SourceModes(tuple(terms))
    except ValueError as exc:
        raise ConfigError(f"key '{path}.terms': {exc}") from exc


def _run_spectrum(cfg: dict, out: Path, manifest: ManifestWriter, args) -> None:
    p = _material(cfg, "materials.matrix")
    omega = _get(cfg, "omega", float)
    radius = _get(cfg, "geometry.radius", float)
    rows = []
    for n in _modes(cfg):
        es = np_eigensystem(np_matrix(p, omega, radius, n))
        x1, x2 = es.eigenvalues
        rows.append((n, x1.real, x1.imag, x2.real, x2.imag, es.case_tag.value))
    path = write_csv(
        out / "spectrum.csv",
        ["n", "re_xi1", "im_xi1", "re_xi2", "im_xi2", "case"],
        rows,
    )
    manifest.add_output(path)
    if args.svg:
        ns = [r[0] for r in rows]
        manifest.add_output(
            write_line_svg(out / "spectrum.svg", ns, [r[1] for r in rows],
                           title="re_xi1 vs n")
        )


def _run_sweep(cfg: dict, out: Path, manifest: ManifestWriter, args) -> None:
    p = _material(cfg, "materials.matrix")
    omega = _get(cfg, "omega", float)
    radius = _get(cfg, "geometry.radius", float)
    src = _source(cfg)
    axis = _get(cfg, "sweep.axis", str, choices={"re_c", "im_c"})
    steps = _get(cfg, "sweep.steps", int)
    if steps < 1:
        raise ConfigError("key 'sweep.steps' must be >= 1")
    result = sweep(
        axis,
        _get(cfg, "sweep.start", float),
        _get(cfg, "sweep.stop", float),
        steps,
        matrix=p,
        omega=omega,
        R=radius,
        source=src,
        c_other=_get(cfg, "sweep.c_other", float),
        scale=_get(cfg, "sweep.scale", str, default="linear",
                   choices={"linear", "log"}),
        threads=args.threads,
    )
    rows = [
        (q.value, q.abs_psi11, q.energy, q.condition, q.residual)
        for q in result.points
    ]
    path = write_csv(
        out / "sweep.csv",
        ["axis_value", "abs_psi11", "energy", "condition", "residual"],
        rows,
    )
    manifest.add_output(path)
    bad = [q for q in result.points if q.error]
    if bad:
        manifest.add_output(
            write_csv(out / "sweep_errors.csv", ["axis_value", "error"],
                      [(q.value, q.error) for q in bad])
        )
    peak = result.peak
    manifest.data["peak"] = {"axis_value": peak.value, "abs_psi11": peak.abs_psi11}
    if args.svg:
        manifest.add_output(
            write_line_svg(out / "sweep.svg", [r[0] for r in rows],
                           [r[1] for r in rows], log_y=True,
                           title=f"|psi11| vs {axis}")
        )


class _SlpField:
    """Raw single-layer mode density on a circle, for profile studies."""

    def __init__(self, p, omega, R, n, density):
        self.p, self.omega, self.R, self.n, self.density = p, omega, R, n, density

    def displacement(self, x):
        return vector_slp_eval(self.p, self.omega, self.R, self.n, self.density, x)

    def region(self, x):
        return "shell" if math.hypot(x[0], x[1]) < self.R else "exterior"


def _field_object(cfg: dict, args):
    kind = _get(cfg, "field.kind", str, choices={"slp", "nocore", "calr"})
    omega = _get(cfg, "omega", float)
    if kind == "slp":
        p = _material(cfg, "materials.matrix")
        radius = _get(cfg, "geometry.radius", float)
        obj = _SlpField(
            p, omega, radius,
            _get(cfg, "field.n", int),
            _get(cfg, "field.density", str, default="nu", choices={"nu", "t"}),
        )
        return obj, (radius,)
    if kind == "nocore":
        p = _material(cfg, "materials.matrix")
        radius = _get(cfg, "geometry.radius", float)
        shell = _material(cfg, "materials.shell")
        field = solve_nocore(shell, p, omega, radius, _source(cfg))
        return field, (radius,)
    geo = AnnulusGeometry(
        _get(cfg, "geometry.r_inner", float), _get(cfg, "geometry.r_outer", float)
    )
    cs_cfg, pinned = _calr_config(cfg, geo, omega)
    if not pinned:
        raise ConfigError(
            "field kind 'calr' needs an explicit 'calr.p' (run the calr "
            "command first to tune it)"
        )
    src = _source(cfg)
    from .calr import CoreShellField, solve_calr_mode

    sols = tuple(solve_calr_mode(cs_cfg, t) for t in src.terms)
    return CoreShellField(cs_cfg, sols, src), (geo.r_inner, geo.r_outer)


def _run_field(cfg: dict, out: Path, manifest: ManifestWriter, args) -> None:
    obj, interfaces = _field_object(cfg, args)
    rnode = _get(cfg, "field.radii")
    rsteps = _get(rnode, "steps", int)
    if rsteps < 1:
        raise ConfigError("key 'field.radii.steps' must be >= 1")
    radii = np.linspace(
        _get(rnode, "start", float), _get(rnode, "stop", float), rsteps
    )
    ntheta = _get(cfg, "field.thetas", int, default=64)
    thetas = [2.0 * math.pi * k / ntheta for k in range(ntheta)]
    grid = eval_total_field(obj, polar_grid(radii, thetas), interfaces)
    rows = []
    for pt, val, reg in zip(grid.points, grid.values, grid.regions):
        amp = float(np.hypot(abs(val[0]), abs(val[1])))
        rows.append(
            (pt[0], pt[1], val[0].real, val[0].imag, val[1].real, val[1].imag,
             amp, reg)
        )
    path = write_csv(
        out / "field.csv",
        ["x", "y", "re_u1", "im_u1", "re_u2", "im_u2", "abs_u", "region"],
        rows,
    )
    manifest.add_output(path)
    if args.svg:
        finite = [r for r in rows if math.isfinite(r[6])]
        manifest.add_output(
            write_heatmap_svg(out / "field.svg", [r[0] for r in finite],
                              [r[1] for r in finite], [r[6] for r in finite],
                              title="|u|")
        )


def _calr_config(cfg: dict, geo: AnnulusGeometry, omega: float):
    matrix = _material(cfg, "materials.matrix")
    core = _material(cfg, "materials.core")
    n0 = _get(cfg, "calr.n0", int)
    delta = _get(cfg, "calr.delta", float, default=None)
    p_node = _get(cfg, "calr.p", default=None)
    p_tune = _as_complex(p_node) if p_node is not None else 0.0
    cs = recipe_config(geo, matrix, core, omega, n0, p_tune=p_tune, delta=delta)
    return cs, p_node is not None


def _run_calr(cfg: dict, out: Path, manifest: ManifestWriter, args) -> None:
    import json

    geo = AnnulusGeometry(
        _get(cfg, "geometry.r_inner", float), _get(cfg, "geometry.r_outer", float)
    )
    omega = _get(cfg, "omega", float)
    cs_cfg, pinned = _calr_config(cfg, geo, omega)
    scan_rows = None
    if not pinned:
        scan = _get(cfg, "calr.scan", default={})
        tuned = tune_p(
            cs_cfg,
            lo=_get(scan, "lo", float, default=None),
            hi=_get(scan, "hi", float, default=None),
            steps=_get(scan, "steps", int, default=241),
            min_dip_ratio=_get(scan, "min_dip_ratio", float, default=0.1),
        )
        scan_rows = list(zip(tuned.scan_p.tolist(), tuned.scan_abs_det.tolist()))
        cs_cfg = recipe_config(
            geo,
            _material(cfg, "materials.matrix"),
            _material(cfg, "materials.core"),
            omega,
            _get(cfg, "calr.n0", int),
            p_tune=tuned.p,
            delta=_get(cfg, "calr.delta", float, default=None),
        )
    report = calr_energy(
        cs_cfg,
        _source(cfg),
        energy_threshold=_get(cfg, "calr.energy_threshold", float, default=1e4),
        bound_factor=_get(cfg, "calr.bound_factor", float, default=10.0),
    )
    payload = {
        "det_m": [report.det_m.real, report.det_m.imag],
        "abs_det": report.abs_det,
        "tuned_p": [report.tuned_p.real, report.tuned_p.imag],
        "critical_radius": report.critical_radius,
        "energy": report.energy,
        "exterior_bound": report.exterior_bound,
        "reference_bound": report.reference_bound,
        "verdict": report.verdict.value,
        "per_mode": [
            {
                "n": s.n,
                "condition": s.condition,
                "residual": s.residual,
                "near_singular": s.near_singular,
            }
            for s in report.solutions
        ],
    }
    path = out / "calr_report.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                    encoding="ascii")
    manifest.add_output(path)
    if scan_rows is not None:
        manifest.add_output(
            write_csv(out / "det_scan.csv", ["p", "abs_det"], scan_rows)
        )
        if args.svg:
            manifest.add_output(
                write_line_svg(out / "det_scan.svg", [r[0] for r in scan_rows],
                               [r[1] for r in scan_rows], log_y=True,
                               title="|det M| vs p")
            )


def _run_selfcheck(cfg: dict, out: Path, manifest: ManifestWriter, args) -> None:
    from .selfcheck import run_all

    results = run_all()
    rows = []
    ok = True
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"{r.name:28s} worst {r.worst:.3e}  bound {r.bound:.1e}  {status}")
        rows.append((r.name, r.worst, r.bound, status))
        ok = ok and r.passed
    manifest.add_output(
        write_csv(out / "selfcheck.csv", ["check", "worst", "bound", "status"], rows)
    )
    if not ok:
        raise ArithmeticError("self-check failed")


_COMMANDS = {
    "spectrum": _run_spectrum,
    "sweep": _run_sweep,
    "field": _run_field,
    "calr": _run_calr,
    "selfcheck": _run_selfcheck,
}


def _load_config(path: str | None, command: str) -> tuple[dict, bytes]:
    if path is None:
        if command == "selfcheck":
            return {}, b""
        raise ConfigError("--config is required for this command")
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    try:
        cfg = yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark else ""
        raise ConfigError(f"config parse error{where}: {exc}") from exc
    if cfg is None:
        cfg = {}
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a mapping")
    return cfg, raw


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="elastodisk",
        description="Elastodynamic resonance computations for disks and core-shell structures",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", default=None, help="YAML run configuration")
        sp.add_argument("--out", default="out", help="output directory")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--svg", action="store_true", help="also emit SVG plots")
    args = parser.parse_args(argv)

    out = Path(args.out)
    try:
        cfg, raw = _load_config(args.config, args.command)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        manifest = ManifestWriter(out, args.command, b"")
        manifest.finish(2, str(exc))
        return 2

    manifest = ManifestWriter(out, args.command, raw)
    try:
        _COMMANDS[args.command](cfg, out, manifest, args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        manifest.finish(2, str(exc))
        return 2
    except Exception as exc:  # numeric / runtime failure
        print(f"error [{type(exc).__name__}]: {exc}", file=sys.stderr)
        manifest.finish(3, f"{type(exc).__name__}: {exc}")
        return 3
    manifest.finish(0)
    return 0


if __name__ == "__main__":
    sys.exit(main())
