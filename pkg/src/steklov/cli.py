"""Command-line interface over the eigenvalue, surface, and oracle modules.

Exit codes: 0 success, 1 usage/domain errors, 2 verification-suite failure.
JSON output renders every float with 17 significant digits so values
round-trip exactly; CSV output does the same.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import asdict, is_dataclass
from enum import Enum

import numpy as np

from . import extrema, surfaces
from .branches import (
    SurfaceKind,
    sigma_bar_grid,
    spectrum,
)
from .crossings import aux_inequalities, solve_crossing, solve_t10
from .dtn import OracleProblem, assemble_dtn, closed_form_sigma, convergence_study
from .exceptions import SteklovError
from .jacobi import jacobi_eigenvalues
from .mesh import MeshFormat, export_mesh
from .surfaces import FamilyKind, make_family, verify_identities

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _fmt(v) -> str:
    return format(float(v), ".17g")


def _jsonify(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {_jsonify(v, indent + 1)}' for k, v in value.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        seq = list(value)
        if not seq:
            return "[]"
        items = ", ".join(_jsonify(v, indent + 1) for v in seq)
        return "[" + items + "]"
    if isinstance(value, Enum):
        return f'"{value.value}"'
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if math.isnan(value) or math.isinf(value):
            return "null"
        return _fmt(value)
    if is_dataclass(value):
        return _jsonify(asdict(value), indent)
    return '"' + str(value).replace('"', '\\"') + '"'


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _emit(text: str, path) -> None:
    fh, close = _open_out(path)
    fh.write(text)
    if not text.endswith("\n"):
        fh.write("\n")
    if close:
        fh.close()


def _emit_csv(header, rows, path) -> None:
    fh, close = _open_out(path)
    writer = csv.writer(fh)
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    if close:
        fh.close()


def _kind(name: str) -> SurfaceKind:
    return SurfaceKind.MOBIUS_BAND if name == "mobius" else SurfaceKind.ANNULUS


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError as exc:
        raise SteklovError(f"grid must look like 160x160, got {text!r}") from exc


# --------------------------------------------------------------------------
# subcommands


def _cmd_spectrum(args) -> int:
    kind = _kind(args.kind)
    entries = spectrum(kind, args.T, args.count)
    rows = []
    for entry in entries:
        for j in range(entry.index_range[0], entry.index_range[1] + 1):
            if j > args.count:
                break
            rows.append(
                {
                    "index": j,
                    "value": entry.value,
                    "branch": entry.branch.kind.value,
                    "mode": entry.branch.mode,
                    "multiplicity": entry.multiplicity,
                }
            )
    if args.csv:
        _emit_csv(
            ["index", "value", "branch", "mode", "multiplicity"],
            [
                [r["index"], _fmt(r["value"]), r["branch"], r["mode"], r["multiplicity"]]
                for r in rows
            ],
            args.out,
        )
    elif args.json:
        _emit(_jsonify({"kind": args.kind, "T": args.T, "spectrum": rows}), args.out)
    else:
        lines = [f"normalized spectrum  kind={args.kind}  T={_fmt(args.T)}"]
        for r in rows:
            lines.append(
                f"  sigma_bar_{r['index']:<3d} = {_fmt(r['value']):<24s}"
                f" {r['branch']}:{r['mode']} (mult {r['multiplicity']})"
            )
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    kind = _kind(args.kind)
    j_list = sorted({int(j) for j in args.j.split(",")})
    if args.steps < 2:
        raise SteklovError(f"steps must be >= 2, got {args.steps}")
    if not 0.0 < args.t_min < args.t_max:
        raise SteklovError("need 0 < t-min < t-max")
    grid = np.geomspace(args.t_min, args.t_max, args.steps)
    values = sigma_bar_grid(kind, max(j_list), grid)
    header = (
        ["T"]
        + [f"sigma_bar_{j}" for j in j_list]
        + [f"branch_{j}" for j in j_list]
    )
    rows = []
    for i, T in enumerate(grid):
        labels = []
        for j in j_list:
            for entry in spectrum(kind, float(T), j):
                if entry.index_range[0] <= j <= entry.index_range[1]:
                    labels.append(entry.branch.label())
                    break
        rows.append(
            [_fmt(T)] + [_fmt(values[j - 1, i]) for j in j_list] + labels
        )
    _emit_csv(header, rows, args.out)
    return EXIT_OK


def _cmd_crossings(args) -> int:
    kind = _kind(args.kind)
    records = []
    if kind is SurfaceKind.MOBIUS_BAND:
        for k in range(1, args.max_mode + 1):
            for l in range(1, k + 1):
                point = solve_crossing(2.0 * k, 2.0 * l - 1.0)
                records.append(
                    {
                        "k": k,
                        "l": l,
                        "modulus": point.x,
                        "height": point.height,
                        "normalized_value": 2.0 * math.pi * point.height,
                        "residual": point.residual,
                    }
                )
    else:
        t10 = solve_t10()
        for m in range(1, args.max_mode + 1):
            records.append(
                {
                    "m": m,
                    "n": 0,
                    "modulus": t10 / m,
                    "height": m / t10,
                    "normalized_value": 4.0 * math.pi * m / t10,
                    "residual": 0.0,
                }
            )
            for n in range(1, m):
                point = solve_crossing(float(m), float(n))
                records.append(
                    {
                        "m": m,
                        "n": n,
                        "modulus": point.x,
                        "height": point.height,
                        "normalized_value": 4.0 * math.pi * point.height,
                        "residual": point.residual,
                    }
                )
    keys = list(records[0].keys())
    if args.csv:
        _emit_csv(
            keys,
            [[r[k] if isinstance(r[k], int) else _fmt(r[k]) for k in keys] for r in records],
            args.out,
        )
    elif args.json:
        _emit(_jsonify({"kind": args.kind, "crossings": records}), args.out)
    else:
        lines = [f"branch crossings  kind={args.kind}  max_mode={args.max_mode}"]
        for r in records:
            ab = f"({r[keys[0]]},{r[keys[1]]})"
            lines.append(
                f"  {ab:>8s}  T = {_fmt(r['modulus']):<24s}"
                f" value = {_fmt(r['normalized_value'])}"
            )
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def _cmd_suprema(args) -> int:
    kind = _kind(args.kind)
    if kind is SurfaceKind.MOBIUS_BAND:
        result = extrema.sup_sigma_mobius(args.j)
    else:
        result = extrema.sup_sigma_annulus(args.j)
    payload = {
        "kind": args.kind,
        "j": result.j,
        "value": result.value,
        "attained": result.attained,
        "modulus": result.attaining_modulus,
    }
    if args.json:
        _emit(_jsonify(payload), args.out)
    else:
        where = (
            f"attained at T = {_fmt(result.attaining_modulus)}"
            if result.attained
            else "not attained (limit as T -> infinity)"
        )
        _emit(
            f"sup sigma_bar_{result.j} ({args.kind}) = {_fmt(result.value)}  {where}",
            args.out,
        )
    return EXIT_OK


def _cmd_critical_set(args) -> int:
    kind = _kind(args.kind)
    records = extrema.critical_set(kind, args.max_mode)
    payload = [
        {
            "modulus": r.modulus,
            "value": r.value,
            "branches": [b.label() for b in r.branches],
            "character": r.character.value,
            "eigen_multiplicity": r.eigen_multiplicity,
            "indices": list(r.indices),
        }
        for r in records
    ]
    if args.json:
        _emit(_jsonify({"kind": args.kind, "critical_set": payload}), args.out)
    elif args.csv:
        _emit_csv(
            ["modulus", "value", "branches", "character", "eigen_multiplicity", "indices"],
            [
                [
                    _fmt(p["modulus"]),
                    _fmt(p["value"]),
                    "+".join(p["branches"]),
                    p["character"],
                    p["eigen_multiplicity"],
                    " ".join(str(i) for i in p["indices"]),
                ]
                for p in payload
            ],
            args.out,
        )
    else:
        lines = [f"critical metrics  kind={args.kind}  max_mode={args.max_mode}"]
        for p in payload:
            lines.append(
                f"  T = {_fmt(p['modulus']):<24s} value = {_fmt(p['value']):<24s}"
                f" {p['character']} for j in {p['indices']} (mult {p['eigen_multiplicity']})"
            )
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def _cmd_surface(args) -> int:
    family = FamilyKind(args.family)
    fam = make_family(family, m=args.m, n=args.n)
    n_t, n_theta = _parse_grid(args.grid)
    projection = tuple(int(p) for p in args.projection.split(","))
    mesh = export_mesh(
        fam, n_t, n_theta, MeshFormat(args.format), args.out, projection=projection
    )
    sys.stderr.write(
        f"wrote {args.out}: {len(mesh.vertices)} vertices, {len(mesh.faces)} faces, "
        f"T* = {_fmt(fam.T_star)}\n"
    )
    return EXIT_OK


def _cmd_oracle(args) -> int:
    kind = _kind(args.kind)
    n_t, n_theta = _parse_grid(args.grid)
    problem = OracleProblem(kind=kind, T=args.T, grid=(n_t, n_theta))
    dtn = assemble_dtn(problem)
    eigs = jacobi_eigenvalues(dtn.entries)[: args.count]
    exact = closed_form_sigma(kind, args.T, 1.0, max(args.count - 1, 1))
    payload = {
        "kind": args.kind,
        "T": args.T,
        "grid": [n_t, n_theta],
        "asymmetry": dtn.asymmetry,
        "eigenvalues": list(eigs),
        "closed_form": [0.0] + list(exact[: args.count - 1]),
    }
    if args.json:
        _emit(_jsonify(payload), args.out)
    else:
        lines = [
            f"discrete boundary operator  kind={args.kind}  T={_fmt(args.T)}"
            f"  grid={n_t}x{n_theta}",
            f"  assembly asymmetry: {_fmt(dtn.asymmetry)}",
        ]
        for i, (num, ref) in enumerate(zip(eigs, payload["closed_form"])):
            lines.append(
                f"  sigma_{i:<3d} oracle = {_fmt(num):<24s} closed form = {_fmt(ref)}"
            )
        _emit("\n".join(lines), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# verification suites


def _suite_lemmas(max_mode: int):
    checks = []
    grid = np.geomspace(0.05, 10.0, 64)
    for t in (0.3, 1.0, 2.5):
        aux = aux_inequalities(t)
        checks.append((f"auxiliary positivity at t={t}", min(aux.f_val, aux.g_prime, aux.tanh_gap) > 0))
    values = sigma_bar_grid(SurfaceKind.MOBIUS_BAND, 2 * max_mode, grid)
    checks.append(("spectrum ordering on grid", bool(np.all(np.diff(values, axis=0) >= -1e-12))))
    for k in range(1, max_mode + 1):
        point = solve_crossing(2.0 * k, 1.0)
        checks.append((f"crossing residual T_{{{k},1}}", abs(point.residual) <= 1e-12))
    margins = [r.margin for r in extrema.verify_first_intersection_max(max_mode)]
    checks.append(("first-intersection margins positive", all(m > 0 for m in margins) if margins else True))
    records = extrema.verify_no_asymptote(min(2 * max_mode, 20))
    t10 = solve_t10()
    ok = all(
        r.margin > 0 and abs(2 * r.k * r.t_k - t10) < 1e-12 and r.t_k < r.t_k1
        for r in records
    )
    checks.append(("no-asymptote margins and identity", ok))
    return checks


def _suite_suprema(max_mode: int):
    checks = []
    for kind in SurfaceKind:
        sup = extrema.sup_sigma_mobius if kind is SurfaceKind.MOBIUS_BAND else extrema.sup_sigma_annulus
        for j in range(1, 2 * max_mode + 1):
            result = sup(j)
            grid_value, _ = extrema.grid_supremum(kind, j)
            ok = grid_value <= result.value * (1.0 + 1e-9) and (
                not result.attained or grid_value >= result.value * (1.0 - 1e-6)
            )
            checks.append((f"{kind.value} sup sigma_bar_{j} vs grid", ok))
    return checks


_SURFACE_SET = (
    (FamilyKind.CATENOID_B3, None, 1),
    (FamilyKind.CATENOID_B3, None, 2),
    (FamilyKind.ANNULUS_B4, 2, 1),
    (FamilyKind.ANNULUS_B4, 3, 2),
    (FamilyKind.MOBIUS_B4, 2, 1),
    (FamilyKind.MOBIUS_B4, 4, 3),
)


def _suite_surfaces(_max_mode: int):
    checks = []
    for family, m, n in _SURFACE_SET:
        fam = make_family(family, m=m, n=n)
        rep = verify_identities(fam)
        name = f"{family.value}({m},{n})" if m else f"{family.value}({n})"
        ok = (
            rep.conformal_residual <= 1e-12
            and rep.boundary_norm_residual <= 1e-12
            and rep.stress_energy_residual <= 1e-12
            and rep.free_boundary_angle <= 1e-10
            and rep.harmonic_order >= 1.8
        )
        checks.append((f"identities {name}", ok))
        sample = surfaces.make_admissible(
            fam,
            surfaces.QFormSample(
                h_tt=lambda t, th: np.cos(th) + 0.3 * t,
                h_ttheta=lambda t, th: np.sin(2.0 * th) * t,
                h_thetatheta=lambda t, th: np.cos(th) + 0.3 * t,
            ),
        )
        total = surfaces.q_form_sum(fam, sample)
        checks.append((f"q-form sum {name}", abs(total) <= 1e-6))
    return checks


def _suite_injectivity(_max_mode: int):
    checks = []
    for m, n in ((2, 1), (4, 1)):
        rep = surfaces.injectivity_scan(surfaces.mobius_b4(m, n))
        checks.append((f"mobius({m},{n}) injective", rep.injective))
    rep = surfaces.injectivity_scan(surfaces.annulus_b4(6, 3))
    checks.append(("annulus(6,3) covering degree 3", rep.covering_degree == 3))
    return checks


def _suite_oracle(_max_mode: int):
    checks = []
    for kind, T in ((SurfaceKind.ANNULUS, 1.0), (SurfaceKind.MOBIUS_BAND, 0.7)):
        problem = OracleProblem(kind=kind, T=T, grid=(40, 40))
        report = convergence_study(problem, [(20, 20), (40, 40), (80, 80)], n_eigs=4)
        checks.append(
            (f"oracle order {kind.value} T={T}", 1.5 <= report.observed_order <= 2.5)
        )
    return checks


_SUITES = {
    "lemmas": _suite_lemmas,
    "suprema": _suite_suprema,
    "surfaces": _suite_surfaces,
    "injectivity": _suite_injectivity,
    "oracle": _suite_oracle,
}


def _cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    lines = []
    failed = 0
    for name in names:
        for label, ok in _SUITES[name](args.max_mode):
            status = "pass" if ok else "FAIL"
            if not ok:
                failed += 1
            lines.append(f"  [{status}] {name:<12s} {label}")
    lines.append(f"{'all checks passed' if failed == 0 else f'{failed} check(s) FAILED'}")
    _emit("\n".join(lines), args.out)
    return EXIT_OK if failed == 0 else EXIT_VERIFY


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="steklov", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, kind=True):
        if kind:
            p.add_argument("--kind", choices=["annulus", "mobius"], required=True)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("spectrum", help="normalized spectrum at one modulus")
    common(p)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--count", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("sweep", help="eigenvalues over a log-spaced modulus grid")
    common(p)
    p.add_argument("--j", default="1", help="comma-separated eigenvalue indices")
    p.add_argument("--t-min", type=float, default=0.05)
    p.add_argument("--t-max", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=400)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("crossings", help="branch-crossing lattice")
    common(p)
    p.add_argument("--max-mode", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_crossings)

    p = sub.add_parser("suprema", help="supremum of one normalized eigenvalue")
    common(p)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_suprema)

    p = sub.add_parser("critical-set", help="critical moduli with classification")
    common(p)
    p.add_argument("--max-mode", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_critical_set)

    p = sub.add_parser("surface", help="export a mesh of an explicit family")
    p.add_argument("--family", choices=[f.value for f in FamilyKind], required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--grid", default="128x256")
    p.add_argument("--format", choices=[f.value for f in MeshFormat], default="obj")
    p.add_argument("--projection", default="0,1,2")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_surface)

    p = sub.add_parser("oracle", help="discrete boundary-operator spectrum")
    common(p)
    p.add_argument("--T", type=float, required=True)
    p.add_argument("--grid", default="80x80")
    p.add_argument("--count", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("verify", help="run the invariant verification suites")
    p.add_argument("--suite", choices=["all"] + list(_SUITES), default="all")
    p.add_argument("--max-mode", type=int, default=4)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SteklovError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
