"""Command-line front end.

Subcommands: construct (build a function spec), trace (ray residuals),
growth (circle scans + order fit), domain (angular measure and Carleman
bounds, optionally walk-on-spheres), check (bundled verification suite).

Every run writes a manifest/1 JSON echoing the fully resolved
configuration, so outputs are reproducible from the manifest alone.
Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical nonconvergence.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys as _sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .classic import ClassicDCA, TermCapExceeded
from .construct import ConstructedF, c_constant, d_constant
from .geometry import (
    DegenerateRadiusError,
    PathSystem,
    angular_measure,
    carleman_report,
    check_sector_inequality,
)
from .growth import (
    Classic,
    Constructed,
    InsufficientDynamicRangeError,
    fit_order,
    max_on_circle,
    spec_from_json_dict,
    spec_to_json_dict,
    trace_ray,
)
from .quadrature import QuadratureNonconvergence
from .specs import Polynomial, Series
from .wos import WosConfig, estimate_harmonic_measure

_F = "%.17g"  # stable floating-point formatting for CSV


class UsageError(ValueError):
    pass


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace("i", "j").replace(" ", ""))
    except ValueError:
        raise UsageError("cannot parse complex number %r" % text)


def parse_target(text: str):
    """Mini-language: poly:c0,c1,...  |  series:@file  |  classic:n."""
    kind, sep, body = text.partition(":")
    if not sep or not body:
        raise UsageError("malformed spec %r (expected kind:payload)" % text)
    if kind == "poly":
        return Polynomial([_parse_complex(c) for c in body.split(",")])
    if kind == "series":
        if not body.startswith("@"):
            raise UsageError("series payload must be @file")
        d = json.loads(Path(body[1:]).read_text())
        spec = spec_from_json_dict(d)
        if not isinstance(spec, Series):
            raise UsageError("%s is not a series funcspec" % body[1:])
        return spec
    if kind == "classic":
        return Classic(ClassicDCA(int(body)))
    raise UsageError("unknown spec kind %r" % kind)


def parse_radii(text: str) -> list:
    """`a:b:step` grid or comma list."""
    text = text.strip()
    if not text:
        raise UsageError("empty radii list")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError("radii grid must be a:b:step")
        a, b, step = (float(p) for p in parts)
        if step <= 0 or b < a:
            raise UsageError("bad radii grid %r" % text)
        out = []
        r = a
        while r <= b * (1 + 1e-12):
            out.append(round(r, 12))
            r += step
        return out
    return [float(p) for p in text.split(",")]


def _load_spec(args):
    if getattr(args, "spec", None):
        return spec_from_json_dict(json.loads(Path(args.spec).read_text()))
    if getattr(args, "f", None):
        return parse_target(args.f)
    raise UsageError("need --spec FILE or --f MINISPEC")


def _load_system(args) -> PathSystem:
    if getattr(args, "system", None):
        return PathSystem.from_json(Path(args.system).read_text())
    if getattr(args, "rays", None):
        return PathSystem.equally_spaced_rays(args.rays)
    raise UsageError("need --system FILE or --rays N")


def _write_manifest(args, command: str) -> None:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    doc = {"format": "manifest/1", "command": command, "config": cfg}
    path = Path(args.manifest)
    path.write_text(json.dumps(doc, indent=2, default=str) + "\n")


def _open_out(path: str):
    if path == "-":
        return _sys.stdout, False
    return open(path, "w"), True


# ---------------------------------------------------------------------------
# subcommands

def cmd_construct(args) -> int:
    targets = [parse_target(t) for t in args.a]
    for t in targets:
        if not isinstance(t, (Polynomial, Series)):
            raise UsageError("construction targets must be poly: or series:@")
    if len(targets) != args.n:
        raise UsageError("need exactly n = %d --a targets, got %d" % (args.n, len(targets)))
    cf = ConstructedF(args.n, tuple(targets), tol=args.tol)
    if args.n == 1:
        print("warning: n = 1 is degenerate (f is asymptotic to a_1 itself)")
    Path(args.out).write_text(
        json.dumps(spec_to_json_dict(Constructed(cf)), indent=2) + "\n"
    )
    if args.n >= 2:
        print("c_%d = %.12g" % (args.n, c_constant(args.n)))
        print("d_%d = %.12g" % (args.n, d_constant(args.n)))
    print("wrote %s" % args.out)
    _write_manifest(args, "construct")
    return 0


def cmd_trace(args) -> int:
    spec = _load_spec(args)
    if not isinstance(spec, Constructed):
        raise UsageError("trace needs a constructed funcspec")
    radii = parse_radii(args.radii)
    if not radii:
        raise UsageError("empty radii list")
    out, close = _open_out(args.out)
    try:
        out.write("ray_index,r,log10_abs_residual\n")
        for j in range(1, spec.cf.n + 1):
            for r, lg in trace_ray(spec, j, radii):
                out.write(("%d," + _F + "," + _F + "\n") % (j, r, lg))
    finally:
        if close:
            out.close()
    _write_manifest(args, "trace")
    return 0


def cmd_growth(args) -> int:
    spec = _load_spec(args)
    radii = parse_radii(args.radii)
    if len(radii) < 2:
        raise InsufficientDynamicRangeError("need several radii for a fit")

    def scan(r):
        return max_on_circle(spec, r, coarse=args.coarse)

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as ex:
            samples = list(ex.map(scan, radii))
    else:
        samples = [scan(r) for r in radii]
    out, close = _open_out(args.out)
    try:
        out.write("r,log_max_mod,argmax_theta,domain_id\n")
        for s in samples:
            out.write(
                (_F + "," + _F + "," + _F + ",%s\n")
                % (s.r, s.log_max_mod, s.argmax_theta, "" if s.domain_id is None else s.domain_id)
            )
    finally:
        if close:
            out.close()
    fit = fit_order(samples)
    doc = {
        "rho_hat": fit.rho_hat,
        "intercept": fit.intercept,
        "r_range": list(fit.r_range),
        "residual_rms": fit.residual_rms,
    }
    Path(args.fit_out).write_text(json.dumps(doc, indent=2) + "\n")
    print("rho_hat = %.6g" % fit.rho_hat)
    _write_manifest(args, "growth")
    return 0


def cmd_domain(args) -> int:
    sysm = _load_system(args)
    radii = parse_radii(args.radii)
    reports = []
    for j in range(1, sysm.n + 1):
        rep = carleman_report(sysm, j, args.R1, args.R, tol=args.tol)
        reports.append({"j": j, **rep.to_json_dict()})
    sector = []
    for t in radii:
        lhs, rhs, holds = check_sector_inequality(sysm, t)
        sector.append({"t": t, "lhs": lhs, "rhs": rhs, "holds": holds})
    doc = {"carleman": reports, "sector_inequality": sector}
    if args.wos:
        z1 = _parse_complex(args.z1)
        cfg = WosConfig(n_walks=args.walks, seed=args.seed)
        est = estimate_harmonic_measure(sysm, args.j, args.R, z1, cfg)
        doc["wos"] = {
            "j": args.j,
            "z1": [z1.real, z1.imag],
            "seed": args.seed,
            "n_walks": args.walks,
            "omega_hat": est.omega_hat,
            "ci95_halfwidth": est.ci95_halfwidth,
            "hits": est.hits,
            "truncated_walks": est.truncated_walks,
            "warning": est.warning,
        }
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    csv_path = Path(args.slices_out)
    with csv_path.open("w") as fh:
        fh.write("j,t,arc_start,arc_end,phi\n")
        for j in range(1, sysm.n + 1):
            for t in radii:
                sl = angular_measure(sysm, j, t)
                for a, b in sl.arcs:
                    fh.write(
                        ("%d," + _F + "," + _F + "," + _F + "," + _F + "\n")
                        % (j, t, a, b, sl.phi)
                    )
    print("wrote %s and %s" % (args.out, csv_path))
    _write_manifest(args, "domain")
    return 0


def _bundled_checks():
    """Named fast verification checks for `check`; each returns
    (measured, expected, tolerance_note, ok)."""

    def chk_constants():
        got = c_constant(2)
        want = math.sqrt(math.pi) / 2.0
        return got, want, "|diff| <= 1e-9", abs(got - want) <= 1e-9

    def chk_carleman_rays():
        sysm = PathSystem.equally_spaced_rays(2)
        rep = carleman_report(sysm, 1, 1.0, 10.0)
        want = (math.pi / 8.0) * 10.0
        return rep.logM_lower, want, "|diff| <= 1e-6", abs(rep.logM_lower - want) <= 1e-6

    def chk_sector():
        sysm = PathSystem.equally_spaced_rays(3)
        lhs, rhs, holds = check_sector_inequality(sysm, 2.0)
        return lhs, rhs, "lhs >= rhs", holds

    def chk_classic_order():
        spec = Classic(ClassicDCA(2))
        samples = [max_on_circle(spec, float(r), coarse=64) for r in range(5, 31)]
        fit = fit_order(samples)
        return fit.rho_hat, 1.0, "|diff| <= 0.2", abs(fit.rho_hat - 1.0) <= 0.2

    def chk_wos_dominance():
        sysm = PathSystem.equally_spaced_rays(2)
        z1 = 2.0 * cmath.exp(1j * math.pi / 2)
        est = estimate_harmonic_measure(
            sysm, 1, 8.0, z1, WosConfig(n_walks=20000, seed=7)
        )
        from .geometry import carleman_integral

        bound = (8.0 / math.pi) * math.exp(
            -math.pi * carleman_integral(sysm, 1, abs(z1), 8.0)
        )
        ok = est.omega_hat <= bound + 3.0 * est.ci95_halfwidth
        return est.omega_hat, bound, "omega_hat <= bound + 3 ci95", ok

    return {
        "construct-constant": chk_constants,
        "carleman-rays": chk_carleman_rays,
        "sector-inequality": chk_sector,
        "classic-order": chk_classic_order,
        "wos-dominance": chk_wos_dominance,
    }


def cmd_check(args) -> int:
    checks = _bundled_checks()
    results = []
    failed = []
    for name, fn in checks.items():
        if args.filter and args.filter not in name:
            continue
        measured, expected, note, ok = fn()
        results.append(
            {
                "criterion": name,
                "measured": measured,
                "expected": expected,
                "tolerance": note,
                "pass": bool(ok),
            }
        )
        if not ok:
            failed.append(name)
    if not results:
        raise UsageError("filter %r matched no checks" % args.filter)
    Path(args.out).write_text(json.dumps(results, indent=2) + "\n")
    for r in results:
        print("%-24s %s" % (r["criterion"], "PASS" if r["pass"] else "FAIL"))
    _write_manifest(args, "check")
    if failed:
        print("failed: %s" % ", ".join(failed))
        return 1
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="asymlab")
    p.add_argument("--manifest", default="run_manifest.json", help="manifest/1 output path")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a constructed-function spec")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--a", action="append", default=[], help="target (poly:... or series:@file), repeat n times")
    c.add_argument("--tol", type=float, default=1e-9)
    c.add_argument("--out", default="funcspec.json")
    c.set_defaults(func=cmd_construct)

    t = sub.add_parser("trace", help="ray residual CSV for a constructed spec")
    t.add_argument("--spec")
    t.add_argument("--radii", required=True)
    t.add_argument("--out", default="-")
    t.set_defaults(func=cmd_trace)

    g = sub.add_parser("growth", help="circle scans and order fit")
    g.add_argument("--spec")
    g.add_argument("--f", help="inline spec (poly:..., classic:n, series:@file)")
    g.add_argument("--radii", required=True)
    g.add_argument("--coarse", type=int, default=128)
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--out", default="growth.csv")
    g.add_argument("--fit-out", default="orderfit.json")
    g.set_defaults(func=cmd_growth)

    d = sub.add_parser("domain", help="angular measures and Carleman bounds")
    d.add_argument("--system", help="pathsystem/1 JSON file")
    d.add_argument("--rays", type=int, help="use n equally spaced rays")
    d.add_argument("--j", type=int, default=1)
    d.add_argument("--R1", type=float, default=1.0)
    d.add_argument("--R", type=float, required=True)
    d.add_argument("--radii", required=True, help="radii for sector checks and slice CSV")
    d.add_argument("--tol", type=float, default=1e-10)
    d.add_argument("--wos", action="store_true")
    d.add_argument("--z1", default="1+1i")
    d.add_argument("--walks", type=int, default=10000)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--out", default="domain.json")
    d.add_argument("--slices-out", default="slices.csv")
    d.set_defaults(func=cmd_domain)

    k = sub.add_parser("check", help="bundled verification suite")
    k.add_argument("--filter", default="")
    k.add_argument("--out", default="check.json")
    k.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except (UsageError, ValueError, FileNotFoundError, TypeError) as e:
        print("error: %s" % e, file=_sys.stderr)
        return 2
    except (QuadratureNonconvergence, TermCapExceeded, DegenerateRadiusError) as e:
        print("nonconvergence: %s" % e, file=_sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
