"""Command-line front end.

Exit status: 0 when the computation ran, 2 for usage errors (bad flags,
unknown body, unreadable file), 3 for numerical domain errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import criteria, lattice
from .errors import ConstraintError, DomainError
from .geom import ConvexPolygon, gauge, load_polygon, regular, rotate
from .steiner import steiner_x1

EXIT_USAGE = 2
EXIT_DOMAIN = 3


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return f"{x:.6f}"


def parse_body(selector: str) -> tuple[ConvexPolygon, int | None]:
    """``regular:<n>`` or ``file:<path>``; returns the unit body and ``n`` if regular."""
    kind, _, arg = selector.partition(":")
    if kind == "regular":
        try:
            n = int(arg)
        except ValueError:
            raise UsageError(f"bad vertex count in {selector!r}") from None
        if n < 3:
            raise UsageError(f"regular polygons need n >= 3, got {n}")
        return regular(n), n
    if kind == "file":
        try:
            return load_polygon(arg), None
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc.strerror}") from None
        except (json.JSONDecodeError, ConstraintError) as exc:
            raise UsageError(f"bad polygon file {arg}: {exc}") from None
    raise UsageError(f"unknown body {selector!r} (expected regular:<n> or file:<path>)")


def body_name(selector: str, scale: float) -> str:
    kind, _, arg = selector.partition(":")
    base = f"H_{arg}" if kind == "regular" else Path(arg).name
    return base if scale == 1.0 else f"{fmt(scale)}*{base}"


def emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def dumps(obj) -> str:
    # Floats are written in shortest round-trip form.
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_zradius(args) -> int:
    K, n = parse_body(args.body)
    closed = criteria.z_closed_form(n) if n is not None else None
    oracle = None
    if not args.no_oracle:
        # Z(K) = max over rotations of c(o(K)), by c(lam K) = c(K)/lam.
        oracle = lattice.has_covering_property(K, args.sweep, args.grid, args.refine).max_radius
    if args.format == "json":
        emit(dumps({"body": args.body, "closed_form": closed, "oracle": oracle,
                    "sweep": args.sweep, "grid": args.grid, "refine": args.refine}), args.output)
        return 0
    lines = []
    if closed is not None:
        lines.append(fmt(closed))
    if oracle is not None:
        lines.append(f"oracle {fmt(oracle)} (sweep {args.sweep}, grid {args.grid}, "
                     f"refine {args.refine}; numerical, not rigorous)")
    if closed is None and oracle is None:
        lines.append("no closed form known for this body")
    emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_check(args) -> int:
    K, _ = parse_body(args.body)
    K = K.scaled(args.scale)
    report = lattice.has_covering_property(K, args.sweep, args.grid, args.refine)
    trail: dict[str, int] = {}
    witness = None
    for a in report.angles:
        v = lattice.covering_radius(rotate(K, a), args.grid, args.refine)
        trail[v.certificate.value] = trail.get(v.certificate.value, 0) + 1
        if not v.covers and witness is None:
            witness = (a, v.witness)
    covers = witness is None and report.max_radius <= 1.0 + args.tolerance
    if args.format == "json":
        emit(dumps({
            "body": body_name(args.body, args.scale),
            "covers": covers,
            "max_radius": report.max_radius,
            "argmax_angle": report.argmax_angle,
            "certificates": trail,
            "witness": None if witness is None else
            {"theta": witness[0], "x": [witness[1].x, witness[1].y]},
            "rigorous": False,
        }), args.output)
        return 0
    lines = [
        f"body: {body_name(args.body, args.scale)}",
        f"covers={str(covers).lower()}",
        f"max_radius={fmt(report.max_radius)} at theta={fmt(report.argmax_angle)}",
        "certificates: " + ", ".join(f"{k}={trail[k]}" for k in sorted(trail)),
    ]
    if witness is not None:
        lines.append(f"witness: theta={fmt(witness[0])} x=({fmt(witness[1].x)}, {fmt(witness[1].y)})")
    lines.append(f"sweep of {args.sweep} angles; numerical, not rigorous")
    emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_sweep(args) -> int:
    K, _ = parse_body(args.body)
    K = K.scaled(args.scale)
    report = lattice.has_covering_property(K, args.sweep, args.grid, args.refine)
    if args.format == "csv":
        emit(report.to_csv(), args.output)
    elif args.format == "json":
        emit(dumps({"angles": list(report.angles), "radii": list(report.radii),
                    "max_radius": report.max_radius, "argmax_angle": report.argmax_angle,
                    "rigorous": False}), args.output)
    else:
        emit(f"max_radius={fmt(report.max_radius)} at theta={fmt(report.argmax_angle)} "
             f"over [{fmt(report.angles[0])}, {fmt(report.angles[-1])}] "
             f"({args.sweep} angles; numerical, not rigorous)\n", args.output)
    if args.figure:
        from .render import plot_sweep
        plot_sweep(report, args.figure, label=body_name(args.body, args.scale))
    return 0


def cmd_witness(args) -> int:
    K, _ = parse_body(args.body)
    K = K.scaled(args.scale)
    x = lattice.find_witness(K, args.theta, args.grid, args.refine)
    # find_witness only returns verified points; re-check so nothing unverified is printed.
    verified = x is not None and lattice.verify_witness(K, args.theta, x)
    payload = {"body": body_name(args.body, args.scale), "theta": args.theta,
               "witness": [x.x, x.y] if verified else None, "verified": verified}
    if args.format == "json":
        emit(dumps(payload), args.output)
    elif verified:
        emit(f"witness x=({fmt(x.x)}, {fmt(x.y)}) at theta={fmt(args.theta)}; verified\n", args.output)
    else:
        emit(f"no witness at theta={fmt(args.theta)}\n", args.output)
    return 0


def cmd_steiner(args) -> int:
    K, _ = parse_body(args.body)
    K = rotate(K.scaled(args.scale), args.theta)
    sym = steiner_x1(K)
    S = sym.polygon
    if args.format == "svg":
        from .render import overlay_svg
        emit(overlay_svg(K, S, title=f"{body_name(args.body, args.scale)} at theta={fmt(args.theta)}"),
             args.output)
    elif args.format == "json":
        emit(dumps({"body": K.vertices.tolist(), "symmetral": S.vertices.tolist(),
                    "breakpoints": list(sym.source_breakpoints),
                    "corner_gauge": gauge(S, lattice.CORNER)}), args.output)
    else:
        lines = [f"({fmt(x)}, {fmt(y)})" for x, y in S.vertices]
        lines.append(f"contains [-1/2,1/2]^2: "
                     f"{str(gauge(S, lattice.CORNER) <= 1.0 + 1e-9).lower()}")
        emit("\n".join(lines) + "\n", args.output)
    if args.figure:
        from .render import plot_overlay
        plot_overlay(K, S, args.figure)
    return 0


def cmd_appendix(args) -> int:
    reports = criteria.verify_appendix(args.grid)
    if args.format == "csv":
        emit(criteria.reports_to_csv(reports), args.output)
    else:
        lines = [f"{'id':<7} {'grid':>6} {'worst_margin':>14}  passed"]
        for r in reports:
            lines.append(f"{r.proposition_id:<7} {r.grid_size:>6} {r.worst_margin:>14.6e}  "
                         f"{str(r.passed).lower()}")
        emit("\n".join(lines) + "\n", args.output)
    if args.figure:
        from .render import plot_margins
        plot_margins(reports, args.figure)
    return 0 if all(r.passed for r in reports) else 1


def cmd_classic(args) -> int:
    vals = args.values
    if args.shape == "triangle":
        if len(vals) != 3:
            raise UsageError("triangle needs three side lengths")
        verdict = criteria.triangle_covers(criteria.TriangleSpec(*vals))
    elif args.shape == "ellipsoid":
        verdict = criteria.ellipsoid_covers(criteria.EllipsoidSpec(tuple(vals)))
    else:
        if len(vals) != 3:
            raise UsageError("parallelogram needs a, b and gamma")
        verdict = criteria.parallelogram_covers(criteria.ParallelogramSpec(*vals))
    emit(("true" if verdict else "false") + "\n", args.output)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latcover",
                                description="Lattice point covering radii of planar convex bodies.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats, default="text"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")

    def oracle_flags(sp, sweep=256):
        sp.add_argument("--sweep", type=int, default=sweep, help="number of rotation angles")
        sp.add_argument("--grid", type=int, default=128, help="coarse deep-hole grid per axis")
        sp.add_argument("--refine", type=int, default=4, help="local refinement rounds")

    sp = sub.add_parser("zradius", help="lattice point covering radius Z(K)")
    sp.add_argument("body")
    oracle_flags(sp)
    sp.add_argument("--no-oracle", action="store_true", help="print the closed form only")
    common(sp, ["text", "json"])
    sp.set_defaults(func=cmd_zradius)

    sp = sub.add_parser("check", help="decide the covering property of scale*K")
    sp.add_argument("body")
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--tolerance", type=float, default=1e-9,
                    help="slack allowed on the swept maximum radius")
    oracle_flags(sp)
    common(sp, ["text", "json"])
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("sweep", help="covering radius over rotations")
    sp.add_argument("body")
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--figure", help="also render the sweep to this image file")
    oracle_flags(sp)
    common(sp, ["text", "csv", "json"])
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("witness", help="lattice-point-free placement at a rotation")
    sp.add_argument("body")
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--theta", type=float, default=0.0)
    sp.add_argument("--grid", type=int, default=128)
    sp.add_argument("--refine", type=int, default=4)
    common(sp, ["json", "text"], default="json")
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("steiner", help="Steiner symmetral about the x-axis")
    sp.add_argument("body")
    sp.add_argument("--scale", type=float, default=1.0)
    sp.add_argument("--theta", type=float, default=0.0)
    sp.add_argument("--figure", help="also render a matplotlib overlay to this file")
    common(sp, ["text", "json", "svg"])
    sp.set_defaults(func=cmd_steiner)

    sp = sub.add_parser("appendix", help="grid check of the supporting inequalities")
    sp.add_argument("--grid", type=int, default=10_000)
    sp.add_argument("--figure", help="also render the margins to this file")
    common(sp, ["text", "csv"])
    sp.set_defaults(func=cmd_appendix)

    sp = sub.add_parser("classic", help="closed-form criteria for ellipses, triangles, parallelograms")
    sp.add_argument("shape", choices=["triangle", "ellipsoid", "parallelogram"])
    sp.add_argument("values", type=float, nargs="+")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_classic)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("scale", "theta"):
        val = getattr(args, name, None)
        if val is not None and not math.isfinite(val):
            parser.error(f"--{name} must be finite")
    if getattr(args, "scale", 1.0) <= 0:
        parser.error("--scale must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"latcover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ConstraintError, ArithmeticError) as exc:
        print(f"latcover: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
