"""Command-line front end.

Commands:
    validate <channel.json>                     injectivity check
    region   <channel.json> <dist.json> ...     compute the aggregate region
    compare  <region_a.json> <region_b.json>    certify region equality
    plot     <region.json> --out FILE           SVG polygon (K=2) / vertex CSV (K=3)
    presets  --k {2,3}                          dump the built-in facet families

Exit codes: 0 success (valid / equal), 1 semantic negative (non-injective,
unequal, refused, unbounded), 2 usage or parse error.  The DIC_SEED
environment variable overrides any --seed flag.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from dataclasses import dataclass

from . import hk_region, theorem_region
from .channel import load_channel, validate_injectivity
from .entropy import build_entropy_table, load_distribution
from .errors import (
    ChannelFormatError,
    DicRegionError,
    EnumerationOverflowError,
    UnboundedDirectionError,
)
from .polytope import (
    load_region,
    region_to_dict,
    regions_equal,
    find_subset_violation,
    support_value,
    save_region,
    vertices,
)
from .theorem_region import facet_to_dict, presets

__all__ = ["main", "RunConfig"]


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by the commands."""

    tolerance: float = 1e-9
    a_max: int | None = None
    facet_guard: int = theorem_region.DEFAULT_FACET_GUARD
    directions: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.directions < 1:
            raise ValueError("direction count must be >= 1")
        if self.facet_guard < 1:
            raise ValueError("facet guard must be >= 1")


def _config_from_args(args) -> RunConfig:
    seed = getattr(args, "seed", 0)
    env_seed = os.environ.get("DIC_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    return RunConfig(
        tolerance=getattr(args, "tol", 1e-9),
        a_max=getattr(args, "a_max", None),
        facet_guard=getattr(args, "guard", theorem_region.DEFAULT_FACET_GUARD),
        directions=getattr(args, "directions", 100),
        seed=seed,
    )


def _fail_parse(what: str, exc: Exception) -> int:
    print(f"error: could not read {what}: {exc}", file=sys.stderr)
    return 2


def cmd_validate(args) -> int:
    try:
        spec = load_channel(args.channel)
    except (OSError, json.JSONDecodeError, ChannelFormatError) as exc:
        return _fail_parse(f"channel file {args.channel!r}", exc)
    report = validate_injectivity(spec)
    if report.is_injective:
        print(f"injective: every receiver map is invertible given its own input (K={spec.K})")
        return 0
    print(f"NOT injective: {len(report.violations)} collision(s) found")
    for i, x, va, vb in report.violations[:10]:
        print(f"  receiver {i}, input {x}: interference tuples {va} and {vb} collide")
    if len(report.violations) > 10:
        print(f"  ... and {len(report.violations) - 10} more")
    return 1


def cmd_region(args) -> int:
    try:
        spec = load_channel(args.channel)
    except (OSError, json.JSONDecodeError, ChannelFormatError) as exc:
        return _fail_parse(f"channel file {args.channel!r}", exc)
    try:
        dist = load_distribution(args.dist)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _fail_parse(f"distribution file {args.dist!r}", exc)

    config = _config_from_args(args)
    report = validate_injectivity(spec)
    if not report.is_injective:
        if args.force and args.method == "hk-project":
            print(
                "warning: channel is not injective; the projected rate-splitting "
                "region is still achievable but need not be the capacity region",
                file=sys.stderr,
            )
        else:
            print(
                f"refusing: channel is not injective ({len(report.violations)} "
                f"collision(s)); pass --force with --method hk-project to compute "
                f"the achievable region anyway",
                file=sys.stderr,
            )
            return 1

    try:
        table = build_entropy_table(spec, dist)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    status = 0
    try:
        if args.method == "hk-project":
            region = hk_region.project_to_aggregate(
                hk_region.build_A1(spec, table), tol=config.tolerance
            )
        else:
            a_max = config.a_max or theorem_region.default_a_max(spec.K)
            region = theorem_region.enumerate_facets(
                spec,
                table,
                a_max=a_max,
                max_facets=config.facet_guard,
                tol=config.tolerance,
            )
            if args.check_a_max:
                bumped = theorem_region.enumerate_facets(
                    spec,
                    table,
                    a_max=a_max + 1,
                    max_facets=config.facet_guard,
                    tol=config.tolerance,
                )
                if regions_equal(region, bumped, config.tolerance):
                    print(f"a_max check: raising {a_max} -> {a_max + 1} left the region unchanged")
                else:
                    print(
                        f"warning: raising a_max from {a_max} to {a_max + 1} changed "
                        f"the region; the weight cap is too small for this channel",
                        file=sys.stderr,
                    )
                    status = 1
    except EnumerationOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    if args.out:
        save_region(region, args.out)
        print(f"wrote {len(region.inequalities)} inequalities to {args.out}")
    else:
        json.dump(region_to_dict(region), sys.stdout, indent=1)
        print()
    return status


def cmd_compare(args) -> int:
    regions = []
    for path in (args.region_a, args.region_b):
        try:
            regions.append(load_region(path))
        except (OSError, json.JSONDecodeError, ValueError) as exc:
            return _fail_parse(f"region file {path!r}", exc)
    a, b = regions
    if a.dim != b.dim:
        print(f"unequal: dimensions differ ({a.dim} vs {b.dim})")
        return 1
    config = _config_from_args(args)
    tol = config.tolerance

    for left, right, name in ((a, b, args.region_b), (b, a, args.region_a)):
        violation = find_subset_violation(left, right, tol)
        if violation is not None:
            ineq, value = violation
            attained = "unbounded" if value is None else f"{value:.12g}"
            print(
                f"unequal: inequality {list(ineq.coeffs)} . R <= {ineq.rhs:.12g} of "
                f"{name} is violated (attains {attained})"
            )
            return 1

    rng = random.Random(config.seed)
    for _ in range(config.directions):
        direction = [rng.uniform(-1.0, 1.0) for _ in range(a.dim)]
        va = vb = None
        try:
            va = support_value(a, direction, tol)
        except UnboundedDirectionError:
            pass
        try:
            vb = support_value(b, direction, tol)
        except UnboundedDirectionError:
            pass
        if (va is None) != (vb is None) or (
            va is not None and abs(va - vb) > tol * max(1.0, abs(va))
        ):
            print(f"unequal: support values differ in direction {direction}: {va} vs {vb}")
            return 1
    print(f"equal within tol {tol} ({config.directions} direction spot checks)")
    return 0


def cmd_plot(args) -> int:
    try:
        region = load_region(args.region)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _fail_parse(f"region file {args.region!r}", exc)
    if region.dim > 3:
        print(f"error: plotting supports dim <= 3, region has dim {region.dim}", file=sys.stderr)
        return 2
    try:
        points = vertices(region)
    except UnboundedDirectionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if region.dim == 3:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(",".join(region.labels) + "\n")
            for p in points:
                fh.write(",".join(f"{v:.12g}" for v in p) + "\n")
        print(f"wrote {len(points)} vertices to {args.out} (CSV; 3-D regions are not drawn)")
        return 0
    svg = _polygon_svg(points, region.labels)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote polygon through {len(points)} vertices to {args.out}")
    return 0


def cmd_presets(args) -> int:
    specs = presets(args.k)
    json.dump([facet_to_dict(fs) for fs in specs], sys.stdout, indent=1)
    print()
    return 0


def _polygon_svg(points, labels, size: int = 420, margin: int = 50) -> str:
    """Polygon through the vertices, walked counterclockwise, with axes."""
    if points:
        cx = sum(p[0] for p in points) / len(points)
        cy = sum(p[1] for p in points) / len(points)
        ordered = sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    else:
        ordered = []
    span = max([abs(v) for p in points for v in p] + [1.0])
    scale = (size - 2 * margin) / span

    def sx(v):
        return margin + v * scale

    def sy(v):
        return size - margin - v * scale

    pts = " ".join(f"{sx(p[0]):.2f},{sy(p[1]):.2f}" for p in ordered)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<line x1="{margin}" y1="{size - margin}" x2="{size - margin}" '
        f'y2="{size - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{size - margin}" x2="{margin}" y2="{margin}" '
        f'stroke="black"/>',
        f'<text x="{size - margin + 6}" y="{size - margin + 4}" font-size="14">{labels[0]}</text>',
        f'<text x="{margin - 10}" y="{margin - 10}" font-size="14">{labels[1]}</text>',
    ]
    if pts:
        lines.append(
            f'<polygon points="{pts}" fill="#9ecae1" fill-opacity="0.6" stroke="#3182bd"/>'
        )
    for p in ordered:
        lines.append(f'<circle cx="{sx(p[0]):.2f}" cy="{sy(p[1]):.2f}" r="3" fill="#08519c"/>')
        lines.append(
            f'<text x="{sx(p[0]) + 5:.2f}" y="{sy(p[1]) - 5:.2f}" font-size="11">'
            f"({p[0]:.3g}, {p[1]:.3g})</text>"
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dicregion",
        description="Capacity regions of symmetric injective deterministic interference channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check receiver-map injectivity")
    p.add_argument("channel", help="channel JSON file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("region", help="compute the aggregate rate region")
    p.add_argument("channel", help="channel JSON file")
    p.add_argument("dist", help="input-distribution JSON file")
    p.add_argument(
        "--method",
        choices=["hk-project", "theorem"],
        required=True,
        help="projection of the rate-splitting region, or direct facet enumeration",
    )
    p.add_argument("--a-max", dest="a_max", type=int, default=None, help="facet weight cap")
    p.add_argument(
        "--check-a-max",
        dest="check_a_max",
        action="store_true",
        help="with --method theorem: re-enumerate at a_max+1 and report whether the region changed",
    )
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--guard", type=int, default=theorem_region.DEFAULT_FACET_GUARD)
    p.add_argument("--out", default=None, help="write region JSON here instead of stdout")
    p.add_argument(
        "--force",
        action="store_true",
        help="with --method hk-project: compute even for a non-injective channel",
    )
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("compare", help="certify that two region files describe the same set")
    p.add_argument("region_a")
    p.add_argument("region_b")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--directions", type=int, default=100, help="random support-value spot checks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("plot", help="draw a 2-D region as SVG (3-D regions dump vertices as CSV)")
    p.add_argument("region")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("presets", help="dump the built-in facet families")
    p.add_argument("--k", type=int, choices=[2, 3], required=True)
    p.set_defaults(func=cmd_presets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DicRegionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
