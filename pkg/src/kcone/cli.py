"""Command-line interface.

Exit codes: 0 success, 1 a reported check failed, 2 malformed input
(JSON syntax, schema, usage), 3 domain violation.  The default seed comes
from the ``KCONE_SEED`` environment variable (0 when unset).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .comparison import RatioReport, RoundSphere, bg_ratio_report, space_annulus_volume
from .cone import ConePoint, ConeSpace
from .errors import ExpansionDomainError, KConeError, SchemaError
from .glue import GluedSpace, PolygonGluing, glued_distance_refinement, polygon_glued_distance
from .spaceform import sn
from .specs import load_document, parse_number, sigma_from_spec, space_from_spec
from .suite import run_suite
from .tube import (
    BallChain,
    chain_overlap_report,
    collinear_centers,
    tube_volume_exact,
    tube_volume_expansion,
    two_ball_union_closed_form,
    union_volume_mc,
)

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA, EXIT_DOMAIN = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    seed: int
    samples: int
    tol: float
    output: Optional[str]
    format: str = "csv"

    def __post_init__(self):
        if self.samples <= 0:
            raise SchemaError("--samples must be positive")
        if not self.tol > 0:
            raise SchemaError("--tol must be positive")


def _default_seed() -> int:
    raw = os.environ.get("KCONE_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"KCONE_SEED must be an integer, got {raw!r}") from None


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_json_arg(value: str) -> dict:
    """Inline JSON, ``@path`` or a path to a JSON file."""
    if value.startswith("@"):
        text = Path(value[1:]).read_text(encoding="utf-8")
    elif not value.lstrip().startswith("{") and Path(value).exists():
        text = Path(value).read_text(encoding="utf-8")
    else:
        text = value
    return load_document(text)


def _numbers(text: str, where: str) -> list[float]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise SchemaError(f"{where}: empty value")
    return [parse_number(p.strip(), where) for p in parts]


def _point(space, text: str, where: str):
    nums = _numbers(text, where)
    if isinstance(space, PolygonGluing):
        if len(nums) != 2:
            raise SchemaError(f"{where}: polygon points are x,y")
        return np.array(nums)
    if len(nums) < 2:
        raise SchemaError(f"{where}: cone points are t,direction...")
    return ConePoint(np.array(nums[1:]), nums[0])


def _config(args) -> RunConfig:
    return RunConfig(
        seed=args.seed if args.seed is not None else _default_seed(),
        samples=getattr(args, "samples", 1),
        tol=getattr(args, "tol", 1e-10),
        output=args.out,
        format=getattr(args, "format", "csv"),
    )


# -- commands ----------------------------------------------------------------


def cmd_sn(args) -> int:
    kappa = parse_number(args.kappa, "--kappa")
    ts = _numbers(args.t, "--t")
    rows = []
    for t in ts:
        v = float(sn(kappa, t))
        rows.append((kappa, t, v, "closed_form", 4 * np.spacing(abs(v)) if v else 0.0))
    _emit(_csv(("kappa", "t", "value", "method", "error"), rows), args.out)
    return EXIT_OK


DIST_HEADER = ("eps", "distance", "error", "method", "crossings", "nodes")


def cmd_dist(args, glued_only: bool = False) -> int:
    space = space_from_spec(_read_json_arg(args.space))
    if glued_only and not isinstance(space, (GluedSpace, PolygonGluing)):
        raise SchemaError("glued-dist needs a glued or polygon space")
    x = _point(space, args.from_, "--from")
    y = _point(space, args.to, "--to")
    eps = parse_number(args.eps, "--eps")
    rows = []
    if isinstance(space, ConeSpace):
        rows.append(("", space.distance(x, y), 0.0, "exact", 0, 2))
    elif isinstance(space, GluedSpace):
        for e, r in glued_distance_refinement(space, x, y, eps, args.refine):
            rows.append((e, r.value, r.error, "graph", r.crossings, r.nodes))
    elif isinstance(space, PolygonGluing):
        for k in range(args.refine):
            e = eps / 2 ** k
            r = polygon_glued_distance(space, x, y, e)
            rows.append((e, r.value, r.error, "graph", r.crossings, r.nodes))
    else:
        raise SchemaError("dist needs a cone, glued or polygon space")
    _emit(_csv(DIST_HEADER, rows), args.out)
    return EXIT_OK


def cmd_volume(args) -> int:
    cfg = _config(args)
    space = space_from_spec(_read_json_arg(args.space))
    if not isinstance(space, (ConeSpace, GluedSpace, RoundSphere)):
        raise SchemaError("volume needs a cone, glued or round_sphere space")
    radii = _numbers(args.radii, "--radii")
    streams = np.random.SeedSequence(cfg.seed).spawn(len(radii))
    rows = []
    for r, ss in zip(radii, streams):
        v = space_annulus_volume(space, (0.0, r), args.method, cfg.samples, ss)
        rows.append((r, v.value, v.error, v.method, v.samples if v.samples else ""))
    _emit(_csv(("r", "volume", "error", "method", "samples"), rows), args.out)
    return EXIT_OK


def ratio_report_csv(report: RatioReport) -> str:
    rows = [
        (r.R1, r.R2, r.R3, r.form, r.space_ratio, r.model_ratio, r.margin, r.method, r.error, "")
        for r in report.rows
    ]
    rows += [(a, b, c, form, "", "", "", "omitted", "", reason) for a, b, c, form, reason in report.omitted]
    return _csv(RatioReport.COLUMNS + ("note",), rows)


def cmd_bg_report(args) -> int:
    cfg = _config(args)
    space = space_from_spec(_read_json_arg(args.space))
    sigma = sigma_from_spec(_read_json_arg(args.sigma))
    kappa = parse_number(args.kappa, "--kappa")
    radii = []
    for text in args.radii:
        triple = _numbers(text, "--radii")
        if len(triple) != 3:
            raise SchemaError("--radii takes R1,R2,R3")
        radii.append(triple)
    report = bg_ratio_report(space, radii, sigma, kappa, args.method, cfg.samples, cfg.seed)
    _emit(ratio_report_csv(report), cfg.output)
    return EXIT_OK if report.all_hold else EXIT_FAIL


def _tube_input(doc: dict):
    allowed = {"n", "epsilon", "gaps", "centers"}
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise SchemaError(f"$: unknown field(s) {', '.join(unknown)}")
    for key in ("n", "epsilon"):
        if key not in doc:
            raise SchemaError(f"$: missing field {key}")
    if ("gaps" in doc) == ("centers" in doc):
        raise SchemaError("$: give exactly one of gaps or centers")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise SchemaError("$.n: expected an integer")
    eps = parse_number(doc["epsilon"], "$.epsilon")
    if "gaps" in doc:
        if not isinstance(doc["gaps"], list):
            raise SchemaError("$.gaps: expected a list")
        gaps = [parse_number(g, f"$.gaps[{i}]") for i, g in enumerate(doc["gaps"])]
        centers = collinear_centers(n, gaps)
    else:
        c = doc["centers"]
        if not isinstance(c, list) or not all(isinstance(p, list) and len(p) == n for p in c):
            raise SchemaError(f"$.centers: expected a list of points with {n} coordinates")
        centers = np.array([[parse_number(v, "$.centers") for v in p] for p in c])
        gaps = np.linalg.norm(np.diff(centers, axis=0), axis=1).tolist()
    return n, eps, gaps, centers


def cmd_tube_check(args) -> int:
    cfg = _config(args)
    n, eps, gaps, centers = _tube_input(_read_json_arg(args.spec))
    chain = BallChain(n, eps, gaps)
    exact = tube_volume_exact(chain)
    overlap = chain_overlap_report(centers, eps)
    rows = [("exact", exact, 0.0, "", "formula_exact" if overlap["formula_exact"] else "hypothesis_unverified")]
    ok = True
    if len(gaps) == 1 and n in (2, 3):
        lens = two_ball_union_closed_form(n, eps, gaps[0])
        good = abs(lens - exact) <= cfg.tol
        ok &= good
        rows.append(("closed_form", lens, abs(lens - exact), good, "two-ball lens"))
    try:
        value, bound = tube_volume_expansion(chain)
        good = abs(value - exact) <= bound
        ok &= good
        rows.append(("expansion", value, bound, good, "error bound"))
    except ExpansionDomainError:
        rows.append(("expansion", "", "", "", "gap exceeds eps^2"))
    if n <= 3:
        mc = union_volume_mc(n, eps, centers, cfg.samples, cfg.seed)
        good = abs(mc.value - exact) <= 4 * mc.error
        if overlap["formula_exact"]:
            ok &= good
        rows.append(("mc", mc.value, mc.error, good, f"{cfg.samples} samples"))
    _emit(_csv(("method", "value", "stderr_or_tol", "agrees", "note"), rows), cfg.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_lemma_suite(args) -> int:
    cfg = _config(args)
    results = run_suite(cfg.seed, args.only)
    failed = [r.name for r in results if not r.passed]
    if cfg.format == "json":
        text = _json(
            {
                "seed": cfg.seed,
                "version": __version__,
                "checks": [r.as_dict() for r in results],
                "failed": failed,
                "passed": not failed,
            }
        )
    else:
        text = _csv(
            ("check", "passed", "observed", "threshold", "method", "error", "detail"),
            [(r.name, r.passed, r.observed, r.threshold, "invariant", r.observed, r.detail) for r in results],
        )
    _emit(text, cfg.output)
    return EXIT_OK if not failed else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kcone",
        description="Distances, volumes and comparison checks on kappa-cones and their boundary gluings.",
        epilog="Exit codes: 0 ok, 1 a check failed, 2 malformed input, 3 domain violation. "
        "KCONE_SEED sets the default seed.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seeded=False):
        sp.add_argument("--out", help="write output here instead of stdout")
        if seeded:
            sp.add_argument("--seed", type=int, default=None, help="random seed (default: $KCONE_SEED or 0)")
            sp.add_argument("--samples", type=int, default=100_000, help="Monte-Carlo sample count")

    sp = sub.add_parser("sn", help="evaluate the model sine sn_kappa")
    sp.add_argument("--kappa", required=True)
    sp.add_argument("--t", required=True, help="comma-separated arguments")
    common(sp)
    sp.set_defaults(func=cmd_sn, seed=None)

    for name, glued_only in (("dist", False), ("glued-dist", True)):
        sp = sub.add_parser(name, help="distance between two points" + (" of a glued space" if glued_only else ""))
        sp.add_argument("--space", required=True, help="JSON spec, @file or file path")
        sp.add_argument("--from", dest="from_", required=True, help="t,direction... (polygon: x,y)")
        sp.add_argument("--to", required=True, help="t,direction... (polygon: x,y)")
        sp.add_argument("--eps", default="0.1", help="boundary net scale")
        sp.add_argument("--refine", type=int, default=1, help="number of halvings of eps to tabulate")
        common(sp)
        sp.set_defaults(func=lambda a, g=glued_only: cmd_dist(a, g), seed=None)

    sp = sub.add_parser("volume", help="ball volumes about the base point")
    sp.add_argument("--space", required=True)
    sp.add_argument("--radii", required=True, help="comma-separated radii")
    sp.add_argument("--method", choices=("exact", "mc"), default="exact")
    common(sp, seeded=True)
    sp.set_defaults(func=cmd_volume)

    sp = sub.add_parser("bg-report", help="annulus-ratio comparison against the model cone")
    sp.add_argument("--space", required=True)
    sp.add_argument("--sigma", required=True, help="direction space at the base point")
    sp.add_argument("--kappa", required=True)
    sp.add_argument("--radii", required=True, action="append", help="R1,R2,R3 (repeatable)")
    sp.add_argument("--method", choices=("exact", "mc"), default="exact")
    common(sp, seeded=True)
    sp.set_defaults(func=cmd_bg_report)

    sp = sub.add_parser("tube-check", help="ball-chain volume: formula, expansion, Monte-Carlo")
    sp.add_argument("--spec", required=True, help='JSON {"schema": 1, "n", "epsilon", "gaps" | "centers"}')
    sp.add_argument("--tol", type=float, default=1e-9)
    common(sp, seeded=True)
    sp.set_defaults(func=cmd_tube_check)

    sp = sub.add_parser("lemma-suite", help="run the invariant battery")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--only", action="append", help="run checks whose name starts with this prefix")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_lemma_suite)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"kcone: schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"kcone: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except KConeError as exc:
        print(f"kcone: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
