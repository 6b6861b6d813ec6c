import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

from . import counterexample, criteria, flows, lemma_lab, render, schottky
from .config import (
    CensusConfig,
    CounterexampleConfig,
    CounterexampleRunConfig,
    FlowConfig,
    GroupConfig,
    LemmasConfig,
    OrbitConfig,
    RenderConfig,
    RunConfigBase,
    SchottkyConfig,
    SchottkySpecModel,
    get_settings,
    parse_config,
    validate_config,
)
from .errors import HorokitError, SchemaViolation
from .isometry import Mobius
from .utils import FLOAT_FORMAT, emit_csv, flatten_row, rows_frame

logger = logging.getLogger(__name__)

ORBIT_COLUMNS = ["word", "length", "x", "y"]
FLOW_COLUMNS = ["t", "s", "residual"]
VIOLATION_COLUMNS = ["pair", "other", "condition", "detail", "witness_x", "witness_y"]
CENSUS_COLUMNS = [
    "n_truncation", "max_len", "D", "R", "plus_count", "minus_count", "horoball_count", "tie_count", "n_points",
]
CERTIFICATE_COLUMNS = CENSUS_COLUMNS + ["status", "attained_depth"]


# ------------------------------
# Output
# ------------------------------
def emit(rows: Sequence[Any], out: Optional[str], columns: Optional[Sequence[str]] = None) -> None:
    """CSV to ``out``, or to stdout when no path is given."""
    if out:
        path = emit_csv(rows, out, columns)
        logger.info("wrote %d row(s) to %s", len(rows), path)
        return
    sys.stdout.write(rows_frame(rows, columns).to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n"))


def sibling(out: Optional[str], suffix: str) -> Optional[str]:
    if not out:
        return None
    path = Path(out)
    return str(path.with_name(f"{path.stem}_{suffix}{path.suffix or '.csv'}"))


def group_of(config: Union[GroupConfig, RenderConfig]) -> schottky.SchottkySpec:
    if config.pairs is not None:
        return schottky.spec_from_model(SchottkySpecModel(pairs=config.pairs), config.tol)
    return schottky.load_spec(config.spec_path, config.tol)


# ------------------------------
# Subcommands
# ------------------------------
def run_flow(config: FlowConfig) -> int:
    rows = [
        {"t": t, "s": s, "residual": r}
        for t, s, r in flows.relation_residuals(config.samples, config.seed, config.t_max, config.s_max)
    ]
    logger.info("fundamental relation: max residual %.3e over %d samples", max(r["residual"] for r in rows), len(rows))
    emit(rows, config.out, FLOW_COLUMNS)
    return 0


def run_schottky(config: SchottkyConfig) -> int:
    spec = group_of(config)
    cert = schottky.verify_ping_pong(spec, config.tol)
    rows = [
        {
            "pair": v.pair,
            "other": v.other,
            "condition": v.condition,
            "detail": v.detail,
            "witness_x": v.witness[0] if v.witness else None,
            "witness_y": v.witness[1] if v.witness else None,
        }
        for v in cert.violations
    ]
    if config.out:
        emit(rows, config.out, VIOLATION_COLUMNS)
    if cert.ok:
        print(f"ping-pong certified for {spec.rank} generator(s)")
        return 0
    for v in cert.violations:
        print(f"violation: pair {v.pair} ({v.condition}): {v.detail}")
    return 1


def run_orbit(config: OrbitConfig) -> int:
    spec = group_of(config)
    rows = [
        {"word": " ".join(str(letter) for letter in o.word), "length": len(o.word), "x": o.point.x, "y": o.point.y}
        for o in schottky.enumerate_orbit(spec, config.max_word_len, config.tol)
    ]
    emit(rows, config.out, ORBIT_COLUMNS)
    return 0


def run_census(config: CensusConfig) -> int:
    spec = group_of(config)
    v = flows.J_FRAME if config.frame is None else flows.Frame(Mobius.from_entries(*config.frame))
    rows = [
        {"n_truncation": spec.rank, **criteria.census(spec, v, D, config.R, config.max_word_len, config.tol).model_dump()}
        for D in config.D
    ]
    emit(rows, config.out, CENSUS_COLUMNS)
    return 0


def certificate_row(
    config: CounterexampleRunConfig, base: CounterexampleConfig, spec: Optional[schottky.SchottkySpec] = None
) -> Dict[str, Any]:
    cert = counterexample.one_sidedness_certificate(
        base, config.D, config.R, config.max_word_len, spec=spec, tol=config.tol
    )
    if cert.status == "refuted":
        logger.warning("one-sidedness refuted at n_max=%d: %d minus point(s)", base.n_max, cert.census.minus_count)
    values = {"n_truncation": base.n_max, "status": cert.status, "attained_depth": cert.attained_depth}
    values.update(cert.census.model_dump())
    return {name: values[name] for name in CERTIFICATE_COLUMNS}


def run_counterexample(config: CounterexampleRunConfig) -> int:
    """Report rows for n = 1..n_max, each carrying the census of the n_max truncation.

    ``census_n`` adds one certificate row per extra truncation in a sibling file.
    """
    base = CounterexampleConfig(
        variant=config.variant, schedule=config.schedule, n_max=config.n_max, fill_holes=config.fill_holes
    )
    spec = counterexample.build(base, config.tol)
    rows = counterexample.report(base, spec, config.tol)
    found = counterexample.thresholds(rows)
    logger.info("thresholds: d(P_n, z_n) <= 1 from n0=%s, d(o, P_n) <= 3 ln n from n0=%s", found.pz_n0, found.po_n0)
    summary = certificate_row(config, base, spec)
    emit([{**flatten_row(row), **summary} for row in rows], config.out)
    if config.census_n:
        certificates = [certificate_row(config, base.model_copy(update={"n_max": n})) for n in config.census_n]
        emit(certificates, sibling(config.out, "census"), CERTIFICATE_COLUMNS)
    return 0


LEMMA_RUNNERS: Dict[str, Callable[[LemmasConfig], List[Any]]] = {
    "thin": lambda c: [lemma_lab.estimate_thin_constant(a, c.samples, c.seed) for a in c.alpha0],
    "reciprocal": lambda c: [lemma_lab.verify_reciprocal(k, c.samples, c.seed) for k in c.k],
    "inner": lambda c: [lemma_lab.verify_inner_triangle(c.samples, c.seed)],
    "flow": lambda c: [lemma_lab.verify_flow_lemmas(c.samples, c.seed, a) for a in c.alpha0],
    "side": lambda c: [lemma_lab.verify_side_switch(c.samples, c.seed, a) for a in c.alpha0],
}


def run_lemmas(config: LemmasConfig) -> int:
    rows = LEMMA_RUNNERS[config.which](config)
    emit(rows, config.out)
    return 0


def run_render(config: RenderConfig) -> int:
    if config.counterexample is not None:
        scene = render.scene_from_counterexample(config.counterexample, config.orbit_len)
    else:
        scene = render.scene_from_spec(group_of(config), config.orbit_len)
    view = render.Viewport(config.x_min, config.x_max, config.y_max, config.width)
    if config.out:
        path = render.render_svg(scene, config.out, config.model, view)
        logger.info("wrote %s scene to %s", config.model, path)
    else:
        sys.stdout.write(render.svg_text(scene, config.model, view))
    return 0


RUNNERS: Dict[str, Callable[[Any], int]] = {
    "flow": run_flow,
    "schottky": run_schottky,
    "orbit": run_orbit,
    "census": run_census,
    "counterexample": run_counterexample,
    "lemmas": run_lemmas,
    "render": run_render,
}


# ------------------------------
# Arguments
# ------------------------------
def _add_common(p: argparse.ArgumentParser, spec: bool = False) -> None:
    p.add_argument("--config", help="JSON run config; replaces the other flags")
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--tol", type=float, help="geometric tolerance")
    if spec:
        p.add_argument("--spec", dest="spec_path", help="group JSON file")


def _add_counterexample(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", choices=["tangent", "opposite"])
    p.add_argument("--schedule", choices=["linear", "geometric", "custom"])
    p.add_argument("--alpha", type=float, help="ratio of the geometric schedule")
    p.add_argument("--radii", type=float, nargs="+", help="radii of a custom schedule")
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--fill-holes", dest="fill_holes", action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="horokit", description="Hyperbolic plane experiments for horocycle flows")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("flow", help="fundamental relation residuals")
    _add_common(p)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--s-max", dest="s_max", type=float)

    p = sub.add_parser("schottky", help="certify ping-pong for a group")
    _add_common(p, spec=True)

    p = sub.add_parser("orbit", help="orbit of i under reduced words")
    _add_common(p, spec=True)
    p.add_argument("--max-word-len", dest="max_word_len", type=int)

    p = sub.add_parser("census", help="half-horoball census around a frame")
    _add_common(p, spec=True)
    p.add_argument("--D", type=float, nargs="+")
    p.add_argument("--R", type=float)
    p.add_argument("--max-word-len", dest="max_word_len", type=int)
    p.add_argument("--frame", type=float, nargs=4, help="row-major matrix of v")

    p = sub.add_parser("counterexample", help="report on the one-sided construction")
    _add_common(p)
    _add_counterexample(p)
    p.add_argument("--D", type=float)
    p.add_argument("--R", type=float)
    p.add_argument("--max-word-len", dest="max_word_len", type=int)
    p.add_argument("--census-n", dest="census_n", type=int, nargs="+")

    p = sub.add_parser("lemmas", help="seeded checks of the comparison lemmas")
    _add_common(p)
    p.add_argument("--which", choices=sorted(LEMMA_RUNNERS))
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--alpha0", type=float, nargs="+")
    p.add_argument("--k", type=float, nargs="+")

    p = sub.add_parser("render", help="SVG scene of a group or the construction")
    _add_common(p, spec=True)
    _add_counterexample(p)
    p.add_argument("--model", choices=["halfplane", "disk"])
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p.add_argument("--y-max", dest="y_max", type=float)
    p.add_argument("--orbit-len", dest="orbit_len", type=int)
    p.add_argument("--width", type=int)
    return parser


SCHEDULE_FLAGS = {"schedule": "kind", "alpha": "alpha", "radii": "radii"}
COUNTEREXAMPLE_FLAGS = ("variant", "n_max", "fill_holes")


def config_from_args(args: argparse.Namespace) -> RunConfigBase:
    if args.config:
        config = parse_config(args.config)
        if config.subcommand != args.subcommand:
            raise SchemaViolation([("subcommand", f"config is for '{config.subcommand}', not '{args.subcommand}'")])
        return config
    flags = {k: v for k, v in vars(args).items() if v is not None and k != "config"}
    schedule = {SCHEDULE_FLAGS[k]: flags.pop(k) for k in list(flags) if k in SCHEDULE_FLAGS}
    if args.subcommand == "render":
        construction = {k: flags.pop(k) for k in COUNTEREXAMPLE_FLAGS if k in flags}
        if schedule:
            construction["schedule"] = schedule
        if construction and "spec_path" not in flags:
            flags["counterexample"] = construction
    elif schedule:
        flags["schedule"] = schedule
    if args.subcommand in ("flow", "lemmas"):
        flags.setdefault("seed", get_settings().seed)
    return validate_config(flags)


# ------------------------------
# Entry point
# ------------------------------
def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(level=settings.log_level, format="%(asctime)s - %(levelname)s - %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        return RUNNERS[config.subcommand](config)
    except HorokitError as exc:
        logger.error("%s failed: %s", args.subcommand, exc)
        return 1
    except ValueError as exc:
        # geometric constructors reject degenerate input with ValueError
        logger.error("%s failed: %s", args.subcommand, exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
