"""Command line interface: orbit dumps, property checks, scripted experiments.

Output is JSON (sorted keys, two-space indent) or CSV on standard output
unless ``--out`` is given; diagnostics go to the error stream.  Exit codes
partition the outcomes so scripts can triage without parsing:

* 0 -- tracked / consistent
* 2 -- usage error or a bad system/method spec
* 3 -- certified failure
* 4 -- inconclusive (including failures without a certificate)
* 5 -- experiment conclusion inconsistent

A fixed ``--seed`` (default 0) is recorded in every report, and identical
invocations produce byte-identical output regardless of ``--threads``.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
import time
from dataclasses import dataclass

from .experiments import EXPERIMENTS
from .orbits import MethodSpec, method_from_map, orbit_csv_text, orbit_segment, random_method, write_orbit_csv
from .shadowing import (
    check_direct_shadowing,
    check_inverse_shadowing,
    check_orbital_inverse,
    check_weak_inverse,
)
from .systems import (
    GOLDEN_ROTATION,
    ConstructionError,
    SystemMap,
    cat_map,
    circle_identity,
    make_conservative_perturbation,
    make_linear,
    make_rotation,
    make_translation_method_map,
    map_from_descriptor,
    shear_map,
    torus_identity,
)

__all__ = [
    "RunConfig",
    "parse_system_spec",
    "parse_method_spec",
    "build_parser",
    "cmd_orbit",
    "cmd_check",
    "cmd_experiment",
    "main",
    "main_entry",
]

_SYSTEM_HELP = ("system spec: cat | shear | identity2 | identity1 | golden | "
                "rotation:THETA | linear:a,b,c,d | a JSON descriptor")
_METHOD_HELP = ("method spec: same | translate:DELTA | rotation:THETA | rotation:+DELTA | "
                "perturb:MODE:DELTA[:SEED] | random:DELTA[:SEED] | a JSON map descriptor")

_CHECKERS = {
    "direct": check_direct_shadowing,
    "inverse": check_inverse_shadowing,
    "weak": check_weak_inverse,
    "orbital": check_orbital_inverse,
}


# ---------------------------------------------------------------------------
# Specs and configuration
# ---------------------------------------------------------------------------

def parse_system_spec(spec: str) -> SystemMap:
    """Build a map from a short spec string or a JSON descriptor."""
    s = spec.strip()
    if s.startswith("{"):
        return map_from_descriptor(json.loads(s))
    fixed = {
        "cat": cat_map,
        "shear": shear_map,
        "identity2": torus_identity,
        "identity1": circle_identity,
    }
    if s in fixed:
        return fixed[s]()
    if s == "golden":
        return make_rotation(GOLDEN_ROTATION)
    if s.startswith("rotation:"):
        return make_rotation(float(s.split(":", 1)[1]))
    if s.startswith("linear:"):
        entries = [int(v) for v in s.split(":", 1)[1].split(",")]
        if len(entries) != 4:
            raise ValueError("linear spec needs four integers a,b,c,d")
        return make_linear([entries[:2], entries[2:]])
    raise ValueError(f"unknown system spec {spec!r}")


def parse_method_spec(spec: str, f: SystemMap, N: int, seed: int) -> MethodSpec:
    """Build a method against system ``f``  from a short spec string.

    ``rotation:+DELTA`` is relative to the system's own angle and therefore
    requires a rotation system; every other form stands on its own.  ``SEED``
    defaults to the run seed.
    """
    s = spec.strip()
    if s.startswith("{"):
        return method_from_map(f, map_from_descriptor(json.loads(s)), N)
    if s == "same":
        return method_from_map(f, f, N)
    if s.startswith("translate:"):
        return method_from_map(f, make_translation_method_map(f, float(s.split(":", 1)[1])), N)
    if s.startswith("rotation:"):
        arg = s.split(":", 1)[1]
        if arg.startswith("+") or arg.startswith("-"):
            if f.descriptor.get("kind") != "rotation":
                raise ValueError("relative rotation methods need a rotation system")
            theta = f.descriptor["theta"] + float(arg)
        else:
            theta = float(arg)
        if f.dim != 1:
            raise ValueError("rotation methods are defined on the circle only")
        return method_from_map(f, make_rotation(theta), N)
    if s.startswith("perturb:"):
        parts = s.split(":")
        if len(parts) not in (3, 4):
            raise ValueError("perturb spec is perturb:MODE:DELTA[:SEED]")
        mode, delta = parts[1], float(parts[2])
        pseed = int(parts[3]) if len(parts) == 4 else seed
        return method_from_map(f, make_conservative_perturbation(f, delta, mode, seed=pseed), N)
    if s.startswith("random:"):
        parts = s.split(":")
        if len(parts) not in (2, 3):
            raise ValueError("random spec is random:DELTA[:SEED]")
        rseed = int(parts[2]) if len(parts) == 3 else seed
        return random_method(f, float(parts[1]), rseed)
    raise ValueError(f"unknown method spec {spec!r}")


@dataclass(frozen=True)
class RunConfig:
    """One invocation's worth of inputs, normalized from the parsed flags."""

    command: str
    system: str | None = None
    method: str | None = None
    x: tuple[float, ...] | None = None
    prop: str | None = None
    experiment: str | None = None
    delta: float | None = None
    eps: float | None = None
    N: int | None = None
    grid: int | None = None
    theta: float | None = None
    base: str | None = None
    n_methods: int | None = None
    include: str | None = None
    drift_delta: float | None = None
    drift_eps: float | None = None
    drift_N: int | None = None
    rotation_grid: int | None = None
    seed: int = 0
    threads: int | None = None
    out: str | None = None
    timings: bool = False


def _parse_point(text: str) -> tuple[float, ...]:
    values = tuple(float(v) for v in text.split(","))
    if len(values) not in (1, 2):
        raise ValueError("points have one or two comma-separated coordinates")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shadowlab",
        description="Finite-horizon tracking checks for volume-preserving torus maps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="run seed, recorded in reports and used by seeded specs (default 0)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: SHADOWLAB_THREADS, else all cores)")
    common.add_argument("--timings", action="store_true",
                        help="add work counters to check output; wall time on the error stream")
    common.add_argument("--out", default=None, help="write the report here instead of standard output")

    p_orbit = sub.add_parser("orbit", parents=[common], help="dump a true orbit segment as CSV")
    p_orbit.add_argument("--system", required=True, help=_SYSTEM_HELP)
    p_orbit.add_argument("--x", required=True, type=_parse_point,
                         help="anchor point, comma-separated coordinates")
    p_orbit.add_argument("--N", required=True, type=int, help="horizon: indices -N..N")

    p_check = sub.add_parser("check", parents=[common], help="run one tracking property check")
    p_check.add_argument("property", choices=sorted(_CHECKERS),
                         help="which tracking property to check")
    p_check.add_argument("--system", required=True, help=_SYSTEM_HELP)
    p_check.add_argument("--method", required=True, help=_METHOD_HELP)
    p_check.add_argument("--x", required=True, type=_parse_point,
                         help="anchor point, comma-separated coordinates")
    p_check.add_argument("--eps", required=True, type=float, help="tracking accuracy")
    p_check.add_argument("--N", required=True, type=int, help="horizon: indices -N..N")
    p_check.add_argument("--grid", type=int, default=512,
                         help="lattice points per axis; the grid step is 1/GRID (default 512)")

    p_exp = sub.add_parser("experiment", parents=[common], help="run a scripted experiment")
    p_exp.add_argument("name", choices=sorted(EXPERIMENTS), help="experiment to run")
    p_exp.add_argument("--delta", type=float, help="method size override")
    p_exp.add_argument("--eps", type=float, help="tracking accuracy override")
    p_exp.add_argument("--N", type=int, help="horizon override")
    p_exp.add_argument("--grid", type=int, help="lattice points per axis override")
    p_exp.add_argument("--theta", type=float, help="rotation angle (rotation-dichotomy)")
    p_exp.add_argument("--base", choices=("neutral", "cat"), help="drift-orbital base system")
    p_exp.add_argument("--n-methods", dest="n_methods", type=int,
                       help="number of seeded perturbations on the gallery's cat row")
    p_exp.add_argument("--include", help="gallery rows, comma-separated; empty string for none")
    p_exp.add_argument("--drift-delta", dest="drift_delta", type=float,
                       help="gallery drift rows: method size")
    p_exp.add_argument("--drift-eps", dest="drift_eps", type=float,
                       help="gallery drift rows: tracking accuracy")
    p_exp.add_argument("--drift-N", dest="drift_N", type=int,
                       help="gallery drift rows: horizon")
    p_exp.add_argument("--rotation-grid", dest="rotation_grid", type=int,
                       help="lattice points for circle sweeps")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    get = lambda name, default=None: getattr(args, name, default)
    return RunConfig(
        command=args.command,
        system=get("system"),
        method=get("method"),
        x=get("x"),
        prop=get("property"),
        experiment=get("name"),
        delta=get("delta"),
        eps=get("eps"),
        N=get("N"),
        grid=get("grid"),
        theta=get("theta"),
        base=get("base"),
        n_methods=get("n_methods"),
        include=get("include"),
        drift_delta=get("drift_delta"),
        drift_eps=get("drift_eps"),
        drift_N=get("drift_N"),
        rotation_grid=get("rotation_grid"),
        seed=args.seed,
        threads=args.threads,
        out=args.out,
        timings=args.timings,
    )


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_orbit(config: RunConfig) -> int:
    """Write the CSV dump of the true orbit segment through --x."""
    f = parse_system_spec(config.system)
    po = orbit_segment(f, config.x, config.N)
    if config.out is None:
        sys.stdout.write(orbit_csv_text(po))
    else:
        write_orbit_csv(po, config.out)
    return 0


def cmd_check(config: RunConfig) -> int:
    """Run one property check and report the verdict as JSON."""
    f = parse_system_spec(config.system)
    m = parse_method_spec(config.method, f, config.N, config.seed)
    counters: dict = {}
    verdict = _CHECKERS[config.prop](f, m, config.x, config.eps, config.N,
                                     grid_step=1.0 / config.grid,
                                     threads=config.threads, counters=counters)
    record = verdict.to_record()
    record["seed"] = config.seed
    if config.timings:
        record["timings"] = {k: counters[k] for k in sorted(counters)}
    _emit(json.dumps(record, sort_keys=True, indent=2) + "\n", config.out)
    if verdict.outcome == "tracked":
        return 0
    if verdict.outcome == "failed" and verdict.certified:
        return 3
    return 4


def cmd_experiment(config: RunConfig) -> int:
    """Run a scripted experiment and report it as JSON."""
    runner = EXPERIMENTS[config.experiment]
    accepted = inspect.signature(runner).parameters
    overrides = {
        "delta": config.delta,
        "eps": config.eps,
        "N": config.N,
        "grid": config.grid,
        "theta": config.theta,
        "base": config.base,
        "n_cat_methods": config.n_methods,
        "drift_delta": config.drift_delta,
        "drift_eps": config.drift_eps,
        "drift_N": config.drift_N,
        "rotation_grid": config.rotation_grid,
    }
    if config.include is not None:
        overrides["include"] = tuple(r for r in config.include.split(",") if r)
    kwargs = {"seed": config.seed, "threads": config.threads}
    for key, value in overrides.items():
        if value is None:
            continue
        if key not in accepted:
            raise ValueError(f"experiment {config.experiment!r} does not take --{key.replace('_', '-')}")
        kwargs[key] = value
    report = runner(**kwargs)
    _emit(report.to_json(), config.out)
    return {"consistent": 0, "inconsistent": 5, "inconclusive": 4}[report.conclusion]


_DISPATCH = {"orbit": cmd_orbit, "check": cmd_check, "experiment": cmd_experiment}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(args)
    start = time.perf_counter()
    try:
        code = _DISPATCH[config.command](config)
    except (ConstructionError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"shadowlab: error: {exc}", file=sys.stderr)
        return 2
    if config.timings:
        print(f"wall seconds: {time.perf_counter() - start:.3f}", file=sys.stderr)
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
