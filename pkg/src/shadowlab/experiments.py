"""Scripted experiments: tracking verdicts measured against closed-form expectations.

Each experiment builds a base system and a method, runs a fixed battery of
checks, and scores every verdict against a static rule table shipped as
package data (``expectations.json``).  The rules only ever commit where a
closed-form argument applies:

* ``drift-ratio`` -- on a drift construction the best tracking error at the
  anchor's fixed point is exactly N*delta, so the ratio N*delta/eps decides
  the outcome once it is comfortably above or below 1.
* ``hyperbolic-margin`` -- a hyperbolic base tracks any sufficiently small
  perturbation; the rule commits when delta is well inside eps.
* ``anchor-objective`` -- for set-inclusion properties the recorded objective
  at the anchor itself already decides success.

Anything in between is "any": no prediction, every outcome matches.  An
expected failure is only *confirmed* by a certificate-backed failure; a bare
grid minimum leaves the comparison undecided.  The experiment's conclusion is
a pure fold of the per-check agreements, recomputable from the report JSON.

Reports are JSON-stable: keys are emitted sorted, and the ``timings`` section
holds deterministic work counters rather than wall-clock times, so a report is
byte-identical across runs and thread counts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from .geometry import TorusPoint, torus_dist
from .orbits import MethodSpec, method_from_map, orbit_segment
from .shadowing import (
    check_inverse_shadowing,
    check_orbital_inverse,
    check_weak_inverse,
    orbital_objective,
    weak_objective,
)
from .systems import (
    GOLDEN_ROTATION,
    SystemMap,
    cat_map,
    make_conservative_perturbation,
    make_rotation,
    make_translation_method_map,
    map_to_descriptor,
    shear_map,
    torus_identity,
)

__all__ = [
    "ExperimentReport",
    "load_expectations",
    "evaluate_rule",
    "agreement",
    "conclusion_from_verdicts",
    "run_drift_inverse",
    "run_drift_weak",
    "run_drift_orbital",
    "run_rotation_dichotomy",
    "run_property_gallery",
    "EXPERIMENTS",
    "run_experiment",
]


# ---------------------------------------------------------------------------
# Expectation rules
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def load_expectations() -> dict:
    """The versioned rule table shipped with the package."""
    text = resources.files("shadowlab").joinpath("expectations.json").read_text("utf-8")
    table = json.loads(text)
    if table.get("version") != 1:
        raise ValueError(f"unsupported expectation table version {table.get('version')!r}")
    return table


def evaluate_rule(rule: dict | None, params: dict, derived: dict) -> str:
    """Expected outcome under ``rule``: "fail", "track", or "any".

    ``params`` must carry delta/eps/N for the ratio rules; ``derived`` carries
    the recorded anchor objective where the rule needs one.  A missing rule or
    missing input never guesses: it returns "any".
    """
    if rule is None:
        return "any"
    kind = rule["kind"]
    if kind == "drift-ratio":
        ratio = params["N"] * params["delta"] / params["eps"]
        if ratio >= rule["fail_at"]:
            return "fail"
        if ratio <= rule["track_at"]:
            return "track"
        return "any"
    if kind == "hyperbolic-margin":
        return "track" if params["delta"] <= rule["track_at"] * params["eps"] else "any"
    if kind == "anchor-objective":
        anchor = derived.get("anchor_objective")
        if anchor is None:
            return "any"
        return "track" if anchor < rule["track_at"] * params["eps"] else "any"
    raise ValueError(f"unknown rule kind {kind!r}")


def agreement(expected: str, record: dict) -> str:
    """Score one verdict record against its expectation.

    "track" is contradicted by anything that is not tracked.  "fail" is
    matched only by a certificate-backed failure and contradicted only by a
    tracked verdict; an uncertified failure or an inconclusive search leaves
    the comparison "undecided".
    """
    outcome = record["outcome"]
    if expected == "any":
        return "match"
    if expected == "track":
        return "match" if outcome == "tracked" else "contradict"
    if expected == "fail":
        if outcome == "tracked":
            return "contradict"
        if outcome == "failed" and record.get("certified"):
            return "match"
        return "undecided"
    raise ValueError(f"unknown expectation {expected!r}")


def conclusion_from_verdicts(entries) -> str:
    """Fold the per-check agreements; recomputable from a report's JSON alone."""
    scores = [agreement(e["expected"], e["record"]) for e in entries]
    if "contradict" in scores:
        return "inconsistent"
    if "undecided" in scores:
        return "inconclusive"
    return "consistent"


# ---------------------------------------------------------------------------
# Report plumbing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentReport:
    """One experiment's inputs, verdicts, agreement scores, and conclusion."""

    name: str
    parameters: dict
    systems: list
    verdicts: list
    derived: dict
    conclusion: str
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": self.parameters,
            "systems": self.systems,
            "verdicts": self.verdicts,
            "derived": self.derived,
            "conclusion": self.conclusion,
            "timings": self.timings,
        }

    def to_json(self) -> str:
        """Canonical JSON: sorted keys, two-space indent, trailing newline."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _method_descriptor(m: MethodSpec) -> dict:
    d: dict = {"kind": m.kind, "delta": m.delta, "label": m.label}
    if m.source is not None:
        d["source"] = map_to_descriptor(m.source)
    return d


def _row(rowname: str, f: SystemMap, m: MethodSpec) -> dict:
    return {"row": rowname, "system": map_to_descriptor(f), "method": _method_descriptor(m)}


def _entry(experiment: str, check: str, params: dict, verdict, derived: dict | None = None) -> dict:
    rule = load_expectations()["rules"].get(experiment, {}).get(check)
    record = verdict.to_record()
    derived = dict(derived or {})
    expected = evaluate_rule(rule, params, derived)
    entry = {
        "check": check,
        "params": params,
        "record": record,
        "expected": expected,
        "agreement": agreement(expected, record),
    }
    if derived:
        entry["derived"] = derived
    return entry


def _report(name: str, parameters: dict, systems: list, entries: list,
            derived: dict, counters: dict) -> ExperimentReport:
    return ExperimentReport(
        name=name,
        parameters=parameters,
        systems=systems,
        verdicts=entries,
        derived=derived,
        conclusion=conclusion_from_verdicts(entries),
        timings={k: counters[k] for k in sorted(counters)},
    )


def _check_drift_args(delta: float, eps: float, N: int, grid: int) -> None:
    if not (0.0 <= delta < 0.5):
        raise ValueError(f"delta must lie in [0, 1/2), got {delta}")
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    if N < 1:
        raise ValueError("N must be at least 1")
    if grid < 2:
        raise ValueError("grid must be at least 2")


def _drift_method(base: SystemMap, delta: float, N: int) -> MethodSpec:
    """Induced method stepping by base-then-translate; base itself when delta = 0."""
    if delta == 0.0:
        return method_from_map(base, base, N)
    return method_from_map(base, make_translation_method_map(base, delta), N)


# ---------------------------------------------------------------------------
# Drift experiments
# ---------------------------------------------------------------------------

def run_drift_inverse(delta: float = 0.01, eps: float = 0.1, N: int = 25,
                      grid: int = 512, threads: int | None = None,
                      seed: int = 0) -> ExperimentReport:
    """Shear base with a translated step: inverse tracking against the drift bound.

    The anchor (0, 0) is fixed by the shear, but every method orbit sweeps the
    first coordinate by delta per step, so the best index-matched tracking
    error over the horizon is at least N*delta.  With the default parameters
    that bound is 2.5 * eps and the failure is certificate-grade; shrink N or
    delta (ratio at or below one half) and the check flips to tracked.
    """
    _check_drift_args(delta, eps, N, grid)
    f = shear_map()
    m = _drift_method(f, delta, N)
    x = (0.0, 0.0)
    counters: dict = {}
    v = check_inverse_shadowing(f, m, x, eps, N, grid_step=1.0 / grid,
                                threads=threads, counters=counters)
    params = {"delta": delta, "eps": eps, "N": N}
    derived: dict = {"drift_bound": N * delta}
    if 2.0 * eps <= 0.5:
        # Two anchors 2*eps apart cannot share a single eps-tracking point, the
        # elementary half of the counterexample; record the separation used.
        mate = TorusPoint((0.0, 2.0 * eps))
        derived["anchor_separation"] = {
            "point": [float(c) for c in mate.coords],
            "distance": torus_dist(TorusPoint((0.0, 0.0)), mate),
        }
    entries = [_entry("drift-inverse", "inverse", params, v)]
    return _report("drift-inverse", {**params, "grid": grid, "seed": seed},
                   [_row("shear", f, m)], entries, derived, counters)


def run_drift_weak(delta: float = 0.01, eps: float = 0.1, N: int = 25,
                   grid: int = 512, threads: int | None = None,
                   seed: int = 0) -> ExperimentReport:
    """Identity base with a translated step: even set-inclusion tracking drifts away.

    The true orbit of the anchor is the single point (0, 0), while every
    method orbit is an arithmetic sweep of step delta; its largest distance
    from that point is minimized by centering, at exactly N*delta.  The weak
    check therefore fails with a certificate once N*delta is past eps and
    tracks once it is below.
    """
    _check_drift_args(delta, eps, N, grid)
    f = torus_identity()
    m = _drift_method(f, delta, N)
    counters: dict = {}
    v = check_weak_inverse(f, m, (0.0, 0.0), eps, N, grid_step=1.0 / grid,
                           threads=threads, counters=counters)
    params = {"delta": delta, "eps": eps, "N": N}
    entries = [_entry("drift-weak", "weak", params, v)]
    return _report("drift-weak", {**params, "grid": grid, "seed": seed},
                   [_row("identity2", f, m)], entries,
                   {"drift_bound": N * delta}, counters)


def run_drift_orbital(delta: float = 0.01, eps: float = 0.1, N: int = 25,
                      grid: int = 512, threads: int | None = None,
                      seed: int = 0, base: str = "neutral") -> ExperimentReport:
    """Orbital inclusion under drift: fails on a neutral base, survives on a hyperbolic one.

    base "neutral" is the identity construction of :func:`run_drift_weak`; the
    orbital objective coincides with the weak one there and fails at the same
    N*delta bound.  base "cat" runs the identical translation drift on top of
    the cat map, where the exact affine solver produces a tracking point and
    the check comes back tracked -- the dichotomy in one switch.
    """
    _check_drift_args(delta, eps, N, grid)
    if base == "neutral":
        f = torus_identity()
        check_key, rowname, x = "orbital", "identity2", (0.0, 0.0)
        derived: dict = {"drift_bound": N * delta}
    elif base == "cat":
        f = cat_map()
        check_key, rowname, x = "orbital@cat", "cat", (0.2, 0.3)
        derived = {}
    else:
        raise ValueError(f"base must be 'neutral' or 'cat', got {base!r}")
    m = _drift_method(f, delta, N)
    counters: dict = {}
    v = check_orbital_inverse(f, m, x, eps, N, grid_step=1.0 / grid,
                              threads=threads, counters=counters)
    params = {"delta": delta, "eps": eps, "N": N}
    entries = [_entry("drift-orbital", check_key, params, v)]
    return _report("drift-orbital", {**params, "grid": grid, "seed": seed, "base": base},
                   [_row(rowname, f, m)], entries, derived, counters)


# ---------------------------------------------------------------------------
# Rotation dichotomy
# ---------------------------------------------------------------------------

def run_rotation_dichotomy(theta: float = GOLDEN_ROTATION, delta: float = 0.01,
                           eps: float = 0.1, N: int = 25, grid: int = 4096,
                           threads: int | None = None, seed: int = 0) -> ExperimentReport:
    """Circle rotation: index-matched tracking fails while orbital inclusion holds.

    The method rotates by theta + delta, so index-matched errors grow linearly
    and the inverse check fails with a certificate (the rotation is an
    isometry, giving an exact horizon Lipschitz constant of 1).  As sets,
    however, both orbits fill the circle densely; the recorded orbital
    objective at the anchor itself is already far below eps, so the orbital
    check succeeds at y = x.  Angles with a period q <= N are rejected: the
    finite orbit set is then too sparse for the set-inclusion side to mean
    anything at this horizon.
    """
    _check_drift_args(delta, eps, N, grid)
    if not (0.0 < theta < 1.0):
        raise ValueError(f"theta must lie in (0, 1), got {theta}")
    for q in range(1, N + 1):
        if abs(math.remainder(q * theta, 1.0)) <= 1e-9:
            raise ValueError(f"rotation angle has period {q} inside the horizon")
    f = make_rotation(theta, label="rotation")
    m = method_from_map(f, f, N) if delta == 0.0 else method_from_map(f, make_rotation(theta + delta), N)
    x = (0.0,)
    counters: dict = {}
    v_inv = check_inverse_shadowing(f, m, x, eps, N, grid_step=1.0 / grid,
                                    threads=threads, counters=counters)
    targets = orbit_segment(f, x, N).as_array()
    anchor_objective = float(orbital_objective(m.source, targets, np.zeros(1), N))
    v_orb = check_orbital_inverse(f, m, x, eps, N, grid_step=1.0 / grid,
                                  threads=threads, counters=counters)
    params = {"delta": delta, "eps": eps, "N": N, "theta": theta}
    entries = [
        _entry("rotation-dichotomy", "inverse", params, v_inv),
        _entry("rotation-dichotomy", "orbital", params, v_orb,
               derived={"anchor_objective": anchor_objective}),
    ]
    derived = {"drift_bound": N * delta, "anchor_objective": anchor_objective}
    return _report("rotation-dichotomy", {**params, "grid": grid, "seed": seed},
                   [_row("rotation", f, m)], entries, derived, counters)


# ---------------------------------------------------------------------------
# Property gallery
# ---------------------------------------------------------------------------

def run_property_gallery(eps: float = 0.1, N: int = 30, delta: float = 1e-3,
                         drift_delta: float = 0.01, drift_eps: float = 0.1,
                         drift_N: int = 25, grid: int = 512, rotation_grid: int = 4096,
                         n_cat_methods: int = 1, include=("cat", "shear", "rotation"),
                         threads: int | None = None, seed: int = 0) -> ExperimentReport:
    """Base systems x inverse-type properties, scored row by row.

    The cat row runs ``n_cat_methods`` volume-preserving sine-shear
    perturbations (seeded from ``seed``) and reuses each inverse witness as a
    seed candidate for the weak and orbital checks: a point whose method orbit
    tracks index by index also satisfies both inclusions, so the chain is
    exercised on the same witness.  The shear row replays the drifting
    counterexample at the drift parameters; the rotation row replays the
    dichotomy with recorded anchor objectives.  An empty ``include`` yields an
    empty, trivially consistent report.
    """
    _check_drift_args(drift_delta, drift_eps, drift_N, grid)
    _check_drift_args(delta, eps, N, rotation_grid)
    if n_cat_methods < 0:
        raise ValueError("n_cat_methods must be nonnegative")
    include = tuple(include)
    for rowname in include:
        if rowname not in ("cat", "shear", "rotation"):
            raise ValueError(f"unknown gallery row {rowname!r}")

    name = "property-gallery"
    counters: dict = {}
    entries: list = []
    systems: list = []

    if "cat" in include:
        f = cat_map()
        x = (0.2, 0.3)
        for i in range(n_cat_methods):
            method_seed = seed + 100 + i
            g = make_conservative_perturbation(f, delta, "shear-sin", seed=method_seed)
            m = method_from_map(f, g, N)
            systems.append(_row(f"cat[{i}]", f, m))
            params = {"delta": delta, "eps": eps, "N": N, "method_seed": method_seed}
            v_inv = check_inverse_shadowing(f, m, x, eps, N, grid_step=1.0 / grid,
                                            threads=threads, counters=counters)
            seeds = [v_inv.witness] if v_inv.witness is not None else []
            v_weak = check_weak_inverse(f, m, x, eps, N, grid_step=1.0 / grid,
                                        seeds=seeds, threads=threads, counters=counters)
            v_orb = check_orbital_inverse(f, m, x, eps, N, grid_step=1.0 / grid,
                                          seeds=seeds, threads=threads, counters=counters)
            entries.append(_entry(name, "cat:inverse", params, v_inv))
            entries.append(_entry(name, "cat:weak", params, v_weak))
            entries.append(_entry(name, "cat:orbital", params, v_orb))

    if "shear" in include:
        f = shear_map()
        m = _drift_method(f, drift_delta, drift_N)
        systems.append(_row("shear", f, m))
        params = {"delta": drift_delta, "eps": drift_eps, "N": drift_N}
        for key, checker in (("shear:inverse", check_inverse_shadowing),
                             ("shear:weak", check_weak_inverse),
                             ("shear:orbital", check_orbital_inverse)):
            v = checker(f, m, (0.0, 0.0), drift_eps, drift_N, grid_step=1.0 / grid,
                        threads=threads, counters=counters)
            entries.append(_entry(name, key, params, v))

    if "rotation" in include:
        f = make_rotation(GOLDEN_ROTATION, label="rotation")
        m = _drift_method_rotation(f, GOLDEN_ROTATION, drift_delta, drift_N)
        systems.append(_row("rotation", f, m))
        x = (0.0,)
        targets = orbit_segment(f, x, drift_N).as_array()
        weak_anchor = float(weak_objective(m.source, targets, np.zeros(1), drift_N))
        orb_anchor = float(orbital_objective(m.source, targets, np.zeros(1), drift_N))
        params = {"delta": drift_delta, "eps": drift_eps, "N": drift_N}
        v_inv = check_inverse_shadowing(f, m, x, drift_eps, drift_N,
                                        grid_step=1.0 / rotation_grid,
                                        threads=threads, counters=counters)
        v_weak = check_weak_inverse(f, m, x, drift_eps, drift_N,
                                    grid_step=1.0 / rotation_grid,
                                    threads=threads, counters=counters)
        v_orb = check_orbital_inverse(f, m, x, drift_eps, drift_N,
                                      grid_step=1.0 / rotation_grid,
                                      threads=threads, counters=counters)
        entries.append(_entry(name, "rotation:inverse", params, v_inv))
        entries.append(_entry(name, "rotation:weak", params, v_weak,
                              derived={"anchor_objective": weak_anchor}))
        entries.append(_entry(name, "rotation:orbital", params, v_orb,
                              derived={"anchor_objective": orb_anchor}))

    parameters = {
        "eps": eps, "N": N, "delta": delta,
        "drift_delta": drift_delta, "drift_eps": drift_eps, "drift_N": drift_N,
        "grid": grid, "rotation_grid": rotation_grid,
        "n_cat_methods": n_cat_methods, "include": list(include), "seed": seed,
    }
    return _report(name, parameters, systems, entries, {}, counters)


def _drift_method_rotation(f: SystemMap, theta: float, delta: float, N: int) -> MethodSpec:
    if delta == 0.0:
        return method_from_map(f, f, N)
    return method_from_map(f, make_rotation(theta + delta), N)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

EXPERIMENTS = {
    "drift-inverse": run_drift_inverse,
    "drift-weak": run_drift_weak,
    "drift-orbital": run_drift_orbital,
    "rotation-dichotomy": run_rotation_dichotomy,
    "property-gallery": run_property_gallery,
}


def run_experiment(name: str, **kwargs) -> ExperimentReport:
    """Dispatch to a registered experiment by name."""
    try:
        runner = EXPERIMENTS[name]
    except KeyError:
        raise ValueError(f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)}") from None
    return runner(**kwargs)
