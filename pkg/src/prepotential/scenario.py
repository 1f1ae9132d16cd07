"""Scenario configuration: a versioned JSON document describing charges,
a field-evaluation grid, loops, verification checks, and output.

Schema (version 1):

    {
      "version": 1,
      "charges": [
        {"q": 1.0, "line": {"kind": "rest", "position": [0, 0, 0]}},
        {"q": 1.0, "line": {"kind": "uniform", "event": [0, 0, 0, 0],
                             "velocity": [0, 0, 0.5]}},
        {"q": 1.0, "line": {"kind": "sampled",
                             "taus": [0, 1], "events": [[...], [...]]}}
      ],
      "grid": {"time": 0.0, "origin": [x1, x2, x3],
               "axes": [[1,0,0], [0,1,0]], "extents": [4.0, 4.0],
               "resolution": [11, 11]},
      "loops": [
        {"kind": "circle", "center": [0, 0, 0.5], "radius": 1.0,
         "time": 0.0, "turns": 1, "samples": 240},
        {"kind": "points", "closed": true, "events": [[t,x1,x2,x3], ...]}
      ],
      "checks": ["matrix-relations", ...],
      "output": {"format": "csv", "path": "out.csv"}
    }

Grid points are origin + sum_i t_i * axis_i with t_i running over
linspace(0, extent_i, resolution_i) at the fixed time slice. Circles are
sampled in the x1-x2 plane around the given center; negative turns run
clockwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path as FsPath

import numpy as np

from .errors import ScenarioError
from .potential import Charge, ChargeSystem, Path
from .spacetime import (
    FourVector,
    RestLine,
    SampledLine,
    UniformLine,
    four_velocity_from_3velocity,
)

__all__ = [
    "GridSpec",
    "OutputSpec",
    "Scenario",
    "CHECK_NAMES",
    "parse_scenario",
    "load_scenario",
    "bundled_scenario_path",
    "build_loop",
]

SCHEMA_VERSION = 1

CHECK_NAMES = (
    "matrix-relations",
    "zeta-invariance",
    "rest-charge-field",
    "uniform-motion-triangle",
    "wave-residual",
    "claim1-covariance",
    "loop-phase",
)


@dataclass(frozen=True)
class GridSpec:
    time: float
    origin: tuple[float, float, float]
    axes: tuple[tuple[float, float, float], ...]
    extents: tuple[float, ...]
    resolution: tuple[int, ...]

    def points(self):
        """Yield FourVector grid points in row-major axis order."""
        axes = [np.asarray(a, dtype=float) for a in self.axes]
        ticks = [
            np.linspace(0.0, ext, res)
            for ext, res in zip(self.extents, self.resolution)
        ]
        origin = np.asarray(self.origin, dtype=float)
        index = [0] * len(axes)
        total = int(np.prod(self.resolution))
        for flat in range(total):
            rem = flat
            for i in reversed(range(len(axes))):
                index[i] = rem % self.resolution[i]
                rem //= self.resolution[i]
            pos = origin.copy()
            for i, ax in enumerate(axes):
                pos = pos + ticks[i][index[i]] * ax
            yield FourVector(self.time, pos[0], pos[1], pos[2])


@dataclass(frozen=True)
class OutputSpec:
    format: str = "csv"
    path: str | None = None


@dataclass(frozen=True)
class Scenario:
    charges: ChargeSystem
    grid: GridSpec | None = None
    loops: tuple[Path, ...] = ()
    checks: tuple[str, ...] = ()
    output: OutputSpec = field(default_factory=OutputSpec)


def _require(cond: bool, msg: str):
    if not cond:
        raise ScenarioError(msg)


def _floats(raw, n: int, where: str) -> tuple[float, ...]:
    _require(isinstance(raw, (list, tuple)) and len(raw) == n,
             f"{where}: expected {n} numbers")
    try:
        vals = tuple(float(v) for v in raw)
    except (TypeError, ValueError) as exc:
        raise ScenarioError(f"{where}: non-numeric entry") from exc
    _require(all(math.isfinite(v) for v in vals), f"{where}: entries must be finite")
    return vals


def _parse_line(raw: dict, where: str):
    _require(isinstance(raw, dict), f"{where}: line must be an object")
    kind = raw.get("kind")
    if kind == "rest":
        return RestLine(_floats(raw.get("position"), 3, f"{where}.position"))
    if kind == "uniform":
        ev = _floats(raw.get("event", [0, 0, 0, 0]), 4, f"{where}.event")
        if "velocity" in raw:
            v3 = _floats(raw["velocity"], 3, f"{where}.velocity")
            _require(sum(c * c for c in v3) < 1.0, f"{where}.velocity: |v| must be < 1")
            u = four_velocity_from_3velocity(v3)
        elif "u" in raw:
            uc = _floats(raw["u"], 4, f"{where}.u")
            u = FourVector(*uc)
        else:
            raise ScenarioError(f"{where}: uniform line needs 'velocity' or 'u'")
        try:
            return UniformLine(FourVector(*ev), u)
        except ValueError as exc:
            raise ScenarioError(f"{where}: {exc}") from exc
    if kind == "sampled":
        taus = raw.get("taus")
        events = raw.get("events")
        _require(isinstance(taus, list) and isinstance(events, list)
                 and len(taus) == len(events) and len(taus) >= 2,
                 f"{where}: sampled line needs matching 'taus' and 'events' lists")
        evs = tuple(FourVector(*_floats(e, 4, f"{where}.events[{i}]"))
                    for i, e in enumerate(events))
        try:
            return SampledLine(tuple(float(t) for t in taus), evs)
        except ValueError as exc:
            raise ScenarioError(f"{where}: {exc}") from exc
    raise ScenarioError(f"{where}: unknown line kind {kind!r}")


def build_loop(raw: dict, where: str) -> Path:
    _require(isinstance(raw, dict), f"{where}: loop must be an object")
    kind = raw.get("kind", "circle")
    if kind == "circle":
        center = _floats(raw.get("center", [0, 0, 0]), 3, f"{where}.center")
        radius = float(raw.get("radius", 1.0))
        _require(radius > 0, f"{where}.radius must be positive")
        time = float(raw.get("time", 0.0))
        turns = int(raw.get("turns", 1))
        _require(turns != 0, f"{where}.turns must be a nonzero integer")
        samples = int(raw.get("samples", 240))
        _require(samples >= 8, f"{where}.samples must be >= 8")
        total = samples * abs(turns)
        sign = 1.0 if turns > 0 else -1.0
        events = []
        for k in range(total):
            phi = sign * 2.0 * math.pi * abs(turns) * k / total
            events.append(FourVector(
                time,
                center[0] + radius * math.cos(phi),
                center[1] + radius * math.sin(phi),
                center[2],
            ))
        return Path(tuple(events), closed=True)
    if kind == "points":
        events = raw.get("events")
        _require(isinstance(events, list) and len(events) >= 2,
                 f"{where}: points loop needs an 'events' list")
        evs = tuple(FourVector(*_floats(e, 4, f"{where}.events[{i}]"))
                    for i, e in enumerate(events))
        try:
            return Path(evs, closed=bool(raw.get("closed", True)))
        except ValueError as exc:
            raise ScenarioError(f"{where}: {exc}") from exc
    raise ScenarioError(f"{where}: unknown loop kind {kind!r}")


def parse_scenario(doc: dict) -> Scenario:
    _require(isinstance(doc, dict), "scenario must be a JSON object")
    _require(doc.get("version") == SCHEMA_VERSION,
             f"scenario version must be {SCHEMA_VERSION}, got {doc.get('version')!r}")

    raw_charges = doc.get("charges")
    _require(isinstance(raw_charges, list) and raw_charges,
             "charges: need a non-empty list")
    charges = []
    for i, rc in enumerate(raw_charges):
        _require(isinstance(rc, dict), f"charges[{i}] must be an object")
        try:
            q = float(rc.get("q"))
        except (TypeError, ValueError) as exc:
            raise ScenarioError(f"charges[{i}].q must be a number") from exc
        line = _parse_line(rc.get("line"), f"charges[{i}].line")
        try:
            charges.append(Charge(q, line))
        except ValueError as exc:
            raise ScenarioError(f"charges[{i}]: {exc}") from exc

    grid = None
    if "grid" in doc and doc["grid"] is not None:
        g = doc["grid"]
        _require(isinstance(g, dict), "grid must be an object")
        axes_raw = g.get("axes")
        _require(isinstance(axes_raw, list) and 1 <= len(axes_raw) <= 3,
                 "grid.axes: need 1 to 3 direction vectors")
        axes = tuple(_floats(a, 3, f"grid.axes[{i}]") for i, a in enumerate(axes_raw))
        for i, ax in enumerate(axes):
            _require(any(c != 0 for c in ax), f"grid.axes[{i}] must be nonzero")
        extents = _floats(g.get("extents"), len(axes), "grid.extents")
        res_raw = g.get("resolution")
        _require(isinstance(res_raw, list) and len(res_raw) == len(axes),
                 "grid.resolution: one entry per axis")
        resolution = tuple(int(r) for r in res_raw)
        _require(all(r >= 2 for r in resolution),
                 "grid.resolution: every swept axis needs >= 2 points")
        grid = GridSpec(
            time=float(g.get("time", 0.0)),
            origin=_floats(g.get("origin", [0, 0, 0]), 3, "grid.origin"),
            axes=axes,
            extents=extents,
            resolution=resolution,
        )

    loops = tuple(
        build_loop(raw, f"loops[{i}]") for i, raw in enumerate(doc.get("loops", []))
    )

    checks = tuple(doc.get("checks", []))
    for c in checks:
        _require(c in CHECK_NAMES, f"unknown check name {c!r}")

    out_raw = doc.get("output", {})
    _require(isinstance(out_raw, dict), "output must be an object")
    fmt = out_raw.get("format", "csv")
    _require(fmt in ("csv", "json"), f"output.format must be 'csv' or 'json', got {fmt!r}")
    output = OutputSpec(format=fmt, path=out_raw.get("path"))

    return Scenario(
        charges=ChargeSystem(tuple(charges)),
        grid=grid,
        loops=loops,
        checks=checks,
        output=output,
    )


def load_scenario(path: str | FsPath) -> Scenario:
    p = FsPath(path)
    if not p.exists():
        raise ScenarioError(f"scenario file not found: {p}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{p}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return parse_scenario(doc)


def bundled_scenario_path(name: str) -> FsPath:
    """Filesystem path of a scenario shipped with the package."""
    base = resources.files("prepotential").joinpath("scenarios")
    candidate = base.joinpath(f"{name}.json")
    if not candidate.is_file():
        available = sorted(p.name[:-5] for p in base.iterdir() if p.name.endswith(".json"))
        raise ScenarioError(f"no bundled scenario {name!r}; available: {available}")
    return FsPath(str(candidate))
