"""The standard figure panels: optimal forecast vs. truth for the three proper rules."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .audit import AuditCost
from .optimize import DEFAULT_GRID, GridSpec
from .performativity import REVERSION, PerformativityMap, drift
from .scoring_rules import PROPER_RULES
from .sweep import ChartOptions, SweepConfig, SweepResult, render_svg, run_sweep, write_csv

COSTS = (0.01, 1.0, 10.0)
ALPHAS = (0.1, 0.5, 0.9)


@dataclass(frozen=True)
class Panel:
    name: str
    title: str
    config: SweepConfig


def _panel(name: str, title: str, phi: PerformativityMap, c: float, grid: GridSpec) -> Panel:
    cfg = SweepConfig(PROPER_RULES, phi, AuditCost(q=2.0, c=c), grid=grid, label=name)
    return Panel(name, title, cfg)


def standard_panels(grid: GridSpec = DEFAULT_GRID) -> list[Panel]:
    panels = [
        _panel("fig1a_drift_c1", "Drift, c = 1", drift(0.5), 1.0, grid),
        _panel("fig1b_reversion_c1", "Reversion, c = 1", REVERSION, 1.0, grid),
    ]
    for c in COSTS:
        panels.append(_panel(f"fig2_drift_c{c:g}", f"Drift (alpha = 0.5, q = 2), c = {c:g}", drift(0.5), c, grid))
    for c in COSTS:
        panels.append(_panel(f"fig3_reversion_c{c:g}", f"Reversion (q = 2), c = {c:g}", REVERSION, c, grid))
    for a in ALPHAS:
        panels.append(_panel(f"fig4_drift_alpha{a:g}", f"Drift (c = 1, q = 2), alpha = {a:g}", drift(a), 1.0, grid))
    return panels


def _config_record(cfg: SweepConfig) -> dict:
    return {
        "rules": [r.label for r in cfg.rules],
        "phi": cfg.map.kind.value,
        "alpha": cfg.map.alpha,
        "q": cfg.audit.q,
        "c": cfg.audit.c,
        "p_grid": cfg.p_grid,
        "grid": {"points": cfg.grid.points, "lo": cfg.grid.lo, "hi": cfg.grid.hi},
    }


def write_figures(out_dir: Path | str, grid: GridSpec = DEFAULT_GRID, fmt: str = "both") -> Path:
    """Write every panel as CSV and/or SVG plus ``manifest.json``; returns the manifest path."""
    if fmt not in ("csv", "svg", "both"):
        raise ValueError(f"unknown format {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cache: dict[SweepConfig, SweepResult] = {}
    entries = []
    for panel in standard_panels(grid):
        result = cache.get(panel.config)
        if result is None:
            result = cache[panel.config] = run_sweep(panel.config)
        entry = {"name": panel.name, "title": panel.title, "config": _config_record(panel.config)}
        if fmt in ("csv", "both"):
            path = out / f"{panel.name}.csv"
            with open(path, "w", encoding="utf-8", newline="") as fh:
                entry["rows"] = write_csv(result, fh)
            entry["csv"] = path.name
        if fmt in ("svg", "both"):
            path = out / f"{panel.name}.svg"
            with open(path, "w", encoding="utf-8", newline="") as fh:
                render_svg([result], fh, ChartOptions(title=panel.title, labels=[r.label for r in result.rules()]))
            entry["svg"] = path.name
        entries.append(entry)
    manifest = out / "manifest.json"
    with open(manifest, "w", encoding="utf-8", newline="") as fh:
        json.dump({"panels": entries}, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return manifest
