"""Parameter sweeps over the true probability, CSV tables, and SVG charts."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

import numpy as np

from ._domain import DomainError
from .audit import AuditCost
from .optimize import DEFAULT_GRID, GridSpec, Verdict, grid_argmax
from .performativity import MapKind, PerformativityMap
from .reward import GameSpec
from .scoring_rules import FAMILY_ORDER, ScoringRule

CSV_HEADER = (
    "rule", "phi", "alpha", "q", "c", "p",
    "p_hat_star", "reward_at_star", "residual_at_truth", "ic",
)


@dataclass(frozen=True)
class SweepConfig:
    rules: tuple[ScoringRule, ...]
    map: PerformativityMap
    audit: AuditCost
    p_grid: int = 99
    grid: GridSpec = DEFAULT_GRID
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.p_grid < 2:
            raise DomainError(f"p_grid must be >= 2, got {self.p_grid}")
        if not self.rules:
            raise DomainError("sweep needs at least one rule")

    def p_values(self) -> np.ndarray:
        """Interior points i / (n + 1); the default n = 99 gives 0.01 ... 0.99."""
        n = self.p_grid
        return np.arange(1, n + 1) / (n + 1)


@dataclass(frozen=True)
class SweepRow:
    rule: ScoringRule
    phi: PerformativityMap
    audit: AuditCost
    p: float
    p_hat_star: float
    reward_at_star: float
    residual_at_truth: float
    ic: Verdict


@dataclass
class SweepResult:
    rows: list[SweepRow] = field(default_factory=list)
    label: str = ""
    spacing: float = DEFAULT_GRID.spacing

    def for_rule(self, rule: ScoringRule) -> list[SweepRow]:
        return [r for r in self.rows if r.rule == rule]

    def rules(self) -> list[ScoringRule]:
        seen: dict[ScoringRule, None] = {}
        for r in self.rows:
            seen.setdefault(r.rule, None)
        return list(seen)


def _rule_key(rule: ScoringRule):
    return FAMILY_ORDER[rule.family], rule.constant_level


def run_sweep(config: SweepConfig) -> SweepResult:
    rows = []
    for rule in sorted(set(config.rules), key=_rule_key):
        for p in config.p_values():
            game = GameSpec(rule, config.map, config.audit, float(p))
            rep = grid_argmax(game, config.grid)
            rows.append(
                SweepRow(rule, config.map, config.audit, float(p), rep.p_hat_star,
                         rep.reward_at_star, rep.residual_at_truth, rep.verdict)
            )
    return SweepResult(rows, config.label, config.grid.spacing)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_csv(result: SweepResult, destination: IO[str]) -> int:
    """Write one line per row under :data:`CSV_HEADER`; returns the row count."""
    writer = csv.writer(destination, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in result.rows:
        writer.writerow([
            r.rule.label, r.phi.kind.value, _fmt(r.phi.alpha), _fmt(r.audit.q), _fmt(r.audit.c),
            _fmt(r.p), _fmt(r.p_hat_star), _fmt(r.reward_at_star), _fmt(r.residual_at_truth),
            r.ic.value,
        ])
    return len(result.rows)


def read_csv(source: IO[str]) -> SweepResult:
    """Parse a table written by :func:`write_csv`."""
    reader = csv.reader(source)
    header = next(reader)
    if tuple(header) != CSV_HEADER:
        raise ValueError(f"unexpected header {header!r}")
    rows = []
    for rec in reader:
        rule, phi, alpha, q, c, p, star, rew, res, ic = rec
        rows.append(SweepRow(
            ScoringRule.from_label(rule), PerformativityMap(MapKind(phi), float(alpha)),
            AuditCost(float(q), float(c)), float(p), float(star), float(rew), float(res), Verdict(ic),
        ))
    return SweepResult(rows)


# --- SVG -------------------------------------------------------------------

WIDTH, HEIGHT = 640, 480
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
DASHES = ("", "6,3", "2,3", "8,3,2,3")


@dataclass(frozen=True)
class ChartOptions:
    title: str = ""
    # one label per (result, rule) series, in drawing order; generated when empty
    labels: Sequence[str] = ()
    margin_left: int = 60
    margin_right: int = 200
    margin_top: int = 40
    margin_bottom: int = 50


def series_label(row: SweepRow) -> str:
    bits = [row.rule.label, row.phi.kind.value]
    if row.phi.kind is MapKind.DRIFT:
        bits.append(f"a={row.phi.alpha:g}")
    bits.append(f"c={row.audit.c:g}")
    return " ".join(bits)


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def render_svg(results: Iterable[SweepResult], destination: IO[str], options: ChartOptions = ChartOptions()) -> None:
    """Plot optimal forecast against true probability, one polyline per series.

    Output depends only on the inputs (fixed number formatting, no
    timestamps), so identical sweeps give byte-identical files.
    """
    series = []
    for res in results:
        for rule in res.rules():
            rows = res.for_rule(rule)
            series.append((series_label(rows[0]), rows))
    if not series:
        raise ValueError("render_svg needs at least one row")
    if options.labels:
        if len(options.labels) != len(series):
            raise ValueError(f"{len(options.labels)} labels for {len(series)} series")
        series = [(lab, rows) for lab, (_, rows) in zip(options.labels, series)]

    x0, y0 = options.margin_left, options.margin_top
    pw = WIDTH - options.margin_left - options.margin_right
    ph = HEIGHT - options.margin_top - options.margin_bottom

    def sx(v: float) -> str:
        return f"{x0 + v * pw:.3f}"

    def sy(v: float) -> str:
        return f"{y0 + (1.0 - v) * ph:.3f}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    if options.title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">{_esc(options.title)}</text>')
    for k in range(6):
        v = k / 5
        out.append(f'<line x1="{sx(v)}" y1="{sy(0)}" x2="{sx(v)}" y2="{sy(1)}" stroke="#eeeeee"/>')
        out.append(f'<line x1="{sx(0)}" y1="{sy(v)}" x2="{sx(1)}" y2="{sy(v)}" stroke="#eeeeee"/>')
        out.append(f'<text x="{sx(v)}" y="{y0 + ph + 16}" text-anchor="middle">{v:.1f}</text>')
        out.append(f'<text x="{x0 - 6}" y="{float(sy(v)) + 4:.3f}" text-anchor="end">{v:.1f}</text>')
    out.append(f'<rect x="{x0}" y="{y0}" width="{pw}" height="{ph}" fill="none" stroke="#000000"/>')
    out.append(f'<text x="{x0 + pw / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">true probability p</text>')
    out.append(
        f'<text x="16" y="{y0 + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {y0 + ph / 2:.1f})">optimal forecast</text>'
    )
    out.append(
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(1)}" y2="{sy(1)}" stroke="#777777" stroke-dasharray="4,4"/>'
    )
    legend_x = x0 + pw + 14
    for i, (lab, rows) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        dash = DASHES[(i // len(PALETTE)) % len(DASHES)]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        pts = " ".join(f"{sx(r.p)},{sy(r.p_hat_star)}" for r in rows)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} points="{pts}"/>')
        ly = y0 + 10 + 18 * i
        out.append(f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 20}" y2="{ly}" stroke="{color}" stroke-width="1.5"{dash_attr}/>')
        out.append(f'<text x="{legend_x + 26}" y="{ly + 4}">{_esc(lab)}</text>')
    ly = y0 + 10 + 18 * len(series)
    out.append(f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 20}" y2="{ly}" stroke="#777777" stroke-dasharray="4,4"/>')
    out.append(f'<text x="{legend_x + 26}" y="{ly + 4}">truthful (y = x)</text>')
    out.append("</svg>")
    destination.write("\n".join(out) + "\n")
