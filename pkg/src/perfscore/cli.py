"""Command-line interface: ``perfscore {eval,optimize,check-ic,closed-form,verify,figures}``.

Exit codes: 0 success, 1 verification or IC-expectation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ._domain import DomainError
from .audit import AuditCost
from .optimize import (
    ConcavityViolation,
    GridSpec,
    check_incentive_compatibility,
    closed_form_quadratic_drift,
    grid_argmax,
    refine_argmax,
)
from .performativity import MapKind, PerformativityMap
from .reward import GameSpec, drift_derivative_lemma, reward, reward_derivative
from .scoring_rules import Family, ScoringRule

RULE_CHOICES = [f.value for f in Family]
PHI_CHOICES = [k.value for k in MapKind]


class UsageError(Exception):
    pass


def _shared_flags() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--rule", choices=RULE_CHOICES, default="quadratic")
    shared.add_argument("--k", type=float, default=1.0, help="level of the constant rule")
    shared.add_argument("--phi", choices=PHI_CHOICES, default="drift")
    shared.add_argument("--alpha", type=float, default=0.5, help="drift weight in [0, 1]")
    shared.add_argument("--q", type=float, default=2.0, help="audit curvature in [0, 2]")
    shared.add_argument("--c", type=float, default=1.0, help="cost of a failed audit")
    shared.add_argument("--p", type=float, help="true probability")
    shared.add_argument("--p-hat", type=float, help="forecast")
    shared.add_argument("--grid-points", type=int, default=500)
    shared.add_argument("--out", type=Path, default=Path("figures"))
    shared.add_argument("--format", choices=["csv", "svg", "both"], default="both")
    return shared


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perfscore",
        description="Expert-optimal forecasts under performative prediction with audits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    shared = _shared_flags()
    sub.add_parser("eval", parents=[shared], help="reward and its derivative at (p, p-hat)")
    sub.add_parser("optimize", parents=[shared], help="expert-optimal forecast on the grid")
    ic = sub.add_parser("check-ic", parents=[shared], help="incentive-compatibility verdict")
    ic.add_argument("--tolerance", type=float, help="defaults to one grid spacing")
    ic.add_argument("--expect", choices=["compatible", "incompatible"], help="exit 1 unless the verdict matches")
    sub.add_parser("closed-form", parents=[shared], help="closed-form optimum for quadratic rule + drift")
    sub.add_parser("verify", parents=[shared], help="run the self-check suite")
    sub.add_parser("figures", parents=[shared], help="write the figure CSV/SVG set and a manifest")
    return parser


def _need(args, name: str) -> float:
    value = getattr(args, name.replace("-", "_"))
    if value is None:
        raise UsageError(f"--{name} is required for {args.command}")
    return value


def _game(args) -> GameSpec:
    rule = ScoringRule(Family(args.rule), args.k) if args.rule == "constant" else ScoringRule(Family(args.rule))
    phi = PerformativityMap(MapKind(args.phi), args.alpha)
    if phi.kind is not MapKind.DRIFT:
        phi = PerformativityMap(phi.kind)
    return GameSpec(rule, phi, AuditCost(args.q, args.c), _need(args, "p"))


def _grid(args) -> GridSpec:
    return GridSpec(points=args.grid_points)


def _cmd_eval(args) -> int:
    game = _game(args)
    x = _need(args, "p-hat")
    print(f"reward {reward(game, x)!r}")
    print(f"derivative {reward_derivative(game, x)!r}")
    if game.map.kind is MapKind.DRIFT and game.rule.is_proper:
        print(f"derivative_lemma {drift_derivative_lemma(game, x)!r}")
    return 0


def _cmd_optimize(args) -> int:
    game = _game(args)
    grid = _grid(args)
    rep = grid_argmax(game, grid)
    print(f"p_hat_star {rep.p_hat_star!r}")
    print(f"reward_at_star {rep.reward_at_star!r}")
    print(f"residual_at_truth {rep.residual_at_truth!r}")
    print(f"ic {rep.verdict.value} (deviation {rep.deviation!r}, spacing {grid.spacing!r})")
    print(f"refined {refine_argmax(game, grid.cell(rep.p_hat_star))!r}")
    return 0


def _cmd_check_ic(args) -> int:
    game = _game(args)
    rep = check_incentive_compatibility(game, _grid(args), args.tolerance)
    print(rep.verdict.value)
    if rep.compatible:
        print(f"no forecast beats truth; reward at truth {rep.reward_at_star!r}")
    else:
        print(f"worst deviation p_hat={rep.p_hat_star!r} gains {rep.deviation!r} over truth")
    print(f"residual_at_truth {rep.residual_at_truth!r}")
    if args.expect and args.expect != rep.verdict.value.lower():
        return 1
    return 0


def _cmd_closed_form(args) -> int:
    try:
        value = closed_form_quadratic_drift(_need(args, "p"), args.alpha, args.q, args.c)
    except ConcavityViolation as exc:
        print(f"ConcavityViolation: {exc}", file=sys.stderr)
        return 2
    print(repr(value))
    return 0


def _cmd_verify(args) -> int:
    from .verify import run_all

    results = run_all()
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.module}: {r.name} ({r.detail})")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def _cmd_figures(args) -> int:
    from .figures import write_figures

    manifest = write_figures(args.out, _grid(args), args.format)
    print(f"wrote {manifest}")
    return 0


COMMANDS = {
    "eval": _cmd_eval,
    "optimize": _cmd_optimize,
    "check-ic": _cmd_check_ic,
    "closed-form": _cmd_closed_form,
    "verify": _cmd_verify,
    "figures": _cmd_figures,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError) as exc:
        print(f"perfscore {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
