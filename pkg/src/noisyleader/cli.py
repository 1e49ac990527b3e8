"""Command-line interface: game-spec ingestion, reports, sweeps, simulation.

Exit codes: 0 success, 2 invalid input, 3 I/O failure, 4 ambiguous-theory
simulation request (interval-valued analytic payoff with no explicit policy).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass

from .game import BinaryDist, PayoffMatrix, nash, u_hat
from .mismatch import (
    Distortion,
    InfeasibleEpsilon,
    epsilon_commitment,
    equilibrium_analysis,
    inv_indifference,
    omega,
    v_tilde,
)
from .montecarlo import TheoryIntervalAmbiguous, json_record, validate_against_theory
from .observation import (
    Channel,
    FollowerPolicy,
    indifference_point,
    leader_equilibrium,
    observation_relevance,
    v_hat,
)

__all__ = ["EXIT_AMBIGUOUS", "EXIT_INVALID", "EXIT_IO", "EXIT_OK", "GameSpec", "SpecError", "load_spec", "main"]

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_AMBIGUOUS = 4

CSV_HEADER = ["p_a1", "u_hat", "v_hat", "v_tilde_lo", "v_tilde_hi", "omega", "breakpoint"]


class SpecError(Exception):
    """Invalid game spec or command arguments; messages name the failing field."""


@dataclass(frozen=True, slots=True)
class GameSpec:
    payoff: PayoffMatrix
    channel: Channel
    distortion: Distortion | None


def _matrix_rows(doc: dict, field: str, required: bool):
    if field not in doc:
        if required:
            raise SpecError(f"{field}: required field is missing")
        return None
    rows = doc[field]
    ok = (
        isinstance(rows, list)
        and len(rows) == 2
        and all(isinstance(r, list) and len(r) == 2 for r in rows)
    )
    if not ok:
        raise SpecError(f"{field}: expected a 2x2 array of numbers")
    for r in rows:
        for x in r:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise SpecError(f"{field}: entries must be numbers, got {x!r}")
    return rows


def parse_spec(doc) -> GameSpec:
    """Validate a decoded JSON document into a GameSpec."""
    if not isinstance(doc, dict):
        raise SpecError("spec: top level must be a JSON object")
    unknown = sorted(set(doc) - {"payoff", "channel", "distortion"})
    if unknown:
        raise SpecError(f"spec: unknown field(s) {', '.join(unknown)}")
    payoff_rows = _matrix_rows(doc, "payoff", required=True)
    channel_rows = _matrix_rows(doc, "channel", required=True)
    distortion_rows = _matrix_rows(doc, "distortion", required=False)
    try:
        payoff = PayoffMatrix.from_rows(payoff_rows)
    except ValueError as exc:
        raise SpecError(f"payoff: {exc}") from exc
    try:
        channel = Channel.from_rows(channel_rows)
    except ValueError as exc:
        raise SpecError(f"channel: {exc}") from exc
    distortion = None
    if distortion_rows is not None:
        try:
            distortion = Distortion.from_rows(distortion_rows)
        except ValueError as exc:
            raise SpecError(f"distortion: {exc}") from exc
    return GameSpec(payoff, channel, distortion)


def load_spec(path: str) -> GameSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecError(f"spec: cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec: invalid JSON in {path}: {exc}") from exc
    return parse_spec(doc)


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _dist_pair(d: BinaryDist) -> str:
    return f"{_fmt(d.p1)} {_fmt(d.p2)}"


def cmd_ne(spec: GameSpec, as_json: bool) -> int:
    solution = nash(spec.payoff)
    if as_json:
        print(
            json.dumps(
                {
                    "class": solution.game_class.value,
                    "follower_strategy": [solution.follower_strategy.p1, solution.follower_strategy.p2],
                    "leader_strategy": [solution.leader_strategy.p1, solution.leader_strategy.p2],
                    "value": solution.value,
                }
            )
        )
    else:
        print(f"game class: {solution.game_class.value}")
        print(f"follower NE strategy (a1, a2): {_dist_pair(solution.follower_strategy)}")
        print(f"leader NE strategy (a1, a2): {_dist_pair(solution.leader_strategy)}")
        print(f"value: {_fmt(solution.value)}")
    return EXIT_OK


def cmd_equilibrium(spec: GameSpec, as_json: bool) -> int:
    eq = leader_equilibrium(spec.payoff, spec.channel)
    rel = observation_relevance(spec.payoff, spec.channel)
    if as_json:
        print(
            json.dumps(
                {
                    "commitment": [eq.leader_commitment.p1, eq.leader_commitment.p2],
                    "value": eq.value,
                    "policy": [
                        [eq.follower_policy.on_obs_a1.p1, eq.follower_policy.on_obs_a1.p2],
                        [eq.follower_policy.on_obs_a2.p1, eq.follower_policy.on_obs_a2.p2],
                    ],
                    "indifferent_observation": eq.indifferent_observation,
                    "relevance": rel.relevance.value,
                    "reasons": list(rel.reasons),
                    "fully_revealing": rel.fully_revealing,
                    "ne_value": rel.ne_value,
                }
            )
        )
    else:
        print(f"commitment (a1, a2): {_dist_pair(eq.leader_commitment)}")
        print(f"value: {_fmt(eq.value)}")
        print(f"policy after observing a1 (a1, a2): {_dist_pair(eq.follower_policy.on_obs_a1)}")
        print(f"policy after observing a2 (a1, a2): {_dist_pair(eq.follower_policy.on_obs_a2)}")
        obs = eq.indifferent_observation
        print(f"indifferent observation: {f'a{obs}' if obs else 'none'}")
        print(f"relevance: {rel.relevance.value} ({', '.join(rel.reasons)})")
        print(f"fully revealing: {'yes' if rel.fully_revealing else 'no'}")
        print(f"NE value: {_fmt(rel.ne_value)}")
    return EXIT_OK


def _sweep_rows(spec: GameSpec, grid: int):
    u, w, t = spec.payoff, spec.channel, spec.distortion
    omega_defined = t is not None and all(
        inv_indifference(u, w, t, i) is not None for i in (1, 2)
    )

    def cells(p1: float, flag: str) -> list[str]:
        p = BinaryDist.from_p1(p1)
        row = [repr(p1), repr(u_hat(u, p)), repr(v_hat(u, w, p))]
        if t is not None:
            interval = v_tilde(u, w, t, p)
            row += [repr(interval.lo), repr(interval.hi)]
            row.append(repr(omega(u, w, t, p)) if omega_defined else "")
        else:
            row += ["", "", ""]
        row.append(flag)
        return row

    yield from (cells(k / (grid - 1), "") for k in range(grid))

    breakpoints: list[tuple[str, float | None]] = [
        ("p1", indifference_point(u, w, 1)),
        ("p2", indifference_point(u, w, 2)),
    ]
    if t is not None:
        breakpoints += [
            ("pt1", inv_indifference(u, w, t, 1)),
            ("pt2", inv_indifference(u, w, t, 2)),
        ]
    for flag, x in breakpoints:
        if x is not None and 0.0 <= x <= 1.0:
            yield cells(x, flag)


def cmd_sweep(spec: GameSpec, grid: int, out: str, as_json: bool) -> int:
    if grid < 2:
        raise SpecError(f"grid: must be at least 2, got {grid}")
    rows = list(_sweep_rows(spec, grid))
    with open(out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        writer.writerows(rows)
    if as_json:
        print(json.dumps({"rows": len(rows), "out": out}))
    else:
        print(f"wrote {len(rows)} rows to {out}")
    return EXIT_OK


def _parse_policy(text: str) -> FollowerPolicy | None:
    if text == "auto":
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise SpecError(
            f"policy: expected 'auto' or two comma-separated probabilities, got {text!r}"
        )
    try:
        q1, q2 = (float(part) for part in parts)
    except ValueError as exc:
        raise SpecError(f"policy: not numeric: {text!r}") from exc
    try:
        return FollowerPolicy(BinaryDist.from_p1(q1), BinaryDist.from_p1(q2))
    except ValueError as exc:
        raise SpecError(f"policy: {exc}") from exc


def cmd_simulate(
    spec: GameSpec, rounds: int, seed: int, leader_p: float, policy_text: str, as_json: bool
) -> int:
    try:
        p = BinaryDist.from_p1(leader_p)
    except ValueError as exc:
        raise SpecError(f"leader-p: {exc}") from exc
    policy = _parse_policy(policy_text)
    if rounds < 1:
        raise SpecError(f"rounds: must be at least 1, got {rounds}")
    report = validate_against_theory(
        spec.payoff,
        spec.channel,
        p,
        rounds,
        seed,
        policy=policy,
        t=spec.distortion,
    )
    record = json_record(report.result, seed)
    if as_json:
        record["theory"] = report.theory_value
        record["passed"] = report.passed
        print(json.dumps(record))
    else:
        print(f"mean: {_fmt(report.result.mean_payoff)}")
        print(f"std_error: {_fmt(report.result.std_error)}")
        print(f"rounds: {report.result.rounds}")
        print(f"seed: {seed}")
        print(f"counts (leader, observation, follower): {json.dumps(record['counts'])}")
        print(f"theory: {_fmt(report.theory_value)}")
        print(f"deviation: {_fmt(report.deviation)}")
        print(f"tolerance (5 sigma): {_fmt(report.tolerance)}")
        print(f"verdict: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK


def cmd_mismatch(spec: GameSpec, eps: float | None, as_json: bool) -> int:
    if spec.distortion is None:
        raise SpecError("distortion: required for the mismatch command")
    u, w, t = spec.payoff, spec.channel, spec.distortion
    report = equilibrium_analysis(u, w, t)
    eps_block = None
    if eps is not None:
        if eps <= 0:
            raise SpecError(f"eps: must be positive, got {eps}")
        commit, policy, value = epsilon_commitment(u, w, t, eps)
        eps_block = (commit, policy, value)
    if as_json:
        payload = {
            "equilibrium_exists": report.equilibrium_exists,
            "omega_infimum": report.omega_infimum,
            "omega_argmin": [report.omega_argmin.p1, report.omega_argmin.p2],
            "vtilde_at_argmin": [report.vtilde_at_argmin.lo, report.vtilde_at_argmin.hi],
            "guaranteed_min": report.guaranteed_min,
            "benefit_over_undistorted": report.benefit_over_undistorted,
        }
        if eps_block is not None:
            commit, policy, value = eps_block
            payload["epsilon_commitment"] = {
                "commitment": [commit.p1, commit.p2],
                "value": value,
                "policy": [
                    [policy.on_obs_a1.p1, policy.on_obs_a1.p2],
                    [policy.on_obs_a2.p1, policy.on_obs_a2.p2],
                ],
            }
        print(json.dumps(payload))
    else:
        print(f"equilibrium exists: {'yes' if report.equilibrium_exists else 'no'}")
        print(f"omega infimum: {_fmt(report.omega_infimum)}")
        print(f"omega argmin (a1, a2): {_dist_pair(report.omega_argmin)}")
        print(
            "payoff interval at argmin: "
            f"[{_fmt(report.vtilde_at_argmin.lo)}, {_fmt(report.vtilde_at_argmin.hi)}]"
        )
        print(f"guaranteed min: {_fmt(report.guaranteed_min)}")
        print(f"benefit over undistorted: {_fmt(report.benefit_over_undistorted)}")
        if eps_block is not None:
            commit, policy, value = eps_block
            print(f"epsilon commitment (a1, a2): {_dist_pair(commit)}")
            print(f"epsilon value: {_fmt(value)}")
            print(f"epsilon policy after observing a1 (a1, a2): {_dist_pair(policy.on_obs_a1)}")
            print(f"epsilon policy after observing a2 (a1, a2): {_dist_pair(policy.on_obs_a2)}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noisyleader",
        description="Solve 2x2 zero-sum commitment games with noisy observation.",
    )
    parser.add_argument("--spec", required=True, metavar="FILE", help="game spec JSON file")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("ne", help="Nash equilibrium of the unobserved game")
    sub.add_parser("equilibrium", help="leader's optimal commitment under observation")

    sweep = sub.add_parser("sweep", help="CSV sweep of the payoff curves")
    sweep.add_argument("--grid", type=int, required=True, help="number of grid points (>= 2)")
    sweep.add_argument("--out", required=True, metavar="FILE", help="output CSV path")

    sim = sub.add_parser("simulate", help="Monte Carlo validation run")
    sim.add_argument("--rounds", type=int, required=True)
    sim.add_argument("--seed", type=int, required=True)
    sim.add_argument("--leader-p", type=float, required=True, dest="leader_p",
                     help="leader's commitment probability of a1")
    sim.add_argument("--policy", default="auto",
                     help="'auto' or 'q1,q2' probabilities of a1 after observing a1/a2")

    mismatch = sub.add_parser("mismatch", help="distorted-commitment analysis")
    mismatch.add_argument("--eps", type=float, default=None,
                          help="also compute an epsilon-commitment with this slack")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        spec = load_spec(args.spec)
        if args.command == "ne":
            return cmd_ne(spec, args.json)
        if args.command == "equilibrium":
            return cmd_equilibrium(spec, args.json)
        if args.command == "sweep":
            return cmd_sweep(spec, args.grid, args.out, args.json)
        if args.command == "simulate":
            return cmd_simulate(spec, args.rounds, args.seed, args.leader_p, args.policy, args.json)
        if args.command == "mismatch":
            return cmd_mismatch(spec, args.eps, args.json)
        raise AssertionError(f"unhandled command {args.command!r}")
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InfeasibleEpsilon as exc:
        print(f"error: eps: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except TheoryIntervalAmbiguous as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
