"""Command-line front door.

Subcommands: ``figure`` re-runs a stock scenario with oracle columns,
``measures`` evaluates the full column set for user-supplied states,
``witness`` reports distance-revival intervals, ``minimize`` grid-searches
the reduction-loss minimiser, and ``validate`` runs the oracle cross-check
suite.  Identical invocations produce byte-identical output; every error
path prints a single ``error: ...`` line to stderr and exits nonzero
(1 for bad input or failed checks, 2 for usage mistakes).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .measures import SearchConfig, StatePair, blp_witness, minimize_loss
from .model import CONVENTIONS, CouplingProfile
from .quantum import density_from_matrix
from .scenarios import (
    LOG_BASES,
    PLUS_STATE,
    RANDOM_PAIR,
    ScenarioConfig,
    TimeGrid,
    _complex_from_json,
    _complex_to_json,
    _format,
    builtin,
    emit_csv,
    run,
    scenario_from_json,
)
from .validation import run_all

_FIGURE_CHOICES = ("1", "2", "3", "4")


class UsageError(Exception):
    """Flag combination that argparse alone cannot reject (exit code 2)."""


@dataclass(frozen=True)
class CliConfig:
    """Parsed invocation: one command plus its validated overrides."""

    command: str
    scenario: str | None = None
    config_path: str | None = None
    states_path: str | None = None
    out_path: str | None = None
    gamma: float | None = None
    mu: float | None = None
    convention: str | None = None
    tmax: float | None = None
    steps: int | None = None
    log_base: str | None = None
    t: float = 1.0
    search_points: int | None = None
    refine_passes: int | None = None


class _Parser(argparse.ArgumentParser):
    # argparse prints a usage block by default; the contract wants a single
    # machine-parsable line on stderr instead.
    def error(self, message: str):
        self.exit(2, f"error: {message}\n")


def _add_profile_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, help="relaxation rate (exponential profile)")
    p.add_argument("--mu", type=float, help="constant coupling strength")
    p.add_argument(
        "--convention",
        choices=CONVENTIONS,
        help="relaxation-profile convention (default figure)",
    )


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tmax", type=float, help="grid end time")
    p.add_argument("--steps", type=int, help="number of grid nodes")


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", dest="out_path", help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qinfoflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_fig = sub.add_parser("figure", help="run a stock scenario, emit CSV with oracle columns")
    p_fig.add_argument("scenario", choices=_FIGURE_CHOICES, help="stock scenario number")
    _add_profile_flags(p_fig)
    _add_grid_flags(p_fig)
    p_fig.add_argument("--log-base", dest="log_base", choices=LOG_BASES)
    _add_output_flags(p_fig)

    p_meas = sub.add_parser("measures", help="emit the measure CSV for user-supplied states")
    source = p_meas.add_mutually_exclusive_group(required=True)
    source.add_argument("--states", dest="states_path", help="state JSON file (rho1, rho2[, omega])")
    source.add_argument("--config", dest="config_path", help="full scenario JSON file")
    _add_profile_flags(p_meas)
    _add_grid_flags(p_meas)
    p_meas.add_argument("--log-base", dest="log_base", choices=LOG_BASES)
    _add_output_flags(p_meas)

    p_wit = sub.add_parser("witness", help="report distance-revival intervals")
    p_wit.add_argument("--states", dest="states_path", help="state JSON file (default: stock non-orthogonal pair)")
    _add_profile_flags(p_wit)
    _add_grid_flags(p_wit)
    _add_output_flags(p_wit)

    p_min = sub.add_parser("minimize", help="search for the state minimising the reduction loss")
    p_min.add_argument("--t", type=float, default=1.0, help="evaluation time (default 1)")
    p_min.add_argument("--states", dest="states_path", help="state JSON file supplying omega")
    _add_profile_flags(p_min)
    p_min.add_argument("--search-points", dest="search_points", type=int, help="grid points per Bloch axis")
    p_min.add_argument("--refine-passes", dest="refine_passes", type=int, help="coordinate refinement rounds")
    _add_output_flags(p_min)

    p_val = sub.add_parser("validate", help="run the oracle cross-check suite")
    _add_output_flags(p_val)

    return parser


def _config_from_namespace(ns: argparse.Namespace) -> CliConfig:
    return CliConfig(
        command=ns.command,
        scenario=getattr(ns, "scenario", None),
        config_path=getattr(ns, "config_path", None),
        states_path=getattr(ns, "states_path", None),
        out_path=getattr(ns, "out_path", None),
        gamma=getattr(ns, "gamma", None),
        mu=getattr(ns, "mu", None),
        convention=getattr(ns, "convention", None),
        tmax=getattr(ns, "tmax", None),
        steps=getattr(ns, "steps", None),
        log_base=getattr(ns, "log_base", None),
        t=getattr(ns, "t", 1.0),
        search_points=getattr(ns, "search_points", None),
        refine_passes=getattr(ns, "refine_passes", None),
    )


def parse_state_file(path) -> tuple[StatePair, np.ndarray, bool]:
    """Load ``rho1``/``rho2`` (and optional ``omega``) from a JSON file.

    Complex entries are two-element ``[re, im]`` arrays; bare numbers are
    taken as real.  A missing ``omega`` defaults to the maximally coherent
    plus state; the returned flag records that the default was used.
    Diagnostics name the offending key and the violated invariant.
    """
    raw = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"state file {path}: malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ValueError("state file must be a JSON object with keys rho1, rho2, omega")
    for key in ("rho1", "rho2"):
        if key not in obj:
            raise ValueError(f"state file missing required key {key!r}")
    unknown = sorted(set(obj) - {"rho1", "rho2", "omega"})
    if unknown:
        raise ValueError(f"state file has unknown keys {unknown}; expected rho1, rho2, omega")

    def load(key: str) -> np.ndarray:
        arr = _complex_from_json(obj[key], key)
        if arr.shape != (2, 2):
            raise ValueError(f"{key}: expected a 2x2 matrix, got shape {arr.shape}")
        return density_from_matrix(arr, name=key)

    pair = StatePair(load("rho1"), load("rho2"))
    if "omega" in obj:
        return pair, load("omega"), False
    return pair, density_from_matrix(PLUS_STATE), True


def _profile_from_flags(cfg: CliConfig) -> CouplingProfile:
    if cfg.gamma is not None and cfg.mu is not None:
        raise UsageError("--gamma and --mu are mutually exclusive")
    if cfg.mu is not None:
        if cfg.convention is not None:
            raise UsageError("--convention applies only to the relaxation profile (--gamma)")
        return CouplingProfile.constant(cfg.mu)
    return CouplingProfile.semigroup(
        1.0 if cfg.gamma is None else cfg.gamma, cfg.convention or "figure"
    )


def _write_output(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _note_defaulted_omega(defaulted: bool) -> None:
    if defaulted:
        print("note: omega defaulted to the plus state", file=sys.stderr)


def _cmd_figure(cfg: CliConfig) -> int:
    base = builtin(f"fig{cfg.scenario}")
    if base.profile.kind == "semigroup":
        if cfg.mu is not None:
            raise UsageError(f"--mu does not apply to scenario {base.name}; use --gamma")
        rate = base.profile.rate if cfg.gamma is None else cfg.gamma
        profile = CouplingProfile.semigroup(rate, cfg.convention or "figure")
    else:
        if cfg.gamma is not None:
            raise UsageError(f"--gamma does not apply to scenario {base.name}; use --mu")
        if cfg.convention is not None:
            raise UsageError("--convention applies only to the relaxation profile")
        profile = CouplingProfile.constant(base.profile.rate if cfg.mu is None else cfg.mu)
    grid = TimeGrid(
        0.0,
        base.grid.t1 if cfg.tmax is None else cfg.tmax,
        base.grid.steps if cfg.steps is None else cfg.steps,
    )
    config = ScenarioConfig(
        name=base.name,
        pair=base.pair,
        omega=base.omega,
        profile=profile,
        grid=grid,
        log_base=cfg.log_base or "nats",
    )
    _write_output(emit_csv(run(config)), cfg.out_path)
    return 0


def _cmd_measures(cfg: CliConfig) -> int:
    if cfg.config_path is not None:
        for flag, value in (
            ("--gamma", cfg.gamma),
            ("--mu", cfg.mu),
            ("--convention", cfg.convention),
            ("--tmax", cfg.tmax),
            ("--steps", cfg.steps),
            ("--log-base", cfg.log_base),
        ):
            if value is not None:
                raise UsageError(f"--config carries the full scenario; {flag} cannot be combined with it")
        config = scenario_from_json(Path(cfg.config_path).read_text(encoding="utf-8"))
    else:
        pair, omega, defaulted = parse_state_file(cfg.states_path)
        config = ScenarioConfig(
            name="custom",
            pair=pair,
            omega=omega,
            profile=_profile_from_flags(cfg),
            grid=TimeGrid(
                0.0,
                3.0 if cfg.tmax is None else cfg.tmax,
                301 if cfg.steps is None else cfg.steps,
            ),
            log_base=cfg.log_base or "nats",
            metadata={"omega_defaulted": defaulted} if defaulted else {},
        )
    _note_defaulted_omega(bool(config.metadata.get("omega_defaulted")))
    _write_output(emit_csv(run(config)), cfg.out_path)
    return 0


def _cmd_witness(cfg: CliConfig) -> int:
    if cfg.states_path is not None:
        pair, omega, defaulted = parse_state_file(cfg.states_path)
        _note_defaulted_omega(defaulted)
    else:
        pair, omega = RANDOM_PAIR, density_from_matrix(PLUS_STATE)
        print("note: no --states given; using the stock non-orthogonal pair", file=sys.stderr)
    profile = _profile_from_flags(cfg)
    times = np.linspace(
        0.0,
        3.0 if cfg.tmax is None else cfg.tmax,
        301 if cfg.steps is None else cfg.steps,
    )
    report = blp_witness(pair.rho1, pair.rho2, omega, profile, times)
    lines = [
        "distance revival witness",
        f"profile: {json.dumps(profile.describe(), sort_keys=True)}",
        f"grid: {times.size} nodes on [0, {_format(float(times[-1]))}]",
        f"tolerance: {_format(report.tol)}",
        f"max_slope: {_format(report.max_slope)}",
        f"violations: {len(report.violations)}",
    ]
    if report.violations:
        lines.append(f"{'t_start':<18}t_end")
        for lo, hi in report.violations:
            lines.append(f"{_format(lo):<18}{_format(hi)}")
    _write_output("\n".join(lines) + "\n", cfg.out_path)
    return 0


def _cmd_minimize(cfg: CliConfig) -> int:
    if cfg.states_path is not None:
        _, omega, defaulted = parse_state_file(cfg.states_path)
    else:
        omega, defaulted = density_from_matrix(PLUS_STATE), True
    profile = _profile_from_flags(cfg)
    if cfg.search_points is not None or cfg.refine_passes is not None:
        n = 20 if cfg.search_points is None else cfg.search_points
        search = SearchConfig(
            radial=n,
            polar=n,
            azimuthal=n,
            refine_passes=3 if cfg.refine_passes is None else cfg.refine_passes,
        )
    else:
        search = SearchConfig()
    state, loss = minimize_loss(omega, cfg.t, profile, search)
    payload = {
        "t": cfg.t,
        "loss": loss,
        "state": _complex_to_json(state),
        "profile": profile.describe(),
        "omega_defaulted": defaulted,
        "search": {
            "radial": search.radial,
            "polar": search.polar,
            "azimuthal": search.azimuthal,
            "refine_passes": search.refine_passes,
        },
    }
    _write_output(json.dumps(payload, indent=2, sort_keys=True) + "\n", cfg.out_path)
    return 0


def _cmd_validate(cfg: CliConfig) -> int:
    results = run_all()
    lines = [
        f"{'PASS' if r.passed else 'FAIL'}  {r.index:>2}  {r.name}: {r.detail}"
        for r in results
    ]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} checks passed")
    _write_output("\n".join(lines) + "\n", cfg.out_path)
    return 0 if passed == len(results) else 1


_COMMANDS = {
    "figure": _cmd_figure,
    "measures": _cmd_measures,
    "witness": _cmd_witness,
    "minimize": _cmd_minimize,
    "validate": _cmd_validate,
}


def dispatch(cfg: CliConfig) -> int:
    """Run one parsed invocation and return its exit code."""
    return _COMMANDS[cfg.command](cfg)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed the diagnostic (or the requested help)
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return dispatch(_config_from_namespace(ns))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
