"""Self-contained oracle cross-checks over the whole package.

Each check pits a computed quantity against an independent route: closed-form
curves against matrix-valued evolution, grid marches against analytic
solutions, entropies against their decomposition, and the retained "printed"
profile convention against the laws it is documented to break.  The checks
back both the acceptance test suite and the ``validate`` CLI command.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import herm_eig, kron, partial_trace, trace_norm
from .measures import MeasureSeries, blp_witness, trace_distance
from .model import (
    ModelState,
    CouplingProfile,
    closed_form_map,
    joint_state,
    reduced_channel,
    reduced_state,
    volterra_solve,
)
from .quantum import choi_of, is_cptp
from .scenarios import ScenarioConfig, builtin, oracle, run

_SCENARIOS = ("fig1", "fig2", "fig3", "fig4")


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one cross-check."""

    index: int
    name: str
    passed: bool
    detail: str


def _with_convention(config: ScenarioConfig, convention: str) -> ScenarioConfig:
    profile = CouplingProfile.semigroup(config.profile.rate, convention)
    return ScenarioConfig(
        name=config.name,
        pair=config.pair,
        omega=config.omega,
        profile=profile,
        grid=config.grid,
        outputs=config.outputs,
        log_base=config.log_base,
    )


@lru_cache(maxsize=None)
def _series(name: str, convention: str = "figure") -> MeasureSeries:
    config = builtin(name)
    if config.profile.kind == "semigroup" and convention != "figure":
        config = _with_convention(config, convention)
    return run(config)


def _model_states(name: str, convention: str = "figure"):
    config = builtin(name)
    if config.profile.kind == "semigroup" and convention != "figure":
        config = _with_convention(config, convention)
    ms1 = ModelState(config.pair.rho1, config.omega, config.profile)
    ms2 = ModelState(config.pair.rho2, config.omega, config.profile)
    return config, ms1, ms2


def check_reduction_consistency() -> CheckResult:
    """Closed-form marginals against exact partial-trace reduction."""
    worst = 0.0
    for name in _SCENARIOS:
        config, ms1, ms2 = _model_states(name)
        for t in config.grid.times():
            for ms in (ms1, ms2):
                for part in ("system", "environment"):
                    gap = trace_norm(
                        closed_form_map(ms, t, part) - reduced_state(ms, t, part)
                    )
                    worst = max(worst, gap)
    return CheckResult(
        1,
        "closed-form maps vs exact reduction",
        worst <= 1e-10,
        f"max trace-norm gap {worst:.3e} (tol 1e-10)",
    )


def _curve_errors(name: str) -> tuple[float, float, float, float]:
    series = _series(name)
    ref = oracle(name, series.times)
    exact_e = float(np.abs(series.columns["D_E"] - ref.d_e).max())
    exact_s = float(np.abs(series.columns["D_S"] - ref.d_s).max())
    round_e = float(np.abs(series.columns["D_E"] - ref.d_e_rounded).max())
    round_s = float(np.abs(series.columns["D_S"] - ref.d_s_rounded).max())
    return exact_e, exact_s, round_e, round_s


def check_semigroup_orthogonal_curves() -> CheckResult:
    """fig1 distance curves against their closed forms."""
    exact_e, exact_s, round_e, round_s = _curve_errors("fig1")
    worst = max(exact_e, exact_s, round_e, round_s)
    return CheckResult(
        2,
        "fig1 distance curves vs closed forms",
        worst <= 1e-9,
        f"max deviation {worst:.3e} (tol 1e-9)",
    )


def check_semigroup_random_curves() -> CheckResult:
    """fig2 distance curves: exact prefactors tight, rounded prefactors loose."""
    exact_e, exact_s, round_e, round_s = _curve_errors("fig2")
    exact = max(exact_e, exact_s)
    rounded = max(round_e, round_s)
    return CheckResult(
        3,
        "fig2 distance curves vs closed forms",
        exact <= 1e-9 and rounded <= 5e-3,
        f"exact max {exact:.3e} (tol 1e-9), rounded max {rounded:.3e} (tol 5e-3)",
    )


def check_constant_curves() -> CheckResult:
    """fig3 and fig4 distance curves against their closed forms."""
    e3_e, e3_s, r3_e, r3_s = _curve_errors("fig3")
    e4_e, e4_s, r4_e, r4_s = _curve_errors("fig4")
    exact = max(e3_e, e3_s, e4_e, e4_s, r3_e, r3_s)
    rounded = max(r4_e, r4_s)
    return CheckResult(
        4,
        "fig3/fig4 distance curves vs closed forms",
        exact <= 1e-9 and rounded <= 5e-3,
        f"exact max {exact:.3e} (tol 1e-9), fig4 rounded max {rounded:.3e} (tol 5e-3)",
    )


#: Value of the fig1 trace-distance difference at t = 0.25, frozen from the
#: closed forms: 1 - sqrt((1 + e^-1)/2) - sqrt((1 - e^-1)/2).
TDD_FIG1_SPOT = -0.38919886806468207


def check_tdd_structure() -> CheckResult:
    """Sign structure of the trace-distance difference across scenarios."""
    fig1 = _series("fig1")
    it1 = fig1.columns["I_t"]
    ok = float(it1.max()) <= 1e-12
    ok = ok and float(it1[1:].max()) < -1e-12  # strictly negative off t=0
    spot_idx = int(np.argmin(np.abs(fig1.times - 0.25)))
    spot_gap = abs(float(it1[spot_idx]) - TDD_FIG1_SPOT)
    ok = ok and abs(float(fig1.times[spot_idx]) - 0.25) < 1e-12 and spot_gap <= 1e-5

    it3 = _series("fig3").columns["I_t"]
    ok = ok and float(it3.max()) <= 1e-12

    it2 = _series("fig2").columns["I_t"][1:]
    signs = np.sign(it2)
    flips = int(np.count_nonzero(np.diff(signs)))
    ok = ok and signs[0] < 0 and signs[-1] > 0 and flips == 1
    return CheckResult(
        5,
        "trace-distance difference sign structure",
        bool(ok),
        f"fig1 spot gap {spot_gap:.3e} (tol 1e-5), fig2 sign flips {flips} (want 1)",
    )


def _witness(name: str, times=None, convention: str = "figure"):
    config, _, _ = _model_states(name, convention)
    ts = config.grid.times() if times is None else times
    return blp_witness(
        config.pair.rho1, config.pair.rho2, config.omega, config.profile, ts
    )


def check_witness() -> CheckResult:
    """Distance revivals: absent under relaxation, located under oscillation."""
    rep1 = _witness("fig1")
    rep2 = _witness("fig2")
    ok = not rep1.violations and not rep2.violations

    rep4 = _witness("fig4", times=np.linspace(0.0, 3.14159, 628))
    ok = ok and len(rep4.violations) > 0
    q1, q2, q3 = math.pi / 4.0, math.pi / 2.0, 3.0 * math.pi / 4.0
    slack = 1e-9
    in_first = False
    for lo, hi in rep4.violations:
        first = q1 - slack < lo and hi < q2 + slack
        second = q3 - slack < lo and hi <= 3.14159 + slack
        ok = ok and (first or second)
        in_first = in_first or first
    ok = ok and in_first
    return CheckResult(
        6,
        "distance revival witness",
        bool(ok),
        f"semigroup violations {len(rep1.violations) + len(rep2.violations)} (want 0), "
        f"fig4 intervals {[(round(a, 4), round(b, 4)) for a, b in rep4.violations]}",
    )


def check_information_bound() -> CheckResult:
    """External information against its correlation bound, plus route agreement."""
    worst_gap = -math.inf
    worst_route = 0.0
    for name in _SCENARIOS:
        series = _series(name)
        gap = series.columns["I_ext"] - series.columns["corr_bound"]
        worst_gap = max(worst_gap, float(gap.max()))
        config, ms1, ms2 = _model_states(name)
        d0 = trace_distance(config.pair.rho1, config.pair.rho2)
        for t in np.linspace(config.grid.t0, config.grid.t1, 20):
            direct = 0.5 * trace_norm(joint_state(ms1, t) - joint_state(ms2, t))
            worst_route = max(worst_route, abs(direct - d0))
    return CheckResult(
        7,
        "external information bound",
        worst_gap <= 1e-10 and worst_route <= 1e-12,
        f"max I_ext - bound {worst_gap:.3e} (tol 1e-10), "
        f"route disagreement {worst_route:.3e} (tol 1e-12)",
    )


def _vn_entropy(m: np.ndarray) -> float:
    vals = herm_eig(m).values
    vals = vals[vals > 1e-15]
    return float(-(vals * np.log(vals)).sum())


def check_entropy_loss() -> CheckResult:
    """Reduction-loss entropies: zeros, monotonicity, and the mutual-information route."""
    ok = True
    worst_mi = 0.0
    for name in _SCENARIOS:
        series = _series(name)
        config, ms1, ms2 = _model_states(name)
        for col in ("S1", "S2", "S_sum"):
            ok = ok and abs(float(series.columns[col][0])) <= 1e-9
        for k, t in enumerate(series.times):
            for ms, col in ((ms1, "S1"), (ms2, "S2")):
                joint = joint_state(ms, t)
                mi = (
                    _vn_entropy(partial_trace(joint, (2, 2), "environment"))
                    + _vn_entropy(partial_trace(joint, (2, 2), "system"))
                    - _vn_entropy(joint)
                )
                worst_mi = max(worst_mi, abs(mi - float(series.columns[col][k])))
    ok = ok and worst_mi <= 1e-9

    fig1_sum = _series("fig1").columns["S_sum"]
    ok = ok and float(np.diff(fig1_sum).min()) >= -1e-9

    worst_product_point = 0.0
    for name in ("fig3", "fig4"):
        series = _series(name)
        for target in (math.pi / 2.0, math.pi):
            idx = int(np.argmin(np.abs(series.times - target)))
            worst_product_point = max(
                worst_product_point, abs(float(series.columns["S_sum"][idx]))
            )
    ok = ok and worst_product_point <= 1e-9
    return CheckResult(
        8,
        "reduction-loss entropies",
        bool(ok),
        f"max gap to mutual information {worst_mi:.3e} (tol 1e-9), "
        f"product points {worst_product_point:.3e} (tol 1e-9)",
    )


def check_volterra() -> CheckResult:
    """Memory-kernel march against the closed-form map, plus convergence order."""
    rho0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    omega = np.full((2, 2), 0.5, dtype=complex)
    ms = ModelState(rho0, omega, CouplingProfile.constant(1.0))

    def max_error(h: float) -> float:
        ts = np.linspace(0.0, math.pi, int(round(math.pi / h)) + 1)
        states = volterra_solve(1.0, rho0, ts)
        worst = 0.0
        for k, t in enumerate(ts):
            worst = max(
                worst, float(np.abs(states[k] - closed_form_map(ms, t, "system")).max())
            )
        return worst

    err_coarse = max_error(1e-3)
    err_fine = max_error(5e-4)
    ratio = err_coarse / err_fine
    return CheckResult(
        9,
        "memory-kernel march",
        err_coarse <= 1e-4 and ratio >= 3.5,
        f"max error {err_coarse:.3e} at h=1e-3 (tol 1e-4), halving ratio {ratio:.2f} (want >= 3.5)",
    )


def check_cptp() -> CheckResult:
    """Choi matrices of both reduced maps stay CPTP across all scenarios."""
    worst_eig = math.inf
    worst_tp = 0.0
    ok = True
    for name in _SCENARIOS:
        config, ms1, ms2 = _model_states(name)
        for t in np.linspace(config.grid.t0, config.grid.t1, 20):
            for ms, part in ((ms1, "system"), (ms1, "environment"), (ms2, "environment")):
                report = is_cptp(choi_of(reduced_channel(ms, t, part)), (2, 2))
                worst_eig = min(worst_eig, report.min_eigenvalue)
                worst_tp = max(worst_tp, report.tp_deviation)
                ok = ok and report.ok
    return CheckResult(
        10,
        "reduced maps are CPTP",
        bool(ok and worst_eig >= -1e-10 and worst_tp <= 1e-10),
        f"min Choi eigenvalue {worst_eig:.3e} (tol -1e-10), max TP deviation {worst_tp:.3e}",
    )


def _composition_defect(convention: str) -> float:
    """Trace-norm defect of map composition at (t, s) = (0.3, 0.45), gamma = 1."""
    omega = np.full((2, 2), 0.5, dtype=complex)
    profile = CouplingProfile.semigroup(1.0, convention)
    probe = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]], dtype=complex)
    t, s = 0.3, 0.45

    def step(state: np.ndarray, tau: float) -> np.ndarray:
        return closed_form_map(ModelState(state, omega, profile), tau, "system")

    return trace_norm(step(step(probe, s), t) - step(probe, t + s))


def check_printed_convention_fails() -> CheckResult:
    """The "printed" profile convention must break the curves and the composition law."""
    series = _series("fig1", convention="printed")
    ref = oracle("fig1", series.times)
    curve_gap = float(np.abs(series.columns["D_E"] - ref.d_e).max())
    printed_defect = _composition_defect("printed")
    figure_defect = _composition_defect("figure")
    ok = curve_gap > 0.1 and printed_defect > 0.1 and figure_defect <= 1e-12
    return CheckResult(
        11,
        "printed convention demonstrably inconsistent",
        bool(ok),
        f"curve gap {curve_gap:.3e} (want > 0.1), composition defect "
        f"printed {printed_defect:.3e} vs figure {figure_defect:.3e}",
    )


ALL_CHECKS = (
    check_reduction_consistency,
    check_semigroup_orthogonal_curves,
    check_semigroup_random_curves,
    check_constant_curves,
    check_tdd_structure,
    check_witness,
    check_information_bound,
    check_entropy_loss,
    check_volterra,
    check_cptp,
    check_printed_convention_fails,
)


def run_all() -> list[CheckResult]:
    """Run every cross-check in order and return the results."""
    return [check() for check in ALL_CHECKS]
