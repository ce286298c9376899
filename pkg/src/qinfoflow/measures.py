"""Information-flow measures built on trace distance and relative entropy.

All measures compare the evolution of two system preparations that share one
environment state and one coupling profile.  Distances of marginals quantify
what each party can distinguish locally; the differences and sums below
quantify what leaks into correlations that neither marginal sees.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import DEFAULT_SUPPORT_TOL, kron, trace_norm
from .model import CouplingProfile, ModelState, closed_form_map, joint_state
from .quantum import density_from_matrix, relative_entropy

#: Agreement required between the two internal routes of :func:`i_ext`.
CROSS_CHECK_TOL = 1e-12

#: Default derivative threshold for flagging a distance revival.
WITNESS_TOL = 1e-8

#: Canonical order of the measure columns produced by scenario runs.
COLUMN_ORDER = ("D_E", "D_S", "I_ext", "corr_bound", "I_t", "S1", "S2", "S_sum")


@dataclass(frozen=True)
class StatePair:
    """Two system preparations to be distinguished, validated on construction."""

    rho1: np.ndarray
    rho2: np.ndarray

    def __post_init__(self) -> None:
        r1 = density_from_matrix(self.rho1)
        r2 = density_from_matrix(self.rho2)
        if r1.shape != r2.shape:
            raise ValueError(
                f"pair dimensions differ: {r1.shape[0]} vs {r2.shape[0]}"
            )
        object.__setattr__(self, "rho1", r1)
        object.__setattr__(self, "rho2", r2)


def trace_distance(rho1, rho2) -> float:
    """Trace distance ``0.5 * || rho1 - rho2 ||_1`` between two states.

    Both arguments are validated as density matrices; the result lies in
    ``[0, 1]``, reaching 1 exactly for orthogonal states.
    """
    r1 = density_from_matrix(rho1)
    r2 = density_from_matrix(rho2)
    if r1.shape != r2.shape:
        raise ValueError(f"dimension mismatch: {r1.shape[0]} vs {r2.shape[0]}")
    return 0.5 * trace_norm(r1 - r2)


def distance_at(rho1, rho2, omega, profile: CouplingProfile, t: float, part: str) -> float:
    """Trace distance between the evolved marginals of the two preparations.

    ``part="system"`` gives the distance the system observer sees at time
    ``t``; ``part="environment"`` the distance imprinted on the environment,
    which starts at zero and grows only through the coupling.
    """
    m1 = closed_form_map(ModelState(rho1, omega, profile), t, part)
    m2 = closed_form_map(ModelState(rho2, omega, profile), t, part)
    return 0.5 * trace_norm(m1 - m2)


def i_ext(rho1, rho2, omega, profile: CouplingProfile, t: float) -> float:
    """Distinguishability lost by the system observer at time ``t``.

    Defined as the joint-state trace distance minus the system marginal
    distance.  Unitary invariance collapses the joint distance to its initial
    value, so the measure equals ``D(0) - D_system(t)``; both routes are
    computed and must agree within :data:`CROSS_CHECK_TOL`.
    """
    ms1 = ModelState(rho1, omega, profile)
    ms2 = ModelState(rho2, omega, profile)
    joint_dist = 0.5 * trace_norm(joint_state(ms1, t) - joint_state(ms2, t))
    d0 = trace_distance(rho1, rho2)
    if abs(joint_dist - d0) > CROSS_CHECK_TOL:
        raise RuntimeError(
            f"i_ext route mismatch: joint distance {joint_dist!r} vs initial {d0!r}"
        )
    return d0 - distance_at(rho1, rho2, omega, profile, t, "system")


def corr_bound(rho1, rho2, omega, profile: CouplingProfile, t: float) -> float:
    """Correlation bound on the externally flowed information at time ``t``.

    Sum of the distances of each joint state from the product of its own
    marginals, plus the environment marginal distance.  Always an upper bound
    for :func:`i_ext`; the correlation terms vanish exactly whenever the
    propagator factorises.
    """
    total = 0.0
    for rho in (rho1, rho2):
        ms = ModelState(rho, omega, profile)
        product = kron(
            closed_form_map(ms, t, "system"),
            closed_form_map(ms, t, "environment"),
        )
        total += 0.5 * trace_norm(joint_state(ms, t) - product)
    return total + distance_at(rho1, rho2, omega, profile, t, "environment")


def tdd(rho1, rho2, omega, profile: CouplingProfile, t: float) -> float:
    """Trace-distance difference ``D(0) - D_system(t) - D_environment(t)``.

    Negative values witness distinguishability hiding in correlations rather
    than residing in either marginal.
    """
    d0 = trace_distance(rho1, rho2)
    de = distance_at(rho1, rho2, omega, profile, t, "system")
    ds = distance_at(rho1, rho2, omega, profile, t, "environment")
    return d0 - de - ds


@dataclass(frozen=True)
class WitnessReport:
    """Grid derivative of the system marginal distance with flagged revivals.

    ``violations`` holds ``(t_start, t_end)`` spans of consecutive grid nodes
    where the derivative exceeds ``tol``; ``max_slope`` is the largest
    derivative anywhere on the grid (negative when the distance is strictly
    contractive).
    """

    times: np.ndarray
    distances: np.ndarray
    derivative: np.ndarray
    violations: tuple[tuple[float, float], ...]
    max_slope: float
    tol: float


def blp_witness(
    rho1,
    rho2,
    omega,
    profile: CouplingProfile,
    times,
    tol: float = WITNESS_TOL,
) -> WitnessReport:
    """Flag revivals of the system marginal distance on a uniform grid.

    A positive time derivative of the distance between evolved system
    marginals witnesses information flowing back to the system.  Derivatives
    use central differences on interior nodes and one-sided differences at the
    ends.
    """
    ts = np.asarray(times, dtype=float)
    if ts.ndim != 1 or ts.size < 3:
        raise ValueError("witness grid needs at least three nodes")
    h = float(ts[1] - ts[0])
    if h <= 0.0 or float(np.abs(np.diff(ts) - h).max()) > 1e-12 * max(1.0, h):
        raise ValueError("witness grid must be uniform and increasing")
    dist = np.array(
        [distance_at(rho1, rho2, omega, profile, t, "system") for t in ts]
    )
    deriv = np.gradient(dist, ts)
    mask = deriv > tol
    spans: list[tuple[float, float]] = []
    idx = np.nonzero(mask)[0]
    if idx.size:
        breaks = np.where(np.diff(idx) > 1)[0]
        for group in np.split(idx, breaks + 1):
            spans.append((float(ts[group[0]]), float(ts[group[-1]])))
    return WitnessReport(
        times=ts,
        distances=dist,
        derivative=deriv,
        violations=tuple(spans),
        max_slope=float(deriv.max()),
        tol=tol,
    )


def s_u_lambda(
    rho,
    omega,
    profile: CouplingProfile,
    t: float,
    support_tol: float = DEFAULT_SUPPORT_TOL,
) -> float:
    """Relative entropy of the joint state to the product of its marginals.

    Measures everything the pair of reduced descriptions misses about the
    joint evolution at time ``t``.  Returns ``math.inf`` when the joint state
    leaves the support of the product state.
    """
    ms = ModelState(rho, omega, profile)
    product = kron(
        closed_form_map(ms, t, "system"),
        closed_form_map(ms, t, "environment"),
    )
    return relative_entropy(joint_state(ms, t), product, support_tol)


def entropy_sum(rho1, rho2, omega, profile: CouplingProfile, t: float) -> float:
    """Mean reduction loss over the two preparations at time ``t``.

    Averages :func:`s_u_lambda` for the two system states; an infinite term
    makes the sum infinite.
    """
    s1 = s_u_lambda(rho1, omega, profile, t)
    s2 = s_u_lambda(rho2, omega, profile, t)
    return 0.5 * (s1 + s2)


@dataclass(frozen=True)
class SearchConfig:
    """Deterministic Bloch-ball grid search resolution.

    ``radial`` points span ``[0, 1]`` including both shells, ``polar`` spans
    ``[0, pi]`` and ``azimuthal`` spans ``[0, 2 pi]``.  After the full sweep,
    ``refine_passes`` rounds of coordinate refinement halve the step each
    round.
    """

    radial: int = 20
    polar: int = 20
    azimuthal: int = 20
    refine_passes: int = 3

    def __post_init__(self) -> None:
        if self.radial < 2 or self.polar < 2 or self.azimuthal < 2:
            raise ValueError("search grid needs at least two points per axis")
        if self.refine_passes < 0:
            raise ValueError("refine_passes must be non-negative")


def bloch_state(r: float, theta: float, phi: float) -> np.ndarray:
    """Qubit state with Bloch vector of length ``r`` in direction (theta, phi)."""
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"Bloch radius must lie in [0, 1], got {r}")
    nx = r * np.sin(theta) * np.cos(phi)
    ny = r * np.sin(theta) * np.sin(phi)
    nz = r * np.cos(theta)
    return 0.5 * np.array(
        [[1.0 + nz, nx - 1.0j * ny], [nx + 1.0j * ny, 1.0 - nz]], dtype=complex
    )


def minimize_loss(
    omega,
    t: float,
    profile: CouplingProfile,
    search: SearchConfig | None = None,
) -> tuple[np.ndarray, float]:
    """System state minimising :func:`s_u_lambda` at time ``t``.

    Deterministic: a fixed Bloch-ball grid sweep (ties keep the first point in
    ``(r, theta, phi)`` iteration order) followed by fixed-iteration coordinate
    refinement with halved steps.  Returns the best state and its loss; the
    value never exceeds the loss at any swept grid point by construction.
    """
    cfg = search if search is not None else SearchConfig()
    omega = density_from_matrix(omega)
    radii = np.linspace(0.0, 1.0, cfg.radial)
    polars = np.linspace(0.0, np.pi, cfg.polar)
    azimuths = np.linspace(0.0, 2.0 * np.pi, cfg.azimuthal)

    def loss(r: float, theta: float, phi: float) -> float:
        return s_u_lambda(bloch_state(r, theta, phi), omega, profile, t)

    best = (float(radii[0]), float(polars[0]), float(azimuths[0]))
    best_val = loss(*best)
    for r in radii:
        for theta in polars:
            for phi in azimuths:
                val = loss(float(r), float(theta), float(phi))
                if val < best_val:
                    best = (float(r), float(theta), float(phi))
                    best_val = val

    steps = [
        float(radii[1] - radii[0]),
        float(polars[1] - polars[0]),
        float(azimuths[1] - azimuths[0]),
    ]
    bounds = ((0.0, 1.0), (0.0, np.pi), (0.0, 2.0 * np.pi))
    for _ in range(cfg.refine_passes):
        steps = [0.5 * s for s in steps]
        for axis in range(3):
            for direction in (-1.0, 1.0):
                cand = list(best)
                cand[axis] = min(
                    max(cand[axis] + direction * steps[axis], bounds[axis][0]),
                    bounds[axis][1],
                )
                val = loss(*cand)
                if val < best_val:
                    best = (cand[0], cand[1], cand[2])
                    best_val = val

    return density_from_matrix(bloch_state(*best)), best_val


@dataclass
class MeasureSeries:
    """Measure columns evaluated on a shared time grid.

    ``columns`` maps measure names from :data:`COLUMN_ORDER` to arrays aligned
    with ``times``; ``oracle`` optionally carries reference curves and their
    pointwise errors; ``metadata`` records how the series was produced.
    """

    times: np.ndarray
    columns: dict[str, np.ndarray]
    metadata: dict
    oracle: dict[str, np.ndarray] | None = None

    def __post_init__(self) -> None:
        ts = np.asarray(self.times, dtype=float)
        if ts.ndim != 1 or ts.size < 2:
            raise ValueError("a measure series needs at least two grid nodes")
        if np.any(np.diff(ts) <= 0.0):
            raise ValueError("series grid must be strictly increasing")
        self.times = ts
        for name, col in self.columns.items():
            arr = np.asarray(col)
            if arr.shape != ts.shape:
                raise ValueError(f"column {name!r} does not match the grid length")
            self.columns[name] = arr
        for name in ("D_E", "D_S"):
            if name in self.columns:
                col = self.columns[name]
                if float(col.min()) < -1e-12 or float(col.max()) > 1.0 + 1e-9:
                    raise ValueError(f"column {name!r} leaves [0, 1]")
        if "I_ext" in self.columns and float(self.columns["I_ext"].min()) < -1e-10:
            raise ValueError("I_ext fell below zero beyond tolerance")
