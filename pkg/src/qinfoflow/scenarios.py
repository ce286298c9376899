"""Built-in scenario definitions, reference curves, runs, and CSV emission.

Four stock scenarios pair the two canonical preparations (an orthogonal pair
and a generic non-orthogonal pair) with the two stock coupling profiles.  For
each one the marginal distance curves have closed forms that serve as
independent oracles for everything computed numerically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .measures import (
    COLUMN_ORDER,
    MeasureSeries,
    StatePair,
    corr_bound,
    distance_at,
    i_ext,
    s_u_lambda,
    trace_distance,
)
from .model import CouplingProfile
from .quantum import density_from_matrix

LOG_BASES = ("nats", "bits")

_BUILTIN_NAMES = ("fig1", "fig2", "fig3", "fig4")


def _projector(amplitudes: tuple[float, float]) -> np.ndarray:
    v = np.array(amplitudes, dtype=complex)
    return np.outer(v, v.conj())


#: Orthogonal preparation pair: antipodal pure states tilted pi/8 from the poles.
ORTHOGONAL_PAIR = StatePair(
    rho1=_projector((math.sin(math.pi / 8.0), math.cos(math.pi / 8.0))),
    rho2=_projector((math.cos(math.pi / 8.0), -math.sin(math.pi / 8.0))),
)

#: Generic non-orthogonal preparation pair with initial distance ~0.2072.
RANDOM_PAIR = StatePair(
    rho1=np.array([[0.655, 0.205 - 0.225j], [0.205 + 0.225j, 0.345]]),
    rho2=np.array([[0.73, 0.275 - 0.045j], [0.275 + 0.045j, 0.27]]),
)

#: Maximally coherent environment state; it decouples the system map's
#: commutator term, leaving pure random-unitary system dynamics.
PLUS_STATE = np.full((2, 2), 0.5, dtype=complex)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform evaluation grid from 0 to ``t1`` with ``steps`` nodes."""

    t0: float
    t1: float
    steps: int

    def __post_init__(self) -> None:
        if self.t0 != 0.0:
            raise ValueError(f"grid must start at 0, got t0 = {self.t0}")
        if self.t1 <= self.t0:
            raise ValueError(f"grid end {self.t1} must exceed start {self.t0}")
        if self.steps < 2:
            raise ValueError(f"grid needs at least 2 nodes, got {self.steps}")

    def times(self) -> np.ndarray:
        return np.linspace(self.t0, self.t1, self.steps)


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to produce one measure series."""

    name: str
    pair: StatePair
    omega: np.ndarray
    profile: CouplingProfile
    grid: TimeGrid
    outputs: tuple[str, ...] = COLUMN_ORDER
    log_base: str = "nats"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "omega", density_from_matrix(self.omega))
        unknown = [name for name in self.outputs if name not in COLUMN_ORDER]
        if unknown:
            raise ValueError(f"unknown output columns {unknown}; valid: {COLUMN_ORDER}")
        if self.log_base not in LOG_BASES:
            raise ValueError(f"log_base must be one of {LOG_BASES}, got {self.log_base!r}")


def builtin(name: str) -> ScenarioConfig:
    """One of the four stock scenarios.

    ``fig1``/``fig2`` pair the exponential-relaxation profile (gamma = 1,
    "figure" convention) with the orthogonal and generic pairs on ``[0, 3]``;
    ``fig3``/``fig4`` pair the constant profile (mu = 1) with the same two
    pairs on ``[0, pi]``.  All use the plus environment state and 301 nodes.
    """
    if name not in _BUILTIN_NAMES:
        raise ValueError(f"unknown scenario {name!r}; valid names: {_BUILTIN_NAMES}")
    if name in ("fig1", "fig2"):
        profile = CouplingProfile.semigroup(1.0)
        grid = TimeGrid(0.0, 3.0, 301)
    else:
        profile = CouplingProfile.constant(1.0)
        grid = TimeGrid(0.0, math.pi, 301)
    pair = ORTHOGONAL_PAIR if name in ("fig1", "fig3") else RANDOM_PAIR
    return ScenarioConfig(name=name, pair=pair, omega=PLUS_STATE, profile=profile, grid=grid)


def _bloch_difference(pair: StatePair) -> tuple[float, float, float]:
    d = pair.rho1 - pair.rho2
    dx = 2.0 * float(d[0, 1].real)
    dy = -2.0 * float(d[0, 1].imag)
    dz = float(d[0, 0].real - d[1, 1].real)
    return dx, dy, dz


def _curve_coefficients(pair: StatePair) -> tuple[float, float]:
    # D_system(t)^2 = a + b * cos^2(2F); D_environment(t) = sqrt(a) |sin(2F)|.
    dx, dy, dz = _bloch_difference(pair)
    return (0.5 * dx) ** 2, (0.5 * dy) ** 2 + (0.5 * dz) ** 2

_ORTH_A, _ORTH_B = _curve_coefficients(ORTHOGONAL_PAIR)
_RAND_A, _RAND_B = _curve_coefficients(RANDOM_PAIR)


@dataclass(frozen=True)
class OracleCurves:
    """Reference marginal distances: exact prefactors and display-rounded ones."""

    d_e: np.ndarray
    d_s: np.ndarray
    d_e_rounded: np.ndarray
    d_s_rounded: np.ndarray


def oracle(name: str, t, rate: float = 1.0) -> OracleCurves:
    """Closed-form distance curves for a stock scenario at time(s) ``t``.

    The exact variants use prefactors computed from the stock states; the
    rounded variants quote the familiar three-digit coefficients and may
    deviate from the exact ones by a few parts in 1e4.  ``rate`` rescales
    time for a non-default coupling strength (decay or oscillation rate).
    """
    ts = rate * np.asarray(t, dtype=float)
    if name == "fig1":
        d_e = np.sqrt(_ORTH_A + _ORTH_B * np.exp(-4.0 * ts))
        d_s = np.sqrt(_ORTH_A) * np.sqrt(np.clip(1.0 - np.exp(-4.0 * ts), 0.0, None))
        return OracleCurves(
            d_e=d_e,
            d_s=d_s,
            d_e_rounded=np.sqrt((1.0 + np.exp(-4.0 * ts)) / 2.0),
            d_s_rounded=np.sqrt((1.0 - np.exp(-4.0 * ts)) / 2.0),
        )
    if name == "fig2":
        d_e = np.sqrt(_RAND_A + _RAND_B * np.exp(-4.0 * ts))
        d_s = np.sqrt(_RAND_A) * np.sqrt(np.clip(1.0 - np.exp(-4.0 * ts), 0.0, None))
        return OracleCurves(
            d_e=d_e,
            d_s=d_s,
            d_e_rounded=0.207 * np.sqrt(0.114 + 0.886 * np.exp(-4.0 * ts)),
            d_s_rounded=0.07 * np.sqrt(np.clip(1.0 - np.exp(-4.0 * ts), 0.0, None)),
        )
    cos2 = 0.5 * (1.0 + np.cos(4.0 * ts))  # cos^2(2t) without sign loss
    if name == "fig3":
        d_e = np.sqrt(_ORTH_A + _ORTH_B * cos2)
        d_s = np.sqrt(_ORTH_A) * np.abs(np.sin(2.0 * ts))
        return OracleCurves(
            d_e=d_e,
            d_s=d_s,
            d_e_rounded=0.5 * np.sqrt(3.0 + np.cos(4.0 * ts)),
            d_s_rounded=0.5 * np.sqrt(1.0 - np.cos(4.0 * ts)),
        )
    if name == "fig4":
        d_e = np.sqrt(_RAND_A + _RAND_B * cos2)
        d_s = np.sqrt(_RAND_A) * np.abs(np.sin(2.0 * ts))
        return OracleCurves(
            d_e=d_e,
            d_s=d_s,
            d_e_rounded=0.207 * np.sqrt(0.557 + 0.443 * np.cos(4.0 * ts)),
            d_s_rounded=0.07 * np.abs(np.sin(2.0 * ts)),
        )
    raise ValueError(f"unknown scenario {name!r}; valid names: {_BUILTIN_NAMES}")


def run(config: ScenarioConfig) -> MeasureSeries:
    """Evaluate all measure columns of a scenario on its grid.

    Stock scenarios also carry their oracle curves and pointwise errors.
    Entropy columns are emitted in the configured log base; distances do not
    depend on it.
    """
    ts = config.grid.times()
    r1, r2 = config.pair.rho1, config.pair.rho2
    om, prof = config.omega, config.profile
    d0 = trace_distance(r1, r2)
    scale = 1.0 if config.log_base == "nats" else 1.0 / math.log(2.0)

    cols = {name: np.empty(ts.size) for name in COLUMN_ORDER}
    for k, t in enumerate(ts):
        de = distance_at(r1, r2, om, prof, t, "system")
        ds = distance_at(r1, r2, om, prof, t, "environment")
        s1 = scale * s_u_lambda(r1, om, prof, t)
        s2 = scale * s_u_lambda(r2, om, prof, t)
        cols["D_E"][k] = de
        cols["D_S"][k] = ds
        cols["I_ext"][k] = i_ext(r1, r2, om, prof, t)
        cols["corr_bound"][k] = corr_bound(r1, r2, om, prof, t)
        cols["I_t"][k] = d0 - de - ds
        cols["S1"][k] = s1
        cols["S2"][k] = s2
        cols["S_sum"][k] = 0.5 * (s1 + s2)

    oracle_cols = None
    if config.name in _BUILTIN_NAMES and prof.kind in ("semigroup", "constant"):
        ref = oracle(config.name, ts, rate=prof.rate)
        oracle_cols = {
            "oracle_D_E": ref.d_e,
            "oracle_D_S": ref.d_s,
            "err_D_E": np.abs(cols["D_E"] - ref.d_e),
            "err_D_S": np.abs(cols["D_S"] - ref.d_s),
        }

    metadata = dict(config.metadata)
    metadata.update(
        scenario=config.name,
        profile=prof.describe(),
        log_base=config.log_base,
        initial_distance=d0,
        outputs=list(config.outputs),
    )
    return MeasureSeries(times=ts, columns=cols, metadata=metadata, oracle=oracle_cols)


def _format(x: float) -> str:
    return f"{x:.12g}"


def emit_csv(series: MeasureSeries, destination=None) -> str:
    """Render a measure series as CSV and optionally write it out.

    Columns follow the canonical order restricted to the selected outputs;
    oracle columns follow when the series carries them and any measure is
    selected.  Values carry 12 significant digits; infinities render as
    ``inf``.  ``destination`` may be a path or a writable text stream.
    """
    selected = [
        name for name in COLUMN_ORDER
        if name in series.metadata.get("outputs", COLUMN_ORDER) and name in series.columns
    ]
    oracle_names = []
    if series.oracle is not None and selected:
        oracle_names = ["oracle_D_E", "oracle_D_S", "err_D_E", "err_D_S"]
    header = ",".join(["t"] + selected + oracle_names)
    lines = [header]
    for k in range(series.times.size):
        row = [_format(float(series.times[k]))]
        row += [_format(float(series.columns[name][k])) for name in selected]
        row += [_format(float(series.oracle[name][k])) for name in oracle_names]
        lines.append(",".join(row))
    text = "\n".join(lines) + "\n"
    if destination is None:
        return text
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        Path(destination).write_text(text, encoding="utf-8")
    return text


def _complex_to_json(m: np.ndarray) -> list:
    return [[[float(entry.real), float(entry.imag)] for entry in row] for row in m]


def _complex_from_json(obj, key: str) -> np.ndarray:
    if not isinstance(obj, list) or len(obj) != 2:
        raise ValueError(f"{key}: expected a 2x2 matrix as a list of rows")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != 2:
            raise ValueError(f"{key}: row {i} must have exactly 2 entries")
        entries = []
        for j, entry in enumerate(row):
            if isinstance(entry, (int, float)):
                entries.append(complex(entry))
            elif (
                isinstance(entry, list)
                and len(entry) == 2
                and all(isinstance(x, (int, float)) for x in entry)
            ):
                entries.append(complex(entry[0], entry[1]))
            else:
                raise ValueError(f"{key}: entry ({i},{j}) must be a number or [re, im]")
        rows.append(entries)
    return np.array(rows, dtype=complex)


def scenario_to_json(config: ScenarioConfig) -> str:
    """Serialise a scenario (stock profiles only) to a JSON document."""
    if config.profile.kind == "custom":
        raise ValueError("custom profiles cannot be serialised to JSON")
    doc = {
        "name": config.name,
        "rho1": _complex_to_json(config.pair.rho1),
        "rho2": _complex_to_json(config.pair.rho2),
        "omega": _complex_to_json(config.omega),
        "profile": config.profile.describe(),
        "grid": {"t0": config.grid.t0, "t1": config.grid.t1, "steps": config.grid.steps},
        "outputs": list(config.outputs),
        "log_base": config.log_base,
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def _profile_from_json(obj) -> CouplingProfile:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("profile: expected an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "semigroup":
        return CouplingProfile.semigroup(
            float(obj.get("gamma", 1.0)), obj.get("convention", "figure")
        )
    if kind == "constant":
        return CouplingProfile.constant(float(obj.get("mu", 1.0)))
    raise ValueError(f"profile: unsupported kind {kind!r} (use semigroup or constant)")


def scenario_from_json(text: str) -> ScenarioConfig:
    """Parse a scenario document produced by :func:`scenario_to_json`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("scenario document must be a JSON object")
    for key in ("rho1", "rho2"):
        if key not in doc:
            raise ValueError(f"missing required key {key!r}")
    pair = StatePair(
        rho1=_complex_from_json(doc["rho1"], "rho1"),
        rho2=_complex_from_json(doc["rho2"], "rho2"),
    )
    omega = (
        _complex_from_json(doc["omega"], "omega") if "omega" in doc else PLUS_STATE
    )
    grid_doc = doc.get("grid", {"t0": 0.0, "t1": 3.0, "steps": 301})
    grid = TimeGrid(
        t0=float(grid_doc.get("t0", 0.0)),
        t1=float(grid_doc.get("t1", 3.0)),
        steps=int(grid_doc.get("steps", 301)),
    )
    return ScenarioConfig(
        name=str(doc.get("name", "custom")),
        pair=pair,
        omega=omega,
        profile=_profile_from_json(doc.get("profile", {"kind": "semigroup"})),
        grid=grid,
        outputs=tuple(doc.get("outputs", COLUMN_ORDER)),
        log_base=str(doc.get("log_base", "nats")),
        metadata={"omega_defaulted": "omega" not in doc},
    )
