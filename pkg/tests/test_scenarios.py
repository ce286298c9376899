"""Stock scenarios, oracle curves, CSV emission, and scenario JSON."""

import io
import json
import math

import numpy as np
import pytest

from qinfoflow.measures import MeasureSeries
from qinfoflow.scenarios import (
    ORTHOGONAL_PAIR,
    PLUS_STATE,
    RANDOM_PAIR,
    ScenarioConfig,
    TimeGrid,
    builtin,
    emit_csv,
    oracle,
    run,
    scenario_from_json,
    scenario_to_json,
)

EXPECTED_HEADER = (
    "t,D_E,D_S,I_ext,corr_bound,I_t,S1,S2,S_sum,"
    "oracle_D_E,oracle_D_S,err_D_E,err_D_S"
)


def small(name, steps=31):
    base = builtin(name)
    return ScenarioConfig(
        name=base.name,
        pair=base.pair,
        omega=base.omega,
        profile=base.profile,
        grid=TimeGrid(0.0, base.grid.t1, steps),
        log_base=base.log_base,
    )


# ------------------------------------------------------------ builtins


def test_builtin_configurations():
    fig1 = builtin("fig1")
    assert fig1.profile.kind == "semigroup" and fig1.profile.rate == 1.0
    assert fig1.grid.t1 == 3.0 and fig1.grid.steps == 301
    assert np.array_equal(fig1.pair.rho1, ORTHOGONAL_PAIR.rho1)

    fig4 = builtin("fig4")
    assert fig4.profile.kind == "constant" and fig4.profile.rate == 1.0
    assert abs(fig4.grid.t1 - math.pi) <= 1e-15
    assert np.array_equal(fig4.pair.rho2, RANDOM_PAIR.rho2)
    assert np.abs(fig4.omega - PLUS_STATE).max() == 0.0


def test_builtin_rejects_unknown():
    with pytest.raises(ValueError, match="unknown scenario"):
        builtin("fig9")


def test_orthogonal_pair_is_orthogonal():
    product = ORTHOGONAL_PAIR.rho1 @ ORTHOGONAL_PAIR.rho2
    assert np.abs(product).max() <= 1e-15


# ------------------------------------------------------------- oracles


def test_oracle_initial_values():
    for name, d0 in (
        ("fig1", 1.0),
        ("fig2", 0.20718349355100663),
        ("fig3", 1.0),
        ("fig4", 0.20718349355100663),
    ):
        ref = oracle(name, 0.0)
        assert abs(float(ref.d_e) - d0) <= 1e-12
        assert abs(float(ref.d_s)) <= 1e-12


def test_oracle_rounded_close_to_exact():
    ts = np.linspace(0.0, 3.0, 200)
    for name in ("fig1", "fig2", "fig3", "fig4"):
        ref = oracle(name, ts)
        assert np.abs(ref.d_e - ref.d_e_rounded).max() < 5e-3
        assert np.abs(ref.d_s - ref.d_s_rounded).max() < 5e-3


def test_oracle_rate_rescales_time():
    ts = np.linspace(0.0, 2.0, 50)
    fast = oracle("fig1", ts, rate=2.0)
    slow = oracle("fig1", 2.0 * ts, rate=1.0)
    assert np.abs(fast.d_e - slow.d_e).max() <= 1e-14


def test_run_matches_oracle():
    for name in ("fig1", "fig2", "fig3", "fig4"):
        series = run(small(name))
        assert series.oracle is not None
        assert float(series.oracle["err_D_E"].max()) <= 1e-9
        assert float(series.oracle["err_D_S"].max()) <= 1e-9


def test_run_metadata():
    series = run(small("fig2", steps=5))
    assert series.metadata["scenario"] == "fig2"
    assert series.metadata["log_base"] == "nats"
    assert abs(series.metadata["initial_distance"] - 0.20718349355100663) <= 1e-12


def test_run_log_base_bits_scales_entropies():
    base = small("fig3", steps=9)
    nats = run(base)
    bits = run(
        ScenarioConfig(
            name=base.name,
            pair=base.pair,
            omega=base.omega,
            profile=base.profile,
            grid=base.grid,
            log_base="bits",
        )
    )
    for col in ("S1", "S2", "S_sum"):
        assert np.abs(bits.columns[col] - nats.columns[col] / math.log(2.0)).max() <= 1e-12
    for col in ("D_E", "D_S", "I_t"):
        assert np.abs(bits.columns[col] - nats.columns[col]).max() == 0.0


# ----------------------------------------------------------------- CSV


def test_csv_header_and_first_row():
    text = emit_csv(run(small("fig1", steps=4)))
    lines = text.splitlines()
    assert lines[0] == EXPECTED_HEADER
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == 1.0  # D_E starts at the initial distance
    assert float(first[5]) == 0.0  # I_t starts at zero


def test_csv_round_trips_at_twelve_digits():
    text = emit_csv(run(small("fig2", steps=7)))
    for line in text.splitlines()[1:]:
        for field in line.split(","):
            value = float(field)
            assert f"{value:.12g}" == field


def test_csv_respects_output_selection():
    base = builtin("fig1")
    config = ScenarioConfig(
        name=base.name,
        pair=base.pair,
        omega=base.omega,
        profile=base.profile,
        grid=TimeGrid(0.0, 3.0, 4),
        outputs=("D_E", "I_t"),
    )
    lines = emit_csv(run(config)).splitlines()
    assert lines[0] == "t,D_E,I_t,oracle_D_E,oracle_D_S,err_D_E,err_D_S"


def test_csv_empty_selection_is_time_only():
    base = builtin("fig1")
    config = ScenarioConfig(
        name=base.name,
        pair=base.pair,
        omega=base.omega,
        profile=base.profile,
        grid=TimeGrid(0.0, 3.0, 3),
        outputs=(),
    )
    lines = emit_csv(run(config)).splitlines()
    assert lines[0] == "t"
    assert lines[1] == "0"


def test_csv_renders_infinity():
    ts = np.linspace(0.0, 1.0, 3)
    cols = {"S1": np.array([0.0, math.inf, 1.0])}
    series = MeasureSeries(times=ts, columns=cols, metadata={"outputs": ["S1"]})
    lines = emit_csv(series).splitlines()
    assert lines[2].split(",")[1] == "inf"


def test_csv_writes_to_stream_and_path(tmp_path):
    series = run(small("fig3", steps=3))
    buf = io.StringIO()
    text = emit_csv(series, buf)
    assert buf.getvalue() == text
    target = tmp_path / "out.csv"
    emit_csv(series, target)
    assert target.read_text(encoding="utf-8") == text


# ------------------------------------------------------- scenario JSON


def test_scenario_json_round_trip():
    config = builtin("fig2")
    text = scenario_to_json(config)
    back = scenario_from_json(text)
    assert back.name == config.name
    assert np.abs(back.pair.rho1 - config.pair.rho1).max() <= 1e-15
    assert np.abs(back.pair.rho2 - config.pair.rho2).max() <= 1e-15
    assert np.abs(back.omega - config.omega).max() <= 1e-15
    assert back.profile.describe() == config.profile.describe()
    assert (back.grid.t0, back.grid.t1, back.grid.steps) == (
        config.grid.t0,
        config.grid.t1,
        config.grid.steps,
    )
    assert back.log_base == config.log_base
    assert back.metadata["omega_defaulted"] is False


def test_scenario_json_defaults_omega():
    doc = {
        "rho1": [[1.0, 0.0], [0.0, 0.0]],
        "rho2": [[0.5, 0.5], [0.5, 0.5]],
    }
    config = scenario_from_json(json.dumps(doc))
    assert config.metadata["omega_defaulted"] is True
    assert np.abs(config.omega - PLUS_STATE).max() <= 1e-15
    assert config.name == "custom"
    assert config.grid.steps == 301


def test_scenario_json_errors():
    with pytest.raises(ValueError, match="invalid JSON"):
        scenario_from_json("{not json")
    with pytest.raises(ValueError, match="rho1"):
        scenario_from_json(json.dumps({"rho2": [[1.0, 0.0], [0.0, 0.0]]}))
    bad_entry = {
        "rho1": [[1.0, "x"], [0.0, 0.0]],
        "rho2": [[1.0, 0.0], [0.0, 0.0]],
    }
    with pytest.raises(ValueError, match=r"rho1: entry \(0,1\)"):
        scenario_from_json(json.dumps(bad_entry))
    with pytest.raises(ValueError, match="unsupported kind"):
        scenario_from_json(
            json.dumps(
                {
                    "rho1": [[1.0, 0.0], [0.0, 0.0]],
                    "rho2": [[0.5, 0.5], [0.5, 0.5]],
                    "profile": {"kind": "custom"},
                }
            )
        )


def test_scenario_json_rejects_custom_profile():
    from qinfoflow.model import CouplingProfile

    config = ScenarioConfig(
        name="x",
        pair=RANDOM_PAIR,
        omega=PLUS_STATE,
        profile=CouplingProfile.custom(lambda t: 0.1 * t),
        grid=TimeGrid(0.0, 1.0, 3),
    )
    with pytest.raises(ValueError, match="custom profiles"):
        scenario_to_json(config)
