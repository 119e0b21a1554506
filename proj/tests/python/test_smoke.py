import json
import math
import pathlib

import pytest

import wavelab

PRESETS = pathlib.Path(__file__).resolve().parents[2] / "presets"


@pytest.fixture(scope="module")
def default():
    return wavelab.load_config(PRESETS / "default.json")


def test_gas_relations():
    assert wavelab.pressure(1.0) == 1.0
    assert wavelab.lambda1(1.0) == pytest.approx(-math.sqrt(5.0 / 3.0))
    assert wavelab.relative_pressure(1.2, 1.2) == 0.0
    assert wavelab.relative_internal_energy(1.1, 1.3) > 0.0


def test_chart_of_default_preset(default):
    c = wavelab.chart(default)
    assert c["sigma_minus"] == pytest.approx(-1.0)
    assert c["v_mid"] == pytest.approx(1.3)
    assert 0.06 < c["delta_s"] < 0.07
    assert c["beta"] == pytest.approx(100.0 / c["delta_s"])


def test_unknown_key_is_rejected(default):
    bad = dict(default, colour="blue")
    with pytest.raises(ValueError):
        wavelab.normalize_config(bad)


def test_inadmissible_chart(default):
    bad = json.loads(json.dumps(default))
    bad["chart"]["v_plus"] = 1.2
    with pytest.raises(ValueError):
        wavelab.chart(bad)


def test_profiles_are_monotone(default):
    p = wavelab.profiles(default)
    v = p["shock"]["v"]
    assert all(b >= a for a, b in zip(v, v[1:]))
    assert set(p) == {"boundary_layer", "shock"}


def test_composite_boundary_value(default):
    s = wavelab.composite(default, 0.0, [0.0, 10.0])
    assert s["v"][0] == pytest.approx(1.0, abs=1e-12)
    assert s["u"][0] == pytest.approx(1.0, abs=1e-12)


def test_short_simulation(default):
    cfg = json.loads(json.dumps(default))
    cfg["time"]["t_end"] = 2.0
    cfg["grid"] = {"length": 1700, "cells": 1000}
    cfg["diagnostics"] = {"interactions": False, "poincare": True}
    out = wavelab.simulate(cfg)
    assert not out["summary"]["aborted"]
    assert out["frames"]["t"][0] == 0.0
    assert out["frames"]["t"][-1] == pytest.approx(2.0)
    assert min(out["v"]) > 0.0


def test_verify_poincare_is_deterministic(default):
    cfg = json.loads(json.dumps(default))
    cfg["verify"]["polynomials"] = 50
    a = wavelab.verify("poincare", cfg, seed=7)
    b = wavelab.verify("poincare", cfg, seed=7)
    assert a["status"] == "pass"
    assert a == b
