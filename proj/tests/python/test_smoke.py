import json
import math

import pytest

import aomega


def test_weights():
    w = aomega.Weight.power(2.0)
    assert w.eval(1.0) == pytest.approx(4.0)
    assert w.eval(0.0) == pytest.approx(1.0)
    assert aomega.Weight.exp_sqrt(1.0).eval(4.0) == pytest.approx(math.exp(2.0))
    with pytest.raises(ValueError):
        aomega.Weight.power(-1.0)


def test_family_members():
    fam = aomega.WeightFamily.power_n(6)
    assert fam.n_max == 6
    assert fam.member(3).eval(1.0) == pytest.approx(8.0)


def test_norm_inequality():
    g = aomega.Grid.make(1.0 / 256.0, 16.0)
    f = aomega.GridFunction.box(g, 0.0, 1.0)
    b = aomega.GridFunction.bump(g, 2.0, 1.0)
    w = aomega.Weight.power(2.0)
    lhs = aomega.weighted_norm(aomega.convolve(f, b), w)
    assert lhs <= aomega.weighted_norm(f, w) * aomega.weighted_norm(b, w) * (1 + 1e-9)


def test_transform_multiplicative():
    g = aomega.Grid.make(1.0 / 256.0, 16.0)
    f = aomega.GridFunction.box(g, 0.0, 1.0)
    b = aomega.GridFunction.box(g, 1.0, 2.0)
    z = 1.0 + 1.0j
    lhs = aomega.laplace(aomega.convolve(f, b), z)
    rhs = aomega.laplace(f, z) * aomega.laplace(b, z)
    assert abs(lhs - rhs) < 1e-6


def test_measures_and_operators():
    w = aomega.Weight.power(1.0)
    m = aomega.Measure.dirac(2.0)
    assert aomega.measure_norm(m, w) == pytest.approx(3.0)
    conv = aomega.convolve_measures(aomega.Measure.dirac(0.5), aomega.Measure.dirac(0.25))
    assert conv.atoms == [(0.75, (1 + 0j))]

    g = aomega.Grid.standard()
    f = aomega.GridFunction.box(g, 0.0, 2.0)
    half = aomega.dilation_apply(2.0, f)
    assert half.values[0] == pytest.approx(2.0 + 0j)
    assert aomega.alpha_support(aomega.GridFunction.box(g, 1.0, 2.0)) == pytest.approx(1.0)


def test_run_config_end_to_end():
    config = {
        "grid": {"h": 1.0 / 256.0, "T": 16.0},
        "seed": 7,
        "families": {"powers": {"kind": "power_n", "n_max": 6}},
        "functions": {
            "b0": {"kind": "box", "lo": 0.0, "hi": 1.0},
            "b1": {"kind": "box", "lo": 1.0, "hi": 2.0},
        },
        "measures": {},
        "suites": [
            {
                "name": "supports",
                "check": "titchmarsh",
                "targets": {"f": "b0", "g": "b1"},
            },
            {
                "name": "gap",
                "check": "condition_c",
                "targets": {"family": "powers"},
                "params": {"n": 1, "horizon": 1024.0, "threshold": 1000.0},
            },
        ],
    }
    report = json.loads(aomega.run_config(json.dumps(config)))
    assert report["aggregate"] == "pass"
    assert len(report["suites"]) == 2
    assert all(s["ok"] for s in report["suites"])


def test_config_errors_have_their_own_type():
    with pytest.raises(aomega.ConfigError):
        aomega.run_config(json.dumps({"suites": [{"check": "nope"}]}))


def test_catalog():
    cat = json.loads(aomega.catalog())
    assert len(cat["checks"]) == 24
    assert {"power_n", "frac_power"} <= {f["kind"] for f in cat["families"]}
