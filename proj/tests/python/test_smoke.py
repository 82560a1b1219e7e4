import json
import math

import numpy as np
import pytest

import knotfield as kf


def test_indices_validation():
    k = kf.KnotIndices(2, 3, 1, 1)
    assert k.sum_of_squares() == 15
    assert k.helicity_combination() == 7
    with pytest.raises(kf.KnotfieldError):
        kf.KnotIndices(2, 4, 1, 1)


def test_hopfion_field_values():
    scales = kf.PhysicalScales.natural(a=math.pi**2)
    E, B = kf.field_at((0.0, 0.0, 0.0), 0.0, kf.KnotIndices(1, 1, 1, 1), scales)
    assert np.allclose(E, [4.0, 0.0, 0.0])
    assert np.allclose(B, [0.0, 0.0, -4.0])


def test_maxwell_residual_small():
    res = kf.maxwell_residual((0.3, -0.2, 0.5), 0.7, kf.KnotIndices(2, 3, 1, 1))
    assert res < 1e-6


def test_w_vector_transverse():
    rng = np.random.default_rng(1)
    k = kf.KnotIndices(3, 4, 1, 2)
    for _ in range(50):
        K = rng.uniform(-4, 4, 3)
        W = kf.w_vector(tuple(K), k)
        assert abs(np.dot(K, W)) <= 1e-13 * np.linalg.norm(K) * np.linalg.norm(W) + 1e-300


def test_observable_ratios():
    e1 = kf.energy_expectation(kf.KnotIndices(1, 1, 1, 1))
    e2 = kf.energy_expectation(kf.KnotIndices(2, 3, 1, 1))
    assert e2 / e1 == pytest.approx(15 / 4, rel=1e-9)
    l1 = kf.spin_helicity_expectation(kf.KnotIndices(1, 1, 1, 1))
    l2 = kf.spin_helicity_expectation(kf.KnotIndices(2, 3, 1, 1))
    assert l2 / l1 == pytest.approx(7 / 2, rel=1e-9)


def test_report_json():
    rep = json.loads(kf.observable_report_json(kf.KnotIndices(2, 3, 1, 1)))
    assert rep["ratios_vs_hopfion"]["energy_ratio_vs_hopfion"] == pytest.approx(3.75)
    assert "conventions" in rep
    obs = rep["observables"]["energy"]
    assert obs["rel_dev_quadrature_vs_derived"] < 1e-8


def test_trace_and_link():
    k = kf.KnotIndices(1, 1, 1, 1)
    pts1, closed1, _, gap1 = kf.trace_fieldline("B", (1.3, 0.0, 0.0), k)
    pts2, closed2, _, gap2 = kf.trace_fieldline("B", (0.0, 1.5, 0.0), k)
    assert closed1 and closed2
    assert gap1 < 1e-4 and gap2 < 1e-4
    value, raw, residual = kf.linking_number(pts1[::5], pts2[::5])
    assert value == 1
    assert abs(raw - 1) < 0.05


def test_g2_is_one():
    k = kf.KnotIndices(1, 1, 1, 1)
    assert kf.g2((0.3, 0.1, -0.4), 0.0, (1.0, -0.5, 0.2), 0.3, k) == pytest.approx(1.0)
    g = kf.g1((0.3, 0.1, -0.4), 0.0, (1.0, -0.5, 0.2), 0.3, k)
    assert abs(g) <= 1.0 + 1e-12
