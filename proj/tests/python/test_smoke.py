import itertools
import os
import subprocess

import numpy as np
import pytest

import curvgate as cg


def scalar(t):
    n = t.shape[0]
    return sum(t[i, j, i, j] for i in range(n) for j in range(n))


def test_constant_curvature_invariants():
    t = cg.constant_curvature(5, 0.5)
    assert t.shape == (5, 5, 5, 5)
    assert scalar(t) == pytest.approx(10.0)
    ric, eig, s = cg.ricci(t)
    assert np.allclose(eig, 2.0)
    assert s == pytest.approx(10.0)
    assert cg.weak_ricci_min(t, 2) == pytest.approx(4.0)
    assert cg.symmetry_violation(t) < 1e-14


def test_gauss_scalar_identity():
    rng = np.random.default_rng(3)
    h = rng.normal(size=(2, 5, 5))
    h = (h + h.transpose(0, 2, 1)) / 2
    g = cg.gauss_tensor(h)
    _, norm_h2, norm_b2 = cg.mean_data(h)
    assert norm_h2 == pytest.approx(sum(np.trace(m) ** 2 for m in h))
    assert scalar(g) == pytest.approx(norm_h2 - norm_b2)


def test_isotropic_minimum():
    t = cg.constant_curvature(5, 1.0)
    frame = np.eye(5)[:, :4]
    assert cg.isotropic(t, frame) == pytest.approx(4.0)
    assert cg.weighted_isotropic(t, frame, 0.5, 0.5) == pytest.approx(1 + 0.25 + 0.25 + 0.0625)
    k, j = cg.space_form(2, 4.0)
    res = cg.min_isotropic(k, restarts=16, seed=1)
    assert abs(res["value"]) < 1e-6
    x = np.array([1.0, 0.0, 0.0, 0.0])
    assert cg.holomorphic_sectional(k, j, x) == pytest.approx(4.0)


def test_thresholds_and_check():
    assert cg.delta_eps(1.0, 12) == 0.25
    for n in (4, 6, 8):
        assert cg.threshold("scalar-diffeo/general", n, kmin=4, kmax=4) == pytest.approx(n * (n + 2))
    assert cg.threshold("scalar-diffeo/space-form", 5, c=4) == pytest.approx(18.0)
    with pytest.raises(ValueError):
        cg.threshold("ricci2-diffeo/general", 5, kmin=0, kmax=1)
    verdict = cg.check({
        "ambient": {"kind": "space_form", "c": 4, "m": 5},
        "eps": 1,
        "points": [{"n": 4, "scalar": 24, "ric2min": 12, "ric4min": 24,
                    "normH2": 0, "totally_real": False}],
    })
    states = {e["theorem"]: e["satisfied"] for e in verdict["entries"]}
    assert states["scalar-diffeo/general"] == "boundary"
    assert states["ricci4-homeo/general"] == "boundary"


@pytest.mark.parametrize("n, mu", list(itertools.product([4, 6], [0.1, 0.5])))
def test_clifford_sharpness(n, mu):
    m = cg.clifford_product(n, 1, mu)
    assert max(m["residuals"].values()) < 1e-10
    assert m["closed_forms"]["sharpness_scalar_diffeo"] == pytest.approx(
        -(n - 2) / (n - 1) * mu * mu, abs=1e-10)
    assert m["point"]["totally_real"]


def test_cp_model():
    m = cg.cp_totally_geodesic(4, 4)
    assert m["point"]["scalar"] == pytest.approx(24.0)
    assert m["point"]["ric4min"] == pytest.approx(24.0)


def test_verify_and_cli():
    rep = cg.verify("identities", seed=3, samples=20)
    assert rep["schema"] == 1
    assert all(c["pass"] for c in rep["checks"])
    code, out, _ = cg.run_cli(["model", "cp-geodesic", "--n", "4", "--format", "json"])
    assert code == 0
    assert '"schema": 1' in out


def test_executable():
    exe = os.environ.get("CURVGATE_BIN")
    if not exe:
        pytest.skip("CURVGATE_BIN not set")
    proc = subprocess.run([exe, "verify", "all", "--samples", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "checks passed" in proc.stdout
