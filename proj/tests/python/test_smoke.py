import math
import os
import sys

mod_dir = os.environ.get("STRALG_MODULE_DIR")
if mod_dir:
    sys.path.insert(0, mod_dir)

try:
    import _stralg as sa
except ImportError:  # pip-installed package layout
    from stralg import _stralg as sa


def test_exterior_calculus():
    w0 = sa.standard_kaehler_form(2)
    dw = sa.d(w0)
    assert dw.norm() < 1e-14
    # d^2 = 0 through the json round trip
    f = sa.Form.from_json(w0.to_json())
    assert sa.d(sa.d(f)).norm() < 1e-14


def test_volume_normalization():
    for n in (1, 2, 3):
        re, im = sa.integrate(sa.volume_form(n))
        assert abs(re - 1.0) < 1e-12
        assert abs(im) < 1e-12


def test_dilaton_scaling():
    n, lam, ell = 2, 1.4, 1.0
    assert abs(sa.m_ell(n, lam, ell) - lam ** (n * (2 - ell) / 2)) < 1e-9


def test_flat_hull_strominger_fixture():
    res = sa.hs_residuals()
    assert max(res.values()) < 1e-12


def test_deformation_dimension():
    assert sa.deformation_dimension(224) == 450
    assert sa.deformation_dimension(0) == 2


def test_quintic_cone_metric_matches_hessian():
    kappa = [[0, 0, 0, 5.0]]
    t, ell = [1.3], 1.5

    def K(x):
        return sa.potential_K(1, kappa, 8.0, [x], ell)

    eps = 1e-4
    hess = (K(t[0] + eps) - 2 * K(t[0]) + K(t[0] - eps)) / eps**2
    G = sa.cone_metric_matrix(1, kappa, 8.0, t, ell)
    assert abs(G[0][0] - hess) < 1e-5 * (1 + abs(hess))
    # K independent of Im a: the two diagonal blocks agree
    assert abs(G[0][0] - G[1][1]) < 1e-12


def test_conjecture_margin_positive():
    kappa = [[0, 0, 0, 5.0]]
    assert sa.conjecture_margin(1, kappa, 8.0, [1.1], [0.7]) > 0


def test_scenario_runner():
    passed, report = sa.run_scenario("quintic-cone")
    assert passed
    assert "cone-metric" in report
