import numpy as np
import pytest

import qspectral as qs


def quat_diag(*entries):
    a = np.zeros((len(entries), len(entries), 4))
    for i, q in enumerate(entries):
        a[i, i] = q
    return a


I = (0.0, 1.0, 0.0, 0.0)
J = (0.0, 0.0, 1.0, 0.0)
ZERO = (0.0, 0.0, 0.0, 0.0)


def jordan():
    a = np.zeros((2, 2, 4))
    a[0, 1, 0] = 1.0
    return a


def random_matrix(n, seed):
    return np.random.default_rng(seed).standard_normal((n, n, 4))


def test_spectrum_of_diag_i_j():
    spheres = qs.s_spectrum(quat_diag(I, J))
    assert len(spheres) == 1
    u, v, mult = spheres[0]
    assert abs(u) < 1e-12 and abs(v - 1.0) < 1e-12 and mult == 2


def test_complex_adjoint_shape():
    m = qs.complex_adjoint(quat_diag(J))
    assert m.shape == (2, 2)
    assert np.allclose(m, [[0, 1], [-1, 0]])


def test_drazin_routes_agree():
    a = random_matrix(4, 1)
    a[:, 0] = 0.0  # singular
    results = [qs.drazin(a, route) for route in ("algebraic", "projection", "funcalc")]
    for r in results[1:]:
        assert np.max(np.abs(r["inverse"] - results[0]["inverse"])) < 1e-7
    r = results[0]
    res = qs.verify_drazin(a, r["inverse"], r["index"])
    assert max(res.values()) < 1e-8
    assert qs.index(a) == r["index"]


def test_drazin_of_nilpotent_is_zero():
    r = qs.drazin(jordan())
    assert r["index"] == 2
    assert not r["inverse"].any()


def test_func_calc_polynomial():
    a = random_matrix(3, 2)
    sq = qs.func_calc(a, "poly:0,0,1")
    assert np.max(np.abs(sq - qs.matmul(a, a))) < 1e-8


def test_riesz_projection():
    p = qs.riesz(quat_diag(ZERO, (2.0, 0, 0, 0)), [(0.0, 0.0)])
    assert np.allclose(p, quat_diag((1.0, 0, 0, 0), ZERO), atol=1e-10)


def test_generalized_inverses():
    mp = qs.moore_penrose(jordan())
    expected = np.zeros((2, 2, 4))
    expected[1, 0, 0] = 1.0
    assert np.allclose(mp, expected, atol=1e-14)
    g = qs.group_inverse(quat_diag((0, 2.0, 0, 0), ZERO))
    assert np.allclose(g, quat_diag((0, -0.5, 0, 0), ZERO), atol=1e-14)
    with pytest.raises(qs.MathError, match="index > 1"):
        qs.group_inverse(jordan())


def test_gelfand_and_series():
    est = qs.gelfand(quat_diag((0, 2.0, 0, 0), ZERO), 64)
    assert est[-1][0] == 64 and abs(est[-1][1] - 2.0) < 1e-6
    value, terms = qs.pseudo_resolvent_series([2.0, 0, 0, 0], jordan())
    assert terms >= 1
    assert np.allclose(value[0, 0], (0.25, 0, 0, 0))


def test_errors():
    with pytest.raises(qs.DimensionError):
        qs.s_spectrum(np.zeros((2, 3, 4)))
    with pytest.raises(qs.FormatError):
        qs.func_calc(jordan(), "sin")
    with pytest.raises(qs.MathError):
        qs.s_resolvent_left([0.0, 1.0, 0.0, 0.0], quat_diag(I, J))
