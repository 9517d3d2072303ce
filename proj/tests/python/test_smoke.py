import math

import pytest

import siegel

S = [1, -2, 1, -2, 1, -2, 1, -2, 1]


def test_salem_roots():
    roots = siegel.poly_roots(S)
    assert len(roots) == 8
    assert min(abs(r - complex(-0.7478, 0.6640)) for r in roots) < 5e-4
    check = siegel.is_salem(S)
    assert check["accepted"]
    assert check["lambda"] == pytest.approx(1.9940, abs=5e-4)
    assert not siegel.is_salem([1, -1, 1])["accepted"]


def test_orbit_polynomials():
    assert siegel.salem_from_orbit([2], [1])[-1] == "1"
    assert len(siegel.orbit_polynomial(8)) >= 9


def test_action_matrix():
    m = siegel.action_matrix(quad=[8, 8, 8])
    assert m["trace"] == 2 and m["bound"] == 4
    assert m["preserves_form"]
    assert m["salem"] == [str(c) for c in S]
    assert m["entropy"] == pytest.approx(0.6901, abs=1e-3)


def test_cuspidal_report():
    rep = siegel.certify_cuspidal(8)
    assert siegel.count(rep, "SiegelCertified") == 2
    w = rep["evidence"]["witness_delta"]["center"]
    assert abs(complex(*w) - complex(-0.7478, 0.6640)) < 5e-4
    assert siegel.certify_cuspidal(8) == rep


def test_three_lines_report():
    rep = siegel.certify_three_lines([1, 2], [1, 1])
    assert len(rep["fixed_points"]) == 5
    assert rep["matrix"]["bound"] == 5


def test_theorem1():
    for k in (2, 3, 4):
        rep = siegel.theorem1(k)
        assert siegel.count(rep, "SiegelCertified") == k
        assert rep["salem"]["entropy"] > 0


def test_errors_carry_kind():
    with pytest.raises(siegel.SiegelError) as info:
        siegel.certify_cuspidal(1)
    assert info.value.kind == "NoSalemFactor"
    with pytest.raises(siegel.SiegelError):
        siegel.certify_three_lines([1], [1])


def test_g_identity():
    for n in (1, 2, 7, 100):
        v = siegel.equal_parameter_value(n, 4 ** (1 / n), 1.0, 1 / 16, n)
        assert abs(v - (2 + n * siegel.g_function(n) / 4) ** 2) < 1e-9
    assert all(siegel.g_function(n) > siegel.g_function(n + 1) > 0 for n in range(1, 200))
    assert math.isfinite(siegel.g_function(10000))
