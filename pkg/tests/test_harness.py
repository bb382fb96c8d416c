import json
import math

import numpy as np
import pytest

from qrlab.analytic_core import ComplexSeries
from qrlab.ball_harmonic import LinearBallMap, identity_map
from qrlab.constants import c_theorem2, pichorides_AB, verbitsky_CD
from qrlab.errors import DomainError, SingularMatrixError
from qrlab.harness import (FAIL, NOT_APPLICABLE, PASS, VerificationReport, check_theorem1_ball,
                           check_theorem1_plane, check_theorem2, equality_case_identity, parallel_map,
                           pichorides_report, random_qr_family, sharpness_probe, sharpness_report,
                           summarize, verify_pointwise_pichorides, verify_pointwise_verbitsky)
from qrlab.planar_harmonic import PlanarHarmonicMap, k_to_K, qr_bound
from qrlab.quadrature import hardy_norm
from qrlab.zero_adapted import mean_abs_power

S = ComplexSeries


# -- reports ---------------------------------------------------------------------

def test_report_pass_rule():
    assert VerificationReport("t", {}, lhs=1.0, rhs=1.0, constant=1.0).status == PASS
    assert VerificationReport("t", {}, lhs=1.0 + 1e-10, rhs=1.0, constant=1.0).passed
    assert VerificationReport("t", {}, lhs=1.0 + 1e-8, rhs=1.0, constant=1.0).status == FAIL
    r = VerificationReport("t", {}, lhs=2.0, rhs=1.0, constant=1.0, hypotheses={"h": False})
    assert r.status == NOT_APPLICABLE and r.passed is None and r.ratio == 2.0


def test_report_round_trip():
    r = VerificationReport("t", {"p": np.float64(1.5), "n": np.int64(3)}, lhs=0.1, rhs=0.3,
                           constant=2.0, hypotheses={"a": np.bool_(True)},
                           evidence={"v": np.array([1.0, np.inf]), "z": 1 + 2j})
    text = json.dumps(r.to_dict(), allow_nan=False)
    back = VerificationReport.from_dict(json.loads(text))
    assert back == r and back.to_dict() == r.to_dict()
    assert r.evidence["v"] == [1.0, "inf"]


def test_summary_counts_not_applicable_separately():
    rs = [VerificationReport("t", {}, lhs=1, rhs=2, constant=1),
          VerificationReport("t", {}, lhs=3, rhs=2, constant=1, hypotheses={"h": False})]
    assert summarize(rs) == {PASS: 1, FAIL: 0, NOT_APPLICABLE: 1}


# -- pointwise inequalities ------------------------------------------------------------

@pytest.mark.parametrize("p", [1.1, 1.25, 1.5, 1.75, 2.0])
def test_pointwise_scans(p):
    assert verify_pointwise_pichorides(p).min_value >= -1e-12
    assert verify_pointwise_verbitsky(p).min_value >= -1e-12
    assert pichorides_report(p).status == PASS


def test_pointwise_identities_at_two():
    x = np.linspace(-math.pi, math.pi, 100_000)
    A, B = pichorides_AB(2.0)
    assert np.max(np.abs(A * np.cos(x) ** 2 - B * np.cos(2 * x) - np.sin(x) ** 2)) <= 1e-14
    C, D = verbitsky_CD(2.0)
    assert np.max(np.abs(-1 + C * np.cos(x) ** 2 - D * np.cos(2 * x))) <= 1e-14


def test_pointwise_grid_validation():
    with pytest.raises(DomainError):
        verify_pointwise_pichorides(1.5, 10)


# -- theorem checks -----------------------------------------------------------------

def test_theorem1_plane_examples():
    r = check_theorem1_plane(PlanarHarmonicMap(S([0, 1]), S([0])), 2.0)
    assert abs(r.lhs - 1) < 1e-14 and abs(r.rhs - 1) < 1e-14 and r.status == PASS
    k = 0.3
    m = PlanarHarmonicMap(S([0, 1]), S([0, k]))
    r = check_theorem1_plane(m, 2.0)
    assert abs(r.lhs - math.sqrt(1 + k * k)) < 1e-13 and r.status == PASS
    r = check_theorem1_plane(PlanarHarmonicMap(S([1]), S([0])), 1.5)
    assert abs(r.lhs - 1) < 1e-14 and r.status == PASS
    assert r.evidence["two_term_holds"]


def test_theorem1_plane_flags_imaginary_f0():
    r = check_theorem1_plane(PlanarHarmonicMap(S([1j, 1]), S([0])), 1.5)
    assert r.status == NOT_APPLICABLE and not r.hypotheses["im_f0_zero"]


def test_theorem1_ball_examples():
    r = check_theorem1_ball(identity_map(3), 2.0)
    assert abs(r.lhs - 1) < 1e-14 and abs(r.rhs - 1) < 1e-14
    assert abs(r.evidence["lhs_quadrature"] - 1) < 1e-12
    r = check_theorem1_ball(LinearBallMap(np.diag([1.0, 1.0, 2.0]), None), 2.0)
    assert abs(r.lhs - 2) < 1e-14 and abs(r.rhs - 3) < 1e-13 and r.status == PASS
    with pytest.raises(SingularMatrixError):
        check_theorem1_ball(LinearBallMap(np.zeros((3, 3)), [1.0, 0, 0]), 2.0)
    with pytest.raises(DomainError):
        check_theorem1_ball(identity_map(4), 1.5)


@pytest.mark.parametrize("s", [1.0, 1.5, 2.0, 4.0])
def test_theorem1_ball_first_component_closed_form(s):
    A = np.array([[1.0, 0.2, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, s]])
    r = check_theorem1_ball(LinearBallMap(A, [0.3, 0.0, 0.1]), 1.5)
    assert abs(r.evidence["norm_f1_pp"] - r.evidence["f1_quadrature"]) < 1e-9
    assert r.status == PASS


@pytest.mark.parametrize("n", [2, 3, 7])
def test_equality_case(n):
    r = equality_case_identity(n)
    assert r.status == PASS and abs(r.ratio - 1) <= 1e-14
    if n == 3:
        assert abs(r.evidence["quadrature_x1_squared"] - 1 / 3) <= 1e-12


def test_theorem2_examples():
    a, b = check_theorem2(PlanarHarmonicMap(S([2, 1]), S([0])), 2.0)
    assert abs(a.lhs - math.sqrt(0.5)) < 1e-14 and abs(a.rhs - math.sqrt(4.5)) < 1e-13
    assert a.status == PASS and b.status == PASS
    a, b = check_theorem2(PlanarHarmonicMap(S([0, 1]), S([0])), 1.5)
    assert a.status == NOT_APPLICABLE and not a.hypotheses["range_avoids_negative_axis"]


def test_theorem2_soundness_on_positive_family():
    for p in (1.25, 1.5, 2.0):
        for m in random_qr_family(3, 5, degree=6, k_max=0.1, positive=True):
            a, b = check_theorem2(m, p)
            assert a.status != FAIL and b.status != FAIL


def test_classical_riesz_at_two():
    # analytic f with v(0) = 0: ||v||_2 <= ||u||_2
    for m in random_qr_family(9, 20, degree=8, k_max=0.0):
        v = mean_abs_power(m.v_series, 2.0) ** 0.5
        u = mean_abs_power(m.u_series, 2.0) ** 0.5
        assert v <= u * (1 + 1e-12)


# -- sharpness ---------------------------------------------------------------------

def test_sharpness_examples():
    r = sharpness_probe(2.0, 0.0, 0.5)
    assert abs(r.measured_ratio - math.tan(math.pi / 8)) < 1e-12
    k = 0.05
    K = (1 + k) / (1 - k)
    r = sharpness_probe(2.0, k, 0.99)
    assert abs(r.measured_ratio - K * math.tan(0.99 * math.pi / 4)) < 1e-12
    assert abs(r.bound - K) < 1e-14 and 0 < r.gap < 0.05
    with pytest.raises(DomainError):
        sharpness_probe(1.5, 0.6, 0.5)
    with pytest.raises(DomainError):
        sharpness_probe(1.5, 0.0, 1.0)


@pytest.mark.parametrize("p", [1.25, 1.5, 2.0])
@pytest.mark.parametrize("k", [0.0, 0.05, 0.1])
def test_sharpness_gap_decreases(p, k):
    gaps = [sharpness_probe(p, k, bf).gap for bf in (0.5, 0.9, 0.99, 0.999)]
    assert all(g >= 0 for g in gaps)
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_sharpness_report_evidence():
    r = sharpness_report(1.5, 0.05, 0.95)
    assert r.status == PASS
    assert r.evidence["norm_u_relerr"] < 1e-12
    assert abs(r.lhs - r.evidence["predicted_ratio"]) < 1e-12


def test_theorem2_on_truncated_sector_map():
    from qrlab.harness import sector_family_map
    p, k = 1.5, 0.05
    beta = 0.95 * math.pi / (2 * p)
    m = sector_family_map(beta, k, 32)
    assert qr_bound(m)[0] <= k + 1e-12
    a, _ = check_theorem2(m, p)
    assert a.status != FAIL and a.lhs <= c_theorem2(p, k_to_K(k)) * a.rhs / a.constant


# -- random families -----------------------------------------------------------------

def test_random_family_determinism_and_bounds():
    a = random_qr_family(42, 6, degree=8, k_max=0.3)
    b = random_qr_family(42, 6, degree=8, k_max=0.3)
    assert a == b
    assert random_qr_family(1, 0) == []
    for m in a:
        assert qr_bound(m)[0] <= 0.3 + 1e-12
        assert abs(complex(m(0.0)).imag) <= 1e-15
    for m in random_qr_family(42, 6, positive=True):
        assert np.min(np.real(m(0.99 * np.exp(2j * np.pi * np.arange(256) / 256)))) > 0


def test_random_family_validation():
    with pytest.raises(DomainError):
        random_qr_family(0, 1, degree=17)
    with pytest.raises(DomainError):
        random_qr_family(0, 1, k_max=1.0)


def test_theorem1_soundness_small_sweep():
    for p in (1.25, 1.5, 2.0):
        for k in (0.0, 0.1, 0.3):
            for m in random_qr_family(int(100 * p + 10 * k), 5, k_max=k):
                assert check_theorem1_plane(m, p).status == PASS


def test_parallel_map_preserves_order(monkeypatch):
    monkeypatch.setenv("QRLAB_THREADS", "4")
    assert parallel_map(lambda x: x * x, range(50)) == [x * x for x in range(50)]
    monkeypatch.setenv("QRLAB_THREADS", "1")
    assert parallel_map(lambda x: -x, range(5)) == [0, -1, -2, -3, -4]


def test_hardy_norm_of_family_matches_two_norm():
    # p = 2: ||f||_2^2 = sum |a_j|^2 + |b_j|^2 (j >= 1) + |a_0 + conj(b_0)|^2
    for m in random_qr_family(5, 5):
        g, h = m.g.coeffs, m.h.coeffs
        exact = abs(g[0] + np.conj(h[0])) ** 2 + np.sum(np.abs(g[1:]) ** 2) + np.sum(np.abs(h[1:]) ** 2)
        assert abs(hardy_norm(m, 2.0) ** 2 - exact) <= 1e-13
