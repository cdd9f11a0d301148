import cmath
import math

import pytest

import twistvol


def test_determinant_anchor():
    j = twistvol.colored_jones(2, 2)
    assert abs(abs(j.value) - 7.0) < 1e-12
    assert j.N == 2 and j.p == 2


def test_mirror_is_conjugate():
    a = twistvol.colored_jones(2, 17)
    b = twistvol.colored_jones(-2, 17)
    assert b.value == a.value.conjugate()


def test_qseries():
    assert abs(twistvol.q_pochhammer(4, 1, 3) - 4) < 1e-14
    assert abs(twistvol.q_binomial(4, 2, 1) - (1 + 1j)) < 1e-14
    assert twistvol.q_binomial(4, 1, 2) == 0


def test_dilog():
    assert twistvol.li2(1.0).real == pytest.approx(math.pi**2 / 6, rel=1e-15)
    assert twistvol.clausen(math.pi / 2) == pytest.approx(0.915965594177219, rel=1e-14)
    z = cmath.exp(2j * math.pi / 7)
    assert abs(twistvol.li2_circle(1, 7) - twistvol.li2(z)) < 1e-13
    with pytest.raises(twistvol.DomainError):
        twistvol.li2(2.0)


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        twistvol.colored_jones(1, 5)
    with pytest.raises(twistvol.BudgetError):
        twistvol.colored_jones(2, 100, term_budget=10)


def test_sequence_and_fit():
    rows = twistvol.volume_sequence(2, [20, 40, 60, 80])
    assert [n for n, _ in rows] == [20, 40, 60, 80]
    fit = twistvol.extrapolate_limit(rows)
    assert set(fit) == {"limit", "residual", "log_coefficient", "inverse_coefficient"}


def test_solver():
    cp = twistvol.solve_critical(2)
    assert cp.residual < 1e-12
    assert len(cp.a) == 3
    assert cp.volume == pytest.approx(twistvol.potential_f(2, cp.a).imag)


def test_small_experiment():
    rep = twistvol.run_experiment(N_values=[10, 20, 30, 40], grid_N_values=[10, 20], grid_reference_N=20)
    assert rep["schema_version"] == 1
    assert len(rep["per_N"]) == 4
    for row in rep["per_N"]:
        assert row["lower_proxy"] <= row["v_N"] <= row["upper_proxy"]
    assert rep["lemma_checks"]["lemma_100"]["passed"]


def test_lemma_suite():
    checks = twistvol.run_lemma_suite("dilog")
    assert [c["lemma"] for c in checks] == ["Lemma 100", "Lemma 98"]
