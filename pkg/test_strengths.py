"""운동량 공간 세기와 Proca 방정식 잔차 테스트"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proca_lab.fields.minkowski import four_momentum
from proca_lab.fields.polarization import SPATIAL_MODES, Mode, NormalizationScheme
from proca_lab.fields.strengths import (
    _cross_scale,
    _dot_scale,
    _relative,
    expected_cross_products,
    expected_dot_products,
    identity_suite,
    longitudinal_electric,
    proca_residuals,
    strength_table,
    strengths_from_potential,
    timelike_obstruction,
)

MASS = NormalizationScheme.mass()
UNIT = NormalizationScheme.unit()

component = st.floats(min_value=-30.0, max_value=30.0, allow_nan=False, allow_infinity=False)


def test_dot_product_example():
    """p=(1,2,2), m=1, Mass: B+(0)·B-(0) = 1.25, 합 규칙 4.5"""
    p, m = [1.0, 2.0, 2.0], 1.0
    b_plus = strengths_from_potential(p, m, 0, MASS, "+").magnetic
    b_minus = strengths_from_potential(p, m, 0, MASS, "-").magnetic
    assert (b_plus @ b_minus) == pytest.approx(1.25, abs=1e-12)

    table = strength_table(p, m, MASS)
    total = sum(table[("+", s)].magnetic @ table[("-", s)].magnetic for s in SPATIAL_MODES)
    assert total == pytest.approx(4.5, abs=1e-12)
    print("✅ Dot product example test passed!")


def test_axis_mixing_vanishes():
    """p=(0,0,3) 에서 σ↔0 혼합 내적은 0"""
    table = strength_table([0.0, 0.0, 3.0], 1.0, MASS)
    for s in (Mode.PLUS, Mode.MINUS):
        assert abs(table[("+", s)].magnetic @ table[("-", Mode.ZERO)].magnetic) < 1e-15
        assert abs(table[("+", Mode.ZERO)].magnetic @ table[("-", s)].magnetic) < 1e-15
    print("✅ Axis mixing test passed!")


def test_frequency_linkage():
    """위상 0 에서 B^(+)(+1) = B^(-)(-1), B^(+)(0) = -B^(-)(0)"""
    table = strength_table([0.3, -1.2, 2.0], 0.7, UNIT)
    assert np.allclose(table[("+", Mode.PLUS)].magnetic, table[("-", Mode.MINUS)].magnetic)
    assert np.allclose(table[("+", Mode.ZERO)].electric, -table[("-", Mode.ZERO)].electric)
    print("✅ Frequency linkage test passed!")


def test_phases_and_timelike():
    """음의 진동수 위상 적용, 시간꼴 모드는 E = B = 0, 잘못된 freq 거부"""
    p, m = [0.0, 1.0, 1.0], 2.0
    plain = strengths_from_potential(p, m, "+1", MASS, "-")
    phased = strengths_from_potential(p, m, "+1", MASS, "-", alpha=np.pi / 2)
    assert np.allclose(phased.magnetic, 1j * plain.magnetic)
    assert np.allclose(phased.electric, plain.electric)

    tl = strengths_from_potential(p, m, "0t", MASS)
    assert not np.any(tl.electric) and not np.any(tl.magnetic)

    with pytest.raises(ValueError):
        strengths_from_potential(p, m, 0, MASS, "*")
    with pytest.raises(ValueError):
        strengths_from_potential(p, 0.0, 0, MASS)
    print("✅ Phase and time-like test passed!")


def test_longitudinal_electric_axis():
    """p=(0,0,1), m=1, Unit: σ=0 에서 p·E^(±) = ±i/2, 원편광은 0, p·B 는 항상 0"""
    p, m = [0.0, 0.0, 1.0], 1.0
    table = strength_table(p, m, UNIT)

    pe_plus, pb_plus = table[("+", Mode.ZERO)].transversality()
    pe_minus, pb_minus = table[("-", Mode.ZERO)].transversality()
    assert pe_plus == pytest.approx(0.5j, abs=1e-15)
    assert pe_minus == pytest.approx(-0.5j, abs=1e-15)
    assert longitudinal_electric(p, m, Mode.ZERO, UNIT, "+") == pytest.approx(0.5j, abs=1e-15)
    assert longitudinal_electric(p, m, Mode.ZERO, UNIT, "-") == pytest.approx(-0.5j, abs=1e-15)
    assert pb_plus == 0 and pb_minus == 0

    for s in (Mode.PLUS, Mode.MINUS):
        for freq in ("+", "-"):
            pe, pb = table[(freq, s)].transversality()
            assert abs(pe) < 1e-15 and abs(pb) < 1e-15

    # 위상 α' 는 음의 진동수 쪽에 곱해진다
    phased = strengths_from_potential(p, m, 0, UNIT, "-", alpha_prime=np.pi / 2)
    assert phased.transversality()[0] == pytest.approx(0.5, abs=1e-15)
    assert longitudinal_electric(p, m, 0, UNIT, "-", alpha_prime=np.pi / 2) == pytest.approx(0.5, abs=1e-15)

    report = identity_suite(p, m, UNIT)
    assert report.passed, [(c.id, c.residual) for c in report.failed]
    assert {"strengths.transverse_magnetic", "strengths.longitudinal_electric"} <= set(report.ids())
    assert "strengths.transversality" not in report.ids()
    print("✅ Longitudinal electric test passed!")


def test_small_transverse_momentum():
    """p_⊥ ≪ |p| 에서도 항 크기 기준 상대 잔차로 통과하고, 작은 항의 오차는 놓치지 않음"""
    p, m = np.array([1e-7, 0.0, 2.0]), 1.0
    for scheme in (MASS, UNIT):
        report = identity_suite(p, m, scheme)
        assert report.passed, [(c.id, c.residual) for c in report.failed]

    table = strength_table(p, m, MASS)
    a, b = table[("+", Mode.PLUS)].magnetic, table[("-", Mode.ZERO)].magnetic
    expected = expected_dot_products(p, m, MASS.factor(m))[(Mode.PLUS, Mode.ZERO)]
    assert abs(expected) < 1e-6
    assert _relative(a @ b, expected, _dot_scale(a, b)) < 1e-12
    # 혼합 항 크기는 ~1e-8 이라 1e-12 의 오차도 상대적으로 ~1e-5
    assert _relative(a @ b + 1e-12, expected, _dot_scale(a, b)) > 1e-6

    crossed = expected_cross_products(p, m, MASS.factor(m))[(Mode.PLUS, Mode.ZERO)]
    assert _relative(np.cross(a, b), crossed, _cross_scale(a, b)) < 1e-12
    assert _relative(np.zeros(3), np.zeros(3), np.zeros(3)) == 0.0
    print("✅ Small transverse momentum test passed!")


@settings(max_examples=60, deadline=None)
@given(
    px=component, py=component, pz=component,
    m=st.floats(min_value=0.1, max_value=10.0),
    mass_scheme=st.booleans(),
)
def test_identity_suite_random(px, py, pz, m, mass_scheme):
    """무작위 (p, m) 에서 세기 항등식 전부 통과"""
    scheme = MASS if mass_scheme else UNIT
    report = identity_suite([px, py, pz], m, scheme)
    assert report.passed, [(c.id, c.residual) for c in report.failed]


@settings(max_examples=60, deadline=None)
@given(
    px=component, py=component, pz=component,
    m=st.floats(min_value=0.1, max_value=10.0),
    mode=st.sampled_from(SPATIAL_MODES),
)
def test_proca_sets_random(px, py, pz, m, mode):
    """세 방정식 집합과 쌍대 Bianchi 항등식"""
    report = proca_residuals([px, py, pz], m, mode, MASS)
    assert report.passed, [(c.id, c.residual) for c in report.failed]
    assert f"proca[{mode.value}].dual_without_i" in report.ids()


def test_timelike_obstruction():
    """시간꼴 모드의 1계 집합 잔차는 (N/2)p^μ 로 0이 아님 (실패로 보고)"""
    p, m = [0.5, 0.0, 2.0], 1.3
    obstruction = timelike_obstruction(p, m, MASS)
    assert np.allclose(obstruction, m / 2.0 * four_momentum(p, m), atol=1e-12)

    report = proca_residuals(p, m, Mode.TIME, MASS)
    assert "proca[0t].pdk" in {c.id for c in report.failed}
    assert "proca[0t].dual_without_i" not in report.ids()
    print("✅ Time-like obstruction test passed!")


def main():
    """테스트 실행"""
    print("=" * 50)
    print("Strength Tests")
    print("=" * 50)

    test_dot_product_example()
    test_axis_mixing_vanishes()
    test_frequency_linkage()
    test_phases_and_timelike()
    test_longitudinal_electric_axis()
    test_small_transverse_momentum()
    test_identity_suite_random()
    test_proca_sets_random()
    test_timelike_obstruction()

    print("=" * 50)
    print("✅ All strength tests passed!")
    print("=" * 50)


if __name__ == "__main__":
    main()
