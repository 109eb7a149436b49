"""반대칭 텐서장 Noether 양 테스트"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proca_lab.fields import noether
from proca_lab.fields.minkowski import AntisymTensor, random_antisymmetric
from proca_lab.fields.noether import FieldConfig, FieldMode
from proca_lab.fields.polarization import Mode, NormalizationScheme

MASS = NormalizationScheme.mass()
UNIT = NormalizationScheme.unit()
EMPTY = FieldConfig((), 1.0, MASS)


def _points(rng, count=3):
    return [np.concatenate([[rng.uniform(0, 1)], rng.uniform(0, 1, size=3)]) for _ in range(count)]


def test_empty_configuration():
    """장이 없으면 모든 양이 0"""
    x = [0.1, 0.2, 0.3, 0.4]
    assert EMPTY.is_zero
    assert noether.lagrangian_density(EMPTY, x) == 0.0
    assert noether.eom_residual(EMPTY, x).max_abs() == 0.0
    assert not np.any(noether.stress_tensor(EMPTY, x))
    assert noether.spin_tensor(EMPTY).max_abs() == 0.0
    assert not np.any(noether.spin_vector_strengths(EMPTY))
    assert not np.any(noether.spin_vector_potentials(EMPTY, None))
    print("✅ Empty configuration test passed!")


def test_field_mode_validation():
    """격자 라벨은 정수 3개, m > 0, 시공간 점은 4성분"""
    with pytest.raises(ValueError):
        FieldMode((1, 0), Mode.PLUS, 1.0)
    with pytest.raises(ValueError):
        FieldMode((0.5, 0, 1), Mode.PLUS, 1.0)
    with pytest.raises(ValueError):
        FieldConfig((), 0.0, MASS)
    cfg = FieldConfig.single((0, 0, 1), "+1", 1.0, MASS)
    with pytest.raises(ValueError):
        noether.field_at(cfg, [0.0, 0.0, 0.0])
    print("✅ Field mode validation test passed!")


def test_real_field():
    """b = conj(a) 이면 F(x), A(x) 가 실수"""
    cfg = noether.random_on_shell_config(np.random.default_rng(3), 1.2, MASS)
    x = [0.3, 0.1, 0.7, 0.2]
    assert np.max(np.abs(noether.field_at(cfg, x).components.imag)) < 1e-12
    assert np.max(np.abs(noether.potential_at(cfg, x).imag)) < 1e-12
    print("✅ Real field test passed!")


def test_lagrangian_constant_for_single_mode():
    """단일 on-shell 원편광 모드의 ℒ 은 x 에 무관"""
    cfg = FieldConfig.single((0, 0, 1), Mode.PLUS, 1.0, MASS, a=0.7 - 0.2j)
    rng = np.random.default_rng(11)
    values = [noether.lagrangian_density(cfg, x) for x in _points(rng, 10)]
    assert max(values) - min(values) <= 1e-10 * noether.density_scale(cfg)
    print("✅ Lagrangian constancy test passed!")


def test_lagrangian_rescale():
    """라그랑지안을 m² 로 나누는 옵션"""
    m = 2.0
    plain = noether.random_on_shell_config(np.random.default_rng(8), m, MASS)
    rescaled = FieldConfig(plain.modes, m, NormalizationScheme.mass(rescale_lagrangian=True))
    x = [0.2, 0.4, 0.1, 0.9]
    assert noether.lagrangian_density(rescaled, x) == pytest.approx(noether.lagrangian_density(plain, x) / m ** 2)
    print("✅ Lagrangian rescale test passed!")


def test_eom_on_and_off_shell():
    """on-shell 잔차 0, off-shell 잔차는 E² - p² - m² 에 선형"""
    cfg = noether.random_on_shell_config(np.random.default_rng(21), 0.8, UNIT)
    rng = np.random.default_rng(4)
    for x in _points(rng):
        assert noether.eom_residual(cfg, x).max_abs() <= 1e-10 * noether.eom_scale(cfg)

    m = 1.0
    e = float(np.sqrt((2 * np.pi) ** 2 + m * m))
    x = [0.3, 0.1, 0.2, 0.7]
    residuals = [
        noether.eom_residual(FieldConfig.single((0, 0, 1), 0, m, MASS, energy_override=e + step), x).max_abs()
        for step in (1e-3, 1e-4)
    ]
    assert residuals[1] > 0.0
    assert residuals[0] / residuals[1] == pytest.approx(10.0, abs=0.5)
    print("✅ Equation of motion test passed!")


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1), mass_scheme=st.booleans())
def test_stress_conservation(seed, mass_scheme):
    """on-shell 배치에서 ∂_λΘ^{λβ} = 0"""
    rng = np.random.default_rng(seed)
    cfg = noether.random_on_shell_config(rng, float(rng.uniform(0.5, 5.0)), MASS if mass_scheme else UNIT)
    for x in _points(rng):
        div, scale = noether.stress_divergence(cfg, x)
        assert np.max(np.abs(div)) <= 1e-10 * scale


def test_stress_off_shell():
    """off-shell 종편광 모드는 보존되지 않음"""
    m = 1.0
    e = float(np.sqrt((2 * np.pi) ** 2 + m * m))
    cfg = FieldConfig.single((0, 0, 1), 0, m, MASS, energy_override=e + 0.1)
    div, scale = noether.stress_divergence(cfg, [0.3, 0.1, 0.2, 0.7])
    assert np.max(np.abs(div)) > 1e-8 * scale
    print("✅ Off-shell stress test passed!")


def test_rotation_generator():
    """T 반대칭, ω = 0 이면 δF = 0, 각도 10배 줄면 오차 100배 감소"""
    gen = noether.rotation_generator()
    assert max(gen.antisymmetry_defects().values()) == 0.0

    f = random_antisymmetric(np.random.default_rng(2))
    assert gen.apply(np.zeros((4, 4)), f).max_abs() == 0.0
    with pytest.raises(ValueError):
        gen.apply(np.eye(4), f)

    errors = []
    for theta in (1e-3, 1e-4):
        omega = np.zeros((4, 4))
        omega[1, 2], omega[2, 1] = theta, -theta
        errors.append((gen.apply(omega, f) - noether.finite_rotation(omega, f)).max_abs())
    assert errors[0] / errors[1] == pytest.approx(100.0, abs=5.0)
    print("✅ Rotation generator test passed!")


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_spin_forms_agree(seed):
    """스핀 텐서, 세기 형태, (m/2)∫E×A 가 일치"""
    rng = np.random.default_rng(seed)
    cfg = noether.random_on_shell_config(rng, float(rng.uniform(0.5, 5.0)), MASS)
    scale = noether.spin_scale(cfg)
    from_tensor = noether.spin_vector(noether.spin_tensor(cfg))
    from_strengths = noether.spin_vector_strengths(cfg)
    e_cross_a = noether.e_cross_a_spin(cfg)
    assert np.max(np.abs(from_tensor - from_strengths)) <= 1e-10 * scale
    assert np.max(np.abs(e_cross_a - from_strengths)) <= 1e-10 * scale


def _circular_modes(light_like: bool):
    two_pi = 2.0 * np.pi
    return (
        FieldMode((0, 0, 1), Mode.PLUS, 1.0, energy=two_pi if light_like else None),
        FieldMode((0, 0, -2), Mode.MINUS, 0.5 + 0.5j, energy=2.0 * two_pi if light_like else None),
    )


def test_kalb_ramond_constraint():
    """빛꼴 원편광 배치: ∂_μF^{μν} = 0 이 실제로 성립하고, 전체 식의 J_{κτ} 가 0"""
    cfg = FieldConfig(_circular_modes(light_like=True), 1.5, MASS)
    assert noether.lorentz_defect(cfg) <= 1e-14
    rng = np.random.default_rng(11)
    field_scale = max(noether.field_at(cfg, x).max_abs() for x in _points(rng)) * 4.0 * np.pi
    for x in _points(rng):
        assert np.max(np.abs(noether.divergence_at(cfg, x))) <= 1e-12 * field_scale
    assert noether.spin_tensor(cfg).max_abs() <= 1e-12 * noether.spin_scale(cfg)
    print("✅ Kalb-Ramond constraint test passed!")


def test_kalb_ramond_control():
    """같은 모드를 질량 껍질 위에 두면 발산이 남고 스핀도 0 이 아님"""
    cfg = FieldConfig(_circular_modes(light_like=False), 1.5, MASS)
    assert noether.lorentz_defect(cfg) > 1e-3
    x = [0.2, 0.1, 0.3, 0.4]
    assert np.max(np.abs(noether.divergence_at(cfg, x))) > 0.0
    assert noether.spin_tensor(cfg).max_abs() > 1e-6 * noether.spin_scale(cfg)
    print("✅ Kalb-Ramond control test passed!")


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.floats(0.2, 5.0))
def test_lorentz_constrained_random(seed, m):
    """무작위 구속 배치는 발산 0, 스핀 텐서 0"""
    cfg = noether.lorentz_constrained_config(np.random.default_rng(seed), m, MASS)
    assert noether.lorentz_defect(cfg) <= 1e-14
    assert noether.spin_tensor(cfg).max_abs() <= 1e-12 * noether.spin_scale(cfg)


def test_lorentz_constrained_validation():
    """라벨 수보다 많은 모드는 거부"""
    with pytest.raises(ValueError):
        noether.lorentz_constrained_config(np.random.default_rng(0), 1.0, MASS, n_modes=5)
    print("✅ Constrained configuration validation passed!")


def test_potential_form():
    """B = ±A 이면 0, B = 0 이면 A 쌍선형의 -¼"""
    cfg = FieldConfig.single((0, 0, 1), Mode.PLUS, 1.0, MASS, a=1.0)
    scale = noether.potential_scale(cfg)
    for sign in (1.0, -1.0):
        assert np.max(np.abs(noether.spin_vector_potentials(cfg, cfg.scaled(sign)))) <= 1e-14 * scale

    alone = noether.potential_spin_bilinear(cfg)
    assert np.max(np.abs(alone)) > 1e-6 * scale
    assert np.allclose(noether.spin_vector_potentials(cfg, None), -0.25 * alone)
    print("✅ Potential form test passed!")


def test_pauli_lubanski():
    """J^{12} = 1, p = (E,0,0,p3), n = (0,0,0,1) → W·n = -E"""
    j = np.zeros((4, 4))
    j[1, 2], j[2, 1] = 1.0, -1.0
    e = float(np.sqrt(10.0))
    assert noether.pauli_lubanski(AntisymTensor(j), [e, 0, 0, 3], [0, 0, 0, 1]) == pytest.approx(-e)
    assert noether.pauli_lubanski(AntisymTensor.zero(), [e, 0, 0, 3], [0, 0, 0, 1]) == 0.0
    with pytest.raises(ValueError):
        noether.pauli_lubanski(AntisymTensor(j), [e, 0, 0, 3], [0, 0, 0, 2])

    assert noether.helicity_from_pauli_lubanski(AntisymTensor(j), [0, 0, 3], 1.0) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        noether.helicity_from_pauli_lubanski(AntisymTensor(j), [0, 0, 0], 1.0)
    print("✅ Pauli-Lubanski test passed!")


def test_circular_mode_spin():
    """p ∥ z 원편광 모드: 스핀은 z 축 방향, 헬리시티 = J·p̂"""
    cfg = FieldConfig.single((0, 0, 1), Mode.PLUS, 1.0, MASS, a=0.5)
    j = noether.spin_tensor(cfg)
    spin = noether.spin_vector(j)
    assert abs(spin[2]) > 0.0
    assert np.max(np.abs(spin[:2])) <= 1e-12 * abs(spin[2])

    p = cfg.momentum(cfg.modes[0])
    assert noether.helicity_from_pauli_lubanski(j, p, 1.0) == pytest.approx(spin[2], rel=1e-12)
    print("✅ Circular mode spin test passed!")


def test_mode_coefficients_special_frame():
    """p=(0,0,3), m=1: 기준 벡터, 쌍 대칭, 혼합비 (E/m)²"""
    report = noether.spin_mode_coefficients([0, 0, 3], 1.0, MASS, frame_check=True)
    assert report.frame == "special"
    assert report.prefactor == pytest.approx(0.25)
    assert report.reference_residual() < 1e-12
    assert report.pairing_residual() < 1e-12
    assert report.coefficient("a_bdag", "+1", "+1")[2] == pytest.approx(0.25 * np.sqrt(10.0))

    for m in (1.0, 0.1, 0.01):
        scaled = noether.spin_mode_coefficients([0, 0, 3], m, MASS)
        e = scaled.energy
        assert scaled.mixing_ratio() == pytest.approx((e / m) ** 2, rel=1e-10)
    print("✅ Special-frame coefficient test passed!")


def test_mode_coefficients_general_frame():
    """p1, p2 ≠ 0: frame_check 이면 거부, 아니면 general 로 기록"""
    with pytest.raises(ValueError):
        noether.spin_mode_coefficients([1, 0, 3], 1.0, MASS, frame_check=True)
    report = noether.spin_mode_coefficients([1, 0, 3], 1.0, UNIT)
    assert report.frame == "general"
    assert report.pairing_residual() < 1e-12
    with pytest.raises(ValueError):
        report.reference_vectors()
    assert len(report.to_dict()["coefficients"]) == 18
    print("✅ General-frame coefficient test passed!")


def main():
    """테스트 실행"""
    print("=" * 50)
    print("Noether Tests")
    print("=" * 50)

    test_empty_configuration()
    test_field_mode_validation()
    test_real_field()
    test_lagrangian_constant_for_single_mode()
    test_lagrangian_rescale()
    test_eom_on_and_off_shell()
    test_stress_conservation()
    test_stress_off_shell()
    test_rotation_generator()
    test_spin_forms_agree()
    test_kalb_ramond_constraint()
    test_kalb_ramond_control()
    test_lorentz_constrained_random()
    test_lorentz_constrained_validation()
    test_potential_form()
    test_pauli_lubanski()
    test_circular_mode_spin()
    test_mode_coefficients_special_frame()
    test_mode_coefficients_general_frame()

    print("=" * 50)
    print("✅ All Noether tests passed!")
    print("=" * 50)


if __name__ == "__main__":
    main()
