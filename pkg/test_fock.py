"""절단 Fock 공간 / 스핀 연산자 / 헬리시티 테스트"""

import numpy as np
import pytest

from proca_lab.config.loader import FockConfig
from proca_lab.fields import fock
from proca_lab.fields.fock import CommutatorScheme, CommutatorVariant
from proca_lab.fields.polarization import Mode, NormalizationScheme
from proca_lab.reports.suites import fock_suite

P = (0.0, 0.0, 1.0)
DELTA_CROSS = CommutatorScheme(CommutatorVariant.DELTA_CROSS)
MASS_SCALED = CommutatorScheme(CommutatorVariant.MASS_SCALED)
STANDARD = CommutatorScheme(CommutatorVariant.STANDARD_2E)
ALL_SCHEMES = (DELTA_CROSS, MASS_SCALED, STANDARD)


def _commutator(lad, s1, s2):
    a, ad = lad.a(0, s1), lad.a_dag(0, s2)
    return (a @ ad - ad @ a).toarray()


def test_basis_counting():
    """운동량 1개, n_max = 1 → 진공 + 일입자 3개"""
    basis = fock.build_modes([P], 1)
    assert basis.dim == 4
    assert basis.states[basis.vacuum] == (0, 0, 0)
    assert len(basis.one_particle(0)) == 3

    two = fock.build_modes([P, (0.0, 0.0, -1.0)], 2)
    assert two.dim == 28
    assert two.momentum_index((0.0, 0.0, -1.0)) == 1
    print("✅ Basis counting test passed!")


def test_basis_validation():
    """중복 운동량, 빈 목록, n_max < 1, 없는 운동량 거부"""
    with pytest.raises(ValueError):
        fock.build_modes([P, P], 1)
    with pytest.raises(ValueError):
        fock.build_modes([], 1)
    with pytest.raises(ValueError):
        fock.build_modes([P], 0)
    with pytest.raises(ValueError):
        fock.build_modes([P], 1).momentum_index((1.0, 0.0, 0.0))
    print("✅ Basis validation test passed!")


def test_scheme_parse():
    """이름 파싱과 교환자 상수"""
    assert CommutatorScheme.parse("mass_scaled").variant is CommutatorVariant.MASS_SCALED
    assert CommutatorScheme.parse("delta-cross", volume=2.0).constant(P, 1.0) == 0.5
    assert MASS_SCALED.constant(P, 1.0) == pytest.approx(np.sqrt(2.0))
    assert STANDARD.constant(P, 1.0) == pytest.approx(2.0 * np.sqrt(2.0))
    assert DELTA_CROSS.slot_labels() == ("e", "0", "o")
    with pytest.raises(ValueError):
        CommutatorScheme.parse("bogus")
    with pytest.raises(ValueError):
        CommutatorScheme(CommutatorVariant.DELTA_CROSS, volume=0.0)
    print("✅ Scheme parse test passed!")


def test_delta_cross_commutators():
    """[a(σ), a†(σ')] = V⁻¹ δ_{σ,-σ'} (진공 섹터)"""
    lad = fock.ladders(fock.build_modes([P], 2), CommutatorScheme(CommutatorVariant.DELTA_CROSS, volume=4.0))
    vacuum = lad.basis.vacuum
    assert _commutator(lad, Mode.PLUS, Mode.MINUS)[vacuum, vacuum] == pytest.approx(0.25)
    assert _commutator(lad, Mode.ZERO, Mode.ZERO)[vacuum, vacuum] == pytest.approx(0.25)
    assert abs(_commutator(lad, Mode.PLUS, Mode.PLUS)[vacuum, vacuum]) < 1e-15
    assert fock.commutator_closure(lad) < 1e-12
    print("✅ Delta-cross commutator test passed!")


def test_positive_scheme_commutators():
    """양의 계량 방식: [a(σ), a†(σ')] = κ δ_{σσ'}"""
    for scheme in (MASS_SCALED, STANDARD):
        lad = fock.ladders(fock.build_modes([P], 2), scheme)
        vacuum = lad.basis.vacuum
        constant = lad.constant(0)
        assert _commutator(lad, Mode.PLUS, Mode.PLUS)[vacuum, vacuum] == pytest.approx(constant)
        assert abs(_commutator(lad, Mode.PLUS, Mode.MINUS)[vacuum, vacuum]) < 1e-15
        assert fock.commutator_closure(lad) / constant < 1e-12
    print("✅ Positive-scheme commutator test passed!")


def test_spin_operator_properties():
    """J|0⟩ = 0, 에르미트 (계량 기준), 섹터 보존, p ∥ z 에서 J¹ = J² = 0"""
    basis = fock.build_modes([P, (0.0, 0.0, -1.0)], 2)
    for scheme in ALL_SCHEMES:
        lad = fock.ladders(basis, scheme)
        for k in (1, 2, 3):
            op = fock.spin_operator(k, basis, scheme, lad)
            assert op.vacuum_residual() == 0.0
            assert op.hermiticity_defect() < 1e-12
            assert op.sector_leakage() == 0.0
            if k < 3:
                assert op.matrix.nnz == 0
    with pytest.raises(ValueError):
        fock.spin_operator(4, basis, STANDARD)
    print("✅ Spin operator property test passed!")


def test_delta_cross_helicities():
    """delta-cross 일입자 헬리시티에 +1 과 -1, 진공은 0"""
    spectrum = fock.helicity_eigenvalues(fock.build_modes([P], 2), DELTA_CROSS, P)
    particles = sorted(lv.helicity for lv in spectrum.levels if lv.state != "vacuum")
    vacuum = [lv.helicity for lv in spectrum.levels if lv.state == "vacuum"]
    assert particles == pytest.approx([-1.0, 1.0, 1.0])
    assert vacuum == pytest.approx([0.0])
    assert spectrum.contains(1.0) and spectrum.contains(-1.0)
    assert spectrum.has_ties
    assert {lv.metric_sign for lv in spectrum.levels} == {1, -1}
    print("✅ Delta-cross helicity test passed!")


def test_positive_scheme_helicities():
    """양의 계량 방식도 ±1 을 주고, 모든 계량 부호는 +"""
    basis = fock.build_modes([P], 1)
    for scheme in (MASS_SCALED, STANDARD):
        spectrum = fock.helicity_eigenvalues(basis, scheme, P)
        assert spectrum.contains(1.0) and spectrum.contains(-1.0) and spectrum.contains(0.0)
        assert all(lv.metric_sign == 1 for lv in spectrum.levels)
    print("✅ Positive-scheme helicity test passed!")


def test_relabel_and_phase_invariance():
    """σ → -σ 재라벨링과 i 흡수는 스펙트럼을 바꾸지 않음"""
    basis = fock.build_modes([P], 2)
    for scheme in ALL_SCHEMES:
        lad = fock.ladders(basis, scheme)
        original = sorted(fock.helicity_eigenvalues(basis, scheme, P, lad).helicities)
        flipped = sorted(fock.helicity_eigenvalues(basis, scheme, P, lad.flipped()).helicities)
        assert np.allclose(original, flipped, atol=1e-12)

        absorbed = CommutatorScheme.parse(scheme, absorb_phase=True)
        assert np.allclose(original, sorted(fock.helicity_eigenvalues(basis, absorbed, P).helicities), atol=1e-12)
    print("✅ Relabel and phase invariance test passed!")


def test_non_majorana_is_anti_hermitian():
    """b† = a† 로 두면 앞의 -i 가 남아 에르미트가 아님"""
    basis = fock.build_modes([P], 1)
    scheme = CommutatorScheme(CommutatorVariant.STANDARD_2E, majorana=False)
    op = fock.spin_operator(3, basis, scheme)
    assert op.hermiticity_defect() > 0.1
    assert np.allclose(op.pseudo_adjoint().toarray(), -op.matrix.toarray())
    print("✅ Non-Majorana negative control passed!")


def test_coefficient_helicities():
    """모드 계수로 만든 연산자: p=(0,0,3) 에서 ±1 과 0"""
    p = (0.0, 0.0, 3.0)
    basis = fock.build_modes([p], 1)
    spectrum = fock.coefficient_helicities(basis, STANDARD, NormalizationScheme.mass(), p)
    for value in (1.0, -1.0, 0.0):
        assert spectrum.contains(value, tol=1e-9), spectrum.helicities
    print("✅ Coefficient helicity test passed!")


def test_delta_cross_slot_signature():
    """delta-cross: J 는 세 슬롯 모두 +1, ηJ 스펙트럼에서 o 슬롯만 -1 로 e 슬롯과 구분"""
    basis = fock.build_modes([P], 1)
    spectrum = fock.helicity_eigenvalues(basis, DELTA_CROSS, P)
    odd = [lv for lv in spectrum.levels if lv.state == "o"]
    even = [lv for lv in spectrum.levels if lv.state not in ("vacuum", "o")]
    assert len(odd) == 1 and len(even) == 2
    assert odd[0].helicity == pytest.approx(-1.0) and odd[0].metric_sign == -1
    assert odd[0].raw_helicity == pytest.approx(1.0)
    for lv in even:
        assert "o" not in lv.state
        assert lv.helicity == pytest.approx(1.0) and lv.raw_helicity == pytest.approx(1.0)
        assert lv.metric_sign == 1
    assert odd[0].to_dict()["raw_helicity"] == pytest.approx(1.0)

    # 블록 자체: 일입자 J = unit·1, 보고된 헬리시티 = eigvalsh(ηJ)/unit
    op = fock.helicity_operator(basis, DELTA_CROSS, P)
    block, eta, _ = fock._one_particle_block(op, 0, DELTA_CROSS.slot_labels())
    assert np.allclose(block[1:, 1:], spectrum.unit * np.eye(3), atol=1e-12)
    assert list(eta) == [1.0, 1.0, 1.0, -1.0]
    weighted = np.linalg.eigvalsh(eta[:, None] * block) / spectrum.unit
    assert np.allclose(sorted(spectrum.helicities), sorted(weighted), atol=1e-12)

    # 양의 계량에서는 두 값이 같다
    for scheme in (MASS_SCALED, STANDARD):
        for lv in fock.helicity_eigenvalues(basis, scheme, P).levels:
            assert lv.helicity == pytest.approx(lv.raw_helicity, abs=1e-12)
    print("✅ Delta-cross slot signature test passed!")


def test_momentum_reversal():
    """J^k ∝ p^k 이므로 J·p̂ 스펙트럼은 p → -p 에서 같고, 음의 노름 준위는 delta-cross 에만 하나"""
    minus = (0.0, 0.0, -1.0)
    basis = fock.build_modes([P, minus], 2)
    for scheme in ALL_SCHEMES:
        lad = fock.ladders(basis, scheme)
        forward = fock.helicity_eigenvalues(basis, scheme, P, lad)
        backward = fock.helicity_eigenvalues(basis, scheme, minus, lad)
        assert np.allclose(sorted(forward.helicities), sorted(backward.helicities), atol=1e-12)
        negative = [lv for lv in forward.levels if lv.metric_sign < 0]
        assert len(negative) == (1 if scheme.indefinite else 0)

    report = fock_suite(FockConfig(), 1e-10)
    assert report.passed, [(c.id, c.residual) for c in report.failed]
    ids = set(report.ids())
    assert {"fock.momentum_reversal[delta-cross]", "fock.krein_signature[standard-2e]",
            "fock.delta_cross_signature"} <= ids
    assert not any(i.startswith("fock.relabel_symmetry") for i in ids)
    print("✅ Momentum reversal test passed!")


def main():
    """테스트 실행"""
    print("=" * 50)
    print("Fock Tests")
    print("=" * 50)

    test_basis_counting()
    test_basis_validation()
    test_scheme_parse()
    test_delta_cross_commutators()
    test_positive_scheme_commutators()
    test_spin_operator_properties()
    test_delta_cross_helicities()
    test_positive_scheme_helicities()
    test_relabel_and_phase_invariance()
    test_non_majorana_is_anti_hermitian()
    test_coefficient_helicities()
    test_delta_cross_slot_signature()
    test_momentum_reversal()

    print("=" * 50)
    print("✅ All Fock tests passed!")
    print("=" * 50)


if __name__ == "__main__":
    main()
