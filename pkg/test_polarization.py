"""편광 4-벡터 테스트"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proca_lab.fields.minkowski import METRIC, minkowski_dot
from proca_lab.fields.polarization import (
    ALL_MODES,
    SPATIAL_MODES,
    Mode,
    NormalizationScheme,
    boosted_polarization,
    completeness_matrix,
    orthogonality_matrix,
    polarization,
    rest_polarization,
    time_like,
)

MASS = NormalizationScheme.mass()
UNIT = NormalizationScheme.unit()

component = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False, allow_infinity=False)


def test_mode_parse():
    """라벨 파싱: 정수, 문자열, 별칭"""
    assert Mode.parse(1) is Mode.PLUS
    assert Mode.parse("-1") is Mode.MINUS
    assert Mode.parse("0t") is Mode.TIME
    assert Mode.parse(0) is Mode.ZERO
    assert Mode.PLUS.flipped is Mode.MINUS
    assert Mode.ZERO.flipped is Mode.ZERO
    for bad in (2, "x", True):
        with pytest.raises(ValueError):
            Mode.parse(bad)
    with pytest.raises(ValueError):
        Mode.TIME.helicity
    print("✅ Mode parse test passed!")


def test_normalization_scheme():
    """N = 1 또는 m, m <= 0 거부"""
    assert UNIT.factor(2.5) == 1.0
    assert MASS.factor(2.5) == 2.5
    assert NormalizationScheme.parse("Mass") == MASS
    assert NormalizationScheme.mass(rescale_lagrangian=True).name == "mass+rescaled"
    with pytest.raises(ValueError):
        NormalizationScheme.parse("planck")
    with pytest.raises(ValueError):
        MASS.factor(0.0)
    print("✅ Normalization scheme test passed!")


def test_rest_polarization():
    """ε(0,0) = (0,0,0,1), ε(0,+1) = -(0,1,i,0)/√2, ε*(σ)·ε(σ') = -δ"""
    assert np.array_equal(rest_polarization(0), [0, 0, 0, 1])
    assert np.allclose(rest_polarization("+1"), -np.array([0, 1, 1j, 0]) / np.sqrt(2))
    for a in SPATIAL_MODES:
        for b in SPATIAL_MODES:
            dot = minkowski_dot(np.conj(rest_polarization(a)), rest_polarization(b))
            assert dot == pytest.approx(-1.0 if a is b else 0.0, abs=1e-15)
    with pytest.raises(ValueError):
        rest_polarization(Mode.TIME)
    print("✅ Rest polarization test passed!")


def test_polarization_examples():
    """p=(0,0,3), m=1: u(0) = (3,0,0,√10), u(±1) 은 횡파이고 m 배로 작아짐"""
    u0 = polarization([0, 0, 3], 1.0, 0, MASS).u
    assert np.allclose(u0, [3, 0, 0, np.sqrt(10)], atol=1e-12)

    for m in (1.0, 0.01):
        up = polarization([0, 0, 3], m, "+1", MASS).u
        assert np.allclose(up, -m / np.sqrt(2) * np.array([0, 1, 1j, 0]), atol=1e-15)

    for mode in SPATIAL_MODES:
        assert np.allclose(polarization([0, 0, 0], 1.0, mode, UNIT).u, rest_polarization(mode))
    with pytest.raises(ValueError):
        polarization([0, 0, 1], 1.0, Mode.TIME, MASS)
    print("✅ Polarization example test passed!")


def test_time_like():
    """u(0t) = (N/m)(E, p)"""
    assert np.allclose(time_like([0, 0, 0], 1.0, MASS).u, [1, 0, 0, 0])
    tl = time_like([0, 0, 3], 1.0, MASS)
    assert np.allclose(tl.u, [np.sqrt(10), 0, 0, 3])
    assert tl.norm.real == pytest.approx(1.0)
    assert tl.transversality.real == pytest.approx(1.0)
    print("✅ Time-like mode test passed!")


@settings(max_examples=100, deadline=None)
@given(
    px=component, py=component, pz=component,
    m=st.floats(min_value=0.1, max_value=10.0),
    mass_scheme=st.booleans(),
)
def test_closed_form_matches_boost(px, py, pz, m, mass_scheme):
    """닫힌 형태 = N L(p) ε(0,σ), 횡파 조건, u*·u = -N²"""
    scheme = MASS if mass_scheme else UNIT
    n = scheme.factor(m)
    for mode in SPATIAL_MODES:
        pol = polarization([px, py, pz], m, mode, scheme)
        boosted = boosted_polarization([px, py, pz], m, mode, scheme)
        size = np.max(np.abs(boosted))
        assert np.max(np.abs(pol.u - boosted)) <= 1e-12 * size
        assert abs(pol.transversality) <= 1e-12 * pol.four_momentum[0].real * size
        assert abs(pol.norm + n * n) <= 1e-12 * size * size


def test_completeness_and_orthogonality():
    """Σ ± u u*/N² = g, u*(σ)·u(σ') = diag(-N², -N², -N², N²)"""
    p, m = [1.0, 2.0, 2.0], 1.5
    for scheme in (UNIT, MASS):
        n = scheme.factor(m)
        assert np.allclose(completeness_matrix(p, m, scheme), METRIC, atol=1e-12)
        expected = np.diag([-n * n, -n * n, -n * n, n * n])
        assert np.allclose(orthogonality_matrix(p, m, scheme), expected, atol=1e-12)
    assert len(ALL_MODES) == 4
    print("✅ Completeness and orthogonality test passed!")


def main():
    """테스트 실행"""
    print("=" * 50)
    print("Polarization Tests")
    print("=" * 50)

    test_mode_parse()
    test_normalization_scheme()
    test_rest_polarization()
    test_polarization_examples()
    test_time_like()
    test_closed_form_matches_boost()
    test_completeness_and_orthogonality()

    print("=" * 50)
    print("✅ All polarization tests passed!")
    print("=" * 50)


if __name__ == "__main__":
    main()
