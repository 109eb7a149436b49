"""운동량 공간 전기/자기 세기

양의 진동수:
  B^(+) = (i/2m) p⃗ × u⃗
  E^(+) = (i/2m)(E_p u⃗ - p⃗ u^0)
음의 진동수는 u^c = e^{iα} u* 로부터
  B^(-)(σ) = e^{iα_σ} B^(+)(σ)*,  E^(-)(σ) = e^{iα'_σ} E^(+)(σ)*
시간꼴 모드의 세기는 정확히 0.

u = N(p·e/m, e + p(p·e)/(m(E+m))) 를 대입하면
  B^(+) = (iN/2m) p⃗ × e⃗
  E^(+) = (iN/2m)(m e⃗ + p⃗ × (e⃗ × p⃗)/(E+m))
로 정리되어 |p| ≫ m 에서도 소거 손실이 없다.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from proca_lab.fields.minkowski import (
    METRIC,
    AntisymTensor,
    as_three_vector,
    dual_tensor,
    energy,
    four_momentum,
)
from proca_lab.fields.polarization import (
    SPATIAL_MODES,
    SQRT2,
    Mode,
    NormalizationScheme,
    mode_vector,
    require_mass,
    rest_spatial_vector,
)
from proca_lab.reports.report import IdentityReport
from proca_lab.utils.logger import get_logger

logger = get_logger(__name__)

# 세기 항등식 상대 허용치
STRENGTH_TOL = 1e-12

Phases = Dict[Mode, float]


@dataclass(frozen=True)
class StrengthPair:
    """운동량 공간 (E, B) 복소 3-벡터 쌍"""
    electric: np.ndarray
    magnetic: np.ndarray
    mode: Mode
    freq: str
    p: np.ndarray
    m: float
    scheme: NormalizationScheme
    alpha: float = 0.0
    alpha_prime: float = 0.0

    def tensor(self) -> AntisymTensor:
        """F^{i0} = E^i, F^{jk} = -ε^{jkl} B^l"""
        return AntisymTensor.from_fields(self.electric, self.magnetic)

    def transversality(self) -> Tuple[complex, complex]:
        """(p·E, p·B); p·B 는 0, p·E 는 longitudinal_electric 과 같다"""
        return complex(self.p @ self.electric), complex(self.p @ self.magnetic)


def _check_freq(freq: str) -> str:
    if freq not in ("+", "-"):
        raise ValueError(f"Frequency sign must be '+' or '-', got {freq!r}")
    return freq


def _positive_fields(p: np.ndarray, m: float, mode: Mode, scheme: NormalizationScheme):
    n = scheme.factor(m)
    if mode is Mode.TIME:
        zero = np.zeros(3, dtype=np.complex128)
        return zero, zero.copy()
    e_vec = rest_spatial_vector(mode)
    coeff = 1j * n / (2.0 * m)
    magnetic = coeff * np.cross(p, e_vec)
    electric = coeff * (m * e_vec + np.cross(p, np.cross(e_vec, p)) / (energy(p, m) + m))
    return electric, magnetic


def strengths_from_potential(
    p: Sequence[float],
    m: float,
    mode: Union[Mode, int, str],
    scheme: NormalizationScheme,
    freq: str = "+",
    alpha: float = 0.0,
    alpha_prime: float = 0.0,
) -> StrengthPair:
    """편광 모드의 세기 쌍

    Args:
        p: 3-운동량
        m: 질량 (> 0)
        mode: σ ∈ {+1, 0, -1, 0t}
        scheme: 정규화 방식
        freq: '+' (e^{-ipx}) 또는 '-' (e^{+ipx})
        alpha, alpha_prime: 음의 진동수 B, E 의 위상 α_σ, α'_σ

    Raises:
        ValueError: m <= 0, 잘못된 freq
    """
    require_mass(m)
    freq = _check_freq(freq)
    mode = Mode.parse(mode)
    p = as_three_vector(p)

    electric, magnetic = _positive_fields(p, m, mode, scheme)
    if freq == "-":
        electric = np.exp(1j * alpha_prime) * np.conj(electric)
        magnetic = np.exp(1j * alpha) * np.conj(magnetic)

    return StrengthPair(
        electric=electric,
        magnetic=magnetic,
        mode=mode,
        freq=freq,
        p=p,
        m=float(m),
        scheme=scheme,
        alpha=float(alpha),
        alpha_prime=float(alpha_prime),
    )


def strength_table(
    p: Sequence[float],
    m: float,
    scheme: NormalizationScheme,
    alphas: Optional[Phases] = None,
    alpha_primes: Optional[Phases] = None,
) -> Dict[Tuple[str, Mode], StrengthPair]:
    """(freq, σ) → StrengthPair, 공간 모드 세 개 × 두 진동수"""
    alphas = alphas or {}
    alpha_primes = alpha_primes or {}
    table = {}
    for freq in ("+", "-"):
        for mode in SPATIAL_MODES:
            table[(freq, mode)] = strengths_from_potential(
                p, m, mode, scheme, freq,
                alpha=alphas.get(mode, 0.0), alpha_prime=alpha_primes.get(mode, 0.0),
            )
    return table


def expected_dot_products(p: np.ndarray, m: float, n: float) -> Dict[Tuple[Mode, Mode], complex]:
    """B^(+)(σ)·B^(-)(σ') 닫힌 형태 (위상 0)"""
    p1, p2, p3 = p
    pr, pl = p1 + 1j * p2, p1 - 1j * p2
    k = n * n / (m * m)
    r2 = 4.0 * SQRT2
    return {
        (Mode.PLUS, Mode.PLUS): k / 8.0 * (pr * pl + 2.0 * p3 * p3),
        (Mode.MINUS, Mode.MINUS): k / 8.0 * (pr * pl + 2.0 * p3 * p3),
        (Mode.ZERO, Mode.ZERO): k / 4.0 * pr * pl,
        (Mode.PLUS, Mode.ZERO): k * p3 * pr / r2,
        (Mode.ZERO, Mode.MINUS): -k * p3 * pr / r2,
        (Mode.MINUS, Mode.ZERO): -k * p3 * pl / r2,
        (Mode.ZERO, Mode.PLUS): k * p3 * pl / r2,
        (Mode.PLUS, Mode.MINUS): k / 8.0 * pr * pr,
        (Mode.MINUS, Mode.PLUS): k / 8.0 * pl * pl,
    }


def expected_cross_products(p: np.ndarray, m: float, n: float) -> Dict[Tuple[Mode, Mode], np.ndarray]:
    """B^(+)(σ) × B^(-)(σ') 닫힌 형태 (위상 0); 목록에 없는 쌍은 0"""
    p1, p2, p3 = p
    pr, pl = p1 + 1j * p2, p1 - 1j * p2
    k = -1j * n * n / (4.0 * m * m)
    zero = np.zeros(3, dtype=np.complex128)
    vec = p.astype(np.complex128)
    return {
        (Mode.PLUS, Mode.PLUS): k * p3 * vec,
        (Mode.MINUS, Mode.MINUS): -k * p3 * vec,
        (Mode.PLUS, Mode.ZERO): k * pr / SQRT2 * vec,
        (Mode.ZERO, Mode.MINUS): k * pr / SQRT2 * vec,
        (Mode.MINUS, Mode.ZERO): k * pl / SQRT2 * vec,
        (Mode.ZERO, Mode.PLUS): k * pl / SQRT2 * vec,
        (Mode.PLUS, Mode.MINUS): zero,
        (Mode.MINUS, Mode.PLUS): zero,
        (Mode.ZERO, Mode.ZERO): zero,
    }


def sum_rule(p: np.ndarray, m: float, n: float) -> float:
    """Σ_σ B^(+)(σ)·B^(-)(σ) = (N²/2m²)(E_p² - m²)"""
    return n * n / (2.0 * m * m) * float(p @ p)


def longitudinal_electric(
    p: Sequence[float],
    m: float,
    mode: Union[Mode, int, str],
    scheme: NormalizationScheme,
    freq: str = "+",
    alpha_prime: float = 0.0,
) -> complex:
    """p·E 의 닫힌 형태

    p_μ u^μ = 0 에서 E_p u^0 = p⃗·u⃗ 이므로
      p·E^(+) = (i/2m)(E_p p⃗·u⃗ - |p|² u^0) = (i/2m)(E_p² - |p|²) u^0 = (i m/2) u^0
    p 가 실수이므로 음의 진동수는 켤레와 위상만 옮긴다:
      p·E^(-) = e^{iα'} (p·E^(+))* = -(i m/2) e^{iα'} u^0*
    α' = α 이면 -(i m/2) u^c0 으로 ∂ → +ip 의 부호와 맞는다.
    E 는 u^0 = 0 일 때만 횡파이고, 시간꼴 모드는 E = 0 이라 0.
    """
    require_mass(m)
    freq = _check_freq(freq)
    mode = Mode.parse(mode)
    if mode is Mode.TIME:
        return 0j
    u0 = complex(mode_vector(p, m, mode, scheme).u[0])
    plus = 0.5j * m * u0
    if freq == "+":
        return plus
    return complex(np.exp(1j * alpha_prime) * np.conj(plus))


# 정확히 0 인 항등식 (모든 항이 0) 에서만 쓰는 분모
_TINY = 1e-300


def _dot_scale(a: np.ndarray, b: np.ndarray) -> float:
    """Σ_i |a_i||b_i|"""
    return float(np.abs(a) @ np.abs(b))


def _cross_scale(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """성분별 |a_j||b_k| + |a_k||b_j|"""
    a, b = np.abs(a), np.abs(b)
    return a[[1, 2, 0]] * b[[2, 0, 1]] + a[[2, 0, 1]] * b[[1, 2, 0]]


def _relative(actual, expected, scale) -> float:
    """|actual - expected| / 항 크기, 성분별 최대"""
    diff = np.abs(np.asarray(actual) - np.asarray(expected))
    return float(np.max(diff / np.maximum(np.asarray(scale, dtype=float), _TINY)))


def identity_suite(
    p: Sequence[float],
    m: float,
    scheme: NormalizationScheme,
    tolerance: float = STRENGTH_TOL,
    report: Optional[IdentityReport] = None,
) -> IdentityReport:
    """세기 항등식 전체 (위상 0)

    9개 (σ,σ') 쌍의 내적과 외적 전부, 합 규칙, 진동수 연결 관계,
    p·B = 0 과 p·E 의 종방향 항등식, 시간꼴 모드의 0 세기를 검사한다.
    잔차는 각 항등식을 이루는 항들의 크기 합으로 나눈 상대값
    (내적은 Σ|a_i||b_i|, 외적은 성분별 |a_j b_k| + |a_k b_j|).
    모든 항이 0 인 경우만 _TINY 로 나눈다.
    """
    require_mass(m)
    report = report if report is not None else IdentityReport()
    p = as_three_vector(p)
    n = scheme.factor(m)

    table = strength_table(p, m, scheme)
    dots = expected_dot_products(p, m, n)
    crosses = expected_cross_products(p, m, n)

    dot_worst, cross_worst, zero_cross_worst = 0.0, 0.0, 0.0
    for (s1, s2), expected in dots.items():
        a, b = table[("+", s1)].magnetic, table[("-", s2)].magnetic
        dot_worst = max(dot_worst, _relative(a @ b, expected, _dot_scale(a, b)))
    for (s1, s2), expected in crosses.items():
        a, b = table[("+", s1)].magnetic, table[("-", s2)].magnetic
        residual = _relative(np.cross(a, b), expected, _cross_scale(a, b))
        if np.any(expected):
            cross_worst = max(cross_worst, residual)
        else:
            zero_cross_worst = max(zero_cross_worst, residual)

    total, total_scale = 0j, 0.0
    for s in SPATIAL_MODES:
        a, b = table[("+", s)].magnetic, table[("-", s)].magnetic
        total += a @ b
        total_scale += _dot_scale(a, b)

    report.add("strengths.dot_products", "B^(+)(σ)·B^(-)(σ') for all 9 pairs", dot_worst, tolerance)
    report.add("strengths.cross_products", "B^(+)(σ)×B^(-)(σ') non-zero pairs", cross_worst, tolerance)
    report.add("strengths.cross_products_zero", "remaining cross products vanish", zero_cross_worst, tolerance)
    report.add("strengths.sum_rule", "Σ B^(+)·B^(-) = (N²/2m²)(E²-m²)",
               _relative(total, sum_rule(p, m, n), total_scale), tolerance)

    # 진동수 연결: B^(+)(±1) = B^(-)(∓1), B^(+)(0) = -B^(-)(0), E 도 같은 관계
    link = 0.0
    for field in ("magnetic", "electric"):
        for s in SPATIAL_MODES:
            sign = -1.0 if s is Mode.ZERO else 1.0
            plus = getattr(table[("+", s)], field)
            minus = getattr(table[("-", s.flipped)], field)
            scale = max(float(np.max(np.abs(plus))), float(np.max(np.abs(minus))))
            link = max(link, _relative(plus, sign * minus, scale))
    report.add("strengths.frequency_linkage", "F^(+)(σ) = ±F^(-)(-σ) at zero phases", link, tolerance)

    magnetic, electric = 0.0, 0.0
    for (freq, mode), pair in table.items():
        pe, pb = pair.transversality()
        magnetic = max(magnetic, _relative(pb, 0.0, _dot_scale(p, pair.magnetic)))
        expected = longitudinal_electric(p, m, mode, scheme, freq, pair.alpha_prime)
        electric = max(electric, _relative(pe, expected, _dot_scale(p, pair.electric)))
    report.add("strengths.transverse_magnetic", "p·B = 0", magnetic, tolerance)
    report.add("strengths.longitudinal_electric", "p·E^(±) = ±(i m/2) u^0 (conjugated for -)", electric, tolerance)

    timelike = strengths_from_potential(p, m, Mode.TIME, scheme)
    report.add(
        "strengths.timelike_zero",
        "E = B = 0 for the time-like mode",
        float(max(np.max(np.abs(timelike.electric)), np.max(np.abs(timelike.magnetic)))),
        tolerance,
    )
    return report


def pdk_tensor(p: np.ndarray, m: float, u: np.ndarray) -> np.ndarray:
    """2m F^{μν} = -i(p^μ u^ν - p^ν u^μ) 의 F"""
    p4 = four_momentum(p, m)
    return (-1j / (2.0 * m)) * (np.outer(p4, u) - np.outer(u, p4))


def _divergence(p4: np.ndarray, f: np.ndarray) -> np.ndarray:
    """p_α F^{αμ}"""
    return (METRIC @ p4) @ f


def proca_residuals(
    p: Sequence[float],
    m: float,
    mode: Union[Mode, int, str],
    scheme: NormalizationScheme,
    tolerance: float = STRENGTH_TOL,
    report: Optional[IdentityReport] = None,
) -> IdentityReport:
    """운동량 공간 Proca 방정식 잔차 (양의 진동수, ∂ → -ip)

    - 1계 집합: -i p_α F^{αμ} + (m/2) u^μ = 0, 2mF = -i(p∧u)
    - 교과서 집합 (A → 2mA 이후 a = u/2m): -i p_α F^{αμ} + m² a^μ = 0, F = -i(p∧a)
    - 쌍대 집합 (B^μ = u^μ): i(-i p_α) F̃^{αμ} + (m/2) B^μ = 0, 2im F̃ = -i(p∧B)
      'dual_without_i' 는 2im 의 i 를 뺐을 때의 결손이 (m/2)(1 - i)u 임을 확인
    - 세기에서 조립한 F 와 (-i/2m)(p∧u) 의 일치
    - 쌍대 Bianchi: p_α dual(F)^{αμ} = 0

    시간꼴 모드는 횡파 조건이 없어 1계 집합 잔차가 0이 아니다 (예외 아님).
    """
    require_mass(m)
    report = report if report is not None else IdentityReport()
    mode = Mode.parse(mode)
    p = as_three_vector(p)
    p4 = four_momentum(p, m)
    u = mode_vector(p, m, mode, scheme).u
    prefix = f"proca[{mode.value}]"

    f = pdk_tensor(p, m, u)
    scale = max(m / 2.0 * float(np.max(np.abs(u))), float(np.max(np.abs(p4))) * float(np.max(np.abs(f))), 1e-300)

    def rel(vec) -> float:
        return float(np.max(np.abs(vec))) / scale

    report.add(f"{prefix}.pdk", "-i p_α F^{αμ} + (m/2)u^μ = 0", rel(-1j * _divergence(p4, f) + m / 2.0 * u), tolerance)

    pair = strengths_from_potential(p, m, mode, scheme)
    report.add(f"{prefix}.pdk_tensor", "F from (E, B) = (-i/2m)(p∧u)", rel(pair.tensor().components - f), tolerance)

    a = u / (2.0 * m)
    f_text = -1j * (np.outer(p4, a) - np.outer(a, p4))
    report.add(
        f"{prefix}.textbook",
        "-i p_α F^{αμ} + m² A^μ = 0 after A → 2mA",
        max(rel(-1j * _divergence(p4, f_text) + m * m * a), rel(f_text - f)),
        tolerance,
    )

    wedge = np.outer(p4, u) - np.outer(u, p4)
    f_dual = -1j * wedge / (2j * m)
    report.add(
        f"{prefix}.dual",
        "i∂_α F̃^{αμ} + (m/2)B^μ = 0 with 2im F̃ = ∂∧B, B = u",
        rel(1j * (-1j) * _divergence(p4, f_dual) + m / 2.0 * u),
        tolerance,
    )
    if mode.is_spatial:
        f_dual_no_i = -1j * wedge / (2.0 * m)
        defect = 1j * (-1j) * _divergence(p4, f_dual_no_i) + m / 2.0 * u
        report.add(
            f"{prefix}.dual_without_i",
            "dropping i in 2im F̃ leaves (m/2)(1-i)B^μ",
            rel(defect - m / 2.0 * (1.0 - 1j) * u),
            tolerance,
        )

    bianchi = _divergence(p4, dual_tensor(AntisymTensor(f)).components)
    report.add(f"{prefix}.dual_bianchi", "p_α F̃^{αμ} = 0", rel(bianchi), tolerance)
    return report


def timelike_obstruction(p: Sequence[float], m: float, scheme: NormalizationScheme) -> np.ndarray:
    """시간꼴 모드의 1계 집합 잔차 -i p_α F^{αμ} + (m/2)u^μ (= (N/2) p^μ)"""
    p = as_three_vector(p)
    u = mode_vector(p, m, Mode.TIME, scheme).u
    f = pdk_tensor(p, m, u)
    return -1j * _divergence(four_momentum(p, m), f) + m / 2.0 * u
