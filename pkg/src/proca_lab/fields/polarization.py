"""편광 4-벡터

정지계 편광 ε(0,σ), 부스트된 u^μ(p,σ) = N·L(p)·ε(0,σ), 시간꼴 모드 u^μ(p,0_t).
N = 1 (Unit) 또는 N = m (Mass). 무질량 벡터는 직접 만들지 않는다 (limits 모듈 담당).

닫힌 형태 (p_r = p1 + i p2, p_l = p1 - i p2):
  u(+1) = -N/(√2 m) (p_r, m + p1 p_r/(E+m), i m + p2 p_r/(E+m), p3 p_r/(E+m))
  u(-1) = +N/(√2 m) (p_l, m + p1 p_l/(E+m), -i m + p2 p_l/(E+m), p3 p_l/(E+m))
  u(0)  =  N/m (p3, p1 p3/(E+m), p2 p3/(E+m), m + p3²/(E+m))
  u(0t) =  N/m (E, p1, p2, p3)
"""

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

import numpy as np

from proca_lab.fields.minkowski import (
    FourVector,
    as_three_vector,
    boost_matrix,
    energy,
    four_momentum,
    minkowski_dot,
)
from proca_lab.utils.logger import get_logger

logger = get_logger(__name__)

SQRT2 = np.sqrt(2.0)


class Mode(Enum):
    """편광 라벨 σ ∈ {+1, 0, -1, 0_t}"""
    PLUS = "+1"
    ZERO = "0"
    MINUS = "-1"
    TIME = "0t"

    @classmethod
    def parse(cls, value: Union["Mode", int, str]) -> "Mode":
        if isinstance(value, Mode):
            return value
        if isinstance(value, bool):
            raise ValueError(f"Unknown polarization label: {value!r}")
        if isinstance(value, (int, np.integer)):
            lookup = {1: cls.PLUS, 0: cls.ZERO, -1: cls.MINUS}
            if int(value) in lookup:
                return lookup[int(value)]
            raise ValueError(f"Polarization must be one of +1, 0, -1, 0t; got {value!r}")
        text = str(value).strip().lower().replace("_", "")
        aliases = {"+1": cls.PLUS, "1": cls.PLUS, "+": cls.PLUS, "0": cls.ZERO,
                   "-1": cls.MINUS, "-": cls.MINUS, "0t": cls.TIME, "t": cls.TIME}
        if text in aliases:
            return aliases[text]
        raise ValueError(f"Polarization must be one of +1, 0, -1, 0t; got {value!r}")

    @property
    def is_spatial(self) -> bool:
        return self is not Mode.TIME

    @property
    def helicity(self) -> int:
        if self is Mode.TIME:
            raise ValueError("Time-like mode carries no helicity label")
        return {Mode.PLUS: 1, Mode.ZERO: 0, Mode.MINUS: -1}[self]

    @property
    def flipped(self) -> "Mode":
        """σ → -σ (0, 0_t 는 그대로)"""
        return {Mode.PLUS: Mode.MINUS, Mode.MINUS: Mode.PLUS}.get(self, self)


SPATIAL_MODES = (Mode.PLUS, Mode.ZERO, Mode.MINUS)
ALL_MODES = SPATIAL_MODES + (Mode.TIME,)


@dataclass(frozen=True)
class NormalizationScheme:
    """N = 1 (unit) 또는 N = m (mass), 선택적으로 라그랑지안을 m² 로 나눔"""
    variant: str
    rescale_lagrangian: bool = False

    def __post_init__(self) -> None:
        if self.variant not in ("unit", "mass"):
            raise ValueError(f"Normalization variant must be 'unit' or 'mass', got {self.variant!r}")

    @classmethod
    def unit(cls, rescale_lagrangian: bool = False) -> "NormalizationScheme":
        return cls("unit", rescale_lagrangian)

    @classmethod
    def mass(cls, rescale_lagrangian: bool = False) -> "NormalizationScheme":
        return cls("mass", rescale_lagrangian)

    @classmethod
    def parse(cls, name: Union[str, "NormalizationScheme"]) -> "NormalizationScheme":
        if isinstance(name, NormalizationScheme):
            return name
        return cls(str(name).strip().lower())

    @property
    def name(self) -> str:
        return self.variant + ("+rescaled" if self.rescale_lagrangian else "")

    def factor(self, m: float) -> float:
        """N"""
        require_mass(m)
        return 1.0 if self.variant == "unit" else float(m)


def require_mass(m: float) -> None:
    if not m > 0:
        raise ValueError(f"Mass must be > 0, got m={m}")


@dataclass(frozen=True)
class PolarizationVector:
    u: FourVector
    mode: Mode
    p: np.ndarray
    m: float
    scheme: NormalizationScheme

    @property
    def four_momentum(self) -> FourVector:
        return four_momentum(self.p, self.m)

    @property
    def transversality(self) -> complex:
        """p_μ u^μ"""
        return minkowski_dot(self.four_momentum, self.u)

    @property
    def norm(self) -> complex:
        """u*·u"""
        return minkowski_dot(np.conj(self.u), self.u)

    @property
    def conjugate(self) -> FourVector:
        """u^c = u* (위상 0)"""
        return np.conj(self.u)


def rest_polarization(mode: Union[Mode, int, str]) -> FourVector:
    """정지계 편광 ε(0,σ), σ ∈ {+1, 0, -1}

    Raises:
        ValueError: 0_t (시간꼴 모드는 time_like 에서 따로 정의)
    """
    mode = Mode.parse(mode)
    if mode is Mode.PLUS:
        return -np.array([0, 1, 1j, 0], dtype=np.complex128) / SQRT2
    if mode is Mode.ZERO:
        return np.array([0, 0, 0, 1], dtype=np.complex128)
    if mode is Mode.MINUS:
        return np.array([0, 1, -1j, 0], dtype=np.complex128) / SQRT2
    raise ValueError("Rest-frame polarization is defined for +1, 0, -1 only; use time_like() for 0t")


def rest_spatial_vector(mode: Union[Mode, int, str]) -> np.ndarray:
    """ε(0,σ)의 공간 성분 e⃗"""
    return rest_polarization(mode)[1:]


def _closed_form(p: np.ndarray, m: float, mode: Mode, n: float) -> FourVector:
    e = energy(p, m)
    p1, p2, p3 = p
    denom = e + m
    if mode is Mode.PLUS:
        pr = p1 + 1j * p2
        vec = [pr, m + p1 * pr / denom, 1j * m + p2 * pr / denom, p3 * pr / denom]
        return -(n / (SQRT2 * m)) * np.array(vec, dtype=np.complex128)
    if mode is Mode.MINUS:
        pl = p1 - 1j * p2
        vec = [pl, m + p1 * pl / denom, -1j * m + p2 * pl / denom, p3 * pl / denom]
        return (n / (SQRT2 * m)) * np.array(vec, dtype=np.complex128)
    vec = [p3, p1 * p3 / denom, p2 * p3 / denom, m + p3 * p3 / denom]
    return (n / m) * np.array(vec, dtype=np.complex128)


def polarization(
    p: Sequence[float],
    m: float,
    mode: Union[Mode, int, str],
    scheme: NormalizationScheme,
) -> PolarizationVector:
    """u^μ(p,σ), σ ∈ {+1, 0, -1}, 수치적으로 안정한 닫힌 형태로 계산

    부스트 결과(boosted_polarization)와 일치해야 하며, 그쪽은 검증용 오라클.

    Raises:
        ValueError: m <= 0 또는 σ = 0_t
    """
    mode = Mode.parse(mode)
    if mode is Mode.TIME:
        raise ValueError("polarization() covers +1, 0, -1; use time_like() for 0t")
    n = scheme.factor(m)
    p = as_three_vector(p)
    u = _closed_form(p, m, mode, n)
    return PolarizationVector(u=u, mode=mode, p=p, m=float(m), scheme=scheme)


def boosted_polarization(
    p: Sequence[float],
    m: float,
    mode: Union[Mode, int, str],
    scheme: NormalizationScheme,
) -> FourVector:
    """N·L(p)·ε(0,σ) (행렬 곱 오라클)"""
    n = scheme.factor(m)
    return n * boost_matrix(p, m).apply(rest_polarization(mode))


def time_like(p: Sequence[float], m: float, scheme: NormalizationScheme) -> PolarizationVector:
    """u^μ(p,0_t) = (N/m)(E_p, p⃗), u*·u = +N², p·u = N m"""
    n = scheme.factor(m)
    p = as_three_vector(p)
    u = (n / m) * four_momentum(p, m)
    return PolarizationVector(u=u, mode=Mode.TIME, p=p, m=float(m), scheme=scheme)


def mode_vector(
    p: Sequence[float],
    m: float,
    mode: Union[Mode, int, str],
    scheme: NormalizationScheme,
) -> PolarizationVector:
    """네 모드 공통 진입점"""
    mode = Mode.parse(mode)
    if mode is Mode.TIME:
        return time_like(p, m, scheme)
    return polarization(p, m, mode, scheme)


def completeness_matrix(p: Sequence[float], m: float, scheme: NormalizationScheme) -> np.ndarray:
    """Σ_σ sign(σ) u^μ u^{ν*} / N² (시간꼴 +, 공간꼴 -), g^{μν} 와 같아야 함"""
    n = scheme.factor(m)
    total = np.zeros((4, 4), dtype=np.complex128)
    for mode in ALL_MODES:
        u = mode_vector(p, m, mode, scheme).u
        sign = 1.0 if mode is Mode.TIME else -1.0
        total += sign * np.outer(u, np.conj(u))
    return total / (n * n)


def orthogonality_matrix(p: Sequence[float], m: float, scheme: NormalizationScheme) -> np.ndarray:
    """u*(σ)·u(σ') 4×4 (ALL_MODES 순서); 기대값 diag(-N², -N², -N², +N²)"""
    vectors = [mode_vector(p, m, mode, scheme).u for mode in ALL_MODES]
    gram = np.empty((4, 4), dtype=np.complex128)
    for i, a in enumerate(vectors):
        for j, b in enumerate(vectors):
            gram[i, j] = minkowski_dot(np.conj(a), b)
    return gram
