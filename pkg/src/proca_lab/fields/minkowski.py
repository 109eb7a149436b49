"""Minkowski 텐서 연산

계량 g = diag(1, -1, -1, -1), ε^{0123} = +1, 자연단위 ℏ = c = 1.
4-벡터는 shape (4,) complex ndarray, 반대칭 텐서는 위첨자 성분 T^{μν}.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

from proca_lab.utils.logger import get_logger

logger = get_logger(__name__)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

# 반대칭 검사 허용치 (생성자)
ANTISYMMETRY_TOL = 1e-12

FourVector = np.ndarray


def as_four_vector(components: Sequence[complex]) -> FourVector:
    vector = np.asarray(components, dtype=np.complex128)
    if vector.shape != (4,):
        raise ValueError(f"Four-vector needs 4 components, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise ValueError(f"Four-vector has non-finite components: {vector}")
    return vector


def as_three_vector(components: Sequence[float]) -> np.ndarray:
    vector = np.asarray(components, dtype=np.float64)
    if vector.shape != (3,):
        raise ValueError(f"Momentum needs 3 components, got shape {vector.shape}")
    if not np.all(np.isfinite(vector)):
        raise ValueError(f"Momentum has non-finite components: {vector}")
    return vector


def permutation_sign(indices: Sequence[int]) -> int:
    """순열 부호 (중복 인덱스면 0)"""
    items = list(indices)
    if len(set(items)) != len(items):
        return 0
    sign = 1
    for i in range(len(items)):
        while items[i] != i:
            j = items[i]
            items[i], items[j] = items[j], items[i]
            sign = -sign
    return sign


def levi_civita(mu: int, nu: int, rho: int, sigma: int) -> int:
    """ε^{μνρσ}, ε^{0123} = +1"""
    return permutation_sign((mu, nu, rho, sigma))


@lru_cache(maxsize=None)
def _epsilon_upper() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for idx in permutations(range(4)):
        eps[idx] = levi_civita(*idx)
    eps.setflags(write=False)
    return eps


def epsilon_upper() -> np.ndarray:
    """ε^{μνρσ} 전체 배열 (einsum 축약용, 읽기 전용)"""
    return _epsilon_upper()


def epsilon_lower() -> np.ndarray:
    """ε_{μνρσ} = -ε^{μνρσ}"""
    return -_epsilon_upper()


def lower_vector(v: FourVector) -> FourVector:
    return METRIC @ np.asarray(v)


def lower_tensor(t: np.ndarray) -> np.ndarray:
    """T^{μν} → T_{μν}"""
    return METRIC @ np.asarray(t) @ METRIC


def minkowski_dot(a: FourVector, b: FourVector) -> complex:
    """a^0 b^0 - a⃗·b⃗ (켤레 없음; ε*가 필요하면 호출 측에서 conj)"""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    return complex(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3])


def energy(p: Sequence[float], m: float) -> float:
    """E_p = sqrt(|p|² + m²)"""
    p = np.asarray(p, dtype=np.float64)
    return float(np.sqrt(m * m + p @ p))


def four_momentum(p: Sequence[float], m: float) -> FourVector:
    p = as_three_vector(p)
    return as_four_vector([energy(p, m), *p])


@dataclass(frozen=True)
class AntisymTensor:
    """반대칭 4×4 복소 텐서 T^{μν}

    생성 시 반대칭성을 검사하고 정확히 반대칭화해서 저장한다.
    """
    components: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.components, dtype=np.complex128)
        if t.shape != (4, 4):
            raise ValueError(f"Antisymmetric tensor needs shape (4, 4), got {t.shape}")
        scale = max(float(np.max(np.abs(t))), 1.0)
        defect = float(np.max(np.abs(t + t.T)))
        if defect > ANTISYMMETRY_TOL * scale:
            raise ValueError(f"Tensor is not antisymmetric (max |T + T^T| = {defect:.3e})")
        object.__setattr__(self, "components", 0.5 * (t - t.T))

    @classmethod
    def zero(cls) -> "AntisymTensor":
        return cls(np.zeros((4, 4), dtype=np.complex128))

    @classmethod
    def from_fields(cls, electric: Sequence[complex], magnetic: Sequence[complex]) -> "AntisymTensor":
        """F^{i0} = E^i, F^{jk} = -ε^{jkl} B^l"""
        e = np.asarray(electric, dtype=np.complex128)
        b = np.asarray(magnetic, dtype=np.complex128)
        t = np.zeros((4, 4), dtype=np.complex128)
        t[1:, 0] = e
        t[0, 1:] = -e
        t[1:, 1:] = -np.einsum("jkl,l->jk", _epsilon_3d(), b)
        return cls(t)

    @classmethod
    def wedge(cls, a: FourVector, b: FourVector) -> "AntisymTensor":
        """a^μ b^ν - a^ν b^μ"""
        outer = np.outer(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))
        return cls(outer - outer.T)

    @property
    def electric(self) -> np.ndarray:
        return self.components[1:, 0].copy()

    @property
    def magnetic(self) -> np.ndarray:
        # B^l = -½ ε^{jkl} F^{jk}
        return -0.5 * np.einsum("jkl,jk->l", _epsilon_3d(), self.components[1:, 1:])

    @property
    def lowered(self) -> np.ndarray:
        return lower_tensor(self.components)

    def __add__(self, other: "AntisymTensor") -> "AntisymTensor":
        return AntisymTensor(self.components + other.components)

    def __sub__(self, other: "AntisymTensor") -> "AntisymTensor":
        return AntisymTensor(self.components - other.components)

    def __neg__(self) -> "AntisymTensor":
        return AntisymTensor(-self.components)

    def scaled(self, factor: complex) -> "AntisymTensor":
        return AntisymTensor(factor * self.components)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.components)))


@lru_cache(maxsize=None)
def _epsilon_3d() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for idx in permutations(range(3)):
        eps[idx] = permutation_sign(idx)
    eps.setflags(write=False)
    return eps


def epsilon_3d() -> np.ndarray:
    """공간 ε^{ijk}, ε^{123} = +1"""
    return _epsilon_3d()


@dataclass(frozen=True)
class LorentzBoost:
    """정지계 → 운동량 p 로의 순수 부스트 L^μ_ν"""
    matrix: np.ndarray
    mass: float
    momentum: np.ndarray

    def apply(self, v: FourVector) -> FourVector:
        return self.matrix @ np.asarray(v, dtype=np.complex128)

    def pseudo_orthogonality_defect(self) -> float:
        """max |L^T g L - g|"""
        return float(np.max(np.abs(self.matrix.T @ METRIC @ self.matrix - METRIC)))


def boost_matrix(p: Sequence[float], m: float) -> LorentzBoost:
    """운동량 p, 질량 m 입자의 정지계로부터의 부스트

    L^0_0 = E/m, L^0_i = L^i_0 = p_i/m, L^i_k = δ_ik + p_i p_k / (m(E + m)).
    γ-1 = |p|²/(m(E+m)) 형태를 써서 p → 0에서 정확히 단위행렬.

    Raises:
        ValueError: m <= 0 또는 유한하지 않은 p
    """
    if not m > 0:
        raise ValueError(f"Boost requires m > 0, got m={m}")
    p = as_three_vector(p)
    e = energy(p, m)

    matrix = np.empty((4, 4), dtype=np.float64)
    matrix[0, 0] = e / m
    matrix[0, 1:] = p / m
    matrix[1:, 0] = p / m
    matrix[1:, 1:] = np.eye(3) + np.outer(p, p) / (m * (e + m))
    return LorentzBoost(matrix=matrix, mass=float(m), momentum=p)


def dual_tensor(f: AntisymTensor) -> AntisymTensor:
    """F̃^{μν} = ½ ε^{μνρσ} F_{ρσ}

    E, B 슬롯을 교환: F̃^{i0} = B^i, F̃^{jk} = ε^{jkl} E^l.
    """
    dual = 0.5 * np.einsum("abcd,cd->ab", _epsilon_upper(), f.lowered)
    return AntisymTensor(dual)


def random_antisymmetric(rng: np.random.Generator, scale: float = 1.0) -> AntisymTensor:
    """검증용 무작위 복소 반대칭 텐서"""
    raw = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return AntisymTensor(scale * (raw - raw.T))
