"""반대칭 텐서장의 Noether 양

평면파 모드 합으로 주어진 장 배치(FieldConfig)에 대해
라그랑지안 밀도, 운동 방정식 잔차, 에너지-운동량 텐서, 회전 생성자,
스핀 텐서, Pauli-Lubanski 축약, 퍼텐셜 형태 스핀 벡터를 계산한다.

장은 항들의 합 F^{μν}(x) = Σ_k C_k^{μν} e^{iκ_k·x} 로 표현한다 (κ 는 아래첨자 파동 공변벡터).
  양의 진동수 항: C = F_(+) a,  κ = -p_μ
  음의 진동수 항: C = F_(-) b,  κ = +p_μ
미분은 ∂_λ → iκ_λ 로 정확히(스펙트럼) 계산하고, 상자 적분은 격자 라벨의
크로네커 델타로 처리한다. 측도 1/((2π)³2E) 는 진폭에 흡수되어 있다.
궤도 각운동량 L_{κτ} 는 다루지 않는다 (일입자 자유 상태에서 기여 없음).
"""

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import expm

from proca_lab.fields.minkowski import (
    METRIC,
    AntisymTensor,
    as_four_vector,
    as_three_vector,
    energy,
    epsilon_3d,
    epsilon_lower,
    four_momentum,
    minkowski_dot,
)
from proca_lab.fields.polarization import (
    SPATIAL_MODES,
    SQRT2,
    Mode,
    NormalizationScheme,
    mode_vector,
    require_mass,
)
from proca_lab.fields.strengths import strengths_from_potential
from proca_lab.utils.logger import get_logger

logger = get_logger(__name__)

TWO_PI = 2.0 * np.pi

# n·n = -1 허용치
SPACELIKE_TOL = 1e-10


@dataclass(frozen=True)
class FieldMode:
    """격자 모드 하나

    Args:
        n: 격자 라벨 (p = 2π n / L)
        mode: 편광 σ
        a: 양의 진동수 진폭
        b: 음의 진동수 진폭 (None 이면 conj(a), 실수 장)
        energy: 진동수 덮어쓰기 (off-shell 대조군, 빛꼴 구속 배치)
    """
    n: Tuple[int, int, int]
    mode: Mode
    a: complex
    b: Optional[complex] = None
    energy: Optional[float] = None

    def __post_init__(self) -> None:
        labels = tuple(int(v) for v in self.n)
        if len(labels) != 3 or any(int(v) != v for v in self.n):
            raise ValueError(f"Lattice label must be three integers, got {self.n!r}")
        object.__setattr__(self, "n", labels)
        object.__setattr__(self, "mode", Mode.parse(self.mode))

    @property
    def negative_amplitude(self) -> complex:
        return np.conj(self.a) if self.b is None else self.b


@dataclass(frozen=True)
class FieldConfig:
    """주기 상자 위의 유한 모드 합 (상자 길이 기본 1)"""
    modes: Tuple[FieldMode, ...]
    m: float
    scheme: NormalizationScheme
    box: float = 1.0

    def __post_init__(self) -> None:
        require_mass(self.m)
        if not self.box > 0:
            raise ValueError(f"Box length must be > 0, got {self.box}")
        object.__setattr__(self, "modes", tuple(self.modes))

    @property
    def volume(self) -> float:
        return self.box ** 3

    def momentum(self, mode: FieldMode) -> np.ndarray:
        return TWO_PI * np.asarray(mode.n, dtype=np.float64) / self.box

    def scaled(self, factor: float) -> "FieldConfig":
        """모든 진폭에 실수 배율 (B = ±A 구성용)"""
        factor = float(factor)
        modes = tuple(
            replace(md, a=factor * md.a, b=None if md.b is None else factor * md.b) for md in self.modes
        )
        return replace(self, modes=modes)

    @classmethod
    def single(
        cls,
        n: Sequence[int],
        mode: Union[Mode, int, str],
        m: float,
        scheme: NormalizationScheme,
        a: complex = 1.0,
        energy_override: Optional[float] = None,
    ) -> "FieldConfig":
        return cls((FieldMode(tuple(n), Mode.parse(mode), a, energy=energy_override),), m, scheme)

    @property
    def is_zero(self) -> bool:
        return not self.modes


@dataclass(frozen=True)
class _Terms:
    """모드 → 지수 항 전개"""
    kappa: np.ndarray       # (K, 4) 아래첨자
    labels: np.ndarray      # (K, 3) 부호 붙은 격자 라벨
    field: np.ndarray       # (K, 4, 4) C^{μν}
    potential: np.ndarray   # (K, 4) A^μ 계수

    @property
    def size(self) -> int:
        return self.kappa.shape[0]


def _expand(cfg: FieldConfig) -> _Terms:
    kappa, labels, fields, potentials = [], [], [], []
    for md in cfg.modes:
        p = cfg.momentum(md)
        e = energy(p, cfg.m) if md.energy is None else float(md.energy)
        p4 = np.array([e, *p], dtype=np.complex128)
        u = mode_vector(p, cfg.m, md.mode, cfg.scheme).u
        wedge = (-1j / (2.0 * cfg.m)) * (np.outer(p4, u) - np.outer(u, p4))
        p_low = METRIC @ p4

        kappa.append(-p_low)
        labels.append(np.asarray(md.n))
        fields.append(wedge * md.a)
        potentials.append(u * md.a)

        b = md.negative_amplitude
        kappa.append(p_low)
        labels.append(-np.asarray(md.n))
        fields.append(np.conj(wedge) * b)
        potentials.append(np.conj(u) * b)

    if not kappa:
        return _Terms(
            np.zeros((0, 4), dtype=np.complex128),
            np.zeros((0, 3), dtype=int),
            np.zeros((0, 4, 4), dtype=np.complex128),
            np.zeros((0, 4), dtype=np.complex128),
        )
    return _Terms(
        np.real(np.array(kappa)).astype(np.float64),
        np.array(labels, dtype=int),
        np.array(fields, dtype=np.complex128),
        np.array(potentials, dtype=np.complex128),
    )


@dataclass(frozen=True)
class _Derivatives:
    """항별 미분 배열"""
    up: np.ndarray      # C^{μν}
    low: np.ndarray     # C_{μν}
    d_low: np.ndarray   # ∂_λ F_{μν} → [k, λ, μ, ν]
    d_up: np.ndarray    # ∂^λ F^{μν} → [k, λ, μ, ν]
    div: np.ndarray     # ∂_μ F^{μν} → [k, ν]


def _derivatives(terms: _Terms) -> _Derivatives:
    ik = 1j * terms.kappa
    up = terms.field
    low = np.einsum("am,kmn,nb->kab", METRIC, up, METRIC)
    d_low = np.einsum("kl,kmn->klmn", ik, low)
    ik_up = ik @ METRIC
    d_up = np.einsum("kl,kmn->klmn", ik_up, up)
    div = np.einsum("km,kmn->kn", ik, up)
    return _Derivatives(up, low, d_low, d_up, div)


def _phases(terms: _Terms, x: Sequence[float]) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (4,):
        raise ValueError(f"Spacetime point needs 4 components (t, x, y, z), got shape {x.shape}")
    return np.exp(1j * (terms.kappa @ x))


def _box_weights(cfg: FieldConfig, terms: _Terms, t: float) -> np.ndarray:
    """∫_box e^{i(κ_k + κ_l)·x} d³x = V δ(라벨 합 = 0), 시간 위상 포함"""
    total = terms.labels[:, None, :] + terms.labels[None, :, :]
    delta = np.all(total == 0, axis=2)
    time_phase = np.exp(1j * (terms.kappa[:, None, 0] + terms.kappa[None, :, 0]) * t)
    return cfg.volume * delta * time_phase


def _rescale(cfg: FieldConfig) -> float:
    return 1.0 / (cfg.m * cfg.m) if cfg.scheme.rescale_lagrangian else 1.0


def field_at(cfg: FieldConfig, x: Sequence[float]) -> AntisymTensor:
    """F^{μν}(x)"""
    terms = _expand(cfg)
    if terms.size == 0:
        return AntisymTensor.zero()
    return AntisymTensor(np.einsum("k,kmn->mn", _phases(terms, x), terms.field))


def potential_at(cfg: FieldConfig, x: Sequence[float]) -> np.ndarray:
    """A^μ(x)"""
    terms = _expand(cfg)
    if terms.size == 0:
        return np.zeros(4, dtype=np.complex128)
    return _phases(terms, x) @ terms.potential


# ---------------------------------------------------------------------------
# 라그랑지안, 운동 방정식, 에너지-운동량 텐서
# ---------------------------------------------------------------------------

def _lagrangian_pairs(d: _Derivatives, m: float) -> np.ndarray:
    """ℒ 의 (k, l) 쌍 계수"""
    div_low = d.div @ METRIC
    kinetic = 0.25 * np.einsum("kmna,lmna->kl", d.d_low, d.d_up)
    divergence = -0.5 * np.einsum("ka,la->kl", d.div, div_low)
    cross = -0.5 * np.einsum("kmna,lnma->kl", d.d_low, d.d_up)
    mass = 0.25 * m * m * np.einsum("kmn,lmn->kl", d.low, d.up)
    return kinetic + divergence + cross + mass


def _stress_pairs(d: _Derivatives, m: float) -> np.ndarray:
    """Θ^{λβ} 의 (k, l) 쌍 계수 → [k, l, λ, β]"""
    raised_low = np.einsum("xr,krma->kxma", METRIC, d.d_low)     # ∂^λ F_{μα}
    mixed = np.einsum("kylr,ra->kyla", d.d_up, METRIC)            # ∂^β F^λ_α
    first = np.einsum("kxma,lyma->klxy", raised_low, d.d_up)
    second = np.einsum("ka,lyxa->klxy", d.div, mixed)
    third = np.einsum("kmxa,lyma->klxy", d.d_up, raised_low)
    lag = _lagrangian_pairs(d, m)
    return 0.5 * (first - 2.0 * second - 2.0 * third) - lag[:, :, None, None] * METRIC[None, None]


def lagrangian_density(cfg: FieldConfig, x: Sequence[float]) -> float:
    """ℒ(x) = ¼(∂_μF_{να})(∂^μF^{να}) - ½(∂_μF^{μα})(∂^νF_{να})
              - ½(∂_μF_{να})(∂^νF^{μα}) + ¼m²F_{μν}F^{μν}

    재규격화 플래그가 켜지면 m² 로 나눈 값. 실수 장(b = conj(a))에서 실수.
    """
    terms = _expand(cfg)
    if terms.size == 0:
        return 0.0
    w = _phases(terms, x)
    value = np.einsum("k,kl,l->", w, _lagrangian_pairs(_derivatives(terms), cfg.m), w)
    if abs(value.imag) > 1e-9 * max(abs(value.real), 1.0):
        logger.debug(f"Lagrangian has imaginary part {value.imag:.3e} (complex configuration)")
    return float(value.real) * _rescale(cfg)


def eom_residual(cfg: FieldConfig, x: Sequence[float]) -> AntisymTensor:
    """½(□ + m²)F_{μν} + (∂_μ F_{αν}^{,α} - ∂_ν F_{αμ}^{,α}), □ = -∂_α∂^α

    on-shell 모드만 있으면 0.
    """
    terms = _expand(cfg)
    if terms.size == 0:
        return AntisymTensor.zero()
    d = _derivatives(terms)
    kappa = terms.kappa
    kappa_up = kappa @ METRIC
    box = np.einsum("ka,ka->k", kappa, kappa_up)
    # d_ν = ∂^α F_{αν} = iκ^α C_{αν}
    inner = 1j * np.einsum("ka,kan->kn", kappa_up, d.low)
    outer = 1j * (np.einsum("km,kn->kmn", kappa, inner) - np.einsum("kn,km->kmn", kappa, inner))
    per_term = 0.5 * (box + cfg.m * cfg.m)[:, None, None] * d.low + outer
    return AntisymTensor(np.einsum("k,kmn->mn", _phases(terms, x), per_term))


def eom_scale(cfg: FieldConfig) -> float:
    """잔차 상대화 척도 Σ_k (|κ|² + m²)|C_k|"""
    terms = _expand(cfg)
    if terms.size == 0:
        return 1.0
    kappa_sq = np.sum(terms.kappa ** 2, axis=1)
    return float(np.sum((kappa_sq + cfg.m ** 2) * np.max(np.abs(terms.field), axis=(1, 2))))


def divergence_at(cfg: FieldConfig, x: Sequence[float]) -> np.ndarray:
    """∂_μF^{μν}(x) (스펙트럼 미분)"""
    terms = _expand(cfg)
    if terms.size == 0:
        return np.zeros(4, dtype=np.complex128)
    return _phases(terms, x) @ _derivatives(terms).div


def lorentz_defect(cfg: FieldConfig) -> float:
    """max_k |iκ_μ C_k^{μν}| / max_k |κ_k||C_k|

    항별로 0 이면 모든 x 에서 ∂_μF^{μν} = 0.
    """
    terms = _expand(cfg)
    if terms.size == 0:
        return 0.0
    div = _derivatives(terms).div
    scale = np.max(np.abs(terms.kappa), axis=1) * np.max(np.abs(terms.field), axis=(1, 2))
    return float(np.max(np.abs(div))) / max(float(np.max(scale)), 1e-300)


def _magnitudes(terms: _Terms) -> Tuple[float, float, float]:
    """(Σ|C_k|, Σ|κ_k||C_k|, Σ|κ_k||A_k|)"""
    c = np.max(np.abs(terms.field), axis=(1, 2))
    k = np.max(np.abs(terms.kappa), axis=1)
    a = np.max(np.abs(terms.potential), axis=1)
    return float(np.sum(c)), float(np.sum(k * c)), float(np.sum(k * a))


def density_scale(cfg: FieldConfig) -> float:
    """ℒ, Θ 크기 척도 (Σ|κ||C| + m Σ|C|)²"""
    terms = _expand(cfg)
    if terms.size == 0:
        return 1.0
    c, kc, _ = _magnitudes(terms)
    return (kc + cfg.m * c) ** 2 * _rescale(cfg)


def spin_scale(cfg: FieldConfig) -> float:
    """상자 적분 스핀 크기 척도 V (Σ|C|)(Σ|κ||C| + m Σ|A|)"""
    terms = _expand(cfg)
    if terms.size == 0:
        return 1.0
    c, kc, _ = _magnitudes(terms)
    a = float(np.sum(np.max(np.abs(terms.potential), axis=1)))
    return cfg.volume * c * (kc + cfg.m * a) * _rescale(cfg)


def potential_scale(cfg: FieldConfig) -> float:
    """퍼텐셜 쌍선형 크기 척도 V (Σ|A|)(Σ|κ||A|)"""
    terms = _expand(cfg)
    if terms.size == 0:
        return 1.0
    _, _, ka = _magnitudes(terms)
    a = float(np.sum(np.max(np.abs(terms.potential), axis=1)))
    return cfg.volume * a * ka


def stress_tensor(cfg: FieldConfig, x: Sequence[float]) -> np.ndarray:
    """Θ^{λβ}(x) (4×4 실수)"""
    terms = _expand(cfg)
    if terms.size == 0:
        return np.zeros((4, 4))
    w = _phases(terms, x)
    theta = np.einsum("k,klxy,l->xy", w, _stress_pairs(_derivatives(terms), cfg.m), w)
    return np.real(theta) * _rescale(cfg)


def stress_divergence(cfg: FieldConfig, x: Sequence[float]) -> Tuple[np.ndarray, float]:
    """(∂_λ Θ^{λβ}(x), 척도)

    쌍 계수에 i(κ_k + κ_l)_λ 를 곱해 정확히 미분한다.
    """
    terms = _expand(cfg)
    if terms.size == 0:
        return np.zeros(4), 1.0
    pairs = _stress_pairs(_derivatives(terms), cfg.m)
    ksum = terms.kappa[:, None, :] + terms.kappa[None, :, :]
    w = _phases(terms, x)
    weights = w[:, None] * w[None, :]
    div = np.einsum("kl,klx,klxy->y", weights, 1j * ksum, pairs)
    scale = float(np.sum(np.max(np.abs(ksum), axis=2) * np.max(np.abs(pairs), axis=(2, 3))))
    rescale = _rescale(cfg)
    return np.real(div) * rescale, max(scale * rescale, 1e-300)


# ---------------------------------------------------------------------------
# 회전 생성자
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RotationGenerator:
    """T_{κτ}^{αβ,μν} → 배열 [κ, τ, α, β, μ, ν]"""
    tensor: np.ndarray

    def antisymmetry_defects(self) -> Dict[str, float]:
        t = self.tensor
        return {
            "kappa_tau": float(np.max(np.abs(t + t.transpose(1, 0, 2, 3, 4, 5)))),
            "alpha_beta": float(np.max(np.abs(t + t.transpose(0, 1, 3, 2, 4, 5)))),
            "mu_nu": float(np.max(np.abs(t + t.transpose(0, 1, 2, 3, 5, 4)))),
        }

    def apply(self, omega: np.ndarray, f: AntisymTensor) -> AntisymTensor:
        """δF^{αβ} = ½ ω^{κτ} T_{κτ}^{αβ,μν} F_{μν}

        Raises:
            ValueError: ω 가 반대칭이 아닐 때
        """
        omega = np.asarray(omega, dtype=np.float64)
        if omega.shape != (4, 4) or np.max(np.abs(omega + omega.T)) > 0.0:
            raise ValueError("Rotation parameters ω^{κτ} must form an antisymmetric 4×4 array")
        delta = 0.5 * np.einsum("kt,ktabmn,mn->ab", omega, self.tensor, f.lowered)
        return AntisymTensor(delta)


def rotation_generator() -> RotationGenerator:
    """T_{κτ}^{αβ,μν} = ½g^{αμ}(δ^β_κ δ^ν_τ - δ^β_τ δ^ν_κ) + ½g^{βμ}(δ^ν_κ δ^α_τ - δ^ν_τ δ^α_κ)
                      + ½g^{αν}(δ^μ_κ δ^β_τ - δ^μ_τ δ^β_κ) + ½g^{βν}(δ^α_κ δ^μ_τ - δ^α_τ δ^μ_κ)
    """
    g = METRIC
    d = np.eye(4)
    t = 0.5 * (
        np.einsum("am,bk,nt->ktabmn", g, d, d) - np.einsum("am,bt,nk->ktabmn", g, d, d)
        + np.einsum("bm,nk,at->ktabmn", g, d, d) - np.einsum("bm,nt,ak->ktabmn", g, d, d)
        + np.einsum("an,mk,bt->ktabmn", g, d, d) - np.einsum("an,mt,bk->ktabmn", g, d, d)
        + np.einsum("bn,ak,mt->ktabmn", g, d, d) - np.einsum("bn,at,mk->ktabmn", g, d, d)
    )
    return RotationGenerator(t)


def finite_rotation(omega: np.ndarray, f: AntisymTensor) -> AntisymTensor:
    """ΛFΛ^T - F, Λ = exp(ω g)"""
    lam = expm(np.asarray(omega, dtype=np.float64) @ METRIC)
    return AntisymTensor(lam @ f.components @ lam.T - f.components)


# ---------------------------------------------------------------------------
# 스핀 텐서와 스핀 벡터
# ---------------------------------------------------------------------------

def _spin_pairs(terms: _Terms) -> np.ndarray:
    """상자 적분 전 J_{κτ} 쌍 계수 [k, l, κ, τ]

    평면파 항은 C ∝ κ∧u 이므로 순환 항은 항등적으로 0 이고,
    남는 기여는 모두 ∂_μF^{μν} 에 비례한다.
    """
    d = _derivatives(terms)
    div_up = d.div
    div_low = div_up @ METRIC
    mixed = np.einsum("kmr,rc->kmc", d.up, METRIC)   # F^μ_κ
    kappa = terms.kappa
    cyclic = 1j * (
        kappa[:, 0, None, None] * d.low
        + np.einsum("kt,km->ktm", d.low[:, 0, :], kappa)
        + np.einsum("kt,km->ktm", kappa, d.low[:, :, 0])
    )                                                  # ∂_0F_{τμ} + ∂_μF_{0τ} + ∂_τF_{μ0}

    df = np.einsum("kn,lnt->klt", div_up, d.low)
    e0 = np.zeros(4)
    e0[0] = 1.0
    part1 = np.einsum("c,klt->klct", e0, df) - np.einsum("t,klc->klct", e0, df)
    part2 = -np.einsum("kc,lt->klct", div_low, d.low[:, 0, :]) + np.einsum("kt,lc->klct", div_low, d.low[:, 0, :])
    part3 = np.einsum("kmc,ltm->klct", mixed, cyclic) - np.einsum("kmt,lcm->klct", mixed, cyclic)
    return part1 + part2 + part3


def spin_tensor(cfg: FieldConfig, t: float = 0.0) -> AntisymTensor:
    """상자 적분한 J^{κτ} (위첨자, 실수 반대칭 4×4)
    """
    terms = _expand(cfg)
    if terms.size == 0:
        return AntisymTensor.zero()
    weights = _box_weights(cfg, terms, t)
    j_low = np.einsum("kl,klct->ct", weights, _spin_pairs(terms))
    j_up = METRIC @ np.real(j_low) @ METRIC
    return AntisymTensor(j_up * _rescale(cfg))


def spin_vector(j: AntisymTensor) -> np.ndarray:
    """J^k = ½ ε^{ijk} J^{ij}"""
    return np.real(0.5 * np.einsum("ijk,ij->k", epsilon_3d(), j.components[1:, 1:]))


def spin_vector_strengths(cfg: FieldConfig, t: float = 0.0) -> np.ndarray:
    """J^k = ε^{ijk} ∫ [F^{0i}(∂_μF^{μj}) + F_μ^j(∂^0F^{μi} + ∂^μF^{i0} + ∂^iF^{0μ})]"""
    terms = _expand(cfg)
    if terms.size == 0:
        return np.zeros(3)
    d = _derivatives(terms)
    div_up = d.div
    lowered_first = np.einsum("am,kmj->kaj", METRIC, d.up)   # F_μ^j
    # bracket[k, μ, i] = ∂^0F^{μi} + ∂^μF^{i0} + ∂^iF^{0μ}
    bracket = d.d_up[:, 0, :, :] + d.d_up[:, :, :, 0] + d.d_up[:, :, 0, :].transpose(0, 2, 1)
    first = np.einsum("ki,lj->klij", d.up[:, 0, :], div_up)
    second = np.einsum("kmj,lmi->klij", lowered_first, bracket)
    weights = _box_weights(cfg, terms, t)
    total = np.einsum("kl,klij->ij", weights, first + second)[1:, 1:]
    return np.real(np.einsum("ijk,ij->k", epsilon_3d(), total)) * _rescale(cfg)


def e_cross_a_spin(cfg: FieldConfig, t: float = 0.0) -> np.ndarray:
    """(m/2) ∫ E × A d³x, E^i = F^{i0}"""
    terms = _expand(cfg)
    if terms.size == 0:
        return np.zeros(3)
    electric = terms.field[:, 1:, 0]
    vector = terms.potential[:, 1:]
    weights = _box_weights(cfg, terms, t)
    cross = np.einsum("abc,ka,lb->klc", epsilon_3d(), electric, vector)
    return np.real(0.5 * cfg.m * np.einsum("kl,klc->c", weights, cross)) * _rescale(cfg)


def potential_spin_bilinear(cfg: Optional[FieldConfig], t: float = 0.0) -> np.ndarray:
    """ε^{ijk} ∫ A^j (∂^0 A^i - ∂^i A^0) d³x"""
    if cfg is None:
        return np.zeros(3)
    terms = _expand(cfg)
    if terms.size == 0:
        return np.zeros(3)
    a = terms.potential
    kappa = terms.kappa
    # ∂^0 = ∂_0 → iκ_0,  ∂^i = -∂_i → -iκ_i
    grad = 1j * kappa[:, 0, None] * a[:, 1:] + 1j * kappa[:, 1:] * a[:, 0, None]   # [l, i]
    weights = _box_weights(cfg, terms, t)
    total = np.einsum("kl,kj,li->ij", weights, a[:, 1:], grad)
    return np.real(np.einsum("ijk,ij->k", epsilon_3d(), total))


def spin_vector_potentials(
    a_cfg: FieldConfig,
    b_cfg: Optional[FieldConfig] = None,
    t: float = 0.0,
) -> np.ndarray:
    """J^k = ¼ ε^{ijk} ∫ [B^j(∂^0B^i - ∂^iB^0) - A^j(∂^0A^i - ∂^iA^0)]

    b_cfg 가 None 이면 B = 0. B = ±A 이면 정확히 0.
    """
    return 0.25 * (potential_spin_bilinear(b_cfg, t) - potential_spin_bilinear(a_cfg, t))


# ---------------------------------------------------------------------------
# Pauli-Lubanski
# ---------------------------------------------------------------------------

def pauli_lubanski_vector(j: AntisymTensor, p: Sequence[complex]) -> np.ndarray:
    """W_μ = -½ ε_{μκτν} J^{κτ} P^ν (아래첨자)"""
    p = as_four_vector(p)
    return np.real(-0.5 * np.einsum("aktn,kt,n->a", epsilon_lower(), j.components, p))


def pauli_lubanski(j: AntisymTensor, p: Sequence[complex], n: Sequence[complex]) -> float:
    """W·n = W_μ n^μ

    Raises:
        ValueError: n 이 공간꼴 정규화(n·n = -1)가 아닐 때
    """
    n = as_four_vector(n)
    norm = minkowski_dot(n, n)
    if abs(norm + 1.0) > SPACELIKE_TOL:
        raise ValueError(f"n must satisfy n·n = -1, got {norm.real:.6g}")
    return float(np.real(pauli_lubanski_vector(j, p) @ n))


def helicity_from_pauli_lubanski(j: AntisymTensor, p: Sequence[float], m: float) -> float:
    """-(W·n)/E_p, n = (0, p̂); J·p̂ 와 같다"""
    p = as_three_vector(p)
    norm = float(np.linalg.norm(p))
    if norm == 0.0:
        raise ValueError("Helicity needs a non-zero momentum")
    n = np.concatenate([[0.0], p / norm])
    return -pauli_lubanski(j, four_momentum(p, m), n) / energy(p, m)


# ---------------------------------------------------------------------------
# 모드 계수 (양자화 전)
# ---------------------------------------------------------------------------

BILINEAR_KINDS = ("a_bdag", "bdag_a")


def _pairing_signs(mode: Mode) -> Tuple[float, float]:
    """(s_σ, t_σ): E^(-)(-σ) = s_σ E^(+)(σ), u(-σ) = t_σ u^c(σ)"""
    if mode is Mode.ZERO:
        return -1.0, 1.0
    return 1.0, -1.0


@dataclass
class SpinReport:
    """J^k 의 모드 쌍 계수

    coefficients[(kind, σ, σ')]:
      'a_bdag': (m/2) E^(+)(σ) × u^c(σ')  → a(σ) b†(σ')
      'bdag_a': (m/2) E^(-)(σ) × u(σ')    → b†(σ) a(σ')
    측도 1/((2π)³ 4E²) 는 기록만 하고 계수에 곱하지 않는다.
    """
    p: np.ndarray
    m: float
    scheme: NormalizationScheme
    frame: str
    energy: float
    coefficients: Dict[Tuple[str, Mode, Mode], np.ndarray]
    prefactor: float
    measure: float

    def coefficient(self, kind: str, s1: Union[Mode, int, str], s2: Union[Mode, int, str]) -> np.ndarray:
        return self.coefficients[(kind, Mode.parse(s1), Mode.parse(s2))]

    def pairing_residual(self) -> float:
        """max |bdag_a(-σ,-σ') - s_σ t_σ' a_bdag(σ,σ')| / max|계수|"""
        worst = 0.0
        for s1 in SPATIAL_MODES:
            for s2 in SPATIAL_MODES:
                s, _ = _pairing_signs(s1)
                _, t = _pairing_signs(s2)
                lhs = self.coefficient("bdag_a", s1.flipped, s2.flipped)
                rhs = s * t * self.coefficient("a_bdag", s1, s2)
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        return worst / self.scale

    @property
    def scale(self) -> float:
        return max(max(float(np.max(np.abs(v))) for v in self.coefficients.values()), 1e-300)

    def reference_vectors(self) -> Dict[Tuple[str, Mode, Mode], np.ndarray]:
        """p1 = p2 = 0 좌표계의 기대 벡터 (N²/4 배)

        Raises:
            ValueError: 특수 좌표계가 아닐 때
        """
        if self.frame != "special":
            raise ValueError("Reference vectors exist only in the p1 = p2 = 0 frame")
        e, m, k = self.energy, self.m, self.prefactor
        mix = e / (m * SQRT2)
        return {
            ("a_bdag", Mode.PLUS, Mode.PLUS): k * np.array([0, 0, e], dtype=np.complex128),
            ("a_bdag", Mode.MINUS, Mode.MINUS): -k * np.array([0, 0, e], dtype=np.complex128),
            ("a_bdag", Mode.PLUS, Mode.ZERO): k * mix * np.array([e, 1j * e, 0]),
            ("a_bdag", Mode.MINUS, Mode.ZERO): k * mix * np.array([e, -1j * e, 0]),
            ("a_bdag", Mode.ZERO, Mode.PLUS): k / SQRT2 * np.array([m, -1j * m, 0]),
            ("a_bdag", Mode.ZERO, Mode.MINUS): k / SQRT2 * np.array([m, 1j * m, 0]),
        }

    def reference_residual(self) -> float:
        """기준 벡터 대비 최대 상대 편차"""
        worst = 0.0
        for key, expected in self.reference_vectors().items():
            actual = self.coefficients[key]
            scale = max(float(np.max(np.abs(expected))), 1e-300)
            worst = max(worst, float(np.max(np.abs(actual - expected))) / scale)
        return worst

    def mixing_ratio(self) -> float:
        """|a_bdag(+1,0)| / |a_bdag(0,+1)| (특수 좌표계에서 (E/m)²)"""
        big = np.linalg.norm(self.coefficient("a_bdag", Mode.PLUS, Mode.ZERO))
        small = np.linalg.norm(self.coefficient("a_bdag", Mode.ZERO, Mode.PLUS))
        return float(big / small)

    def to_dict(self) -> Dict:
        return {
            "p": [float(x) for x in self.p],
            "m": self.m,
            "scheme": self.scheme.name,
            "frame": self.frame,
            "energy": self.energy,
            "prefactor": self.prefactor,
            "measure": self.measure,
            "coefficients": [
                {
                    "kind": kind,
                    "sigma": s1.value,
                    "sigma_prime": s2.value,
                    "vector": [[float(c.real), float(c.imag)] for c in vec],
                }
                for (kind, s1, s2), vec in self.coefficients.items()
            ],
        }


def spin_mode_coefficients(
    p: Sequence[float],
    m: float,
    scheme: NormalizationScheme,
    frame_check: bool = False,
) -> SpinReport:
    """J^k = (m/2)∫E × A 를 모드 진폭 쌍선형으로 전개한 계수

    동역학 방정식 [∂_μF^{μj}]^(+) = -(m/2)u^j, [∂_μF̃^{μj}]^± = 0 을 쓰면
    순환 괄호가 사라지고 E × A 형태만 남는다.

    Raises:
        ValueError: m <= 0, 또는 frame_check 인데 p1, p2 ≠ 0
    """
    require_mass(m)
    p = as_three_vector(p)
    special = p[0] == 0.0 and p[1] == 0.0
    if frame_check and not special:
        raise ValueError(f"Frame check requires p1 = p2 = 0, got p = {p.tolist()}")

    coefficients: Dict[Tuple[str, Mode, Mode], np.ndarray] = {}
    for s1 in SPATIAL_MODES:
        e_plus = strengths_from_potential(p, m, s1, scheme, "+").electric
        e_minus = strengths_from_potential(p, m, s1, scheme, "-").electric
        for s2 in SPATIAL_MODES:
            u = mode_vector(p, m, s2, scheme).u[1:]
            coefficients[("a_bdag", s1, s2)] = 0.5 * m * np.cross(e_plus, np.conj(u))
            coefficients[("bdag_a", s1, s2)] = 0.5 * m * np.cross(e_minus, u)

    n = scheme.factor(m)
    e = energy(p, m)
    report = SpinReport(
        p=p,
        m=float(m),
        scheme=scheme,
        frame="special" if special else "general",
        energy=e,
        coefficients=coefficients,
        prefactor=n * n / 4.0,
        measure=1.0 / (TWO_PI ** 3 * 4.0 * e * e),
    )
    logger.debug(f"Spin coefficients at p={p.tolist()}, m={m}: frame={report.frame}")
    return report


def random_on_shell_config(
    rng: np.random.Generator,
    m: float,
    scheme: NormalizationScheme,
    n_modes: int = 3,
    max_label: int = 2,
) -> FieldConfig:
    """무작위 실수 on-shell 배치 (서로 다른 0 아닌 격자 라벨)"""
    seen = set()
    modes: List[FieldMode] = []
    while len(modes) < n_modes:
        n = tuple(int(v) for v in rng.integers(-max_label, max_label + 1, size=3))
        if n == (0, 0, 0) or n in seen:
            continue
        seen.add(n)
        mode = SPATIAL_MODES[int(rng.integers(0, 3))]
        a = complex(rng.normal(), rng.normal())
        modes.append(FieldMode(n, mode, a))
    return FieldConfig(tuple(modes), m, scheme)


def lorentz_constrained_config(
    rng: np.random.Generator,
    m: float,
    scheme: NormalizationScheme,
    n_modes: int = 3,
    max_label: int = 2,
) -> FieldConfig:
    """∂_μF^{μν} = 0 을 만족하는 무작위 실수 배치

    z 축 격자 라벨의 원편광(σ = ±1) 모드에 빛꼴 진동수 E = |p| 를 준다.
    u⁰ = 0 이라 κ·u = 0, κ² = 0 이므로 iκ_μ(κ^μu^ν - u^μκ^ν) = 0.

    Raises:
        ValueError: n_modes 가 가능한 라벨 수(2·max_label)보다 클 때
    """
    labels = [k for k in range(-max_label, max_label + 1) if k != 0]
    if not 1 <= n_modes <= len(labels):
        raise ValueError(f"n_modes must be in [1, {len(labels)}], got {n_modes}")
    chosen = rng.choice(labels, size=n_modes, replace=False)
    box = 1.0
    modes: List[FieldMode] = []
    for k in chosen:
        mode = (Mode.PLUS, Mode.MINUS)[int(rng.integers(0, 2))]
        a = complex(rng.normal(), rng.normal())
        modes.append(FieldMode((0, 0, int(k)), mode, a, energy=TWO_PI * abs(int(k)) / box))
    return FieldConfig(tuple(modes), m, scheme, box=box)
