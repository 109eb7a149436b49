"""절단된 Fock 공간

유한 운동량 집합 × 세 개의 정준 슬롯(운동량당)으로 점유수 기저를 만들고,
교환 관계 방식(CommutatorScheme)별 사다리 연산자, 정규 순서화한 스핀 연산자,
헬리시티 고유값을 계산한다.

교환 관계 방식:
  delta-cross  [a(σ), a†(σ')] = V⁻¹ δ_{σ,-σ'}
  mass-scaled  [a(σ), a†(σ')] = (E/m²) δ_{σσ'}
  standard-2e  [a(σ), a†(σ')] = 2E δ_{σσ'}

delta-cross 는 양의 계량으로 실현되지 않으므로 정준 보손 d_e, d_0, d_o 위에서
  a(±1) = √c (d_e ± d_o)/√2,  a(0) = √c d_0
로 놓고 계량 η = (-1)^{n_o}, a† = η a^H η 로 정의한다 (부정 계량 공간).
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from scipy.linalg import eig, eigh

from proca_lab.fields.minkowski import as_three_vector, energy
from proca_lab.fields.noether import SpinReport, spin_mode_coefficients
from proca_lab.fields.polarization import SPATIAL_MODES, Mode, NormalizationScheme, require_mass
from proca_lab.utils.logger import get_logger

logger = get_logger(__name__)

# 고유값 묶음 허용치 (상대)
CLUSTER_TOL = 1e-9
HERMITICITY_TOL = 1e-12

SLOTS_PER_MOMENTUM = 3


class CommutatorVariant(Enum):
    DELTA_CROSS = "delta-cross"
    MASS_SCALED = "mass-scaled"
    STANDARD_2E = "standard-2e"


@dataclass(frozen=True)
class CommutatorScheme:
    """교환 관계 방식

    Args:
        variant: 방식 종류
        majorana: b† = i·a† 동일시 (False 면 b† = a†, 앞의 -i 가 남아 반-에르미트)
        absorb_phase: i 를 앞 계수에 흡수 (고유값 불변)
        volume: 상자 부피 V
    """
    variant: CommutatorVariant
    majorana: bool = True
    absorb_phase: bool = False
    volume: float = 1.0

    def __post_init__(self) -> None:
        if not self.volume > 0:
            raise ValueError(f"Box volume must be > 0, got {self.volume}")

    @classmethod
    def parse(cls, name: Union[str, "CommutatorScheme"], **options) -> "CommutatorScheme":
        if isinstance(name, CommutatorScheme):
            return replace(name, **options) if options else name
        text = str(name).strip().lower().replace("_", "-")
        for variant in CommutatorVariant:
            if variant.value == text:
                return cls(variant, **options)
        choices = ", ".join(v.value for v in CommutatorVariant)
        raise ValueError(f"Unknown commutator scheme {name!r} (choose from {choices})")

    @property
    def name(self) -> str:
        return self.variant.value

    @property
    def indefinite(self) -> bool:
        return self.variant is CommutatorVariant.DELTA_CROSS

    def constant(self, p: Sequence[float], m: float) -> float:
        """교환자 상수 (항상 > 0)"""
        require_mass(m)
        if self.variant is CommutatorVariant.DELTA_CROSS:
            return 1.0 / self.volume
        e = energy(p, m)
        if self.variant is CommutatorVariant.MASS_SCALED:
            return e / (m * m)
        return 2.0 * e

    def pairs(self, s1: Mode, s2: Mode) -> bool:
        """[a(s1), a†(s2)] 가 0 이 아닌 조합인지"""
        return s2 is (s1.flipped if self.indefinite else s1)

    def slot_labels(self) -> Tuple[str, str, str]:
        return ("e", "0", "o") if self.indefinite else ("+1", "0", "-1")


@dataclass(frozen=True)
class FockBasis:
    """점유수 기저 (총 점유수 ≤ n_max)"""
    momenta: Tuple[Tuple[float, float, float], ...]
    n_max: int
    m: float
    states: Tuple[Tuple[int, ...], ...]
    index: Dict[Tuple[int, ...], int] = field(repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.states)

    @property
    def n_slots(self) -> int:
        return SLOTS_PER_MOMENTUM * len(self.momenta)

    def slot(self, momentum_index: int, position: int) -> int:
        return SLOTS_PER_MOMENTUM * momentum_index + position

    def momentum_index(self, p: Sequence[float]) -> int:
        target = tuple(float(x) for x in as_three_vector(p))
        for i, q in enumerate(self.momenta):
            if np.allclose(q, target, rtol=0.0, atol=1e-12):
                return i
        raise ValueError(f"Momentum {list(target)} is not part of the basis")

    @property
    def totals(self) -> np.ndarray:
        return np.array([sum(s) for s in self.states], dtype=int)

    @property
    def vacuum(self) -> int:
        return self.index[(0,) * self.n_slots]

    def one_particle(self, momentum_index: int) -> List[int]:
        """주어진 운동량의 일입자 상태 색인 (슬롯 순서)"""
        out = []
        for pos in range(SLOTS_PER_MOMENTUM):
            occ = [0] * self.n_slots
            occ[self.slot(momentum_index, pos)] = 1
            out.append(self.index[tuple(occ)])
        return out


def _occupations(n_slots: int, n_max: int) -> List[Tuple[int, ...]]:
    if n_slots == 0:
        return [()]
    out = []
    for first in range(n_max + 1):
        for rest in _occupations(n_slots - 1, n_max - first):
            out.append((first,) + rest)
    return out


def build_modes(momenta: Sequence[Sequence[float]], n_max: int = 2, m: float = 1.0) -> FockBasis:
    """점유수 기저 생성

    Args:
        momenta: 서로 다른 운동량 목록
        n_max: 총 점유수 상한 (≥ 1)
        m: 질량

    Raises:
        ValueError: 중복 운동량, 빈 목록, n_max < 1, m <= 0
    """
    require_mass(m)
    if int(n_max) != n_max or n_max < 1:
        raise ValueError(f"n_max must be an integer >= 1, got {n_max}")
    keys = [tuple(float(x) for x in as_three_vector(p)) for p in momenta]
    if not keys:
        raise ValueError("At least one momentum is required")
    if len(set(keys)) != len(keys):
        raise ValueError(f"Duplicate momenta in {keys}")

    states = sorted(
        _occupations(SLOTS_PER_MOMENTUM * len(keys), int(n_max)),
        key=lambda s: (sum(s), [-x for x in s]),
    )
    basis = FockBasis(tuple(keys), int(n_max), float(m), tuple(states), {s: i for i, s in enumerate(states)})
    logger.debug(f"Fock basis: {len(keys)} momenta, n_max={n_max}, dim={basis.dim}")
    return basis


def canonical_annihilator(basis: FockBasis, slot: int) -> sp.csr_matrix:
    """d_slot: |n⟩ → √n |n-1⟩"""
    rows, cols, data = [], [], []
    for col, state in enumerate(basis.states):
        n = state[slot]
        if n == 0:
            continue
        target = list(state)
        target[slot] -= 1
        rows.append(basis.index[tuple(target)])
        cols.append(col)
        data.append(np.sqrt(n))
    return sp.csr_matrix((data, (rows, cols)), shape=(basis.dim, basis.dim), dtype=np.complex128)


@dataclass(frozen=True)
class FockOperator:
    """기저 위의 희소 연산자와 계량"""
    matrix: sp.csr_matrix
    basis: FockBasis
    metric: sp.csr_matrix

    def pseudo_adjoint(self) -> sp.csr_matrix:
        """η A^H η (양의 계량이면 A^H)"""
        return (self.metric @ self.matrix.conj().T @ self.metric).tocsr()

    def hermiticity_defect(self) -> float:
        diff = self.pseudo_adjoint() - self.matrix
        scale = max(float(abs(self.matrix).max()) if self.matrix.nnz else 0.0, 1.0)
        return (float(abs(diff).max()) if diff.nnz else 0.0) / scale

    def vacuum_residual(self) -> float:
        """‖J|0⟩‖"""
        return float(np.linalg.norm(self.matrix[:, self.basis.vacuum].toarray()))

    def sector_leakage(self) -> float:
        """점유수 섹터 사이 행렬 원소 최대값 (블록 대각이면 0)"""
        coo = self.matrix.tocoo()
        totals = self.basis.totals
        mask = totals[coo.row] != totals[coo.col]
        return float(np.max(np.abs(coo.data[mask]))) if np.any(mask) else 0.0

    def block(self, indices: Sequence[int]) -> np.ndarray:
        idx = np.asarray(indices)
        return self.matrix[idx][:, idx].toarray()

    def __add__(self, other: "FockOperator") -> "FockOperator":
        return replace(self, matrix=(self.matrix + other.matrix).tocsr())

    def scaled(self, factor: complex) -> "FockOperator":
        return replace(self, matrix=(factor * self.matrix).tocsr())


@dataclass(frozen=True)
class ModeLadders:
    """운동량·편광별 a(p,σ) 와 계량 η"""
    basis: FockBasis
    scheme: CommutatorScheme
    metric: sp.csr_matrix
    annihilators: Dict[Tuple[int, Mode], sp.csr_matrix]

    def a(self, momentum_index: int, mode: Union[Mode, int, str]) -> sp.csr_matrix:
        return self.annihilators[(momentum_index, Mode.parse(mode))]

    def a_dag(self, momentum_index: int, mode: Union[Mode, int, str]) -> sp.csr_matrix:
        return (self.metric @ self.a(momentum_index, mode).conj().T @ self.metric).tocsr()

    def constant(self, momentum_index: int) -> float:
        return self.scheme.constant(self.basis.momenta[momentum_index], self.basis.m)

    def expected_commutator(self, i: int, s1: Mode, j: int, s2: Mode) -> float:
        if i != j or not self.scheme.pairs(s1, s2):
            return 0.0
        return self.constant(i)

    def flipped(self) -> "ModeLadders":
        """σ → -σ 재라벨링"""
        swapped = {(i, s.flipped): op for (i, s), op in self.annihilators.items()}
        return replace(self, annihilators=swapped)

    def operator(self, matrix: sp.spmatrix) -> FockOperator:
        return FockOperator(sp.csr_matrix(matrix), self.basis, self.metric)


def ladders(basis: FockBasis, scheme: CommutatorScheme) -> ModeLadders:
    """방식별 사다리 연산자 구성"""
    dim = basis.dim
    annihilators: Dict[Tuple[int, Mode], sp.csr_matrix] = {}
    odd = np.zeros(dim, dtype=int)

    for i, p in enumerate(basis.momenta):
        d = [canonical_annihilator(basis, basis.slot(i, pos)) for pos in range(SLOTS_PER_MOMENTUM)]
        root = np.sqrt(scheme.constant(p, basis.m))
        if scheme.indefinite:
            d_e, d_0, d_o = d
            annihilators[(i, Mode.PLUS)] = (root / np.sqrt(2.0)) * (d_e + d_o)
            annihilators[(i, Mode.MINUS)] = (root / np.sqrt(2.0)) * (d_e - d_o)
            annihilators[(i, Mode.ZERO)] = root * d_0
            odd += np.array([s[basis.slot(i, 2)] for s in basis.states])
        else:
            for pos, mode in enumerate(SPATIAL_MODES):
                annihilators[(i, mode)] = root * d[pos]

    metric = sp.diags((-1.0) ** odd).tocsr().astype(np.complex128)
    return ModeLadders(basis, scheme, metric, {k: v.tocsr() for k, v in annihilators.items()})


def commutator_closure(lad: ModeLadders) -> float:
    """max |[a_i, a†_j] - 기대 상수·δ| (점유수 < n_max 인 상태에서만)"""
    keep = np.flatnonzero(lad.basis.totals < lad.basis.n_max)
    worst = 0.0
    keys = list(lad.annihilators)
    for i, s1 in keys:
        a = lad.a(i, s1)
        for j, s2 in keys:
            ad = lad.a_dag(j, s2)
            comm = (a @ ad - ad @ a).toarray()[:, keep]
            expected = lad.expected_commutator(i, s1, j, s2) * np.eye(lad.basis.dim)[:, keep]
            worst = max(worst, float(np.max(np.abs(comm - expected))))
    return worst


# ---------------------------------------------------------------------------
# 스핀 연산자
# ---------------------------------------------------------------------------

def _phase_and_prefactor(scheme: CommutatorScheme) -> Tuple[complex, complex]:
    """(b† = phase·a† 의 phase, 전체 앞 계수)"""
    phase = 1j if scheme.majorana else 1.0
    prefactor = -1j
    if scheme.absorb_phase and scheme.majorana:
        return 1.0, prefactor * phase
    return phase, prefactor


def spin_operator(
    k: int,
    basis: FockBasis,
    scheme: CommutatorScheme,
    lad: Optional[ModeLadders] = None,
) -> FockOperator:
    """J^k = -i Σ_σ Σ_p (p^k/2E) :[a(σ) b†(-σ) + b†(σ) a(-σ)]:, b† = i a†

    정규 순서화 후 (p^k/E) Σ_σ a†(σ) a(-σ) 가 된다 (majorana 일 때).

    Args:
        k: 축 (1, 2, 3)
    """
    if k not in (1, 2, 3):
        raise ValueError(f"Spin axis must be 1, 2 or 3, got {k}")
    lad = lad if lad is not None else ladders(basis, scheme)
    phase, prefactor = _phase_and_prefactor(scheme)
    total = sp.csr_matrix((basis.dim, basis.dim), dtype=np.complex128)
    for i, p in enumerate(basis.momenta):
        weight = p[k - 1] / (2.0 * energy(p, basis.m))
        if weight == 0.0:
            continue
        for sigma in SPATIAL_MODES:
            # :a(σ) b†(-σ): = b†(-σ) a(σ)
            first = lad.a_dag(i, sigma.flipped) @ lad.a(i, sigma)
            second = lad.a_dag(i, sigma) @ lad.a(i, sigma.flipped)
            total = total + (prefactor * phase * weight) * (first + second)
    return lad.operator(total)


def helicity_operator(basis: FockBasis, scheme: CommutatorScheme, p: Sequence[float],
                      lad: Optional[ModeLadders] = None) -> FockOperator:
    """J·p̂"""
    p = as_three_vector(p)
    norm = float(np.linalg.norm(p))
    if norm == 0.0:
        raise ValueError("Helicity needs a non-zero momentum")
    lad = lad if lad is not None else ladders(basis, scheme)
    op = spin_operator(1, basis, scheme, lad).scaled(p[0] / norm)
    for k in (2, 3):
        op = op + spin_operator(k, basis, scheme, lad).scaled(p[k - 1] / norm)
    return op


@dataclass(frozen=True)
class HelicityLevel:
    state: str
    eigenvalue: float
    helicity: float
    raw_helicity: float
    metric_sign: int
    degenerate: bool

    def to_dict(self) -> Dict:
        return {
            "state": self.state,
            "eigenvalue": self.eigenvalue,
            "helicity": self.helicity,
            "raw_helicity": self.raw_helicity,
            "metric_sign": self.metric_sign,
            "degenerate": self.degenerate,
        }


@dataclass(frozen=True)
class HelicitySpectrum:
    scheme: str
    p: Tuple[float, float, float]
    unit: float
    levels: Tuple[HelicityLevel, ...]

    @property
    def helicities(self) -> List[float]:
        return [lv.helicity for lv in self.levels]

    def contains(self, value: float, tol: float = 1e-9) -> bool:
        return any(abs(h - value) <= tol for h in self.helicities)

    @property
    def has_ties(self) -> bool:
        return any(lv.degenerate for lv in self.levels)

    def to_dict(self) -> Dict:
        return {
            "scheme": self.scheme,
            "p": list(self.p),
            "unit": self.unit,
            "levels": [lv.to_dict() for lv in self.levels],
        }


def _label(vector: np.ndarray, names: Sequence[str]) -> str:
    weights = np.abs(vector) ** 2
    weights = weights / max(float(np.sum(weights)), 1e-300)
    parts = [names[i] for i in np.argsort(-weights) if weights[i] > 1e-6]
    return "+".join(parts)


def _clusters(values: np.ndarray, unit: float) -> List[List[int]]:
    order = np.argsort(values)
    scale = max(float(np.max(np.abs(values), initial=0.0)), unit, 1e-300)
    clusters: List[List[int]] = []
    for idx in order:
        if clusters and abs(values[idx] - values[clusters[-1][-1]]) <= CLUSTER_TOL * scale:
            clusters[-1].append(int(idx))
        else:
            clusters.append([int(idx)])
    return clusters


def _is_krein_hermitian(block: np.ndarray, eta: np.ndarray) -> bool:
    """ηJ 가 에르미트인지 (J 가 η-자기수반인지)"""
    weighted = eta[:, None] * block
    scale = max(float(np.max(np.abs(block), initial=0.0)), 1.0)
    return float(np.max(np.abs(weighted - weighted.conj().T), initial=0.0)) <= HERMITICITY_TOL * scale


def _spectrum(block: np.ndarray, eta: np.ndarray, unit: float, names: Sequence[str]) -> List[HelicityLevel]:
    """일입자 블록의 헬리시티 준위

    η J^H η = J 이면 K = ηJ 는 에르미트이므로 eigh 로 분해한다. K 의 고유벡터 w
    (‖w‖ = 1) 에 대해
      helicity     = w^H K w / unit             (K 의 고유값)
      metric_sign  = sign(w^H η w)
      raw_helicity = w^H K w / (w^H η w) / unit  (J 의 Krein 기대값)
    η 가 J 와 가환이면 w 는 J 의 고유벡터이고 raw_helicity 는 J 의 고유값,
    helicity = metric_sign·raw_helicity 이다. 따라서 음의 노름 상태의 부호는
    J 가 아니라 η 에서 온다. delta-cross 일입자 블록은 J = unit·1 이므로
    raw_helicity 는 모두 +1 이고 helicity 는 o 슬롯에서만 -1 이다.

    퇴화 묶음 안에서는 G = W^H η W 를 대각화해 계량 부호가 정해진 기저로 돌린다.
    ηJ 가 에르미트가 아니면 (예: majorana=False 대조군) J 를 eig 로 직접 분해하고
    helicity = metric_sign·raw_helicity 로 둔다.
    """
    krein = _is_krein_hermitian(block, eta)
    if krein:
        values, vectors = eigh(eta[:, None] * block)
    else:
        values, vectors = eig(block)
        if np.max(np.abs(values.imag), initial=0.0) > CLUSTER_TOL * max(unit, 1.0):
            logger.warning(f"⚠️ Complex helicity eigenvalues: max imaginary part {np.max(np.abs(values.imag)):.3e}")
        values = values.real

    levels: List[HelicityLevel] = []
    for cluster in _clusters(values, unit):
        v = vectors[:, cluster]
        gram = v.conj().T @ (eta[:, None] * v)
        norms, rotation = eigh(0.5 * (gram + gram.conj().T))
        combined = v @ rotation
        lam = float(np.mean(values[cluster]))
        tied = len(cluster) > 1
        if tied:
            logger.warning(f"⚠️ Degenerate helicity eigenvalue {lam / unit:+.6g} (multiplicity {len(cluster)})")
        for col, g in enumerate(norms):
            sign = 1 if g >= 0 else -1
            if krein:
                w = combined[:, col] / max(float(np.linalg.norm(combined[:, col])), 1e-300)
                weighted = float(np.real(w.conj() @ (eta * (block @ w))))
                krein_norm = float(np.real(w.conj() @ (eta * w)))
                raw = weighted / krein_norm if abs(krein_norm) > CLUSTER_TOL else weighted
                level = HelicityLevel(_label(w, names), raw, weighted / unit, raw / unit, sign, tied)
            else:
                level = HelicityLevel(_label(combined[:, col], names), lam, sign * lam / unit, lam / unit, sign, tied)
            levels.append(level)
    return levels


def _one_particle_block(op: FockOperator, momentum_index: int, names: Sequence[str]):
    basis = op.basis
    indices = [basis.vacuum] + basis.one_particle(momentum_index)
    eta = np.real(op.metric.diagonal())[indices]
    return op.block(indices), eta, ["vacuum"] + list(names)


def helicity_eigenvalues(
    basis: FockBasis,
    scheme: CommutatorScheme,
    p: Sequence[float],
    lad: Optional[ModeLadders] = None,
) -> HelicitySpectrum:
    """일입자 섹터(+ 진공)에서 J·p̂ 의 고유값

    정규화 단위는 delta-cross 에서 c|p|/E, 나머지에서 κ|p|/E (κ = 교환자 상수).
    helicity 는 ηJ 의 고유값 (계량 부호 가중), raw_helicity 는 J 자체의 값 (_spectrum 참고).
    퇴화는 보고만 하고 깨지 않는다.
    """
    lad = lad if lad is not None else ladders(basis, scheme)
    i = basis.momentum_index(p)
    q = np.asarray(basis.momenta[i])
    unit = lad.constant(i) * float(np.linalg.norm(q)) / energy(q, basis.m)
    op = helicity_operator(basis, scheme, q, lad)
    block, eta, names = _one_particle_block(op, i, scheme.slot_labels())
    levels = _spectrum(block, eta, unit, names)
    logger.debug(f"Helicities [{scheme.name}] at p={q.tolist()}: {[round(lv.helicity, 12) for lv in levels]}")
    return HelicitySpectrum(scheme.name, tuple(float(x) for x in q), unit, tuple(levels))


# ---------------------------------------------------------------------------
# 모드 계수로 만든 스핀 연산자
# ---------------------------------------------------------------------------

def spin_operator_from_coefficients(
    k: int,
    basis: FockBasis,
    scheme: CommutatorScheme,
    normalization: NormalizationScheme,
    lad: Optional[ModeLadders] = None,
) -> FockOperator:
    """J^k = Σ_p Σ_{σσ'} [c_ab†(σ,σ')_k a†(σ') a(σ) + c_b†a(σ,σ')_k a†(σ) a(σ')]

    자기 켤레 장(b† = a†)에서 spin_mode_coefficients 계수를 정규 순서로 배치한다.
    """
    if k not in (1, 2, 3):
        raise ValueError(f"Spin axis must be 1, 2 or 3, got {k}")
    lad = lad if lad is not None else ladders(basis, scheme)
    total = sp.csr_matrix((basis.dim, basis.dim), dtype=np.complex128)
    for i, p in enumerate(basis.momenta):
        report = spin_mode_coefficients(p, basis.m, normalization)
        for s1 in SPATIAL_MODES:
            for s2 in SPATIAL_MODES:
                c_ab = report.coefficient("a_bdag", s1, s2)[k - 1]
                c_ba = report.coefficient("bdag_a", s1, s2)[k - 1]
                if c_ab != 0:
                    total = total + c_ab * (lad.a_dag(i, s2) @ lad.a(i, s1))
                if c_ba != 0:
                    total = total + c_ba * (lad.a_dag(i, s1) @ lad.a(i, s2))
    return lad.operator(total)


def coefficient_unit(report: SpinReport, constant: float) -> float:
    """|(c_ab†(+1,+1) + c_b†a(+1,+1))·p̂| κ"""
    norm = float(np.linalg.norm(report.p))
    if norm == 0.0:
        raise ValueError("Coefficient unit needs a non-zero momentum")
    hat = report.p / norm
    diag = report.coefficient("a_bdag", Mode.PLUS, Mode.PLUS) + report.coefficient("bdag_a", Mode.PLUS, Mode.PLUS)
    return float(abs(diag @ hat)) * constant


def coefficient_helicities(
    basis: FockBasis,
    scheme: CommutatorScheme,
    normalization: NormalizationScheme,
    p: Sequence[float],
) -> HelicitySpectrum:
    """모드 계수 연산자 (J·p̂) 의 일입자 고유값"""
    lad = ladders(basis, scheme)
    i = basis.momentum_index(p)
    q = np.asarray(basis.momenta[i])
    norm = float(np.linalg.norm(q))
    if norm == 0.0:
        raise ValueError("Helicity needs a non-zero momentum")
    op = spin_operator_from_coefficients(1, basis, scheme, normalization, lad).scaled(q[0] / norm)
    for k in (2, 3):
        op = op + spin_operator_from_coefficients(k, basis, scheme, normalization, lad).scaled(q[k - 1] / norm)
    unit = coefficient_unit(spin_mode_coefficients(q, basis.m, normalization), lad.constant(i))
    block, eta, names = _one_particle_block(op, i, scheme.slot_labels())
    return HelicitySpectrum(scheme.name, tuple(float(x) for x in q), unit, tuple(_spectrum(block, eta, unit, names)))
