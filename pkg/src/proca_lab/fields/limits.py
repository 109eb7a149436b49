"""질량 0 극한 분석

고정된 p 에서 m_k = m0·ratio^k 로 질량을 줄여가며 양을 평가하고,
log|v| 대 log m 을 꼬리 구간에서 최소제곱 적합해 선행 거듭제곱을 분류한다.
1/m 이 들어간 식에 m = 0 을 대입하지 않는다.
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence

import numpy as np

from proca_lab.fields.minkowski import as_three_vector
from proca_lab.fields.polarization import Mode, NormalizationScheme, mode_vector
from proca_lab.fields.strengths import strengths_from_potential
from proca_lab.utils.logger import get_logger

logger = get_logger(__name__)

# 분류 임계값 (닫힌 형태의 선행 거듭제곱은 정수)
FINITE_BAND = 0.05
LINEAR_BAND = (0.95, 1.05)

DEFAULT_RATIO = 0.25
DEFAULT_COUNT = 16
DEFAULT_FIT_POINTS = 6

# 적합 잔차 경고 기준
FIT_WARNING = 1e-6

QUANTITY_PATTERN = re.compile(r"^(u|B[+-]|E[+-])\((\+1|-1|0t|0)\)$")


class LimitEvaluationError(RuntimeError):
    """극한 평가 중 유한하지 않은 값"""

    def __init__(self, quantity: str, mass: float, detail: str = ""):
        self.quantity = quantity
        self.mass = mass
        message = f"Quantity {quantity} is not finite at m={mass:.3e}"
        super().__init__(f"{message}: {detail}" if detail else message)


class LimitClass(Enum):
    FINITE = "Finite"
    VANISHES_LINEARLY = "VanishesLinearly"
    VANISHES_HIGHER_ORDER = "VanishesHigherOrder"
    DIVERGES = "Diverges"
    IDENTICALLY_ZERO = "IdenticallyZero"
    UNCLASSIFIED = "Unclassified"


def classify_exponent(exponent: float) -> LimitClass:
    if abs(exponent) < FINITE_BAND:
        return LimitClass.FINITE
    if LINEAR_BAND[0] <= exponent <= LINEAR_BAND[1]:
        return LimitClass.VANISHES_LINEARLY
    if exponent > LINEAR_BAND[1]:
        return LimitClass.VANISHES_HIGHER_ORDER
    if exponent < -FINITE_BAND:
        return LimitClass.DIVERGES
    return LimitClass.UNCLASSIFIED


@dataclass
class ComponentLimit:
    """한 성분(또는 전체 노름)의 적합 결과"""
    component: str
    exponent: float
    fit_residual: float
    classification: LimitClass
    limit_value: complex = 0j

    def to_dict(self) -> Dict:
        return {
            "component": self.component,
            "exponent": self.exponent,
            "fit_residual": self.fit_residual,
            "classification": self.classification.value,
            "limit": [self.limit_value.real, self.limit_value.imag],
        }


@dataclass
class LimitReport:
    """스윕 결과: 성분별 분류와 전체 노름 분류"""
    quantity: str
    scheme: str
    p: np.ndarray
    variable: str
    parameters: np.ndarray
    values: np.ndarray
    components: List[ComponentLimit]
    overall: ComponentLimit
    order: Optional[str] = None

    def component(self, label: str) -> ComponentLimit:
        for comp in self.components:
            if comp.component == label:
                return comp
        raise KeyError(label)

    @property
    def limit_vector(self) -> np.ndarray:
        return np.array([c.limit_value for c in self.components], dtype=np.complex128)

    def rows(self) -> List[tuple]:
        """CSV 행: quantity, scheme, component, m, value_re, value_im, fitted_exponent, classification"""
        out = []
        for idx, comp in enumerate(self.components):
            for param, value in zip(self.parameters, self.values[:, idx]):
                out.append((
                    self.quantity, self.scheme, comp.component, float(param),
                    float(value.real), float(value.imag), comp.exponent, comp.classification.value,
                ))
        return out

    def to_dict(self) -> Dict:
        return {
            "quantity": self.quantity,
            "scheme": self.scheme,
            "p": [float(x) for x in self.p],
            "variable": self.variable,
            "order": self.order,
            "components": [c.to_dict() for c in self.components],
            "overall": self.overall.to_dict(),
        }


def parse_quantity(quantity: str):
    """'u(0)', 'B+(+1)', 'E-(0t)' → (kind, freq, Mode)

    Raises:
        ValueError: 알 수 없는 양 이름
    """
    match = QUANTITY_PATTERN.match(quantity.strip())
    if not match:
        raise ValueError(
            f"Unknown quantity {quantity!r}; expected u(σ), B±(σ) or E±(σ) with σ in +1, 0, -1, 0t"
        )
    head, label = match.groups()
    mode = Mode.parse(label)
    if head == "u":
        return "u", None, mode
    return head[0], head[1], mode


def component_labels(quantity: str) -> List[str]:
    kind, _, _ = parse_quantity(quantity)
    return ["0", "1", "2", "3"] if kind == "u" else ["x", "y", "z"]


def evaluate_quantity(
    quantity: str,
    p: Sequence[float],
    m: float,
    scheme: NormalizationScheme,
) -> np.ndarray:
    """질량 m 에서 양의 성분 배열"""
    kind, freq, mode = parse_quantity(quantity)
    if kind == "u":
        return mode_vector(p, m, mode, scheme).u
    pair = strengths_from_potential(p, m, mode, scheme, freq)
    return pair.electric if kind == "E" else pair.magnetic


def mass_sequence(m0: float, ratio: float, count: int) -> np.ndarray:
    """m_k = m0·ratio^k

    Raises:
        ValueError: m0 <= 0, ratio ∉ (0,1), count < 6
    """
    if not m0 > 0:
        raise ValueError(f"m0 must be > 0, got {m0}")
    if not 0 < ratio < 1:
        raise ValueError(f"ratio must lie in (0, 1), got {ratio}")
    if count < 6:
        raise ValueError(f"count must be >= 6, got {count}")
    return m0 * ratio ** np.arange(count, dtype=np.float64)


def _fit(label: str, params: np.ndarray, values: np.ndarray, fit_points: int) -> ComponentLimit:
    """log|v| = e·log(t) + c 를 마지막 fit_points 개 점에 적합"""
    magnitude = np.abs(values)
    limit_value = complex(values[-1])
    if np.all(magnitude == 0.0):
        return ComponentLimit(label, 0.0, 0.0, LimitClass.IDENTICALLY_ZERO, 0j)

    tail = slice(-min(fit_points, len(params)), None)
    t_tail, v_tail = params[tail], magnitude[tail]
    if np.any(v_tail == 0.0):
        # 꼬리에서 정확히 0이 되는 성분: 정확히 사라짐으로 취급
        logger.warning(f"⚠️ Component {label} hits exact zero inside the fit window")
        return ComponentLimit(label, float("inf"), 0.0, LimitClass.VANISHES_HIGHER_ORDER, 0j)

    x, y = np.log(t_tail), np.log(v_tail)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    classification = classify_exponent(float(slope))
    if residual > FIT_WARNING:
        logger.warning(f"⚠️ Poor power-law fit for {label}: rms={residual:.2e}, exponent={slope:.4f}")
    if classification in (LimitClass.VANISHES_LINEARLY, LimitClass.VANISHES_HIGHER_ORDER):
        limit_value = 0j
    elif classification is LimitClass.DIVERGES:
        limit_value = complex(np.inf, 0.0)
    return ComponentLimit(label, float(slope), residual, classification, limit_value)


def _analyze(
    quantity: str,
    scheme: NormalizationScheme,
    p: np.ndarray,
    variable: str,
    params: np.ndarray,
    values: np.ndarray,
    fit_points: int,
    order: Optional[str] = None,
) -> LimitReport:
    labels = component_labels(quantity)
    components = [_fit(label, params, values[:, i], fit_points) for i, label in enumerate(labels)]
    norms = np.linalg.norm(values, axis=1)
    overall = _fit("norm", params, norms, fit_points)
    return LimitReport(
        quantity=quantity,
        scheme=scheme.name,
        p=p,
        variable=variable,
        parameters=params,
        values=values,
        components=components,
        overall=overall,
        order=order,
    )


def _evaluate_checked(quantity: str, p: np.ndarray, m: float, scheme: NormalizationScheme) -> np.ndarray:
    value = evaluate_quantity(quantity, p, m, scheme)
    if not np.all(np.isfinite(value)):
        logger.error(f"❌ {quantity} non-finite at m={m:.3e}")
        raise LimitEvaluationError(quantity, m, str(value))
    return value


def limit_sweep(
    quantity: str,
    p: Sequence[float],
    scheme: NormalizationScheme,
    m0: Optional[float] = None,
    ratio: float = DEFAULT_RATIO,
    count: int = DEFAULT_COUNT,
    fit_points: int = DEFAULT_FIT_POINTS,
) -> LimitReport:
    """고정 p 에서 m → 0 스윕

    Args:
        quantity: 'u(0)', 'B+(+1)' 등
        p: 3-운동량
        scheme: 정규화 방식
        m0: 시작 질량 (None 이면 |p|)
        ratio: 기하 비율 (0 < ratio < 1)
        count: 점 개수 (>= 6)
        fit_points: 적합에 쓰는 꼬리 점 개수

    Raises:
        ValueError: 잘못된 수열 또는 양 이름
        LimitEvaluationError: 유한하지 않은 값
    """
    parse_quantity(quantity)
    p = as_three_vector(p)
    if m0 is None:
        m0 = float(np.linalg.norm(p))
        if m0 == 0.0:
            raise ValueError("m0 defaults to |p|, which is zero; pass m0 explicitly")
    masses = mass_sequence(m0, ratio, count)
    values = np.array([_evaluate_checked(quantity, p, m, scheme) for m in masses])
    report = _analyze(quantity, scheme, p, "m", masses, values, fit_points)
    logger.info(
        f"{quantity} [{scheme.name}] m→0: {report.overall.classification.value} "
        f"(exponent {report.overall.exponent:.4f})"
    )
    return report


def _inner_limit(
    quantity: str,
    scheme: NormalizationScheme,
    p: np.ndarray,
    variable: str,
    params: np.ndarray,
    values: np.ndarray,
    fit_points: int,
) -> np.ndarray:
    inner = _analyze(quantity, scheme, p, variable, params, values, fit_points)
    for comp in inner.components:
        if comp.classification is LimitClass.DIVERGES:
            raise LimitEvaluationError(
                quantity, float(params[-1]), f"inner {variable} limit diverges in component {comp.component}"
            )
    return inner.limit_vector


def _strictly_decreasing(name: str, seq: np.ndarray) -> None:
    if seq.ndim != 1 or len(seq) < 2:
        raise ValueError(f"{name} needs at least two values")
    if np.any(seq <= 0) or np.any(np.diff(seq) >= 0):
        raise ValueError(f"{name} must be positive and strictly decreasing towards 0")


def zero_momentum_chain(
    quantity: str,
    scheme: NormalizationScheme,
    masses: Sequence[float],
    momenta: Sequence[Sequence[float]],
    order: str = "mass_first",
    fit_points: int = DEFAULT_FIT_POINTS,
) -> LimitReport:
    """반복 극한

    order='mass_first': 각 p_j 에서 m → 0 극한값을 구한 뒤 |p| → 0 거동을 분류.
    order='momentum_first': 각 m_k 에서 p → 0 극한값을 구한 뒤 m → 0 거동을 분류.
    momenta 는 한 방향을 따라 크기가 줄어드는 3-벡터 열.

    Raises:
        ValueError: 수열이 양수가 아니거나 엄격히 감소하지 않을 때
        LimitEvaluationError: 안쪽 극한이 발산할 때
    """
    parse_quantity(quantity)
    masses = np.asarray(masses, dtype=np.float64)
    momenta = np.asarray(momenta, dtype=np.float64)
    if momenta.ndim != 2 or momenta.shape[1] != 3:
        raise ValueError(f"momenta must be a sequence of 3-vectors, got shape {momenta.shape}")
    scales = np.linalg.norm(momenta, axis=1)
    _strictly_decreasing("mass sequence", masses)
    _strictly_decreasing("momentum sequence", scales)

    if order not in ("mass_first", "momentum_first"):
        raise ValueError(f"order must be 'mass_first' or 'momentum_first', got {order!r}")

    limits = []
    if order == "mass_first":
        for q in momenta:
            inner_values = np.array([_evaluate_checked(quantity, q, m, scheme) for m in masses])
            limits.append(_inner_limit(quantity, scheme, q, "m", masses, inner_values, fit_points))
        outer_params, variable = scales, "|p|"
    else:
        for m in masses:
            inner_values = np.array([_evaluate_checked(quantity, q, m, scheme) for q in momenta])
            limits.append(_inner_limit(quantity, scheme, momenta[-1], "|p|", scales, inner_values, fit_points))
        outer_params, variable = masses, "m"

    values = np.array(limits)
    report = _analyze(quantity, scheme, momenta[-1], variable, outer_params, values, fit_points, order)
    logger.info(f"{quantity} [{scheme.name}] {order}: {report.overall.classification.value}")
    return report


def scheme_exponent_offset(
    quantity: str,
    p: Sequence[float],
    m0: Optional[float] = None,
    ratio: float = DEFAULT_RATIO,
    count: int = DEFAULT_COUNT,
) -> float:
    """(Unit 지수) - (Mass 지수), 기대값 -1"""
    unit = limit_sweep(quantity, p, NormalizationScheme.unit(), m0, ratio, count)
    mass = limit_sweep(quantity, p, NormalizationScheme.mass(), m0, ratio, count)
    return unit.overall.exponent - mass.overall.exponent


@dataclass
class SweepBatch:
    """여러 양 × 여러 방식의 스윕 결과 (입력 순서 유지)"""
    reports: List[LimitReport] = field(default_factory=list)

    def rows(self) -> List[tuple]:
        out = []
        for report in self.reports:
            out.extend(report.rows())
        return out


def run_sweeps(
    quantities: Sequence[str],
    p: Sequence[float],
    schemes: Sequence[NormalizationScheme],
    m0: Optional[float] = None,
    ratio: float = DEFAULT_RATIO,
    count: int = DEFAULT_COUNT,
    fit_points: int = DEFAULT_FIT_POINTS,
) -> SweepBatch:
    if not quantities:
        raise ValueError("At least one quantity is required")
    batch = SweepBatch()
    for quantity in quantities:
        for scheme in schemes:
            batch.reports.append(limit_sweep(quantity, p, scheme, m0, ratio, count, fit_points))
    return batch
