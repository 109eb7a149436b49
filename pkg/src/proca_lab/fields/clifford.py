"""Weyl 표현 감마 행렬과 R = CP 행렬

γ^0 = [[0, I], [I, 0]], γ^i = [[0, σ_i], [-σ_i, 0]], σ^{μν} = (i/2)[γ^μ, γ^ν].
γ^5 는 iγ^0γ^1γ^2γ^3 을 먼저 시도하고, 쌍대 항등식
γ^5 σ^{μν} = (i/2) ε^{μνρσ} σ_{ρσ} 이 깨지면 부호를 뒤집는다.
이 기저에서는 첫 후보가 통과하므로 γ^5 = diag(-I, I),
trace(γ^5 γ^0 γ^1 γ^2 γ^3) = -4i.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from proca_lab.fields.minkowski import METRIC, epsilon_upper
from proca_lab.reports.report import IdentityReport
from proca_lab.utils.logger import get_logger

logger = get_logger(__name__)

# 행렬 항등식 허용치
MATRIX_TOL = 1e-14

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=np.complex128,
)
I2 = np.eye(2, dtype=np.complex128)
Z2 = np.zeros((2, 2), dtype=np.complex128)
I4 = np.eye(4, dtype=np.complex128)


@dataclass(frozen=True)
class GammaSet:
    """γ^μ (shape (4,4,4)), γ^5, σ^{μν} (shape (4,4,4,4))"""
    gamma: np.ndarray
    gamma5: np.ndarray
    sigma: np.ndarray
    gamma5_convention: str

    def sigma_lower(self) -> np.ndarray:
        """σ_{ρσ} = g_{ρα} g_{σβ} σ^{αβ}"""
        return np.einsum("ra,sb,abij->rsij", METRIC, METRIC, self.sigma)


@dataclass(frozen=True)
class RMatrix:
    """R = [[iΘ, 0], [0, -iΘ]], Θ = -iσ_2"""
    matrix: np.ndarray

    @classmethod
    def standard(cls) -> "RMatrix":
        theta = -1j * PAULI[1]
        return cls(np.block([[1j * theta, Z2], [Z2, -1j * theta]]))


def _commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def _sigma_tensor(gamma: np.ndarray) -> np.ndarray:
    sigma = np.empty((4, 4, 4, 4), dtype=np.complex128)
    for mu in range(4):
        for nu in range(4):
            sigma[mu, nu] = 0.5j * _commutator(gamma[mu], gamma[nu])
    return sigma


def _duality_defect(gamma5: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """(μ,ν)별 max |γ^5 σ^{μν} - (i/2) ε^{μνρσ} σ_{ρσ}|"""
    sigma_low = np.einsum("ra,sb,abij->rsij", METRIC, METRIC, sigma)
    rhs = 0.5j * np.einsum("mnrs,rsij->mnij", epsilon_upper(), sigma_low)
    lhs = np.einsum("ij,mnjk->mnik", gamma5, sigma)
    return np.max(np.abs(lhs - rhs), axis=(2, 3))


def build_weyl_basis() -> GammaSet:
    """Weyl 표현 감마 행렬 세트 생성"""
    gamma = np.empty((4, 4, 4), dtype=np.complex128)
    gamma[0] = np.block([[Z2, I2], [I2, Z2]])
    for i in range(3):
        gamma[i + 1] = np.block([[Z2, PAULI[i]], [-PAULI[i], Z2]])

    sigma = _sigma_tensor(gamma)
    gamma5 = 1j * gamma[0] @ gamma[1] @ gamma[2] @ gamma[3]
    convention = "+i g0 g1 g2 g3"

    if np.max(_duality_defect(gamma5, sigma)) > MATRIX_TOL:
        logger.warning("⚠️ Duality identity fails for +i g0g1g2g3, flipping the gamma5 sign")
        gamma5 = -gamma5
        convention = "-i g0 g1 g2 g3"

    return GammaSet(gamma=gamma, gamma5=gamma5, sigma=sigma, gamma5_convention=convention)


def clifford_defect(g: GammaSet) -> float:
    """max |{γ^μ, γ^ν} - 2 g^{μν} I| (10개 독립 쌍)"""
    worst = 0.0
    for mu in range(4):
        for nu in range(mu, 4):
            anti = g.gamma[mu] @ g.gamma[nu] + g.gamma[nu] @ g.gamma[mu]
            worst = max(worst, float(np.max(np.abs(anti - 2.0 * METRIC[mu, nu] * I4))))
    return worst


def verify_r_properties(
    g: GammaSet,
    r: RMatrix,
    tolerance: float = MATRIX_TOL,
    report: Optional[IdentityReport] = None,
) -> IdentityReport:
    """R 켤레 항등식 검증

    R^{-1}γ^5R = (γ^5)^T, R^{-1}γ^μR = -(γ^μ)^T, R^{-1}σ^{μν}R = -(σ^{μν})^T
    와 R 자체의 성질(R^T = -R, R† = R = R^{-1})을 잔차로 보고한다.
    실패는 예외가 아니라 리포트 항목.
    """
    report = report if report is not None else IdentityReport()
    rm = r.matrix
    r_inv = np.linalg.inv(rm)

    gamma5_res = np.max(np.abs(r_inv @ g.gamma5 @ rm - g.gamma5.T))
    gamma_res = max(
        float(np.max(np.abs(r_inv @ g.gamma[mu] @ rm + g.gamma[mu].T))) for mu in range(4)
    )
    sigma_conj = np.einsum("ij,mnjk,kl->mnil", r_inv, g.sigma, rm)
    sigma_res = np.max(np.abs(sigma_conj + np.transpose(g.sigma, (0, 1, 3, 2))))

    report.add("clifford.anticommutator", "{γ^μ,γ^ν} = 2g^{μν}", clifford_defect(g), tolerance)
    report.add(
        "clifford.gamma5_square", "(γ^5)² = I", float(np.max(np.abs(g.gamma5 @ g.gamma5 - I4))), tolerance
    )
    report.add("clifford.r_gamma5", "R⁻¹γ^5R = (γ^5)^T", float(gamma5_res), tolerance)
    report.add("clifford.r_gamma", "R⁻¹γ^μR = -(γ^μ)^T", gamma_res, tolerance)
    report.add("clifford.r_sigma", "R⁻¹σ^{μν}R = -(σ^{μν})^T", float(sigma_res), tolerance)
    report.add("clifford.r_antisymmetric", "R^T = -R", float(np.max(np.abs(rm.T + rm))), tolerance)
    report.add(
        "clifford.r_hermitian_involution",
        "R† = R = R⁻¹",
        float(max(np.max(np.abs(rm.conj().T - rm)), np.max(np.abs(rm @ rm - I4)))),
        tolerance,
    )
    return report


def verify_duality_identity(
    g: GammaSet,
    tolerance: float = MATRIX_TOL,
    report: Optional[IdentityReport] = None,
) -> IdentityReport:
    """γ^5 σ^{μν} = (i/2) ε^{μνρσ} σ_{ρσ}, 16개 (μ,ν) 전부"""
    report = report if report is not None else IdentityReport()
    defects = _duality_defect(g.gamma5, g.sigma)
    report.add(
        "clifford.duality",
        "γ^5σ^{μν} = (i/2)ε^{μνρσ}σ_{ρσ}, worst pair",
        float(np.max(defects)),
        tolerance,
    )
    report.add(
        "clifford.duality_sum",
        "γ^5σ^{μν} = (i/2)ε^{μνρσ}σ_{ρσ}, summed over pairs",
        float(np.sum(defects)),
        10.0 * tolerance,
    )
    return report


def duality_defects(g: GammaSet) -> np.ndarray:
    """(μ,ν)별 쌍대 항등식 잔차 (4×4)"""
    return _duality_defect(g.gamma5, g.sigma)
