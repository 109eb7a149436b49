"""`verify` 명령이 돌리는 항등식 스위트 모음

각 스위트는 IdentityReport 를 돌려준다. 샘플별 리포트는 같은 id 끼리
최대 잔차로 병합한다. 반올림 오차 검사는 전역 tolerance 를 쓰고,
수렴비나 극한 분류 같은 허용 구간 검사는 구간 초과분을 잔차로 두고 허용치 0 을 쓴다.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from proca_lab.config.loader import FockConfig, VerifyConfig
from proca_lab.fields import clifford, fock, limits, noether
from proca_lab.fields.minkowski import (
    METRIC,
    boost_matrix,
    dual_tensor,
    energy,
    epsilon_lower,
    epsilon_upper,
    four_momentum,
    random_antisymmetric,
)
from proca_lab.fields.polarization import (
    SPATIAL_MODES,
    Mode,
    NormalizationScheme,
    boosted_polarization,
    completeness_matrix,
    orthogonality_matrix,
    polarization,
    time_like,
)
from proca_lab.fields.strengths import identity_suite, proca_residuals, timelike_obstruction
from proca_lab.reports.report import IdentityReport
from proca_lab.utils.logger import get_logger

logger = get_logger(__name__)

SCHEMES = (NormalizationScheme.unit(), NormalizationScheme.mass())

# 회전 생성자 수렴비 검사
GENERATOR_ANGLES = (1e-3, 1e-4)
GENERATOR_RATIO = (100.0, 5.0)
GENERATOR_SAMPLES = 100

# off-shell 대조군
OFF_SHELL_STEPS = (1e-3, 1e-4)
OFF_SHELL_RATIO = (10.0, 0.5)

LIMIT_ERROR_BOUND = 1e-8
EXPONENT_BAND = 0.05


@dataclass(frozen=True)
class Kinematics:
    p: np.ndarray
    m: float


def sample_kinematics(
    rng: np.random.Generator,
    samples: int,
    mass_range: Tuple[float, float] = (0.1, 10.0),
    momentum_ratio: Tuple[float, float] = (0.1, 1000.0),
) -> List[Kinematics]:
    """m 과 |p|/m 은 로그 균등, 방향은 구면 균등"""
    out = []
    log_m = np.log(mass_range)
    log_r = np.log(momentum_ratio)
    for _ in range(samples):
        m = float(np.exp(rng.uniform(*log_m)))
        ratio = float(np.exp(rng.uniform(*log_r)))
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        out.append(Kinematics(ratio * m * direction, m))
    return out


# ---------------------------------------------------------------------------
# 스위트
# ---------------------------------------------------------------------------

def minkowski_suite(kinematics: Sequence[Kinematics], rng: np.random.Generator, tolerance: float) -> IdentityReport:
    reports = []
    contraction = float(np.einsum("abcd,abcd->", epsilon_upper(), epsilon_lower()))
    for kin in kinematics:
        report = IdentityReport()
        boost = boost_matrix(kin.p, kin.m)
        gamma = energy(kin.p, kin.m) / kin.m
        report.add("minkowski.boost_metric", "L^T g L = g", boost.pseudo_orthogonality_defect() / gamma ** 2, tolerance)

        rest = np.array([kin.m, 0.0, 0.0, 0.0])
        p4 = four_momentum(kin.p, kin.m)
        moved = boost.apply(rest)
        report.add("minkowski.boost_rest_frame", "L(p)(m, 0) = (E, p)",
                   float(np.max(np.abs(moved - p4))) / float(np.max(np.abs(p4))), tolerance)

        f = random_antisymmetric(rng)
        twice = dual_tensor(dual_tensor(f))
        report.add("minkowski.double_dual", "dual(dual(F)) = -F", (twice + f).max_abs() / f.max_abs(), tolerance)
        reports.append(report)

    merged = IdentityReport.aggregate(reports)
    merged.add("minkowski.epsilon_contraction", "ε^{μνρσ}ε_{μνρσ} = -24", abs(contraction + 24.0), tolerance)
    return merged


def clifford_suite(tolerance: float) -> IdentityReport:
    tol = min(tolerance, clifford.MATRIX_TOL)
    gammas = clifford.build_weyl_basis()
    report = clifford.verify_r_properties(gammas, clifford.RMatrix.standard(), tol)
    clifford.verify_duality_identity(gammas, tol, report)
    trace = complex(np.trace(gammas.gamma5 @ gammas.gamma[0] @ gammas.gamma[1] @ gammas.gamma[2] @ gammas.gamma[3]))
    report.add("clifford.gamma5_trace", "tr(γ^5γ^0γ^1γ^2γ^3) = -4i", abs(trace + 4j), tol)
    return report


def polarization_suite(kinematics: Sequence[Kinematics], tolerance: float) -> IdentityReport:
    reports = []
    for kin in kinematics:
        for scheme in SCHEMES:
            report = IdentityReport()
            n = scheme.factor(kin.m)
            e = energy(kin.p, kin.m)
            closed_worst, trans_worst, norm_worst = 0.0, 0.0, 0.0
            for mode in SPATIAL_MODES:
                pol = polarization(kin.p, kin.m, mode, scheme)
                boosted = boosted_polarization(kin.p, kin.m, mode, scheme)
                size = float(np.max(np.abs(boosted)))
                closed_worst = max(closed_worst, float(np.max(np.abs(pol.u - boosted))) / size)
                trans_worst = max(trans_worst, abs(pol.transversality) / (e * size))
                norm_worst = max(norm_worst, abs(pol.norm + n * n) / (size * size))
            report.add("polarization.closed_vs_boost", "closed form = N L(p) ε(0,σ)", closed_worst, tolerance)
            report.add("polarization.transversality", "p_μ u^μ = 0", trans_worst, tolerance)
            report.add("polarization.norm", "u*·u = -N²", norm_worst, tolerance)

            scale = (e / kin.m) ** 2
            report.add("polarization.completeness", "Σ ± u u* / N² = g",
                       float(np.max(np.abs(completeness_matrix(kin.p, kin.m, scheme) - METRIC))) / scale, tolerance)
            expected = np.diag([-n * n, -n * n, -n * n, n * n])
            report.add("polarization.orthogonality", "u*(σ)·u(σ') = diag(-N², -N², -N², N²)",
                       float(np.max(np.abs(orthogonality_matrix(kin.p, kin.m, scheme) - expected))) / (n * n * scale),
                       tolerance)

            tl = time_like(kin.p, kin.m, scheme)
            report.add("polarization.timelike", "u(0t)*·u(0t) = N², p·u(0t) = N m",
                       max(abs(tl.norm - n * n) / (n * n * scale), abs(tl.transversality - n * kin.m) / (n * e * e / kin.m)),
                       tolerance)
            reports.append(report)
    return IdentityReport.aggregate(reports)


def strengths_suite(kinematics: Sequence[Kinematics], tolerance: float) -> IdentityReport:
    reports = []
    for kin in kinematics:
        for scheme in SCHEMES:
            report = identity_suite(kin.p, kin.m, scheme, tolerance)
            for mode in SPATIAL_MODES:
                proca_residuals(kin.p, kin.m, mode, scheme, tolerance, report)
            n = scheme.factor(kin.m)
            p4 = four_momentum(kin.p, kin.m)
            obstruction = timelike_obstruction(kin.p, kin.m, scheme)
            report.add("proca.timelike_obstruction", "time-like mode leaves (N/2)p^μ",
                       float(np.max(np.abs(obstruction - n / 2.0 * p4))) / (n * float(np.max(np.abs(p4)))), tolerance)
            reports.append(report)
    return IdentityReport.aggregate(reports)


def _band(value: float, center: float, width: float) -> float:
    return max(0.0, abs(value - center) - width)


def generator_suite(rng: np.random.Generator, tolerance: float) -> IdentityReport:
    report = IdentityReport()
    gen = noether.rotation_generator()
    report.add("noether.generator_antisymmetry", "T antisymmetric in κτ, αβ, μν",
               max(gen.antisymmetry_defects().values()), tolerance)

    center, width = GENERATOR_RATIO
    worst = 0.0
    for _ in range(GENERATOR_SAMPLES):
        f = random_antisymmetric(rng)
        errors = []
        for theta in GENERATOR_ANGLES:
            omega = np.zeros((4, 4))
            omega[1, 2], omega[2, 1] = theta, -theta
            exact = noether.finite_rotation(omega, f)
            errors.append((gen.apply(omega, f) - exact).max_abs())
        worst = max(worst, _band(errors[0] / errors[1], center, width))
    report.add("noether.generator_second_order", "δF vs ΛFΛ^T - F error ratio 100 ± 5 per decade",
               worst, 0.0, GENERATOR_SAMPLES)
    return report


def field_suite(rng: np.random.Generator, samples: int, tolerance: float) -> IdentityReport:
    """무작위 on-shell 배치에서 운동 방정식, 보존, 스핀 형태 비교"""
    reports = []
    for _ in range(samples):
        report = IdentityReport()
        m = float(np.exp(rng.uniform(np.log(0.5), np.log(5.0))))
        scheme = SCHEMES[int(rng.integers(0, 2))]
        cfg = noether.random_on_shell_config(rng, m, scheme)
        points = [np.concatenate([[rng.uniform(0, 1)], rng.uniform(0, 1, size=3)]) for _ in range(3)]

        eom_scale = noether.eom_scale(cfg)
        report.add("noether.eom_on_shell", "½(□+m²)F + ∂F terms = 0 on shell",
                   max(noether.eom_residual(cfg, x).max_abs() for x in points) / eom_scale, tolerance)

        worst = 0.0
        for x in points:
            div, scale = noether.stress_divergence(cfg, x)
            worst = max(worst, float(np.max(np.abs(div))) / scale)
        report.add("noether.stress_conservation", "∂_λ Θ^{λβ} = 0 on shell", worst, tolerance)

        from_tensor = noether.spin_vector(noether.spin_tensor(cfg))
        from_strengths = noether.spin_vector_strengths(cfg)
        e_cross_a = noether.e_cross_a_spin(cfg)
        scale = noether.spin_scale(cfg)
        report.add("noether.spin_tensor_vs_strengths", "½ε^{ijk}J^{ij} = strengths form",
                   float(np.max(np.abs(from_tensor - from_strengths))) / scale, tolerance)
        report.add("noether.e_cross_a", "strengths form = (m/2)∫E×A",
                   float(np.max(np.abs(e_cross_a - from_strengths))) / scale, tolerance)

        constrained = noether.lorentz_constrained_config(rng, m, scheme)
        report.add("noether.lorentz_constrained", "light-like circular modes: ∂_μF^{μν} = 0",
                   noether.lorentz_defect(constrained), tolerance)
        report.add("noether.kalb_ramond_zero", "∂_μF^{μν} = 0 ⇒ J_{κτ} = 0 (full expression)",
                   noether.spin_tensor(constrained).max_abs() / noether.spin_scale(constrained), tolerance)

        null = max(
            float(np.max(np.abs(noether.spin_vector_potentials(cfg, cfg.scaled(sign))))) for sign in (1.0, -1.0)
        )
        report.add("noether.potentials_null", "B = ±A ⇒ spin vector = 0", null / noether.potential_scale(cfg), tolerance)
        reports.append(report)
    return IdentityReport.aggregate(reports)


def _off_shell_ratio(m: float, scheme: NormalizationScheme) -> float:
    n = (0, 0, 1)
    p = 2.0 * np.pi * np.asarray(n, dtype=float)
    e = energy(p, m)
    x = np.array([0.3, 0.1, 0.2, 0.7])
    residuals = []
    for step in OFF_SHELL_STEPS:
        cfg = noether.FieldConfig.single(n, Mode.ZERO, m, scheme, energy_override=e + step)
        residuals.append(noether.eom_residual(cfg, x).max_abs())
    return residuals[0] / residuals[1]


def mode_suite(tolerance: float) -> IdentityReport:
    """단일 모드 검사와 특수 좌표계 계수"""
    report = IdentityReport()
    m = 1.0
    scheme = NormalizationScheme.mass()

    circular = noether.FieldConfig.single((0, 0, 1), Mode.PLUS, m, scheme, a=0.7 - 0.2j)
    points = [np.array([t, 0.1 * t, 0.37, 0.5 + t]) for t in np.linspace(0.0, 1.0, 10)]
    values = [noether.lagrangian_density(circular, x) for x in points]
    spread = max(values) - min(values)
    scale = noether.density_scale(circular)
    report.add("noether.lagrangian_constant", "single on-shell mode: ℒ independent of x", spread / scale, tolerance)

    center, width = OFF_SHELL_RATIO
    report.add("noether.eom_off_shell_scaling", "off-shell residual linear in E² - p² - m²",
               _band(_off_shell_ratio(m, scheme), center, width), 0.0)

    j = noether.spin_tensor(circular)
    p = circular.momentum(circular.modes[0])
    spin = noether.spin_vector(j)
    helicity = noether.helicity_from_pauli_lubanski(j, p, m)
    report.add("noether.pauli_lubanski_helicity", "-(W·n)/E = J·p̂",
               abs(helicity - spin @ (p / np.linalg.norm(p))) / max(abs(helicity), 1e-300), tolerance)
    report.add("noether.circular_transverse", "p ∥ z circular mode: J¹ = J² = 0",
               float(np.max(np.abs(spin[:2]))) / max(abs(spin[2]), 1e-300), tolerance)

    coefficients = noether.spin_mode_coefficients((0.0, 0.0, 3.0), m, scheme, frame_check=True)
    report.add("noether.mode_coefficients", "special-frame coefficient vectors", coefficients.reference_residual(),
               tolerance)
    report.add("noether.mode_pairing", "b†a(-σ,-σ') = s t ab†(σ,σ')", coefficients.pairing_residual(), tolerance)
    e = coefficients.energy
    report.add("noether.mixing_ratio", "mixing / suppressed = E²/m²",
               abs(coefficients.mixing_ratio() / (e * e / (m * m)) - 1.0), tolerance)
    return report


def limits_suite() -> IdentityReport:
    report = IdentityReport()
    mass = NormalizationScheme.mass()
    unit = NormalizationScheme.unit()
    axis = np.array([0.0, 0.0, 1.0])
    oblique = np.array([0.0, 0.6, 0.8])

    longitudinal = limits.limit_sweep("u(0)", axis, mass)
    report.add("limits.longitudinal_finite", "Mass scheme u(p,0) stays finite as m → 0",
               0.0 if longitudinal.overall.classification is limits.LimitClass.FINITE else 1.0, 0.0)
    m_small = 1e-6 * float(np.linalg.norm(axis))
    value = limits.evaluate_quantity("u(0)", axis, m_small, mass)
    target = np.array([1.0, 0.0, 0.0, 1.0])
    report.add("limits.longitudinal_value", "u(p,0) → (E, 0, 0, E) at m = 1e-6|p|",
               max(0.0, float(np.max(np.abs(value - target))) - LIMIT_ERROR_BOUND), 0.0)

    worst = 0.0
    for quantity in ("u(0)", "u(+1)", "B+(0)", "E+(0)", "B+(+1)"):
        sweep = limits.limit_sweep(quantity, oblique, unit)
        worst = max(worst, _band(sweep.overall.exponent, -1.0, EXPONENT_BAND))
    report.add("limits.unit_diverges", "Unit scheme potentials and strengths diverge as 1/m", worst, 0.0)

    transverse = [limits.limit_sweep(q, axis, mass) for q in ("u(+1)", "u(-1)")]
    report.add("limits.transverse_vanish", "Mass scheme u(p,±1) at p ∥ z vanishes linearly",
               0.0 if all(t.overall.classification is limits.LimitClass.VANISHES_LINEARLY for t in transverse) else 1.0,
               0.0)

    zero = [limits.limit_sweep(q, oblique, scheme) for q in ("B+(0t)", "E+(0t)") for scheme in (unit, mass)]
    report.add("limits.timelike_zero", "time-like strengths identically zero",
               0.0 if all(z.overall.classification is limits.LimitClass.IDENTICALLY_ZERO for z in zero) else 1.0, 0.0)
    return report


def fock_suite(fock_cfg: FockConfig, tolerance: float) -> IdentityReport:
    report = IdentityReport()
    p = (0.0, 0.0, 1.0)
    m = 1.0

    single = fock.build_modes([p], 1, m)
    report.add("fock.basis_count", "1 momentum, n_max = 1 → 4 states", float(abs(single.dim - 4)), 0.0)

    basis = fock.build_modes([p, (0.0, 0.0, -1.0)], fock_cfg.n_max, m)
    for variant in fock.CommutatorVariant:
        scheme = fock.CommutatorScheme(variant, volume=fock_cfg.volume, absorb_phase=fock_cfg.absorb_phase)
        lad = fock.ladders(basis, scheme)
        constant = lad.constant(0)
        report.add(f"fock.commutators[{variant.value}]", "[a, a†] = constant·δ below the truncation edge",
                   fock.commutator_closure(lad) / constant, tolerance)
        ops = [fock.spin_operator(k, basis, scheme, lad) for k in (1, 2, 3)]
        report.add(f"fock.hermiticity[{variant.value}]", "η J^H η = J",
                   max(op.hermiticity_defect() for op in ops), tolerance)
        report.add(f"fock.vacuum[{variant.value}]", "J^k |0⟩ = 0", max(op.vacuum_residual() for op in ops), tolerance)
        report.add(f"fock.sectors[{variant.value}]", "J^k preserves occupation sectors",
                   max(op.sector_leakage() for op in ops), tolerance)

        spectrum = fock.helicity_eigenvalues(basis, scheme, p, lad)
        reversed_ = fock.helicity_eigenvalues(basis, scheme, (0.0, 0.0, -1.0), lad)
        report.add(f"fock.momentum_reversal[{variant.value}]", "J·p̂ spectrum at -p equals the one at p",
                   _spectrum_distance(spectrum, reversed_), tolerance)
        negative = sum(1 for lv in spectrum.levels if lv.metric_sign < 0)
        report.add(f"fock.krein_signature[{variant.value}]", "negative-norm one-particle levels: 1 if indefinite else 0",
                   float(abs(negative - (1 if scheme.indefinite else 0))), 0.0)

    cross = fock.CommutatorScheme(fock.CommutatorVariant.DELTA_CROSS, volume=fock_cfg.volume)
    spectrum = fock.helicity_eigenvalues(basis, cross, p)
    particles = [lv.helicity for lv in spectrum.levels if lv.state != "vacuum"]
    vacuum = [lv.helicity for lv in spectrum.levels if lv.state == "vacuum"]
    report.add("fock.delta_cross_helicities", "one-particle helicities include +1 and -1",
               max(min(abs(h - 1.0) for h in particles), min(abs(h + 1.0) for h in particles)), tolerance)
    report.add("fock.vacuum_helicity", "vacuum eigenvalue 0", max(abs(h) for h in vacuum), tolerance)
    odd = [lv for lv in spectrum.levels if lv.state == "o"]
    report.add("fock.delta_cross_signature", "J = unit on every one-particle slot; only the o slot flips sign under η",
               max([abs(lv.raw_helicity - 1.0) for lv in spectrum.levels if lv.state != "vacuum"]
                   + [abs(lv.helicity + 1.0) for lv in odd] + [float(len(odd) != 1)]), tolerance)

    absorbed = fock.helicity_eigenvalues(basis, fock.CommutatorScheme(cross.variant, absorb_phase=True,
                                                                      volume=fock_cfg.volume), p)
    report.add("fock.absorb_phase", "absorbing i leaves the spectrum unchanged",
               _spectrum_distance(spectrum, absorbed), tolerance)

    standard = fock.CommutatorScheme(fock.CommutatorVariant.STANDARD_2E)
    coeff_basis = fock.build_modes([(0.0, 0.0, 3.0)], 1, m)
    coeff = fock.coefficient_helicities(coeff_basis, standard, NormalizationScheme.mass(), (0.0, 0.0, 3.0))
    values = coeff.helicities
    report.add("fock.coefficient_helicities", "mode-coefficient operator: helicities ±1 and 0",
               max(min(abs(h - t) for h in values) for t in (1.0, -1.0, 0.0)), tolerance)
    return report


def _spectrum_distance(a: "fock.HelicitySpectrum", b: "fock.HelicitySpectrum") -> float:
    left, right = sorted(a.helicities), sorted(b.helicities)
    if len(left) != len(right):
        return float("inf")
    return max((abs(x - y) for x, y in zip(left, right)), default=0.0)


def run_verify_suites(verify: VerifyConfig, fock_cfg: FockConfig) -> IdentityReport:
    """모든 스위트 실행 (같은 seed 면 같은 결과)"""
    rng = np.random.default_rng(verify.seed)
    kinematics = sample_kinematics(rng, verify.samples, tuple(verify.mass_range), tuple(verify.momentum_ratio))
    tol = verify.tolerance

    report = IdentityReport()
    steps = (
        ("minkowski", lambda: minkowski_suite(kinematics, rng, tol)),
        ("clifford", lambda: clifford_suite(tol)),
        ("polarization", lambda: polarization_suite(kinematics, tol)),
        ("strengths", lambda: strengths_suite(kinematics, tol)),
        ("generator", lambda: generator_suite(rng, tol)),
        ("fields", lambda: field_suite(rng, verify.noether_samples, tol)),
        ("modes", lambda: mode_suite(tol)),
        ("limits", limits_suite),
        ("fock", lambda: fock_suite(fock_cfg, tol)),
    )
    for name, step in steps:
        part = step()
        status = "✅" if part.passed else "❌"
        logger.info(f"{status} {name}: {len(part.checks)} checks, max residual {part.max_residual:.2e}")
        report.extend(part)
    return report
