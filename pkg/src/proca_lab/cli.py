"""CLI 인터페이스

Typer 기반 명령줄 인터페이스 (verify | limits | spin), Rich 테이블 출력.
종료 코드: 0 통과, 1 검사 실패, 2 잘못된 입력.
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple

import typer
import yaml
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from proca_lab.config.loader import DEFAULT_CONFIG_PATH, Config, load_config, validate_config
from proca_lab.fields import fock, limits
from proca_lab.fields.noether import spin_mode_coefficients
from proca_lab.fields.polarization import NormalizationScheme
from proca_lab.reports.report import (
    IdentityReport,
    build_payload,
    print_report,
    write_json,
    write_report_csv,
    write_rows_csv,
)
from proca_lab.reports.suites import run_verify_suites
from proca_lab.utils.logger import DEFAULT_LOG_DIR, configure_levels, get_logger, setup_logging

logger = get_logger(__name__)
console = Console()
app = typer.Typer(help="Proca Lab - 스핀 1 반대칭 텐서장 항등식 검증 도구")

LIMIT_COLUMNS = ("quantity", "scheme", "component", "m", "value_re", "value_im", "fitted_exponent", "classification")


def _load(config_path: str) -> Config:
    try:
        config = load_config(config_path)
    except (ValueError, yaml.YAMLError) as e:
        raise typer.BadParameter(str(e), param_hint="--config")
    if config.logging.log_dir != DEFAULT_LOG_DIR:
        setup_logging(config.logging.file_level, config.logging.console_level, config.logging.log_dir)
    else:
        configure_levels(config.logging.file_level, config.logging.console_level)
    return config


def _validated(config: Config) -> Config:
    try:
        validate_config(config)
    except ValueError as e:
        raise typer.BadParameter(str(e))
    return config


def _parse_floats(text: str, count: int, option: str) -> Tuple[float, ...]:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != count:
        raise typer.BadParameter(f"expected {count} comma-separated numbers, got {text!r}", param_hint=option)
    try:
        return tuple(float(s) for s in parts)
    except ValueError:
        raise typer.BadParameter(f"not a number list: {text!r}", param_hint=option)


def _parse_m_seq(text: str) -> Tuple[float, float, int]:
    start, ratio, count = _parse_floats(text, 3, "--m-seq")
    if count != int(count):
        raise typer.BadParameter(f"count must be an integer, got {count}", param_hint="--m-seq")
    try:
        limits.mass_sequence(start, ratio, int(count))
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="--m-seq")
    return start, ratio, int(count)


def _check_format(output_format: str) -> str:
    output_format = output_format.lower()
    if output_format not in ("json", "csv"):
        raise typer.BadParameter(f"format must be json or csv, got {output_format!r}", param_hint="--format")
    return output_format


def _output_path(config: Config, out: Optional[Path], stem: str, output_format: str) -> Path:
    return out if out is not None else Path(config.output.directory) / f"{stem}.{output_format}"


@app.command()
def verify(
    samples: Optional[int] = typer.Option(None, "--samples", "-n", help="무작위 (p, m) 샘플 수"),
    tolerance: Optional[float] = typer.Option(None, "--tolerance", "-t", help="반올림 오차 허용치"),
    seed: Optional[int] = typer.Option(None, "--seed", help="난수 시드"),
    output_format: Optional[str] = typer.Option(None, "--format", "-f", help="json 또는 csv"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="리포트 경로"),
    config_path: str = typer.Option(DEFAULT_CONFIG_PATH, "--config", "-c", help="설정 파일"),
):
    """모든 항등식 스위트 실행"""
    console.print(Panel.fit("🔬 항등식 검증", style="bold blue"))

    config = _load(config_path)
    if samples is not None:
        config.verify.samples = samples
    if tolerance is not None:
        config.verify.tolerance = tolerance
    if seed is not None:
        config.verify.seed = seed
    fmt = _check_format(output_format or config.output.format)
    _validated(config)

    report = run_verify_suites(config.verify, config.fock)
    echo = {"command": "verify", "verify": config.to_dict()["verify"], "fock": config.to_dict()["fock"]}
    path = _output_path(config, out, "verify", fmt)
    if fmt == "json":
        write_json(path, build_payload(echo, report))
    else:
        write_report_csv(path, report)

    print_report(report, console)
    console.print(f"\n리포트: [green]{path}[/green]")

    if not report.passed:
        logger.error(f"❌ {len(report.failed)} identities failed: {', '.join(c.id for c in report.failed)}")
        raise typer.Exit(1)
    console.print("\n[bold green]✅ 모든 항등식 통과[/bold green]")


def _limit_schemes(scheme: str) -> List[NormalizationScheme]:
    scheme = scheme.lower()
    if scheme == "all":
        return [NormalizationScheme.unit(), NormalizationScheme.mass()]
    try:
        return [NormalizationScheme.parse(scheme)]
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="--scheme")


@app.command(name="limits")
def limits_command(
    quantities: Optional[str] = typer.Option(None, "--quantities", "-q", help="쉼표로 구분한 양 (예: u(0),B+(0))"),
    momentum: str = typer.Option("0,0,1", "--momentum", "-p", help="px,py,pz"),
    scheme: str = typer.Option("all", "--scheme", "-s", help="unit, mass 또는 all"),
    m_seq: Optional[str] = typer.Option(None, "--m-seq", help="start,ratio,count"),
    fit_points: Optional[int] = typer.Option(None, "--fit-points", help="적합에 쓰는 꼬리 점 개수"),
    output_format: Optional[str] = typer.Option(None, "--format", "-f", help="json 또는 csv"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="리포트 경로"),
    config_path: str = typer.Option(DEFAULT_CONFIG_PATH, "--config", "-c", help="설정 파일"),
):
    """질량 0 극한 스윕"""
    console.print(Panel.fit("📉 질량 0 극한 스윕", style="bold blue"))

    config = _load(config_path)
    if quantities is None:
        names = list(config.limits.quantities)
    else:
        names = [q.strip() for q in quantities.split(",") if q.strip()]
    if not names:
        raise typer.BadParameter("at least one quantity is required", param_hint="--quantities")
    for name in names:
        try:
            limits.parse_quantity(name)
        except ValueError as e:
            raise typer.BadParameter(str(e), param_hint="--quantities")

    p = _parse_floats(momentum, 3, "--momentum")
    schemes = _limit_schemes(scheme)
    m0, ratio, count = config.limits.m0, config.limits.ratio, config.limits.count
    if m_seq is not None:
        m0, ratio, count = _parse_m_seq(m_seq)
    fit = fit_points if fit_points is not None else config.limits.fit_points
    if fit < 2:
        raise typer.BadParameter(f"fit points must be >= 2, got {fit}", param_hint="--fit-points")
    fmt = _check_format(output_format or config.output.format)

    try:
        batch = limits.run_sweeps(names, p, schemes, m0, ratio, count, fit)
    except ValueError as e:
        raise typer.BadParameter(str(e))
    except limits.LimitEvaluationError as e:
        logger.error(f"❌ {e}")
        raise typer.Exit(1)

    table = Table(title="극한 분류")
    table.add_column("양", style="cyan")
    table.add_column("방식")
    table.add_column("분류", style="green")
    table.add_column("지수", justify="right")
    table.add_column("극한값", style="dim")
    for report in batch.reports:
        vector = ", ".join(f"{v.real:.6g}{v.imag:+.3g}j" for v in report.limit_vector)
        table.add_row(
            report.quantity,
            report.scheme,
            report.overall.classification.value,
            f"{report.overall.exponent:.4f}",
            vector,
        )
    console.print(table)

    echo = {
        "command": "limits",
        "quantities": names,
        "momentum": list(p),
        "schemes": [s.name for s in schemes],
        "m0": m0,
        "ratio": ratio,
        "count": count,
        "fit_points": fit,
    }
    path = _output_path(config, out, "limits", fmt)
    if fmt == "json":
        write_json(path, build_payload(echo, [r.to_dict() for r in batch.reports]))
    else:
        write_rows_csv(path, LIMIT_COLUMNS, batch.rows())
    console.print(f"\n리포트: [green]{path}[/green]")


def _commutator_schemes(scheme: str, names: List[str], absorb_phase: bool, volume: float) -> List[fock.CommutatorScheme]:
    selected = names if scheme.lower() == "all" else [scheme]
    try:
        return [fock.CommutatorScheme.parse(name, absorb_phase=absorb_phase, volume=volume) for name in selected]
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="--scheme")


@app.command()
def spin(
    mass: Optional[float] = typer.Option(None, "--mass", "-m", help="질량"),
    momentum: Optional[str] = typer.Option(None, "--momentum", "-p", help="px,py,pz"),
    scheme: str = typer.Option("all", "--scheme", "-s", help="delta-cross, mass-scaled, standard-2e 또는 all"),
    normalization: str = typer.Option("mass", "--normalization", help="unit 또는 mass"),
    n_max: Optional[int] = typer.Option(None, "--n-max", help="Fock 점유수 상한"),
    frame_check: bool = typer.Option(False, "--frame-check/--no-frame-check", help="p1 = p2 = 0 좌표계 요구"),
    absorb_phase: Optional[bool] = typer.Option(None, "--absorb-phase/--keep-phase", help="b† = i a† 의 i 흡수"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="JSON 리포트 경로"),
    config_path: str = typer.Option(DEFAULT_CONFIG_PATH, "--config", "-c", help="설정 파일"),
):
    """모드 계수와 Fock 헬리시티 스펙트럼"""
    console.print(Panel.fit("🌀 스핀 분석", style="bold blue"))

    config = _load(config_path)
    m = mass if mass is not None else config.spin.mass
    p = _parse_floats(momentum, 3, "--momentum") if momentum is not None else tuple(config.spin.momentum)
    n = n_max if n_max is not None else config.fock.n_max
    absorb = absorb_phase if absorb_phase is not None else config.fock.absorb_phase
    try:
        norm = NormalizationScheme.parse(normalization)
    except ValueError as e:
        raise typer.BadParameter(str(e), param_hint="--normalization")
    schemes = _commutator_schemes(scheme, list(config.spin.schemes), absorb, config.fock.volume)

    try:
        coefficients = spin_mode_coefficients(p, m, norm, frame_check=frame_check)
        basis = fock.build_modes([p], n, m)
    except ValueError as e:
        raise typer.BadParameter(str(e))

    tol = config.verify.tolerance
    checks = IdentityReport()
    checks.add("spin.pairing", "b†a(-σ,-σ') = s t ab†(σ,σ')", coefficients.pairing_residual(), tol)
    if coefficients.frame == "special":
        checks.add("spin.reference_vectors", "special-frame coefficient vectors", coefficients.reference_residual(), tol)

    blocks: List[Dict] = []
    table = Table(title="헬리시티 스펙트럼")
    table.add_column("방식", style="cyan")
    table.add_column("상태")
    table.add_column("헬리시티", justify="right", style="green")
    table.add_column("J 기대값", justify="right")
    table.add_column("계량 부호", justify="right")
    table.add_column("퇴화", style="dim")
    for comm in schemes:
        try:
            spectrum = fock.helicity_eigenvalues(basis, comm, p)
        except ValueError as e:
            raise typer.BadParameter(str(e), param_hint="--momentum")
        ops = [fock.spin_operator(k, basis, comm) for k in (1, 2, 3)]
        checks.add(f"spin.hermiticity[{comm.name}]", "η J^H η = J", max(op.hermiticity_defect() for op in ops), tol)
        checks.add(f"spin.vacuum[{comm.name}]", "J^k |0⟩ = 0", max(op.vacuum_residual() for op in ops), tol)

        block = {"scheme": comm.name, "constant": spectrum.unit, "spectrum": spectrum.to_dict(), "coefficient_spectrum": None}
        if not comm.indefinite:
            block["coefficient_spectrum"] = fock.coefficient_helicities(basis, comm, norm, p).to_dict()
        blocks.append(block)
        for level in spectrum.levels:
            table.add_row(comm.name, level.state, f"{level.helicity:+.6f}", f"{level.raw_helicity:+.6f}",
                          f"{level.metric_sign:+d}", "tie" if level.degenerate else "")
    console.print(table)
    print_report(checks, console, title="스핀 검사")

    echo = {
        "command": "spin",
        "mass": m,
        "momentum": list(p),
        "normalization": norm.name,
        "schemes": [c.name for c in schemes],
        "n_max": n,
        "frame_check": frame_check,
        "absorb_phase": absorb,
    }
    path = out if out is not None else Path(config.output.directory) / "spin.json"
    write_json(path, build_payload(echo, checks, {"coefficients": coefficients.to_dict(), "schemes": blocks}))
    console.print(f"\n리포트: [green]{path}[/green]")

    if not checks.passed:
        logger.error(f"❌ {len(checks.failed)} spin checks failed")
        raise typer.Exit(1)


def main() -> None:
    app()


if __name__ == "__main__":
    main()
