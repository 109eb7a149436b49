"""검증 리포트

항등식 검사 결과(CheckResult) 수집, 집계, JSON/CSV 저장, Rich 테이블 출력
"""

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

from rich.console import Console
from rich.table import Table

from proca_lab.utils.logger import get_logger

logger = get_logger(__name__)

SCHEMA_VERSION = "1"


@dataclass
class CheckResult:
    """단일 항등식 검사 결과

    residual은 항상 0 이상. 반올림 오차 검사는 전역 tolerance를,
    허용 구간 검사(수렴비, 적합 지수 등)는 자체 tolerance를 가진다.
    """
    id: str
    ref: str
    residual: float
    tolerance: float
    samples: int = 1

    def __post_init__(self) -> None:
        residual = float(self.residual)
        if math.isnan(residual) or residual < 0:
            raise ValueError(f"Residual of '{self.id}' must be a non-negative number, got {self.residual}")
        self.residual = residual

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "ref": self.ref,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "samples": self.samples,
        }


@dataclass
class IdentityReport:
    """항등식 검사 결과 모음 (삽입 순서 유지)"""
    checks: List[CheckResult] = field(default_factory=list)

    def add(
        self,
        check_id: str,
        ref: str,
        residual: float,
        tolerance: float,
        samples: int = 1,
    ) -> CheckResult:
        result = CheckResult(check_id, ref, residual, tolerance, samples)
        self.checks.append(result)
        logger.debug(f"{check_id}: residual={result.residual:.3e} (tol {tolerance:.1e})")
        return result

    def extend(self, other: "IdentityReport") -> "IdentityReport":
        self.checks.extend(other.checks)
        return self

    def get(self, check_id: str) -> CheckResult:
        for check in self.checks:
            if check.id == check_id:
                return check
        raise KeyError(check_id)

    def ids(self) -> List[str]:
        return [check.id for check in self.checks]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failed(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    @property
    def max_residual(self) -> float:
        return max((check.residual for check in self.checks), default=0.0)

    @classmethod
    def aggregate(cls, reports: Iterable["IdentityReport"]) -> "IdentityReport":
        """같은 id끼리 최대 잔차와 샘플 수 합으로 병합 (첫 등장 순서 유지)"""
        merged: Dict[str, CheckResult] = {}
        for report in reports:
            for check in report.checks:
                current = merged.get(check.id)
                if current is None:
                    merged[check.id] = CheckResult(
                        check.id, check.ref, check.residual, check.tolerance, check.samples
                    )
                else:
                    current.residual = max(current.residual, check.residual)
                    current.samples += check.samples
        return cls(list(merged.values()))

    def to_dict(self) -> List[Dict[str, Any]]:
        return [check.to_dict() for check in self.checks]


def complex_pair(value: complex) -> List[float]:
    """JSON 직렬화용 [re, im]"""
    value = complex(value)
    return [value.real, value.imag]


def format_float(value: float) -> str:
    """CSV용 17자리 유효숫자 (double 왕복 보존)"""
    return format(float(value), ".17g")


def build_payload(
    config_echo: Dict[str, Any],
    results: Union[IdentityReport, Sequence[Dict[str, Any]]],
    extra: Optional[Dict[str, Any]] = None,
) -> Dict[str, Any]:
    """{schema, config, results} 최상위 구조 (스키마 버전 고정)"""
    if isinstance(results, IdentityReport):
        results = results.to_dict()
    payload: Dict[str, Any] = {
        "schema": SCHEMA_VERSION,
        "config": config_echo,
        "results": list(results),
    }
    if extra:
        payload.update(extra)
    return payload


def write_json(path: Path, payload: Dict[str, Any]) -> Path:
    """정렬된 키, 타임스탬프 없음: 같은 입력이면 바이트 단위로 동일"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(payload, f, sort_keys=True, indent=2, ensure_ascii=False)
        f.write("\n")
    logger.info(f"✅ Report written: {path}")
    return path


def write_rows_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """float는 17자리로, 나머지는 str()로 기록"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_float(v) if isinstance(v, float) else str(v) for v in row])
            count += 1
    logger.info(f"✅ CSV written: {path} ({count} rows)")
    return path


def write_report_csv(path: Path, report: IdentityReport) -> Path:
    header = ("id", "ref", "residual", "tolerance", "passed", "samples")
    rows = (
        (c.id, c.ref, c.residual, c.tolerance, str(c.passed).lower(), c.samples)
        for c in report.checks
    )
    return write_rows_csv(path, header, rows)


def print_report(report: IdentityReport, console: Optional[Console] = None, title: str = "검증 결과") -> None:
    """Rich 테이블로 결과 출력"""
    console = console or Console()
    table = Table(title=title)
    table.add_column("검사", style="cyan")
    table.add_column("상태")
    table.add_column("잔차", justify="right")
    table.add_column("허용치", justify="right")
    table.add_column("샘플", justify="right")
    table.add_column("내용", style="dim")

    for check in report.checks:
        status = "[green]✅ PASS[/green]" if check.passed else "[red]❌ FAIL[/red]"
        table.add_row(
            check.id,
            status,
            f"{check.residual:.2e}",
            f"{check.tolerance:.0e}",
            str(check.samples),
            check.ref,
        )

    console.print(table)
    console.print(
        f"통과 {len(report.checks) - len(report.failed)} / {len(report.checks)}, "
        f"최대 잔차 {report.max_residual:.2e}"
    )
