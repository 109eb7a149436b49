"""설정 파일 로더 (YAML)

config.yml을 읽어서 dataclass 객체로 변환
"""

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import yaml

from proca_lab.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_CONFIG_PATH = "config/config.yml"


@dataclass
class VerifyConfig:
    """`verify` 스위트 샘플링 설정"""
    samples: int = 1000
    noether_samples: int = 8
    tolerance: float = 1.0e-10
    seed: int = 20240601
    momentum_ratio: Tuple[float, float] = (0.1, 1000.0)
    mass_range: Tuple[float, float] = (0.1, 10.0)


@dataclass
class LimitsConfig:
    """질량 0 극한 스윕 설정 (m0 = None 이면 |p| 사용)"""
    m0: Optional[float] = None
    ratio: float = 0.25
    count: int = 16
    fit_points: int = 6
    quantities: List[str] = field(
        default_factory=lambda: ["u(0)", "u(+1)", "u(-1)", "u(0t)", "B+(0)", "E+(0)", "E+(+1)"]
    )


@dataclass
class SpinConfig:
    """스핀 분석 기본 운동학"""
    mass: float = 1.0
    momentum: Tuple[float, float, float] = (0.0, 0.0, 3.0)
    schemes: List[str] = field(
        default_factory=lambda: ["delta-cross", "mass-scaled", "standard-2e"]
    )


@dataclass
class FockConfig:
    """절단 Fock 공간 설정"""
    n_max: int = 2
    volume: float = 1.0
    absorb_phase: bool = False


@dataclass
class OutputConfig:
    """리포트 출력 설정"""
    directory: str = "reports"
    format: str = "json"


@dataclass
class LoggingConfig:
    """로깅 설정"""
    file_level: str = "DEBUG"
    console_level: str = "INFO"
    log_dir: str = "data/logs"


@dataclass
class Config:
    """전체 설정"""
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    limits: LimitsConfig = field(default_factory=LimitsConfig)
    spin: SpinConfig = field(default_factory=SpinConfig)
    fock: FockConfig = field(default_factory=FockConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @classmethod
    def default(cls) -> "Config":
        return cls()

    def to_dict(self) -> Dict[str, Any]:
        """리포트 config 에코용 dict (tuple → list)"""
        return _plain(asdict(self))


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _section(cls, data: Optional[Dict[str, Any]], name: str):
    """섹션 dict → dataclass. 모르는 키는 거부"""
    data = data or {}
    known = {f.name for f in fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"Unknown keys in config section '{name}': {sorted(unknown)}")
    values = {}
    for key, raw in data.items():
        values[key] = tuple(raw) if isinstance(raw, list) and key in _TUPLE_KEYS else raw
    return cls(**values)


_TUPLE_KEYS = {"momentum_ratio", "mass_range", "momentum"}


def validate_config(config: Config) -> None:
    """값 범위 검증

    Raises:
        ValueError: 허용 범위를 벗어난 값
    """
    if config.verify.tolerance <= 0:
        raise ValueError(f"verify.tolerance must be > 0, got {config.verify.tolerance}")
    if config.verify.samples < 1:
        raise ValueError(f"verify.samples must be >= 1, got {config.verify.samples}")
    if not 0 < config.limits.ratio < 1:
        raise ValueError(f"limits.ratio must lie in (0, 1), got {config.limits.ratio}")
    if config.limits.count < 6:
        raise ValueError(f"limits.count must be >= 6, got {config.limits.count}")
    if config.limits.m0 is not None and config.limits.m0 <= 0:
        raise ValueError(f"limits.m0 must be > 0, got {config.limits.m0}")
    if config.spin.mass <= 0:
        raise ValueError(f"spin.mass must be > 0, got {config.spin.mass}")
    if config.fock.n_max < 1:
        raise ValueError(f"fock.n_max must be >= 1, got {config.fock.n_max}")
    if config.output.format not in ("json", "csv"):
        raise ValueError(f"output.format must be json or csv, got {config.output.format!r}")


def load_config(config_path: str = DEFAULT_CONFIG_PATH) -> Config:
    """config.yml 로드

    Args:
        config_path: 설정 파일 경로

    Returns:
        Config 객체 (파일이 없으면 기본값)

    Raises:
        yaml.YAMLError: YAML 파싱 에러
        ValueError: 알 수 없는 키 또는 범위 밖 값
    """
    path = Path(config_path)
    if not path.exists():
        logger.warning(f"⚠️ Config file not found: {config_path} (using defaults)")
        return Config.default()

    logger.debug(f"Loading config from: {config_path}")
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}

    config = Config(
        verify=_section(VerifyConfig, data.get("verify"), "verify"),
        limits=_section(LimitsConfig, data.get("limits"), "limits"),
        spin=_section(SpinConfig, data.get("spin"), "spin"),
        fock=_section(FockConfig, data.get("fock"), "fock"),
        output=_section(OutputConfig, data.get("output"), "output"),
        logging=_section(LoggingConfig, data.get("logging"), "logging"),
    )
    validate_config(config)

    logger.debug(f"✅ Config loaded: {len(config.limits.quantities)} limit quantities")
    return config


# 전역 설정 인스턴스 (싱글톤)
_config: Optional[Config] = None


def get_config() -> Config:
    """전역 설정 인스턴스 반환 (싱글톤)

    Example:
        >>> from proca_lab.config.loader import get_config
        >>> get_config().verify.tolerance
        1e-10
    """
    global _config
    if _config is None:
        _config = load_config()
    return _config


def save_config(config: Config, config_path: str = DEFAULT_CONFIG_PATH) -> None:
    """config.yml 저장"""
    with open(Path(config_path), "w", encoding="utf-8") as f:
        yaml.dump(config.to_dict(), f, allow_unicode=True, default_flow_style=False, sort_keys=False)
    logger.info(f"✅ Config saved: {config_path}")
