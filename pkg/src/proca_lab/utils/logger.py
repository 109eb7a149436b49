"""전역 로깅 설정 모듈

모든 모듈에서 `from proca_lab.utils.logger import get_logger` 로 사용.
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional

# 로그 포맷
FILE_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s:%(lineno)d | %(message)s"
CONSOLE_FORMAT = "%(levelname)-8s | %(name)s | %(message)s"

DEFAULT_LOG_DIR = "data/logs"

# 수치 라이브러리 쪽 노이즈
NOISY_LOGGERS = ("hypothesis", "matplotlib", "numba")


def log_file_for(log_dir: str = DEFAULT_LOG_DIR) -> Path:
    """날짜별 로그 파일 경로 (디렉토리는 필요 시 생성)"""
    directory = Path(log_dir)
    directory.mkdir(parents=True, exist_ok=True)
    return directory / f"{datetime.now().strftime('%Y-%m-%d')}.log"


def setup_logging(
    level: str = "DEBUG",
    console_level: str = "INFO",
    log_dir: str = DEFAULT_LOG_DIR,
) -> Path:
    """전역 로깅 설정

    Args:
        level: 파일 로그 레벨 (DEBUG/INFO/WARNING/ERROR)
        console_level: 콘솔 로그 레벨 (기본 INFO)
        log_dir: 로그 디렉토리

    Returns:
        현재 기록 중인 로그 파일 경로
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)

    # 재설정 시 기존 핸들러 제거
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        handler.close()

    log_file = log_file_for(log_dir)

    # 파일 핸들러: 샘플 단위 수치까지 DEBUG로 기록
    file_handler = logging.FileHandler(log_file, encoding="utf-8")
    file_handler.setLevel(getattr(logging, level.upper()))
    file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
    root_logger.addHandler(file_handler)

    # 콘솔 핸들러: 스위트/스윕 요약만
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(getattr(logging, console_level.upper()))
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))
    root_logger.addHandler(console_handler)

    root_logger.debug(f"Logging initialized: file={log_file}, level={level}")

    for name in NOISY_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)

    return log_file


def configure_levels(file_level: str = "DEBUG", console_level: str = "INFO") -> None:
    """설치된 핸들러의 레벨만 변경 (핸들러는 그대로 둠)

    CLI 명령이 설정값을 반영할 때 사용한다.
    """
    for handler in logging.getLogger().handlers:
        if isinstance(handler, logging.FileHandler):
            handler.setLevel(getattr(logging, file_level.upper()))
        elif isinstance(handler, logging.StreamHandler):
            handler.setLevel(getattr(logging, console_level.upper()))


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """로거 인스턴스 반환

    Args:
        name: 로거 이름 (보통 __name__ 사용)

    Example:
        >>> from proca_lab.utils.logger import get_logger
        >>> logger = get_logger(__name__)
        >>> logger.debug("샘플 잔차 1.2e-16")
    """
    return logging.getLogger(name or __name__)


# 모듈 임포트 시 자동 초기화
setup_logging()
