"""Proca Lab - 스핀-1 반대칭 텐서장 항등식 검증 도구"""

__version__ = "0.1.0"
