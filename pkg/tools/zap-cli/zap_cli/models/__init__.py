"""Pydantic models for zap files and solver configuration."""

from .config import SolverConfig
from .zapfile import ZapClauseModel, ZapFile, parse_zap, read_theory, render, write_zap

__all__ = [
    "SolverConfig",
    "ZapClauseModel",
    "ZapFile",
    "parse_zap",
    "read_theory",
    "render",
    "write_zap",
]
