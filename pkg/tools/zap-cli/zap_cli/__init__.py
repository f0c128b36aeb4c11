"""
zap-cli

The `zap` command: solve, expand, encode, check, resolve and inspect
augmented clause theories stored as zap files or DIMACS CNF.
"""

__version__ = "0.1.0"

from zap_cli.models import SolverConfig, ZapClauseModel, ZapFile, parse_zap, read_theory, write_zap

__all__ = [
    "SolverConfig",
    "ZapClauseModel",
    "ZapFile",
    "parse_zap",
    "read_theory",
    "write_zap",
]
