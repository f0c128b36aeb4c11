"""DIMACS CNF reading and writing."""

import logging
from typing import Iterable, List, Tuple

from .core import Clause
from .errors import ParseError, TautologyError

logger = logging.getLogger(__name__)


def parse_dimacs(text: str) -> Tuple[int, List[Clause]]:
    """
    Parse DIMACS CNF text into (num_vars, clauses).

    Clauses may span lines; a line starting with '%' ends the clause section
    (SATLIB convention). Tautologies are rejected.
    """
    num_vars = None
    declared = None
    clauses: List[Clause] = []
    pending: List[int] = []
    pending_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise ParseError("Duplicate problem line", line=lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"Expected 'p cnf <vars> <clauses>', got '{line}'", line=lineno)
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"Non-integer counts in '{line}'", line=lineno) from None
            continue
        if num_vars is None:
            raise ParseError("Clause before problem line", line=lineno)
        column = 1
        for token in line.split():
            column = raw.find(token, column - 1) + 1
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"Bad literal '{token}'", line=lineno, column=column) from None
            if abs(lit) > num_vars:
                raise ParseError(
                    f"Literal {lit} exceeds declared {num_vars} variables",
                    line=lineno, column=column,
                )
            if lit == 0:
                try:
                    clauses.append(Clause(pending))
                except TautologyError as exc:
                    raise TautologyError(f"line {pending_line or lineno}: {exc}") from None
                pending = []
                pending_line = 0
            else:
                if not pending:
                    pending_line = lineno
                pending.append(lit)
            column += len(token)

    if num_vars is None:
        raise ParseError("Missing problem line 'p cnf'")
    if pending:
        raise ParseError("Last clause is not terminated by 0", line=pending_line)
    if declared is not None and declared != len(clauses):
        logger.info("DIMACS header declares %d clauses, found %d", declared, len(clauses))
    return num_vars, clauses


def format_dimacs(num_vars: int, clauses: Iterable[Clause], comments: Iterable[str] = ()) -> str:
    """Render clauses as DIMACS CNF text."""
    clauses = list(clauses)
    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p cnf {num_vars} {len(clauses)}")
    for clause in clauses:
        lines.append(" ".join([str(lit) for lit in clause] + ["0"]))
    return "\n".join(lines) + "\n"
