"""
Independent brute-force deciders used as correctness anchors.

Nothing here touches the engine's clause, assignment or group code: clauses
are plain iterables of DIMACS integers and parity constraints anything with
``vars`` and ``rhs`` (or a (vars, rhs) pair).
"""

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import BudgetExceeded, ZapError

DPLL_VAR_BUDGET = 24
ENUMERATION_VAR_BUDGET = 20


@dataclass(frozen=True)
class OracleResult:
    status: str
    model: Optional[Dict[int, bool]] = None

    @property
    def satisfiable(self) -> bool:
        return self.status == "SAT"


def _normalize(clauses: Iterable[Iterable[int]]) -> List[Tuple[int, ...]]:
    return [tuple(int(lit) for lit in clause) for clause in clauses]


def _num_vars(clauses: Sequence[Tuple[int, ...]], num_vars: Optional[int]) -> int:
    seen = max((abs(lit) for clause in clauses for lit in clause), default=0)
    if num_vars is None:
        return seen
    if seen > num_vars:
        raise ZapError(f"Clause mentions variable {seen} beyond {num_vars}")
    return num_vars


def _satisfies(clauses: Sequence[Tuple[int, ...]], model: Dict[int, bool]) -> bool:
    return all(any(model[abs(lit)] == (lit > 0) for lit in clause) for clause in clauses)


def dpll_solve(
    clauses: Iterable[Iterable[int]], num_vars: Optional[int] = None, budget: int = DPLL_VAR_BUDGET
) -> OracleResult:
    """Plain DPLL with unit propagation; the model is re-checked before returning."""
    cnf = _normalize(clauses)
    n = _num_vars(cnf, num_vars)
    if n > budget:
        raise BudgetExceeded(f"{n} variables exceed the DPLL budget of {budget}")

    def simplify(cnf: List[Tuple[int, ...]], lit: int) -> Optional[List[Tuple[int, ...]]]:
        out = []
        for clause in cnf:
            if lit in clause:
                continue
            reduced = tuple(x for x in clause if x != -lit)
            if not reduced:
                return None
            out.append(reduced)
        return out

    def search(cnf: List[Tuple[int, ...]], assignment: Dict[int, bool]) -> Optional[Dict[int, bool]]:
        while True:
            unit = next((clause[0] for clause in cnf if len(clause) == 1), None)
            if unit is None:
                break
            assignment = {**assignment, abs(unit): unit > 0}
            cnf = simplify(cnf, unit)
            if cnf is None:
                return None
        if not cnf:
            return assignment
        var = abs(cnf[0][0])
        for lit in (var, -var):
            reduced = simplify(cnf, lit)
            if reduced is not None:
                found = search(reduced, {**assignment, var: lit > 0})
                if found is not None:
                    return found
        return None

    if any(not clause for clause in cnf):
        return OracleResult("UNSAT")
    found = search(cnf, {})
    if found is None:
        return OracleResult("UNSAT")
    model = {v: found.get(v, False) for v in range(1, n + 1)}
    if not _satisfies(cnf, model):
        raise ZapError("DPLL produced a model that does not satisfy the clauses")
    return OracleResult("SAT", model)


def _parity_rows(constraints) -> List[Tuple[Tuple[int, ...], int]]:
    rows = []
    for c in constraints:
        variables, rhs = (c.vars, c.rhs) if hasattr(c, "vars") else c
        rows.append((tuple(variables), int(rhs)))
    return rows


def gf2_solve(constraints: Iterable, num_vars: Optional[int] = None) -> OracleResult:
    """Gaussian elimination over GF(2) on int bitsets; free variables set to 0."""
    rows = _parity_rows(constraints)
    n = max((v for variables, _ in rows for v in variables), default=0)
    n = max(n, num_vars or 0)
    rhs_bit = 1 << n
    work = []
    for variables, rhs in rows:
        row = 0
        for v in variables:
            row ^= 1 << (v - 1)
        work.append(row | (rhs_bit if rhs else 0))

    pivots: List[int] = []
    row_idx = 0
    for col in range(n):
        pivot = next((r for r in range(row_idx, len(work)) if (work[r] >> col) & 1), None)
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and (work[r] >> col) & 1:
                work[r] ^= work[row_idx]
        pivots.append(col)
        row_idx += 1
        if row_idx == len(work):
            break
    if any(row == rhs_bit for row in work):
        return OracleResult("UNSAT")

    model = {v: False for v in range(1, n + 1)}
    for r, col in enumerate(pivots):
        model[col + 1] = bool(work[r] & rhs_bit)
    for variables, rhs in rows:
        if sum(model[v] for v in variables) % 2 != rhs:
            raise ZapError("Elimination produced a model violating a parity constraint")
    return OracleResult("SAT", model)


def enumerate_models(
    clauses: Iterable[Iterable[int]], num_vars: Optional[int] = None, budget: int = ENUMERATION_VAR_BUDGET
) -> int:
    """Exact model count by evaluating every assignment at once."""
    cnf = _normalize(clauses)
    n = _num_vars(cnf, num_vars)
    if n > budget:
        raise BudgetExceeded(f"{n} variables exceed the enumeration budget of {budget}")
    bits = (np.arange(2**n, dtype=np.int64)[:, None] >> np.arange(n)) & 1
    alive = np.ones(2**n, dtype=bool)
    for clause in cnf:
        sat = np.zeros(2**n, dtype=bool)
        for lit in clause:
            column = bits[:, abs(lit) - 1]
            sat |= column == 1 if lit > 0 else column == 0
        alive &= sat
    return int(alive.sum())


def parity_clauses(constraint) -> List[Tuple[int, ...]]:
    """The 2^(k-1) clauses forbidding each assignment of the wrong parity."""
    (variables, rhs), = _parity_rows([constraint])
    out = []
    for bits in itertools.product((0, 1), repeat=len(variables)):
        if sum(bits) % 2 != rhs:
            out.append(tuple(-v if b else v for v, b in zip(variables, bits)))
    return out
