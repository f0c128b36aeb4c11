"""
Literals, clauses, annotated partial assignments and ground resolution.

Literals are DIMACS integers: variable ``v`` is the literal ``v``, its negation
is ``-v``. Internally the 2n literals of an n-variable problem are also
addressed as *points* 0..2n-1 (positives first, then negatives), which is the
index space permutations and dense value arrays use.

Architecture:
- Clause: immutable, duplicate-free, tautology-free literal set
- AnnotatedAssignment: ordered (literal, reason) entries, reason being the
  BRANCH marker, a ground Clause or an augmented clause
- poss / curr / resolve_ground / resolve_reasons: the ground operations every
  other module builds on
"""

from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from .errors import InconsistentAssignment, NotResolvable, TautologyError, ZapError


def lit_to_point(lit: int, n: int) -> int:
    """Point index of a literal in an n-variable space."""
    return lit - 1 if lit > 0 else n - lit - 1


def point_to_lit(point: int, n: int) -> int:
    """Literal at a point index of an n-variable space."""
    return point + 1 if point < n else -(point - n + 1)


def _check_literal(lit: Any) -> int:
    if isinstance(lit, bool) or not isinstance(lit, (int, np.integer)):
        raise ZapError(f"Literal must be a nonzero integer, got {lit!r}")
    lit = int(lit)
    if lit == 0:
        raise ZapError("Literal 0 is not a valid literal")
    return lit


class Clause:
    """
    A disjunction of literals, stored as a sorted tuple (ordered by variable).

    Duplicates are merged; a clause containing l and -l is rejected.
    The empty clause denotes contradiction.
    """

    __slots__ = ("_lits", "_set", "_hash")

    def __init__(self, literals: Iterable[int] = ()):
        lits = {_check_literal(lit) for lit in literals}
        for lit in lits:
            if -lit in lits:
                raise TautologyError(f"Clause contains both {lit} and {-lit}")
        self._lits: Tuple[int, ...] = tuple(sorted(lits, key=abs))
        self._set = frozenset(lits)
        self._hash = hash(self._set)

    @classmethod
    def empty(cls) -> "Clause":
        return cls(())

    @property
    def literals(self) -> Tuple[int, ...]:
        return self._lits

    @property
    def variables(self) -> frozenset:
        return frozenset(abs(lit) for lit in self._lits)

    @property
    def negated_literals(self) -> Tuple[int, ...]:
        return tuple(-lit for lit in self._lits)

    @property
    def max_var(self) -> int:
        return max((abs(lit) for lit in self._lits), default=0)

    def is_empty(self) -> bool:
        return not self._lits

    def is_satisfied_by(self, model: Dict[int, bool]) -> bool:
        """True if some literal is true under a (variable -> bool) model."""
        return any(model.get(abs(lit), False) == (lit > 0) for lit in self._lits)

    def __iter__(self) -> Iterator[int]:
        return iter(self._lits)

    def __len__(self) -> int:
        return len(self._lits)

    def __contains__(self, lit: object) -> bool:
        return lit in self._set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Clause):
            return NotImplemented
        return self._set == other._set

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Clause") -> bool:
        return (len(self), self._lits) < (len(other), other._lits)

    def __repr__(self) -> str:
        return f"Clause({' '.join(str(lit) for lit in self._lits)})"

    def __str__(self) -> str:
        if not self._lits:
            return "⊥"
        return " ∨ ".join(f"¬{-lit}" if lit < 0 else str(lit) for lit in self._lits)


class _Branch:
    """Reason marker for decision literals."""

    _instance: Optional["_Branch"] = None

    def __new__(cls) -> "_Branch":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BRANCH"

    def __reduce__(self):
        return (_Branch, ())


BRANCH = _Branch()


def reason_clause(reason: Any) -> Optional[Clause]:
    """Ground clause behind a reason (the base of an augmented reason), None for BRANCH."""
    if reason is BRANCH:
        return None
    return getattr(reason, "base", reason)


@dataclass(frozen=True)
class Entry:
    """One step of an annotated assignment."""
    literal: int
    reason: Any = BRANCH


class AnnotatedAssignment:
    """
    Ordered sequence of (literal, reason) pairs.

    Literals are pairwise distinct and mutually consistent. When ``num_vars``
    is given the assignment also keeps a dense int8 array over the 2n points
    (1 true, -1 false, 0 unvalued) for vectorized instance scans.
    """

    def __init__(self, entries: Iterable[Tuple[int, Any]] = (), num_vars: Optional[int] = None):
        self._entries: List[Entry] = []
        self._pos: Dict[int, int] = {}
        self.num_vars = num_vars
        self._values = np.zeros(2 * num_vars, dtype=np.int8) if num_vars is not None else None
        for lit, reason in entries:
            self.append(lit, reason)

    @classmethod
    def from_literals(cls, literals: Iterable[int], num_vars: Optional[int] = None) -> "AnnotatedAssignment":
        """Assignment whose every entry is a decision."""
        return cls(((lit, BRANCH) for lit in literals), num_vars=num_vars)

    def append(self, lit: int, reason: Any = BRANCH) -> None:
        lit = _check_literal(lit)
        if lit in self._pos or -lit in self._pos:
            raise InconsistentAssignment(f"Variable {abs(lit)} is already valued")
        if self._values is not None:
            if abs(lit) > self.num_vars:
                raise ZapError(f"Literal {lit} outside {self.num_vars} variables")
            self._values[lit_to_point(lit, self.num_vars)] = 1
            self._values[lit_to_point(-lit, self.num_vars)] = -1
        self._pos[lit] = len(self._entries)
        self._entries.append(Entry(lit, reason))

    def truncate(self, length: int) -> None:
        """Drop every entry at position >= length."""
        for entry in self._entries[length:]:
            del self._pos[entry.literal]
            if self._values is not None:
                self._values[lit_to_point(entry.literal, self.num_vars)] = 0
                self._values[lit_to_point(-entry.literal, self.num_vars)] = 0
        del self._entries[length:]

    def value(self, lit: int) -> Optional[bool]:
        if lit in self._pos:
            return True
        if -lit in self._pos:
            return False
        return None

    def is_true(self, lit: int) -> bool:
        return lit in self._pos

    def is_false(self, lit: int) -> bool:
        return -lit in self._pos

    def is_unvalued(self, lit: int) -> bool:
        return lit not in self._pos and -lit not in self._pos

    def index_of(self, lit: int) -> Optional[int]:
        """Position of the entry that valued lit's variable, either sign."""
        pos = self._pos.get(lit)
        return pos if pos is not None else self._pos.get(-lit)

    def reason_of(self, lit: int) -> Any:
        """Reason of the entry that made lit true."""
        return self._entries[self._pos[lit]].reason

    @property
    def values(self) -> np.ndarray:
        if self._values is None:
            raise ZapError("Dense values need an assignment built with num_vars")
        return self._values

    @property
    def literals(self) -> List[int]:
        return [entry.literal for entry in self._entries]

    @property
    def decision_count(self) -> int:
        return sum(1 for entry in self._entries if entry.reason is BRANCH)

    def model(self, num_vars: Optional[int] = None) -> Dict[int, bool]:
        """Total model: valued variables as assigned, the rest False."""
        n = num_vars if num_vars is not None else self.num_vars
        if n is None:
            n = max((abs(lit) for lit in self._pos), default=0)
        model = {v: False for v in range(1, n + 1)}
        for lit in self._pos:
            model[abs(lit)] = lit > 0
        return model

    def validate(self) -> None:
        """
        Check the annotation conditions on every prefix: each non-branch literal
        belongs to its reason, and the reason had no other possible literal
        when the literal was added.
        """
        for i, entry in enumerate(self._entries):
            clause = reason_clause(entry.reason)
            if clause is None:
                continue
            if entry.literal not in clause:
                raise InconsistentAssignment(
                    f"Entry {i}: literal {entry.literal} not in its reason {clause!r}"
                )
            possible = sum(
                1 for lit in clause
                if not (-lit in self._pos and self._pos[-lit] < i)
            ) - 1
            if possible != 0:
                raise InconsistentAssignment(
                    f"Entry {i}: reason {clause!r} was not unit (poss={possible})"
                )

    def copy(self) -> "AnnotatedAssignment":
        dup = AnnotatedAssignment(num_vars=self.num_vars)
        for entry in self._entries:
            dup.append(entry.literal, entry.reason)
        return dup

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Entry]:
        return iter(self._entries)

    def __getitem__(self, index: int) -> Entry:
        return self._entries[index]

    def __repr__(self) -> str:
        return f"AnnotatedAssignment({self.literals})"


def poss(c: Clause, P: AnnotatedAssignment) -> int:
    """Number of literals of c not falsified by P, minus one."""
    return sum(1 for lit in c if not P.is_false(lit)) - 1


def curr(c: Clause, P: AnnotatedAssignment) -> int:
    """Number of literals of c satisfied by P, minus one."""
    return sum(1 for lit in c if P.is_true(lit)) - 1


def is_unit(c: Clause, P: AnnotatedAssignment) -> bool:
    return poss(c, P) == 0 and curr(c, P) == -1


def resolve_ground(c1: Clause, c2: Clause) -> Clause:
    """Resolve two clauses that clash on exactly one literal."""
    clashes = [lit for lit in c1 if -lit in c2]
    if len(clashes) != 1:
        raise NotResolvable(
            f"{c1!r} and {c2!r} clash on {len(clashes)} literals, expected exactly one"
        )
    lit = clashes[0]
    return Clause([x for x in c1 if x != lit] + [x for x in c2 if x != -lit])


def resolve_reasons(r1: Any, r2: Any) -> Any:
    """Resolve two ground reasons; BRANCH acts as the identity."""
    if r1 is BRANCH:
        return r2
    if r2 is BRANCH:
        return r1
    return resolve_ground(r1, r2)
