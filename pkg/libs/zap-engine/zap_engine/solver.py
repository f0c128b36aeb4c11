"""
Unit propagation and relevance-bounded learning (RBL) over ground and
augmented clause databases.

Architecture:
- unit_propagate_ground / unit_propagate_augmented: FIFO over clause indices;
  a clause is revisited whenever a literal whose negation occurs in it (or,
  for augmented clauses, in its group closure) becomes true. A falsified
  clause is resolved once against the reason of its latest-assigned
  literal and returned as the nogood.
- RBLSolver: propagate, then on conflict resolve the nogood back to the
  latest decision, backtrack to where it is unit, learn it and assert its
  open literal with the nogood as reason. Learned clauses that no longer
  have an instance with at most k + 1 unfalsified literals are dropped.
  Otherwise branch.

Each backjump replaces a decision by an implied literal at the same trail
position, so the per-level assignment counts grow lexicographically and
the loop terminates.

Augmented reasons are stored rebased onto the instance that fired, so a
conflict always resolves on the base clauses.
"""

import logging
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property
from random import Random
from typing import Any, Callable, Dict, List, Optional, Sequence, Union

from .augmented import AugmentedClause
from .core import (
    BRANCH,
    AnnotatedAssignment,
    Clause,
    curr,
    poss,
    reason_clause,
    resolve_ground,
    resolve_reasons,
)
from .errors import BudgetExceeded, NoBranchAvailable, ZapError
from .group import DEFAULT_ENUM_THRESHOLD, PermGroup
from .perm import Permutation
from .resolution import resolve_augmented

logger = logging.getLogger(__name__)

BRANCH_HEURISTICS = ("pos-unsat", "first")

Reason = Union[Clause, AugmentedClause]
OnAssign = Optional[Callable[[int, Reason], None]]


@dataclass(frozen=True)
class SolverOptions:
    """Solver configuration."""

    relevance: int = 3
    branch: str = "pos-unsat"
    seed: Optional[int] = None
    enum_threshold: int = DEFAULT_ENUM_THRESHOLD
    expansion_cap: int = 20_000
    max_branches: Optional[int] = None
    record_trace: bool = False

    def __post_init__(self):
        if self.relevance < 0:
            raise ZapError(f"Relevance bound must be nonnegative, got {self.relevance}")
        if self.branch not in BRANCH_HEURISTICS:
            raise ZapError(f"Unknown branch heuristic '{self.branch}', expected one of {BRANCH_HEURISTICS}")
        if self.expansion_cap < 1 or self.enum_threshold < 1:
            raise ZapError("expansion_cap and enum_threshold must be positive")


@dataclass
class SolverStats:
    branches: int = 0
    propagations: int = 0
    conflicts: int = 0
    learned: int = 0
    purged: int = 0
    max_learned: int = 0
    fallback_branches: int = 0

    def as_dict(self) -> Dict[str, int]:
        return dict(self.__dict__)

    def format(self) -> str:
        """One key=value line per counter."""
        return "\n".join(f"{key}={value}" for key, value in self.as_dict().items())


@dataclass(frozen=True)
class Event:
    """One step of a solver trace."""

    kind: str
    literal: Optional[int] = None
    clause: Optional[Clause] = None


@dataclass(frozen=True)
class PropagationResult:
    """Either a nogood falsified by the assignment, or the extended assignment."""

    assignment: AnnotatedAssignment
    conflict: Optional[Reason] = None

    @property
    def is_conflict(self) -> bool:
        return self.conflict is not None


@dataclass
class SolveResult:
    status: str
    model: Optional[Dict[int, bool]]
    stats: SolverStats
    learned: List[Reason] = field(default_factory=list)
    events: List[Event] = field(default_factory=list)

    @property
    def satisfiable(self) -> bool:
        return self.status == "SAT"


@dataclass(frozen=True)
class UnitInstance:
    """An instance with no true literal and at most one unvalued one."""

    clause: AugmentedClause
    instance: Clause
    literal: Optional[int]

    @cached_property
    def element(self) -> Permutation:
        return self.clause.transporter(self.instance)

    @property
    def is_conflict(self) -> bool:
        return self.literal is None


# -- ground propagation -----------------------------------------------------


def _latest_literal(c: Clause, P: AnnotatedAssignment) -> int:
    """The literal of c whose negation was assigned last."""
    return max(c, key=lambda lit: P.index_of(lit))


def unit_propagate_ground(
    C: Sequence[Clause], P: AnnotatedAssignment, on_assign: OnAssign = None
) -> PropagationResult:
    """Extend P in place with every unit consequence of C, or return a nogood."""
    occurs: Dict[int, List[int]] = {}
    for i, c in enumerate(C):
        for lit in c:
            occurs.setdefault(lit, []).append(i)
    queue = deque(range(len(C)))
    queued = set(queue)
    while queue:
        i = queue.popleft()
        queued.discard(i)
        c = C[i]
        if any(P.is_true(lit) for lit in c):
            continue
        unvalued = [lit for lit in c if P.is_unvalued(lit)]
        if not unvalued:
            if c.is_empty():
                return PropagationResult(P, c)
            latest = _latest_literal(c, P)
            return PropagationResult(P, resolve_reasons(c, P.reason_of(-latest)))
        if len(unvalued) > 1:
            continue
        lit = unvalued[0]
        P.append(lit, c)
        if on_assign:
            on_assign(lit, c)
        for j in occurs.get(-lit, ()):
            if j not in queued:
                queue.append(j)
                queued.add(j)
    return PropagationResult(P)


# -- augmented propagation --------------------------------------------------


def find_unit_instance(
    ac: AugmentedClause, P: AnnotatedAssignment, cap: int = 20_000
) -> Optional[UnitInstance]:
    """First instance of ac that is unit (or falsified) under P."""
    inst = ac.find_unit(P.values, cap=cap)
    if inst is None:
        return None
    unvalued = [lit for lit in inst if P.is_unvalued(lit)]
    return UnitInstance(ac, inst, unvalued[0] if unvalued else None)


def resolve_with_reason(conflict: Reason, reason: Reason, num_vars: int, enum_threshold: int) -> Reason:
    """Resolve a falsified clause against the reason of one of its literals."""
    if isinstance(conflict, Clause):
        return resolve_ground(conflict, reason_clause(reason))
    if isinstance(reason, Clause):
        reason = AugmentedClause(reason, PermGroup.trivial(num_vars))
    return resolve_augmented(conflict, reason, enum_threshold=enum_threshold)


def _explain(
    inst: Clause, ac: AugmentedClause, P: AnnotatedAssignment, enum_threshold: int
) -> AugmentedClause:
    conflict = AugmentedClause(inst, ac.group) if inst != ac.base else ac
    if inst.is_empty():
        return conflict
    reason = P.reason_of(-_latest_literal(inst, P))
    if reason is BRANCH:
        return conflict
    return resolve_with_reason(conflict, reason, ac.n, enum_threshold)


def unit_propagate_augmented(
    C: Sequence[AugmentedClause],
    P: AnnotatedAssignment,
    on_assign: OnAssign = None,
    *,
    cap: int = 20_000,
    enum_threshold: int = DEFAULT_ENUM_THRESHOLD,
) -> PropagationResult:
    """
    Extend P in place from unit instances of C, each recorded with the
    clause rebased onto that instance, or return the resolved nogood.
    P must carry dense values (built with num_vars).
    """
    occurs: Dict[int, List[int]] = {}
    for i, ac in enumerate(C):
        for lit in ac.closure():
            occurs.setdefault(lit, []).append(i)
    queue = deque(range(len(C)))
    queued = set(queue)
    while queue:
        i = queue.popleft()
        queued.discard(i)
        ac = C[i]
        while True:
            unit = find_unit_instance(ac, P, cap)
            if unit is None:
                break
            if unit.is_conflict:
                return PropagationResult(P, _explain(unit.instance, ac, P, enum_threshold))
            reason = AugmentedClause(unit.instance, ac.group) if unit.instance != ac.base else ac
            P.append(unit.literal, reason)
            if on_assign:
                on_assign(unit.literal, reason)
            for j in occurs.get(-unit.literal, ()):
                if j not in queued and j != i:
                    queue.append(j)
                    queued.add(j)
    return PropagationResult(P)


def has_relevant_instance(
    ac: Union[AugmentedClause, Clause], P: AnnotatedAssignment, k: int, cap: int = 20_000
) -> bool:
    """True if some instance has poss <= k under P."""
    if isinstance(ac, Clause):
        return poss(ac, P) <= k
    return ac.find_relevant(P.values, k, cap=cap) is not None


def is_solution(C: Sequence[Union[AugmentedClause, Clause]], P: AnnotatedAssignment, cap: int = 20_000) -> bool:
    """No instance of any clause lacks a true literal under P."""
    for c in C:
        if isinstance(c, Clause):
            if curr(c, P) < 0:
                return False
        elif c.find_unsatisfied(P.values, cap=cap) is not None:
            return False
    return True


def branch_select(
    C: Sequence[Union[AugmentedClause, Clause]],
    P: AnnotatedAssignment,
    heuristic: str = "pos-unsat",
    rng: Optional[Random] = None,
    num_vars: Optional[int] = None,
    cap: int = 20_000,
) -> Optional[int]:
    """
    Branch literal for P. "pos-unsat" takes an unvalued positive literal from
    the first unsatisfied instance of each clause (the smallest, or a seeded
    choice); None means no such literal exists. "first" takes the lowest
    unvalued variable in positive phase.
    """
    n = num_vars if num_vars is not None else P.num_vars
    if heuristic == "first":
        for v in range(1, n + 1):
            if P.is_unvalued(v):
                return v
        raise NoBranchAvailable("Every variable is valued")
    candidates = set()
    for c in C:
        inst = c if isinstance(c, Clause) else c.find_unsatisfied(P.values, cap=cap)
        if inst is None or (isinstance(c, Clause) and curr(c, P) >= 0):
            continue
        candidates.update(lit for lit in inst if lit > 0 and P.is_unvalued(lit))
    if not candidates:
        return None
    if rng is None:
        return min(candidates)
    return rng.choice(sorted(candidates))


# -- RBL --------------------------------------------------------------------


@dataclass
class SolverState:
    """Original clauses C, learned clauses D, assignment P, relevance bound k."""

    C: List[Reason]
    D: List[Reason]
    P: AnnotatedAssignment
    k: int
    branch_heuristic: str
    stats: SolverStats = field(default_factory=SolverStats)


class RBLSolver:
    """
    Relevance-bounded learning solver.

    Runs in ground mode (plain clauses, ground resolution) when every group
    is trivial and in augmented mode otherwise.
    """

    def __init__(
        self,
        clauses: Sequence[Union[AugmentedClause, Clause]],
        num_vars: Optional[int] = None,
        options: Optional[SolverOptions] = None,
    ):
        self.options = options or SolverOptions()
        groups = [c.group for c in clauses if isinstance(c, AugmentedClause)]
        n = num_vars
        if n is None:
            n = groups[0].n if groups else max((c.max_var for c in clauses), default=0)
        if any(g.n != n for g in groups):
            raise ZapError(f"Every clause group must act on {n} variables")
        if any((c.base if isinstance(c, AugmentedClause) else c).max_var > n for c in clauses):
            raise ZapError(f"A clause mentions a variable beyond {n}")
        self.num_vars = n
        self.ground = all(g.is_trivial() for g in groups)
        if self.ground:
            C = [c.base if isinstance(c, AugmentedClause) else c for c in clauses]
        else:
            trivial = PermGroup.trivial(n)
            C = [c if isinstance(c, AugmentedClause) else AugmentedClause(c, trivial) for c in clauses]
        self.state = SolverState(
            C=C, D=[], P=AnnotatedAssignment(num_vars=n),
            k=self.options.relevance, branch_heuristic=self.options.branch,
        )
        self.rng = Random(self.options.seed) if self.options.seed is not None else None
        self.events: List[Event] = []
        self._learned_keys: Dict[Any, Reason] = {}

    @property
    def stats(self) -> SolverStats:
        return self.state.stats

    def _trace(self, kind: str, literal: Optional[int] = None, clause: Optional[Reason] = None) -> None:
        if self.options.record_trace:
            self.events.append(Event(kind, literal, reason_clause(clause) if clause is not None else None))

    def _on_assign(self, lit: int, reason: Reason) -> None:
        self.stats.propagations += 1
        self._trace("propagate", lit, reason)

    def propagate(self) -> PropagationResult:
        state = self.state
        database = state.C + state.D
        if self.ground:
            return unit_propagate_ground(database, state.P, self._on_assign)
        return unit_propagate_augmented(
            database, state.P, self._on_assign,
            cap=self.options.expansion_cap, enum_threshold=self.options.enum_threshold,
        )

    def _key(self, c: Reason) -> Any:
        if isinstance(c, Clause):
            return c
        return c.base, frozenset(g._key for g in c.group.generators)

    def analyze(self, conflict: Reason) -> Reason:
        """
        Keep resolving the nogood against the reason of its latest literal
        until that literal was falsified by a decision. Without decisions this
        ends at the empty clause.
        """
        P = self.state.P
        while True:
            nogood = reason_clause(conflict)
            if nogood.is_empty():
                return conflict
            reason = P.reason_of(-_latest_literal(nogood, P))
            if reason is BRANCH:
                return conflict
            conflict = resolve_with_reason(conflict, reason, self.num_vars, self.options.enum_threshold)

    def _backtrack(self, nogood: Clause) -> int:
        """Undo P back to the point where the nogood is unit; return its open literal."""
        P = self.state.P
        latest = _latest_literal(nogood, P)
        P.truncate(P.index_of(latest))
        return latest

    def _assert_learned(self, lit: int, learned: Reason) -> None:
        self.state.P.append(lit, learned)
        self._on_assign(lit, learned)

    def _learn(self, c: Reason) -> None:
        state = self.state
        key = self._key(c)
        if key not in self._learned_keys:
            self._learned_keys[key] = c
            state.D.append(c)
            self.stats.learned += 1
            self._trace("learn", clause=c)
            logger.debug("Learned %s (|D| = %d)", reason_clause(c), len(state.D))
        cap = self.options.expansion_cap
        kept = []
        for d in state.D:
            if d is c or has_relevant_instance(d, state.P, state.k, cap):
                kept.append(d)
            else:
                del self._learned_keys[self._key(d)]
                self.stats.purged += 1
                self._trace("purge", clause=d)
        state.D = kept
        self.stats.max_learned = max(self.stats.max_learned, len(kept))

    def _branch_literal(self) -> int:
        state = self.state
        lit = None
        if state.branch_heuristic == "pos-unsat":
            lit = branch_select(state.C, state.P, "pos-unsat", self.rng, self.num_vars, self.options.expansion_cap)
            if lit is None:
                self.stats.fallback_branches += 1
                logger.info("No positive literal in an unsatisfied instance; branching on first unvalued")
        if lit is None:
            lit = branch_select(state.C, state.P, "first", num_vars=self.num_vars)
        return lit

    def solve(self) -> SolveResult:
        state = self.state
        while True:
            result = self.propagate()
            if result.is_conflict:
                self.stats.conflicts += 1
                self._trace("conflict", clause=result.conflict)
                learned = self.analyze(result.conflict)
                nogood = reason_clause(learned)
                if nogood.is_empty():
                    logger.debug("Derived the empty clause after %d branches", self.stats.branches)
                    return self._result("UNSAT", None)
                lit = self._backtrack(nogood)
                self._learn(learned)
                self._assert_learned(lit, learned)
                continue
            if is_solution(state.C, state.P, self.options.expansion_cap):
                return self._result("SAT", state.P.model(self.num_vars))
            lit = self._branch_literal()
            self.stats.branches += 1
            if self.options.max_branches is not None and self.stats.branches > self.options.max_branches:
                raise BudgetExceeded(f"More than {self.options.max_branches} branches")
            self._trace("branch", lit)
            logger.debug("Branch %d on %d at depth %d", self.stats.branches, lit, len(state.P))
            state.P.append(lit, BRANCH)

    def _result(self, status: str, model: Optional[Dict[int, bool]]) -> SolveResult:
        return SolveResult(status, model, self.stats, list(self.state.D), list(self.events))


def rbl_solve(
    clauses: Sequence[Union[AugmentedClause, Clause]],
    num_vars: Optional[int] = None,
    options: Optional[SolverOptions] = None,
    **overrides: Any,
) -> SolveResult:
    """Solve a clause database; keyword overrides patch the options."""
    if overrides:
        options = replace(options or SolverOptions(), **overrides)
    return RBLSolver(clauses, num_vars, options).solve()
