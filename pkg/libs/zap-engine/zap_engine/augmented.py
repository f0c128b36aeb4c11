"""
Augmented clauses: a base clause paired with a permutation group, standing for
every image of the base under the group.

Instance queries come in two flavours. Small clauses keep a dense instance
table (one row of points per instance) and answer by a vectorized scan over
the assignment's value array. Large ones run a backtrack descent over a chain
whose base starts with the clause's own points, so each node fixes the image
of one more clause literal and the count bounds prune early.
"""

import logging
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .core import Clause, lit_to_point, point_to_lit
from .errors import NotAnInstance, TooManyInstances, ZapError
from .group import PermGroup, clause_orbit
from .perm import Permutation

logger = logging.getLogger(__name__)

DEFAULT_INSTANCE_CAP = 10**6

_UNSET = object()


class AugmentedClause:
    """The pair (base, group); its instances are base^g for g in group."""

    def __init__(self, base: Clause, group: PermGroup):
        if not isinstance(base, Clause):
            base = Clause(base)
        if base.max_var > group.n:
            raise ZapError(f"Clause {base!r} mentions variables beyond the group's {group.n}")
        self.base = base
        self.group = group
        self._points = tuple(lit_to_point(lit, group.n) for lit in base)
        self._instances: Optional[frozenset] = None
        self._matrix = _UNSET
        self._matrix_cap = 0

    @property
    def n(self) -> int:
        return self.group.n

    @property
    def points(self) -> tuple:
        return self._points

    def __len__(self) -> int:
        return len(self.base)

    def __repr__(self) -> str:
        return f"AugmentedClause({self.base!r}, {self.group!r})"

    def __str__(self) -> str:
        gens = ", ".join(str(g) for g in self.group.generators)
        return f"({self.base}, <{gens}>)" if gens else f"({self.base}, 1)"

    # -- instance sets --------------------------------------------------------

    def _clause(self, points: Iterable[int]) -> Clause:
        return Clause(point_to_lit(int(p), self.n) for p in points)

    def instances(self, limit: Optional[int] = DEFAULT_INSTANCE_CAP) -> frozenset:
        """The orbit of the base clause; TooManyInstances past the limit."""
        if self._instances is None:
            if self.group.is_trivial():
                self._instances = frozenset([self.base])
            else:
                orbit = clause_orbit(self.group._arrays, self._points, limit=limit)
                self._instances = frozenset(self._clause(row) for row in orbit)
        if limit is not None and len(self._instances) > limit:
            raise TooManyInstances(f"More than {limit} instances")
        return self._instances

    def instance_matrix(self, cap: int = DEFAULT_INSTANCE_CAP) -> Optional[np.ndarray]:
        """Instance table (rows of sorted points, discovery order), None past cap."""
        if self._matrix is not _UNSET:
            if self._matrix is not None:
                return self._matrix if len(self._matrix) <= cap else None
            if cap <= self._matrix_cap:
                return None
        try:
            orbit = clause_orbit(self.group._arrays, self._points, limit=cap)
        except TooManyInstances:
            logger.debug("Instance table for %s exceeds %d rows", self.base, cap)
            self._matrix = None
        else:
            self._matrix = np.array(orbit, dtype=np.int64).reshape(len(orbit), len(self._points))
        self._matrix_cap = cap
        return self._matrix

    def image(self, g: Permutation) -> "AugmentedClause":
        return AugmentedClause(g.apply(self.base), self.group)

    def closure(self) -> frozenset:
        """Literals of the base's group closure."""
        return self.group.closure(self.base)

    def closure_variables(self) -> frozenset:
        return frozenset(abs(lit) for lit in self.closure())

    def transporter(self, c: Clause) -> Optional[Permutation]:
        """Some group element mapping the base onto c, or None."""
        if len(c) != len(self.base) or c.max_var > self.n:
            return None
        if c == self.base:
            return Permutation.identity(self.n)
        if self.group.is_trivial():
            return None
        target = frozenset(lit_to_point(lit, self.n) for lit in c)
        matrix = self._matrix if self._matrix is not _UNSET else None
        if matrix is not None:
            row = np.array(sorted(target), dtype=np.int64)
            if not (matrix == row).all(axis=1).any():
                return None
        chain = self.group.chain_for(self._points)
        levels = chain.levels
        m = len(self._points)

        def descend(i: int, r: np.ndarray) -> Optional[np.ndarray]:
            if i == m:
                return r
            for gamma, u in levels[i].transversal.items():
                if int(r[gamma]) in target:
                    found = descend(i + 1, r[u])
                    if found is not None:
                        return found
            return None

        found = descend(0, chain.identity)
        return Permutation._raw(self.n, found) if found is not None else None

    def is_instance(self, c: Clause) -> bool:
        return self.transporter(c) is not None

    def rebase(self, c_new: Clause) -> "AugmentedClause":
        """The same instance set, presented with c_new as its base."""
        if c_new == self.base:
            return self
        if not self.is_instance(c_new):
            raise NotAnInstance(f"{c_new!r} is not an instance of {self!r}")
        return AugmentedClause(c_new, self.group)

    def equivalent(self, other: "AugmentedClause", limit: Optional[int] = DEFAULT_INSTANCE_CAP) -> bool:
        if len(self) != len(other):
            return False
        return self.instances(limit) == other.instances(limit)

    # -- subsearch ------------------------------------------------------------

    def find_instance(
        self,
        values: np.ndarray,
        max_true: Optional[int] = None,
        max_unvalued: Optional[int] = None,
        min_false: int = 0,
        cap: int = DEFAULT_INSTANCE_CAP,
    ) -> Optional[Clause]:
        """
        First instance whose literal counts under ``values`` (point-indexed,
        1 true, -1 false, 0 unvalued) satisfy every bound, or None.
        """
        m = len(self._points)
        if min_false > m:
            return None
        matrix = self.instance_matrix(cap)
        if matrix is not None:
            return self._scan(matrix, values, max_true, max_unvalued, min_false)
        return self._descend(values, max_true, max_unvalued, min_false)

    def _scan(self, matrix, values, max_true, max_unvalued, min_false) -> Optional[Clause]:
        table = values[matrix]
        mask = np.ones(len(matrix), dtype=bool)
        if max_true is not None:
            mask &= (table == 1).sum(axis=1) <= max_true
        if max_unvalued is not None:
            mask &= (table == 0).sum(axis=1) <= max_unvalued
        if min_false:
            mask &= (table == -1).sum(axis=1) >= min_false
        if not mask.any():
            return None
        return self._clause(matrix[int(np.argmax(mask))])

    def _descend(self, values, max_true, max_unvalued, min_false) -> Optional[Clause]:
        chain = self.group.chain_for(self._points)
        levels = chain.levels
        m = len(self._points)
        max_true = m if max_true is None else max_true
        max_unvalued = m if max_unvalued is None else max_unvalued

        def descend(i: int, r: np.ndarray, t: int, u: int, f: int) -> Optional[np.ndarray]:
            if i == m:
                return r
            for gamma, tu in levels[i].transversal.items():
                v = values[int(r[gamma])]
                nt, nu, nf = t + (v == 1), u + (v == 0), f + (v == -1)
                if nt > max_true or nu > max_unvalued or nf + (m - i - 1) < min_false:
                    continue
                found = descend(i + 1, r[tu], nt, nu, nf)
                if found is not None:
                    return found
            return None

        found = descend(0, chain.identity, 0, 0, 0)
        if found is None:
            return None
        return self._clause(found[list(self._points)])

    def find_unit(self, values: np.ndarray, cap: int = DEFAULT_INSTANCE_CAP) -> Optional[Clause]:
        """An instance with no true literal and at most one unvalued one."""
        return self.find_instance(values, max_true=0, max_unvalued=1, cap=cap)

    def find_unsatisfied(self, values: np.ndarray, cap: int = DEFAULT_INSTANCE_CAP) -> Optional[Clause]:
        return self.find_instance(values, max_true=0, cap=cap)

    def find_relevant(
        self, values: np.ndarray, k: int, cap: int = DEFAULT_INSTANCE_CAP
    ) -> Optional[Clause]:
        """An instance with at most k + 1 unfalsified literals."""
        return self.find_instance(values, min_false=max(0, len(self._points) - 1 - k), cap=cap)


# -- module-level operations -------------------------------------------------


def instances(ac: AugmentedClause, limit: Optional[int] = DEFAULT_INSTANCE_CAP) -> frozenset:
    return ac.instances(limit)


def is_instance(ac: AugmentedClause, c: Clause) -> bool:
    return ac.is_instance(c)


def equivalent(a: AugmentedClause, b: AugmentedClause, limit: Optional[int] = DEFAULT_INSTANCE_CAP) -> bool:
    return a.equivalent(b, limit)


def rebase(ac: AugmentedClause, c_new: Clause) -> AugmentedClause:
    return ac.rebase(c_new)


def expand_theory(
    clauses: Sequence[AugmentedClause], cap: Optional[int] = DEFAULT_INSTANCE_CAP
) -> List[Clause]:
    """Every ground instance of every clause, deduplicated and sorted."""
    ground = set()
    for ac in clauses:
        ground |= ac.instances(cap)
        if cap is not None and len(ground) > cap:
            raise TooManyInstances(f"Theory expands past {cap} clauses")
    return sorted(ground)
