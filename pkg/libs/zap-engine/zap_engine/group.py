"""
Permutation groups over the 2n literal points, indexed by a base and strong
generating set (BSGS).

Architecture:
- StabilizerChain: levels of (base point, strong generators, explicit
  transversal) over raw int32 image arrays. An element decomposes uniquely
  as u_k ... u_1 with u_i a transversal element of level i.
- Construction: sift the input generators, run Monte Carlo Schreier-Sims
  rounds fed by a product-replacement random element stream, then a
  deterministic pass over all Schreier generators that both verifies the
  chain and repairs it if a generator fails to sift. When the group order is
  already known (base change of an existing chain) the random phase alone
  is exact: it stops when the orbit product reaches the order.
- Subgroup search: set stabilizers and intersections share one backtrack
  over the chain, processed bottom-up, that prunes by a per-level image
  test and by orbits of the subgroup found so far. A node budget guards
  the search; past it, groups within the enumeration threshold are filtered
  element by element instead.

Design References:
- Seress, "Permutation Group Algorithms" (Schreier-Sims, base change)
- Holt, Eick, O'Brien, "Handbook of Computational Group Theory"
"""

import logging
import math
from random import Random
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .core import Clause, lit_to_point, point_to_lit
from .errors import InstanceCountMismatch, NoLift, TooManyInstances, ZapError
from .perm import Permutation

logger = logging.getLogger(__name__)

DEFAULT_ENUM_THRESHOLD = 10**6
SEARCH_NODE_BUDGET = 100_000
MONTE_CARLO_EXIT_ROUNDS = 10


def _inverse(arr: np.ndarray) -> np.ndarray:
    inv = np.empty_like(arr)
    inv[arr] = np.arange(len(arr), dtype=arr.dtype)
    return inv


def _first_moved(arr: np.ndarray) -> Optional[int]:
    moved = np.nonzero(arr != np.arange(len(arr)))[0]
    return int(moved[0]) if len(moved) else None


class _Level:
    """One level of a stabilizer chain."""

    __slots__ = ("base", "gens", "transversal", "orbit", "_inverses")

    def __init__(self, base: int, identity: np.ndarray):
        self.base = base
        self.gens: List[np.ndarray] = []
        self.transversal: Dict[int, np.ndarray] = {base: identity}
        self.orbit: List[int] = [base]
        self._inverses: Dict[int, np.ndarray] = {base: identity}

    def add_gen(self, s: np.ndarray) -> None:
        """Append a strong generator and extend the orbit incrementally."""
        self.gens.append(s)
        trans = self.transversal
        fresh: List[int] = []
        for p in list(self.orbit):
            q = int(s[p])
            if q not in trans:
                trans[q] = s[trans[p]]
                self.orbit.append(q)
                fresh.append(q)
        for p in fresh:
            u = trans[p]
            for t in self.gens:
                q = int(t[p])
                if q not in trans:
                    trans[q] = t[u]
                    self.orbit.append(q)
                    fresh.append(q)

    def inverse(self, point: int) -> np.ndarray:
        inv = self._inverses.get(point)
        if inv is None:
            inv = _inverse(self.transversal[point])
            self._inverses[point] = inv
        return inv


class StabilizerChain:
    """A base and strong generating set with explicit transversals."""

    def __init__(self, size: int, levels: Optional[List[_Level]] = None):
        self.size = size
        self.identity = np.arange(size, dtype=np.int32)
        self.levels: List[_Level] = levels if levels is not None else []

    @property
    def base(self) -> List[int]:
        return [lev.base for lev in self.levels]

    def order(self) -> int:
        return math.prod(len(lev.orbit) for lev in self.levels)

    def new_level(self, base: int) -> _Level:
        level = _Level(base, self.identity)
        self.levels.append(level)
        return level

    def sift(self, g: np.ndarray, start: int = 0) -> Tuple[np.ndarray, int]:
        """Strip g through the levels; returns (residue, level where it stopped)."""
        for i in range(start, len(self.levels)):
            lev = self.levels[i]
            beta = int(g[lev.base])
            if beta not in lev.transversal:
                return g, i
            g = lev.inverse(beta)[g]
        return g, len(self.levels)

    def contains(self, g: np.ndarray) -> bool:
        residue, j = self.sift(g)
        return j == len(self.levels) and np.array_equal(residue, self.identity)

    def absorb(self, g: np.ndarray) -> bool:
        """Add g's sift residue as a strong generator; False if g already sifts through."""
        residue, j = self.sift(g)
        if j == len(self.levels):
            point = _first_moved(residue)
            if point is None:
                return False
            self.new_level(point)
        for level in self.levels[: j + 1]:
            level.add_gen(residue)
        return True

    def random_element(self, rng: Random) -> np.ndarray:
        r = self.identity
        for lev in self.levels:
            r = r[lev.transversal[rng.choice(lev.orbit)]]
        return r

    def elements(self) -> Iterator[np.ndarray]:
        def descend(i: int, r: np.ndarray) -> Iterator[np.ndarray]:
            if i == len(self.levels):
                yield r
                return
            for u in self.levels[i].transversal.values():
                yield from descend(i + 1, r[u])

        yield from descend(0, self.identity)

    def sub_chain(self, start: int) -> "StabilizerChain":
        return StabilizerChain(self.size, self.levels[start:])

    def strong_generators(self, level: int) -> List[np.ndarray]:
        if level >= len(self.levels):
            return []
        return list(self.levels[level].gens)


class _ProductReplacer:
    """Approximately uniform random elements from generators (product replacement)."""

    def __init__(self, gens: Sequence[np.ndarray], rng: Random, slots: int = 10, scramble: int = 50):
        self.rng = rng
        self.state = [gens[i % len(gens)] for i in range(max(slots, len(gens)))]
        self.accu = np.arange(len(gens[0]), dtype=np.int32)
        for _ in range(max(scramble, 4 * len(gens))):
            self.next()

    def next(self) -> np.ndarray:
        i, j = self.rng.sample(range(len(self.state)), 2)
        x = self.state[j]
        if self.rng.randrange(2):
            x = _inverse(x)
        self.state[i] = x[self.state[i]]
        self.accu = self.state[i][self.accu]
        return self.accu


def _verify_and_complete(chain: StabilizerChain) -> None:
    """Sift every Schreier generator level by level, repairing the chain on failure."""
    levels = chain.levels
    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        failure = None
        for beta in list(lev.orbit):
            u = lev.transversal[beta]
            for s in list(lev.gens):
                gamma = int(s[beta])
                h = lev.inverse(gamma)[s[u]]
                residue, j = chain.sift(h, start=i + 1)
                if j < len(levels) or not np.array_equal(residue, chain.identity):
                    failure = (residue, j)
                    break
            if failure:
                break
        if failure is None:
            i -= 1
            continue
        residue, j = failure
        if j == len(levels):
            chain.new_level(_first_moved(residue))
        for level in levels[i + 1 : j + 1]:
            level.add_gen(residue)
        i = j


def build_chain(
    size: int,
    generators: Sequence[np.ndarray],
    prefix: Sequence[int] = (),
    rng: Optional[Random] = None,
    known_order: Optional[int] = None,
    sampler: Optional[Callable[[], np.ndarray]] = None,
) -> StabilizerChain:
    """
    Schreier-Sims with optional base prefix.

    With known_order the random phase runs until the orbit product reaches it
    (exact). Otherwise Monte Carlo rounds stop after a run of successful sifts
    and a deterministic pass completes the chain.
    """
    rng = rng or Random(0)
    chain = StabilizerChain(size)
    for point in prefix:
        chain.new_level(int(point))
    gens = [g for g in generators if _first_moved(g) is not None]
    if not gens:
        return chain
    for g in gens:
        chain.absorb(g)
    next_random = sampler or _ProductReplacer(gens, rng).next
    if known_order is not None:
        while chain.order() < known_order:
            chain.absorb(next_random())
        if chain.order() != known_order:
            raise ZapError(f"Chain order {chain.order()} overshoots known order {known_order}")
        return chain
    quiet = 0
    while quiet < MONTE_CARLO_EXIT_ROUNDS:
        quiet = 0 if chain.absorb(next_random()) else quiet + 1
    _verify_and_complete(chain)
    return chain


def clause_orbit(
    generators: Sequence[np.ndarray], points: Sequence[int], limit: Optional[int] = None
) -> List[Tuple[int, ...]]:
    """Images of a sorted point tuple under the group generated, breadth first."""
    start = tuple(sorted(int(p) for p in points))
    seen = {start: None}
    queue = [start]
    for current in queue:
        arr = np.array(current, dtype=np.int64)
        for g in generators:
            image = tuple(sorted(g[arr].tolist()))
            if image not in seen:
                seen[image] = None
                queue.append(image)
                if limit is not None and len(queue) > limit:
                    raise TooManyInstances(f"More than {limit} instances")
    return queue


class _BudgetHit(Exception):
    pass


class _SubgroupSearch:
    """
    Backtrack search for the subgroup of a chain's group whose elements pass
    a per-level image test (``step``) and a leaf test (``leaf``).

    ``step(level, image, state)`` returns the state for the next level, or
    None to prune. Elements of the stabilizer of the first ``depth`` base
    points must all belong to the subgroup and be generated by ``initial``.
    """

    def __init__(
        self,
        chain: StabilizerChain,
        depth: int,
        step: Callable[[int, int, object], object],
        leaf: Callable[[np.ndarray], bool],
        root_state: object = (),
        budget: Optional[int] = SEARCH_NODE_BUDGET,
    ):
        self.chain = chain
        self.levels = chain.levels
        self.depth = depth
        self.step = step
        self.leaf = leaf
        self.root_state = root_state
        self.budget = budget
        self.nodes = 0

    def run(self, initial: Iterable[np.ndarray]) -> Tuple[List[np.ndarray], int]:
        ident = self.chain.identity
        gens = [g for g in initial if not np.array_equal(g, ident)]
        order = self.chain.sub_chain(self.depth).order()
        base = [lev.base for lev in self.levels]
        for i in range(self.depth - 1, -1, -1):
            state = self.root_state
            for t in range(i):
                state = self.step(t, base[t], state)
            stage = [g for g in gens if all(int(g[b]) == b for b in base[:i])]
            orbit = _point_orbit(stage, base[i])
            failed: set = set()
            for beta in self.levels[i].orbit:
                if beta in orbit or beta in failed:
                    continue
                found = self._search(i, beta, state)
                if found is None:
                    failed |= _point_orbit(stage, beta)
                else:
                    gens.append(found)
                    stage.append(found)
                    orbit = _point_orbit(stage, base[i])
            order *= len(orbit)
        return gens, order

    def _search(self, i: int, beta: int, state: object) -> Optional[np.ndarray]:
        st = self.step(i, beta, state)
        if st is None:
            return None
        return self._descend(i + 1, self.levels[i].transversal[beta], st)

    def _descend(self, j: int, r: np.ndarray, state: object) -> Optional[np.ndarray]:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetHit()
        if j == self.depth:
            return r if self.leaf(r) else None
        for gamma, u in self.levels[j].transversal.items():
            st = self.step(j, int(r[gamma]), state)
            if st is None:
                continue
            found = self._descend(j + 1, r[u], st)
            if found is not None:
                return found
        return None


def _point_orbit(gens: Sequence[np.ndarray], point: int) -> set:
    orbit = {point}
    queue = [point]
    for p in queue:
        for g in gens:
            q = int(g[p])
            if q not in orbit:
                orbit.add(q)
                queue.append(q)
    return orbit


class PermGroup:
    """
    A group of sign-respecting permutations given by generators, with a
    lazily built BSGS for membership, order, stabilizer and search queries.

    Generators are deduplicated and identities dropped. ``order`` may be
    passed when known; construction then needs no verification pass.
    """

    def __init__(
        self,
        n: int,
        generators: Iterable[Permutation] = (),
        *,
        order: Optional[int] = None,
        chain: Optional[StabilizerChain] = None,
        seed: int = 0,
    ):
        self.n = n
        self.size = 2 * n
        unique: Dict[bytes, Permutation] = {}
        for g in generators:
            if not isinstance(g, Permutation):
                raise ZapError(f"Generator must be a Permutation, got {type(g).__name__}")
            if g.n != n:
                raise ZapError(f"Generator over {g.n} variables in a group over {n}")
            if not g.is_identity():
                unique.setdefault(g._key, g)
        self.generators: Tuple[Permutation, ...] = tuple(unique.values())
        self._arrays = [g.images for g in self.generators]
        self._order_hint = order
        self._chain = chain
        self._seed = seed
        self._prefix_chains: Dict[Tuple[int, ...], StabilizerChain] = {}
        self._orbit_ids: Optional[np.ndarray] = None
        self._set_stabilizers: Dict[frozenset, "PermGroup"] = {}
        self._restrictions: Dict[frozenset, "PermGroup"] = {}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def trivial(cls, n: int) -> "PermGroup":
        return cls(n, (), order=1)

    @classmethod
    def symmetric(cls, n: int, variables: Iterable[int]) -> "PermGroup":
        """Sym on the given variables, acting without sign changes."""
        vs = sorted(set(variables))
        if len(vs) < 2:
            return cls.trivial(n)
        gens = [Permutation.from_variable_map(n, {vs[0]: vs[1], vs[1]: vs[0]})]
        if len(vs) > 2:
            gens.append(
                Permutation.from_variable_map(n, {v: vs[(i + 1) % len(vs)] for i, v in enumerate(vs)})
            )
        return cls(n, gens, order=math.factorial(len(vs)))

    @classmethod
    def wreath_flips(cls, n: int, variables: Iterable[int]) -> "PermGroup":
        """Every sign change and permutation of the given variables (W on them)."""
        vs = sorted(set(variables))
        if not vs:
            return cls.trivial(n)
        sym = cls.symmetric(n, vs)
        flip = Permutation.from_literal_map(n, {vs[0]: -vs[0]})
        return cls(n, list(sym.generators) + [flip], order=2 ** len(vs) * math.factorial(len(vs)))

    # -- BSGS -----------------------------------------------------------------

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = build_chain(
                self.size, self._arrays, rng=Random(self._seed), known_order=self._order_hint
            )
            logger.debug(
                "Built chain: order %d, base length %d, %d generators",
                self._chain.order(), len(self._chain.levels), len(self.generators),
            )
        return self._chain

    def chain_for(self, prefix: Sequence[int]) -> StabilizerChain:
        """A BSGS whose base starts with the given points."""
        prefix = tuple(int(p) for p in prefix)
        if not prefix:
            return self.chain
        cached = self._prefix_chains.get(prefix)
        if cached is not None:
            return cached
        chain = self.chain
        if tuple(chain.base[: len(prefix)]) == prefix:
            result = chain
        else:
            rng = Random(self._seed + 1)
            result = build_chain(
                self.size, self._arrays, prefix=prefix, rng=rng,
                known_order=chain.order(), sampler=lambda: chain.random_element(rng),
            )
        self._prefix_chains[prefix] = result
        return result

    def order(self) -> int:
        if self._order_hint is not None:
            return self._order_hint
        return self.chain.order()

    def is_trivial(self) -> bool:
        return not self.generators

    def contains(self, f: Permutation) -> bool:
        if f.n != self.n:
            raise ZapError(f"Permutation over {f.n} variables tested against a group over {self.n}")
        if f.is_identity():
            return True
        if self.is_trivial():
            return False
        return self.chain.contains(f.images)

    def __contains__(self, f: Permutation) -> bool:
        return self.contains(f)

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def elements(self) -> Iterator[Permutation]:
        for arr in self.chain.elements():
            yield Permutation._raw(self.n, arr)

    def random_element(self, rng: Union[Random, int, None] = None) -> Permutation:
        """Uniform element: one transversal representative per level."""
        if not isinstance(rng, Random):
            rng = Random(rng)
        return Permutation._raw(self.n, self.chain.random_element(rng))

    def support(self) -> frozenset:
        moved = set()
        for g in self.generators:
            moved |= g.support()
        return frozenset(moved)

    # -- orbits ---------------------------------------------------------------

    def _orbit_table(self) -> np.ndarray:
        if self._orbit_ids is None:
            ids = np.full(self.size, -1, dtype=np.int64)
            label = 0
            for p in range(self.size):
                if ids[p] != -1:
                    continue
                for q in _point_orbit(self._arrays, p):
                    ids[q] = label
                label += 1
            self._orbit_ids = ids
        return self._orbit_ids

    def orbit(self, x: int) -> frozenset:
        ids = self._orbit_table()
        label = ids[lit_to_point(x, self.n)]
        return frozenset(point_to_lit(int(p), self.n) for p in np.nonzero(ids == label)[0])

    def orbits(self) -> List[frozenset]:
        """Orbit partition of all 2n literals, ordered by smallest point."""
        ids = self._orbit_table()
        groups: Dict[int, List[int]] = {}
        for p, label in enumerate(ids.tolist()):
            groups.setdefault(label, []).append(point_to_lit(p, self.n))
        return [frozenset(lits) for lits in groups.values()]

    def closure(self, literals: Iterable[int]) -> frozenset:
        ids = self._orbit_table()
        labels = {int(ids[lit_to_point(lit, self.n)]) for lit in literals}
        if not labels:
            return frozenset()
        mask = np.isin(ids, list(labels))
        return frozenset(point_to_lit(int(p), self.n) for p in np.nonzero(mask)[0])

    def stabilizes(self, literals: Iterable[int]) -> bool:
        """True if every generator maps the literal set onto itself."""
        pts = np.array(sorted(lit_to_point(lit, self.n) for lit in literals), dtype=np.int64)
        if not len(pts):
            return True
        target = set(pts.tolist())
        return all(set(g[pts].tolist()) == target for g in self._arrays)

    # -- subgroups ------------------------------------------------------------

    def _points(self, literals: Iterable[int]) -> List[int]:
        return sorted({lit_to_point(lit, self.n) for lit in literals})

    def pointwise_stabilizer(self, literals: Iterable[int]) -> "PermGroup":
        pts = self._points(literals)
        if not pts or all(all(int(g[p]) == p for p in pts) for g in self._arrays):
            return self
        chain = self.chain_for(pts)
        sub = chain.sub_chain(len(pts))
        gens = [Permutation._raw(self.n, g) for g in chain.strong_generators(len(pts))]
        return PermGroup(self.n, gens, order=sub.order(), chain=sub if gens else None, seed=self._seed)

    def set_stabilizer(
        self, literals: Iterable[int], enum_threshold: int = DEFAULT_ENUM_THRESHOLD
    ) -> "PermGroup":
        lits = frozenset(literals)
        pts = self._points(lits)
        if not pts or len(pts) == self.size or self.stabilizes(lits):
            return self
        cached = self._set_stabilizers.get(lits)
        if cached is not None:
            return cached
        target = set(pts)
        chain = self.chain_for(pts)
        depth = len(pts)

        def step(level: int, image: int, state: object) -> object:
            return () if level >= depth or image in target else None

        def keeps(arr: np.ndarray) -> bool:
            return set(arr[pts].tolist()) == target

        initial = chain.strong_generators(depth) + [
            g for g in self._arrays if set(g[pts].tolist()) == target
        ]
        search = _SubgroupSearch(chain, depth, step, lambda r: True)
        result = self._run_search(search, initial, chain, keeps, enum_threshold, self.order())
        self._set_stabilizers[lits] = result
        return result

    def intersect(
        self, other: "PermGroup", enum_threshold: int = DEFAULT_ENUM_THRESHOLD
    ) -> "PermGroup":
        if other.n != self.n:
            raise ZapError(f"Cannot intersect groups over {self.n} and {other.n} variables")
        if other is self:
            return self
        small, big = (self, other) if self.order() <= other.order() else (other, self)
        if small.is_subgroup_of(big):
            return small
        if big.is_subgroup_of(small):
            return big
        chain1 = small.chain
        base = chain1.base
        chain2 = big.chain_for(base)
        depth = len(base)

        def step(level: int, image: int, state: object) -> object:
            r2, r2inv = state
            lev2 = chain2.levels[level]
            beta = int(r2inv[image])
            if beta not in lev2.transversal:
                return None
            return r2[lev2.transversal[beta]], lev2.inverse(beta)[r2inv]

        initial = [g for g in small._arrays if chain2.contains(g)]
        ident = chain1.identity
        search = _SubgroupSearch(chain1, depth, step, chain2.contains, root_state=(ident, ident))
        return small._run_search(
            search, initial, chain1, chain2.contains, enum_threshold, min(small.order(), big.order())
        )

    def _run_search(
        self,
        search: _SubgroupSearch,
        initial: List[np.ndarray],
        chain: StabilizerChain,
        predicate: Callable[[np.ndarray], bool],
        enum_threshold: int,
        bound: int,
    ) -> "PermGroup":
        if bound > enum_threshold:
            search.budget = None
        try:
            gens, order = search.run(initial)
        except _BudgetHit:
            logger.info(
                "Subgroup search exceeded %d nodes; enumerating %d elements", search.budget, bound
            )
            return self._enumerate_subgroup(chain, predicate)
        return PermGroup(
            self.n, [Permutation._raw(self.n, g) for g in gens], order=order, seed=self._seed
        )

    def _enumerate_subgroup(
        self, chain: StabilizerChain, predicate: Callable[[np.ndarray], bool]
    ) -> "PermGroup":
        order = sum(1 for arr in chain.elements() if predicate(arr))
        acc = StabilizerChain(self.size)
        kept: List[np.ndarray] = []
        for arr in chain.elements():
            if acc.order() == order:
                break
            if predicate(arr) and not acc.contains(arr):
                kept.append(arr)
                acc = build_chain(self.size, kept, rng=Random(self._seed))
        return PermGroup(
            self.n, [Permutation._raw(self.n, g) for g in kept], order=order, seed=self._seed
        )

    def reduce_generators(self) -> List[Permutation]:
        """Sublist of generators, each outside the group generated by those before it."""
        kept: List[Permutation] = []
        acc = StabilizerChain(self.size)
        for g in self.generators:
            if not acc.contains(g.images):
                kept.append(g)
                acc = build_chain(self.size, [k.images for k in kept], rng=Random(self._seed))
        return kept

    def lift_restriction(
        self, literals: Iterable[int], rho: Union[Mapping[int, int], Permutation]
    ) -> Permutation:
        """An element of the group agreeing with rho on the given literals."""
        lits = sorted(set(literals), key=lambda lit: lit_to_point(lit, self.n))
        image = rho.apply if isinstance(rho, Permutation) else (lambda lit: rho[lit])
        try:
            targets = {lit_to_point(lit, self.n): lit_to_point(image(lit), self.n) for lit in lits}
        except KeyError as exc:
            raise NoLift(f"Partial map has no image for literal {exc.args[0]}") from None
        pts = sorted(targets)
        if not pts:
            return Permutation.identity(self.n)
        chain = self.chain_for(pts)
        r = chain.identity
        rinv = chain.identity
        for level, p in zip(chain.levels, pts):
            beta = int(rinv[targets[p]])
            if beta not in level.transversal:
                raise NoLift(
                    f"No element maps {point_to_lit(p, self.n)} to "
                    f"{point_to_lit(targets[p], self.n)} with the earlier images fixed"
                )
            r = r[level.transversal[beta]]
            rinv = level.inverse(beta)[rinv]
        if any(int(r[p]) != q for p, q in targets.items()):
            raise NoLift("Lift does not agree with the partial map")
        return Permutation._raw(self.n, r)

    def restrict_to(self, variables: Iterable[int]) -> "PermGroup":
        """Homomorphic image on an invariant variable set (identity elsewhere)."""
        vs = frozenset(variables)
        cached = self._restrictions.get(vs)
        if cached is not None:
            return cached
        pts = np.array(self._points([v for v in vs] + [-v for v in vs]), dtype=np.int64)
        inside = set(pts.tolist())
        gens = []
        for g in self._arrays:
            if not set(g[pts].tolist()) <= inside:
                raise ZapError(f"Variables {sorted(vs)} are not invariant under the group")
            img = np.arange(self.size, dtype=np.int32)
            img[pts] = g[pts]
            gens.append(Permutation._raw(self.n, img))
        moved = {abs(lit) for lit in self.support()}
        order = self._order_hint if moved <= vs else None
        result = PermGroup(self.n, gens, order=order, seed=self._seed)
        self._restrictions[vs] = result
        return result

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators) or "()"
        return f"PermGroup(n={self.n}, <{gens}>)"


# -- module-level operations -------------------------------------------------


def build(generators: Sequence[Permutation], n: Optional[int] = None) -> PermGroup:
    if n is None:
        n = generators[0].n if generators else 0
    group = PermGroup(n, generators)
    group.chain
    return group


def contains(G: PermGroup, f: Permutation) -> bool:
    return G.contains(f)


def orbit(G: PermGroup, x: int) -> frozenset:
    return G.orbit(x)


def closure(G: PermGroup, literals: Iterable[int]) -> frozenset:
    return G.closure(literals)


def pointwise_stabilizer(G: PermGroup, literals: Iterable[int]) -> PermGroup:
    return G.pointwise_stabilizer(literals)


def set_stabilizer(
    G: PermGroup, literals: Iterable[int], enum_threshold: int = DEFAULT_ENUM_THRESHOLD
) -> PermGroup:
    return G.set_stabilizer(literals, enum_threshold)


def intersect(
    G1: PermGroup, G2: PermGroup, enum_threshold: int = DEFAULT_ENUM_THRESHOLD
) -> PermGroup:
    return G1.intersect(G2, enum_threshold)


def reduce_generators(G: PermGroup) -> List[Permutation]:
    return G.reduce_generators()


def random_element(G: PermGroup, seed: Union[Random, int, None] = None) -> Permutation:
    return G.random_element(seed)


def lift_restriction(
    G: PermGroup, literals: Iterable[int], rho: Union[Mapping[int, int], Permutation]
) -> Permutation:
    return G.lift_restriction(literals, rho)


def shrink_schedule(d: int, epsilon: float, multiplier: float = 1.0) -> int:
    """Random generator count for a clause with d instances: orbit decay plus a failure margin."""
    if d <= 1:
        return 0
    return math.ceil(multiplier * math.log(d) / math.log(4 / 3)) + math.ceil(math.log10(1 / epsilon))


def shrink_to_transitive(
    G: PermGroup,
    c: Clause,
    d: Optional[int] = None,
    epsilon: float = 0.01,
    *,
    multiplier: float = 1.0,
    seed: Union[Random, int, None] = None,
    verify: bool = False,
) -> PermGroup:
    """
    Subgroup generated by O(log d) uniform random elements of G that, with
    probability at least 1 - epsilon, is still transitive on the instances
    of (c, G).
    """
    if not 0 < epsilon < 1:
        raise ZapError(f"epsilon must lie in (0, 1), got {epsilon}")
    points = [lit_to_point(lit, G.n) for lit in c]
    if d is None:
        d = len(clause_orbit(G._arrays, points))
    if d <= 1:
        return PermGroup.trivial(G.n)
    rng = seed if isinstance(seed, Random) else Random(seed)
    count = shrink_schedule(d, epsilon, multiplier)
    H = PermGroup(G.n, [G.random_element(rng) for _ in range(count)], seed=G._seed)
    if verify:
        found = len(clause_orbit(H._arrays, points, limit=d))
        if found < d:
            raise InstanceCountMismatch(f"Shrunken group reaches {found} of {d} instances")
    return H
