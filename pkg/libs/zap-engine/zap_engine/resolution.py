"""
Augmented resolution.

Resolving (c1, G1) with (c2, G2) gives the ground resolvent of the bases
together with the group of permutations that, on the closure of each c_i
under H_i, act like some element of H_i. H_i = G_i is the canonical choice;
a caller may pass smaller witness groups H_i <= G_i to trade one clause's
symmetry for the other's.

The stable-extension group is built as a fibered product. With
V_i the variables of the closure of c_i and I their overlap, an element is a
pair of restrictions (a on V1, b on V2) that agree on I. Its order is
|K1| * |K2| * |J|, K_i being the part of G_i fixing I pointwise and J the
intersection of the two groups' actions on I.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set

from .augmented import DEFAULT_INSTANCE_CAP, AugmentedClause
from .core import Clause, lit_to_point, resolve_ground
from .errors import NoLift, NotASubgroup, NotResolvable, TooLarge, ZapError
from .group import DEFAULT_ENUM_THRESHOLD, PermGroup
from .perm import Permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ResolventWitness:
    """Intermediate subgroups h1 <= G1 and h2 <= G2 certifying a resolvent."""

    h1: PermGroup
    h2: PermGroup

    def validate(self, a: AugmentedClause, b: AugmentedClause) -> None:
        for name, h, ac in (("h1", self.h1, a), ("h2", self.h2, b)):
            if not h.is_subgroup_of(ac.group):
                raise NotASubgroup(f"Witness {name} is not contained in the group of {ac.base!r}")


def _literals(variables: Iterable[int]) -> FrozenSet[int]:
    return frozenset(lit for v in variables for lit in (v, -v))


def _closure_variables(K: Iterable[int], G: PermGroup) -> FrozenSet[int]:
    return frozenset(abs(lit) for lit in G.closure(K))


def extn_enumerate(
    K: Sequence[Iterable[int]],
    G: Sequence[PermGroup],
    ambient: Iterable[int],
    cap: int = DEFAULT_INSTANCE_CAP,
) -> Set[Permutation]:
    """
    Every sign-preserving permutation of the ambient variables that agrees
    on each K_i with some element of G_i. Brute force; TooLarge past cap.
    """
    if len(K) != len(G) or not G:
        raise ZapError("extn_enumerate needs one literal set per group")
    n = G[0].n
    variables = sorted(set(ambient))
    if math.factorial(len(variables)) > cap:
        raise TooLarge(f"Sym on {len(variables)} variables exceeds the cap {cap}")
    constraints = []
    for K_i, G_i in zip(K, G):
        lits = sorted(set(K_i), key=abs)
        allowed = {tuple(g.apply(lit) for lit in lits) for g in G_i.elements()}
        constraints.append((lits, allowed))

    result = set()
    for image in itertools.permutations(variables):
        omega = Permutation.from_variable_map(n, dict(zip(variables, image)))
        if all(tuple(omega.apply(lit) for lit in lits) in allowed for lits, allowed in constraints):
            result.add(omega)
    return result


def _fibered_product(
    A: PermGroup, VA: FrozenSet[int], B: PermGroup, VB: FrozenSet[int], enum_threshold: int
) -> PermGroup:
    """Permutations of VA | VB whose restrictions lie in A (on VA) and B (on VB)."""
    n = A.n
    overlap = VA & VB
    if A is B and VA == VB:
        return A
    if not overlap:
        return PermGroup(n, list(A.generators) + list(B.generators), order=A.order() * B.order())
    shared = _literals(overlap)
    BA = A.set_stabilizer(shared, enum_threshold)
    BB = B.set_stabilizer(shared, enum_threshold)
    KA = BA.pointwise_stabilizer(shared)
    KB = BB.pointwise_stabilizer(shared)
    J = BA.restrict_to(overlap).intersect(BB.restrict_to(overlap), enum_threshold)

    outside_points = sorted(lit_to_point(lit, n) for lit in _literals(VB - overlap))
    gens: List[Permutation] = list(KA.generators) + list(KB.generators)
    for j in J.generators:
        a = BA.lift_restriction(shared, j)
        b = BB.lift_restriction(shared, j)
        img = a.images.copy()
        img[outside_points] = b.images[outside_points]
        gens.append(Permutation._raw(n, img))
    order = KA.order() * KB.order() * J.order()
    logger.debug("Fibered product over %d shared variables: order %d", len(overlap), order)
    return PermGroup(n, gens, order=order)


def stab_group(
    K: Sequence[Iterable[int]],
    G: Sequence[PermGroup],
    *,
    free_outside: bool = True,
    num_vars: Optional[int] = None,
    enum_threshold: int = DEFAULT_ENUM_THRESHOLD,
) -> PermGroup:
    """
    Group of permutations acting on every closure K_i^{G_i} as some element
    of G_i. Variables outside all closures move freely (sign changes
    included) unless free_outside is False, which fixes them.
    """
    if len(K) != len(G) or not G:
        raise ZapError("stab_group needs one literal set per group")
    n = num_vars if num_vars is not None else G[0].n
    if any(g.n != n for g in G):
        raise ZapError("stab_group groups must share one variable space")

    result: Optional[PermGroup] = None
    covered: FrozenSet[int] = frozenset()
    for K_i, G_i in zip(K, G):
        V = _closure_variables(K_i, G_i)
        support = frozenset(abs(lit) for lit in G_i.support())
        A = G_i if support <= V else G_i.restrict_to(V)
        if result is None:
            result, covered = A, V
        else:
            result = _fibered_product(result, covered, A, V, enum_threshold)
            covered = covered | V

    if free_outside:
        rest = set(range(1, n + 1)) - covered
        if rest:
            W = PermGroup.wreath_flips(n, rest)
            result = PermGroup(
                n, list(result.generators) + list(W.generators), order=result.order() * W.order()
            )
    return result


def resolve_augmented(
    a: AugmentedClause,
    b: AugmentedClause,
    witness: Optional[ResolventWitness] = None,
    *,
    free_outside: bool = False,
    enum_threshold: int = DEFAULT_ENUM_THRESHOLD,
) -> AugmentedClause:
    """
    Resolvent of two augmented clauses; canonical when no witness is given.
    The group fixes variables outside both closures unless free_outside is
    set; the instance set is the same either way.
    """
    base = resolve_ground(a.base, b.base)
    if witness is None:
        h1, h2 = a.group, b.group
    else:
        witness.validate(a, b)
        h1, h2 = witness.h1, witness.h2
    group = stab_group(
        [a.base, b.base], [h1, h2], free_outside=free_outside, enum_threshold=enum_threshold
    )
    return AugmentedClause(base, group)


def check_resolvent(
    candidate: AugmentedClause,
    a: AugmentedClause,
    b: AugmentedClause,
    witness: ResolventWitness,
) -> bool:
    """
    Polynomial check that candidate is a resolvent of a and b under the
    witness: right base, witness groups inside the clause groups, and every
    candidate generator acting on each closure like a witness element.
    """
    try:
        if candidate.base != resolve_ground(a.base, b.base):
            return False
        witness.validate(a, b)
    except (NotResolvable, NotASubgroup):
        return False
    for c, h in ((a.base, witness.h1), (b.base, witness.h2)):
        lits = _literals(_closure_variables(c, h))
        for g in candidate.group.generators:
            if g.apply(set(lits)) != lits:
                return False
            try:
                h.lift_restriction(lits, g)
            except NoLift:
                return False
    return True


def ground_resolvents(
    a: AugmentedClause, b: AugmentedClause, limit: Optional[int] = DEFAULT_INSTANCE_CAP
) -> Set[Clause]:
    """Every resolvent of an instance of a with an instance of b."""
    out = set()
    for c1 in a.instances(limit):
        for c2 in b.instances(limit):
            try:
                out.add(resolve_ground(c1, c2))
            except NotResolvable:
                continue
    return out
