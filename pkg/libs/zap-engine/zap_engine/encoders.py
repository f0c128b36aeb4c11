"""
Encoders from structured constraints to augmented clauses.

Families:
- cardinality: "at least k of x1..xm" as (x1 v ... v x_{m-k+1}, Sym{x1..xm})
- parity: x1 + ... + xk = rhs (mod 2) as one clause under the even-flip group
- QPROP: universally quantified clauses over finite domains, quantification
  carried by one copy of Sym(domain) per quantified variable
- pigeonhole and clique-coloring theories with their global symmetry
- seeded random parity theories and random k-CNF for cross-checks

Variable numbering:
- pigeonhole: p_ij = (i - 1) * n + j, pigeons i = 1..n+1, holes j = 1..n
- clique-coloring: e_ij (i < j, lexicographic), then c_il (row-major), then
  q_kj (row-major)
- QPROP: relations in vocabulary order, atoms of a relation row-major over
  its position domains
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from random import Random
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import yaml

from .augmented import DEFAULT_INSTANCE_CAP, AugmentedClause, expand_theory
from .core import Clause
from .errors import BadSize, BadThreshold, DomainTooSmall, TautologyError, TooLarge, ZapError
from .group import PermGroup
from .perm import Permutation, representation_size

logger = logging.getLogger(__name__)

DEFAULT_MAX_ATOMS = 100_000


@dataclass
class AugmentedTheory:
    """A list of augmented clauses over one variable space."""

    clauses: List[AugmentedClause]
    num_vars: int
    names: Dict[int, str] = field(default_factory=dict)

    def expand(self, cap: Optional[int] = DEFAULT_INSTANCE_CAP) -> List[Clause]:
        return expand_theory(self.clauses, cap)


def _cycle(n: int, variables: Sequence[int]) -> Permutation:
    """Sign-preserving cycle v0 -> v1 -> ... -> v0."""
    return Permutation.from_variable_map(
        n, {v: variables[(i + 1) % len(variables)] for i, v in enumerate(variables)}
    )


def _symmetric_generators(n: int, variables: Sequence[int]) -> List[Permutation]:
    """(v0 v1) and (v1 ... v_{m-1}), skipping those that are trivial."""
    gens = []
    if len(variables) >= 2:
        gens.append(_cycle(n, variables[:2]))
    if len(variables) >= 3:
        gens.append(_cycle(n, variables[1:]))
    return gens


# -- cardinality --------------------------------------------------------------


def encode_cardinality(
    variables: Union[int, Sequence[int]], k: int, num_vars: Optional[int] = None
) -> AugmentedClause:
    """At least k of the variables are true."""
    xs = list(range(1, variables + 1)) if isinstance(variables, int) else list(variables)
    m = len(xs)
    if len(set(xs)) != m or any(x <= 0 for x in xs):
        raise ZapError(f"Cardinality variables must be distinct positive integers, got {xs}")
    if not 1 <= k <= m:
        raise BadThreshold(f"Threshold {k} outside 1..{m}")
    n = num_vars if num_vars is not None else max(xs)
    gens = _symmetric_generators(n, xs)
    group = PermGroup(n, gens, order=math.factorial(m) if m >= 2 else 1)
    return AugmentedClause(Clause(xs[: m - k + 1]), group)


# -- parity -------------------------------------------------------------------


@dataclass(frozen=True)
class ParityConstraint:
    """sum(vars) = rhs (mod 2)."""

    vars: Tuple[int, ...]
    rhs: int

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars:
            raise ZapError("Parity constraint needs at least one variable")
        if len(set(self.vars)) != len(self.vars) or any(v <= 0 for v in self.vars):
            raise ZapError(f"Parity variables must be distinct positive integers, got {self.vars}")
        if self.rhs not in (0, 1):
            raise ZapError(f"Parity right-hand side must be 0 or 1, got {self.rhs}")

    def holds(self, model: Mapping[int, bool]) -> bool:
        return sum(bool(model.get(v, False)) for v in self.vars) % 2 == self.rhs

    def __str__(self) -> str:
        return " + ".join(f"x{v}" for v in self.vars) + f" = {self.rhs} (mod 2)"


def encode_parity(
    c: ParityConstraint, num_vars: Optional[int] = None, compact: bool = False
) -> AugmentedClause:
    """
    One clause under the group flipping an even number of the variables.
    The default uses the k - 1 flip pairs (x1 -x1)(xi -xi); ``compact`` uses
    one flip pair plus Sym on the variables (three generators).
    """
    xs = list(c.vars)
    k = len(xs)
    n = num_vars if num_vars is not None else max(xs)
    base = Clause(xs if c.rhs == 1 else [-xs[0]] + xs[1:])
    flips = [Permutation.from_literal_map(n, {xs[0]: -xs[0], x: -x}) for x in xs[1:]]
    if compact and k >= 2:
        gens = flips[:1] + _symmetric_generators(n, xs)
        group = PermGroup(n, gens, order=2 ** (k - 1) * math.factorial(k))
    else:
        group = PermGroup(n, flips, order=2 ** (k - 1))
    return AugmentedClause(base, group)


# -- QPROP --------------------------------------------------------------------

_LITERAL = re.compile(r"^\s*([-~¬])?\s*([A-Za-z_]\w*)\s*\((.*)\)\s*$")


@dataclass(frozen=True)
class QuantifiedLiteral:
    relation: str
    args: Tuple[str, ...]
    positive: bool = True

    @classmethod
    def parse(cls, text: str) -> "QuantifiedLiteral":
        """Parse "a(x, y)" or "-b(y, z)" (also "~" and "¬")."""
        match = _LITERAL.match(text)
        if match is None:
            raise ZapError(f"Cannot parse quantified literal '{text}'")
        sign, relation, body = match.groups()
        args = tuple(arg.strip() for arg in body.split(",")) if body.strip() else ()
        if any(not arg for arg in args):
            raise ZapError(f"Empty argument in '{text}'")
        return cls(relation, args, positive=sign is None)

    def __str__(self) -> str:
        return f"{'' if self.positive else '¬'}{self.relation}({', '.join(self.args)})"


@dataclass(frozen=True)
class QuantifiedClause:
    """A universally quantified disjunction; arguments not named as variables are constants."""

    variables: Tuple[Tuple[str, Tuple[str, ...]], ...]
    literals: Tuple[QuantifiedLiteral, ...]

    @classmethod
    def of(
        cls,
        variables: Mapping[str, Sequence[str]],
        literals: Sequence[Union[str, QuantifiedLiteral]],
    ) -> "QuantifiedClause":
        return cls(
            tuple((name, tuple(str(d) for d in domain)) for name, domain in variables.items()),
            tuple(lit if isinstance(lit, QuantifiedLiteral) else QuantifiedLiteral.parse(lit) for lit in literals),
        )

    @classmethod
    def from_dict(cls, data: Mapping) -> "QuantifiedClause":
        if "literals" not in data:
            raise ZapError("Quantified clause needs a 'literals' list")
        return cls.of(data.get("variables") or {}, data["literals"])

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "QuantifiedClause":
        """Load from YAML with 'variables' (name -> domain list) and 'literals'."""
        with open(path) as f:
            data = yaml.safe_load(f)
        return cls.from_dict(data)

    @property
    def domains(self) -> Dict[str, Tuple[str, ...]]:
        return dict(self.variables)

    def is_variable(self, arg: str) -> bool:
        return arg in self.domains

    def __str__(self) -> str:
        names = "".join(name for name, _ in self.variables)
        body = " ∨ ".join(str(lit) for lit in self.literals)
        return f"∀{names}. {body}" if names else body


@dataclass
class Vocabulary:
    """Relation name -> per-position domains, in atom-numbering order."""

    relations: Dict[str, Tuple[Tuple[str, ...], ...]]

    def __post_init__(self):
        self.relations = {
            name: tuple(tuple(str(d) for d in domain) for domain in domains)
            for name, domains in self.relations.items()
        }
        for name, domains in self.relations.items():
            for p, domain in enumerate(domains):
                if not domain:
                    raise DomainTooSmall(f"Position {p} of relation '{name}' has an empty domain")
        self._table: Optional[Dict[Tuple[str, Tuple[str, ...]], int]] = None

    @classmethod
    def infer(cls, clauses: Iterable[QuantifiedClause]) -> "Vocabulary":
        """
        Position domains from the clauses: a variable's domain where one
        occurs, otherwise the constants seen there in order of appearance.
        """
        arity: Dict[str, int] = {}
        var_domains: Dict[Tuple[str, int], Tuple[str, ...]] = {}
        constants: Dict[Tuple[str, int], List[str]] = {}
        for q in clauses:
            domains = q.domains
            for name, domain in q.variables:
                if not domain:
                    raise DomainTooSmall(f"Variable '{name}' has an empty domain")
            for lit in q.literals:
                if arity.setdefault(lit.relation, len(lit.args)) != len(lit.args):
                    raise ZapError(f"Relation '{lit.relation}' used with arities {arity[lit.relation]} and {len(lit.args)}")
                for p, arg in enumerate(lit.args):
                    key = (lit.relation, p)
                    if arg in domains:
                        seen = var_domains.setdefault(key, domains[arg])
                        if seen != domains[arg]:
                            raise ZapError(f"Position {p} of '{lit.relation}' has domains {seen} and {domains[arg]}")
                    else:
                        bucket = constants.setdefault(key, [])
                        if arg not in bucket:
                            bucket.append(arg)
        relations = {}
        for name, r in arity.items():
            positions = []
            for p in range(r):
                domain = var_domains.get((name, p))
                if domain is None:
                    domain = tuple(constants[(name, p)])
                else:
                    missing = [c for c in constants.get((name, p), []) if c not in domain]
                    if missing:
                        raise ZapError(f"Constants {missing} outside the domain of position {p} of '{name}'")
                positions.append(domain)
            relations[name] = tuple(positions)
        return cls(relations)

    def atom_table(self) -> Dict[Tuple[str, Tuple[str, ...]], int]:
        if self._table is None:
            table = {}
            for name, domains in self.relations.items():
                for args in itertools.product(*domains):
                    table[(name, args)] = len(table) + 1
            self._table = table
        return self._table

    @property
    def num_atoms(self) -> int:
        return sum(math.prod(len(d) for d in domains) for domains in self.relations.values())

    def atom(self, relation: str, args: Sequence[str]) -> int:
        try:
            return self.atom_table()[(relation, tuple(args))]
        except KeyError:
            raise ZapError(f"No atom {relation}({', '.join(args)}) in the vocabulary") from None

    def names(self) -> Dict[int, str]:
        return {v: f"{name}({','.join(args)})" for (name, args), v in self.atom_table().items()}


@dataclass
class QPropEncoding:
    """A quantified clause compiled to an augmented clause."""

    quantified: QuantifiedClause
    clause: AugmentedClause
    vocabulary: Vocabulary
    domain_generators: List[Tuple[str, Tuple[str, ...]]]

    def representation_size(self) -> Tuple[int, int]:
        """(generator count, total size) of the per-variable domain generators."""
        return len(self.domain_generators), sum(len(cyc) for _, cyc in self.domain_generators)


def _bindings(q: QuantifiedClause, vocab: Vocabulary) -> Dict[str, List[Tuple[str, int]]]:
    """Variable -> the (relation, position) slots it occupies, after validation."""
    domains = q.domains
    slots: Dict[Tuple[str, int], str] = {}
    constant_slots = set()
    for lit in q.literals:
        positions = vocab.relations.get(lit.relation)
        if positions is None:
            raise ZapError(f"Relation '{lit.relation}' is not in the vocabulary")
        if len(positions) != len(lit.args):
            raise ZapError(f"Relation '{lit.relation}' has arity {len(positions)}, used with {len(lit.args)}")
        used = [arg for arg in lit.args if arg in domains]
        if len(used) != len(set(used)):
            raise ZapError(f"Literal {lit} repeats a variable")
        for p, arg in enumerate(lit.args):
            key = (lit.relation, p)
            if arg in domains:
                if positions[p] != domains[arg]:
                    raise ZapError(f"Variable '{arg}' ranges over {domains[arg]} but {lit.relation} position {p} over {positions[p]}")
                if slots.setdefault(key, arg) != arg:
                    raise ZapError(f"Variables '{slots[key]}' and '{arg}' share position {p} of '{lit.relation}'")
            else:
                if arg not in positions[p]:
                    raise ZapError(f"Constant '{arg}' outside position {p} of '{lit.relation}'")
                constant_slots.add(key)
    clash = constant_slots & set(slots)
    if clash:
        relation, p = sorted(clash)[0]
        raise ZapError(f"Position {p} of '{relation}' holds both a variable and a constant")
    bindings: Dict[str, List[Tuple[str, int]]] = {name: [] for name, _ in q.variables}
    for key, name in slots.items():
        bindings[name].append(key)
    unused = [name for name, keys in bindings.items() if not keys]
    if unused:
        raise ZapError(f"Quantified variables {unused} appear in no literal")
    return bindings


def _substitute(q: QuantifiedClause, vocab: Vocabulary, values: Mapping[str, str]) -> Clause:
    lits = []
    for lit in q.literals:
        atom = vocab.atom(lit.relation, [values.get(arg, arg) for arg in lit.args])
        lits.append(atom if lit.positive else -atom)
    return Clause(lits)


def _domain_permutation(
    vocab: Vocabulary, slots: Sequence[Tuple[str, int]], sigma: Mapping[str, str], n: int
) -> Permutation:
    """Image of a domain permutation: act on the bound positions of every atom."""
    mapping = {}
    for (name, args), v in vocab.atom_table().items():
        moved = list(args)
        for relation, p in slots:
            if relation == name:
                moved[p] = sigma.get(moved[p], moved[p])
        w = vocab.atom(name, moved)
        if w != v:
            mapping[v] = w
    return Permutation.from_variable_map(n, mapping)


def encode_qprop(
    q: QuantifiedClause,
    vocabulary: Optional[Vocabulary] = None,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> QPropEncoding:
    """Ground base at the first domain elements, group generated per quantified variable."""
    for name, domain in q.variables:
        if not domain:
            raise DomainTooSmall(f"Variable '{name}' has an empty domain")
    vocab = vocabulary or Vocabulary.infer([q])
    if vocab.num_atoms > max_atoms:
        raise TooLarge(f"{vocab.num_atoms} ground atoms exceed the limit {max_atoms}")
    bindings = _bindings(q, vocab)
    n = vocab.num_atoms
    base = _substitute(q, vocab, {name: domain[0] for name, domain in q.variables})

    gens: List[Permutation] = []
    formal: List[Tuple[str, Tuple[str, ...]]] = []
    order = 1
    for name, domain in q.variables:
        d = len(domain)
        order *= math.factorial(d)
        formal.append((name, domain[:2]))
        formal.append((name, domain[1:]))
        if d >= 2:
            gens.append(_domain_permutation(vocab, bindings[name], {domain[0]: domain[1], domain[1]: domain[0]}, n))
        if d >= 3:
            cycle = domain[1:]
            gens.append(_domain_permutation(vocab, bindings[name], {a: cycle[(i + 1) % len(cycle)] for i, a in enumerate(cycle)}, n))
    group = PermGroup(n, gens, order=order)
    logger.debug("Encoded %s over %d atoms with %d generators", q, n, len(group.generators))
    return QPropEncoding(q, AugmentedClause(base, group), vocab, formal)


def encode_qprop_theory(
    clauses: Sequence[QuantifiedClause],
    vocabulary: Optional[Vocabulary] = None,
    max_atoms: int = DEFAULT_MAX_ATOMS,
) -> List[QPropEncoding]:
    """Encode several quantified clauses with one shared atom numbering."""
    vocab = vocabulary or Vocabulary.infer(clauses)
    return [encode_qprop(q, vocab, max_atoms) for q in clauses]


def ground_instances(q: QuantifiedClause, vocabulary: Optional[Vocabulary] = None) -> frozenset:
    """Every ground clause of q by direct substitution (tautologies dropped)."""
    vocab = vocabulary or Vocabulary.infer([q])
    names = [name for name, _ in q.variables]
    out = set()
    for values in itertools.product(*(domain for _, domain in q.variables)):
        try:
            out.add(_substitute(q, vocab, dict(zip(names, values))))
        except TautologyError:
            continue
    return frozenset(out)


# -- pigeonhole ---------------------------------------------------------------


def pigeonhole_var(i: int, j: int, n: int) -> int:
    """Variable of "pigeon i sits in hole j"."""
    return (i - 1) * n + j


def encode_pigeonhole(n: int) -> AugmentedTheory:
    """n + 1 pigeons, n holes, symmetric in pigeons and in holes."""
    if n < 1:
        raise BadSize(f"Pigeonhole needs at least one hole, got {n}")
    num_vars = (n + 1) * n
    p = lambda i, j: pigeonhole_var(i, j, n)
    pigeons = list(range(1, n + 2))
    holes = list(range(1, n + 1))
    gens = []
    for perm in _index_generators(pigeons):
        gens.append(Permutation.from_variable_map(num_vars, {p(i, j): p(perm[i], j) for i in pigeons for j in holes}))
    for perm in _index_generators(holes):
        gens.append(Permutation.from_variable_map(num_vars, {p(i, j): p(i, perm[j]) for i in pigeons for j in holes}))
    group = PermGroup(num_vars, gens, order=math.factorial(n + 1) * math.factorial(n))
    clauses = [
        AugmentedClause(Clause([-p(1, 1), -p(2, 1)]), group),
        AugmentedClause(Clause([p(1, j) for j in holes]), group),
    ]
    names = {p(i, j): f"p{i}{j}" if n < 10 else f"p{i}_{j}" for i in pigeons for j in holes}
    return AugmentedTheory(clauses, num_vars, names)


def _index_generators(indices: Sequence[int]) -> List[Dict[int, int]]:
    """Index maps of the transposition and the long cycle generating Sym(indices)."""
    gens = []
    if len(indices) >= 2:
        swap = {i: i for i in indices}
        swap[indices[0]], swap[indices[1]] = indices[1], indices[0]
        gens.append(swap)
    if len(indices) >= 3:
        gens.append({i: indices[(k + 1) % len(indices)] for k, i in enumerate(indices)})
    return gens


# -- clique coloring ----------------------------------------------------------


def encode_clique_coloring(m: int, n: int) -> AugmentedTheory:
    """
    A graph on m nodes contains an (n + 1)-clique and is n-colorable.
    Node permutations act on edges through their sorted endpoint pair.
    """
    if n < 1 or m < n + 1:
        raise BadSize(f"Clique coloring needs n >= 1 and m >= n + 1, got m={m}, n={n}")
    nodes = list(range(1, m + 1))
    colors = list(range(1, n + 1))
    members = list(range(1, n + 2))
    edges = list(itertools.combinations(nodes, 2))
    e_index = {pair: k + 1 for k, pair in enumerate(edges)}
    offset_c = len(edges)
    offset_q = offset_c + m * n
    num_vars = offset_q + (n + 1) * m

    def e(i: int, j: int) -> int:
        return e_index[(min(i, j), max(i, j))]

    def c(i: int, l: int) -> int:
        return offset_c + (i - 1) * n + l

    def q(k: int, j: int) -> int:
        return offset_q + (k - 1) * m + j

    gens = []
    for perm in _index_generators(nodes):
        mapping = {e(i, j): e(perm[i], perm[j]) for i, j in edges}
        mapping.update({c(i, l): c(perm[i], l) for i in nodes for l in colors})
        mapping.update({q(k, j): q(k, perm[j]) for k in members for j in nodes})
        gens.append(Permutation.from_variable_map(num_vars, mapping))
    for perm in _index_generators(colors):
        gens.append(Permutation.from_variable_map(num_vars, {c(i, l): c(i, perm[l]) for i in nodes for l in colors}))
    for perm in _index_generators(members):
        gens.append(Permutation.from_variable_map(num_vars, {q(k, j): q(perm[k], j) for k in members for j in nodes}))
    group = PermGroup(
        num_vars, gens, order=math.factorial(m) * math.factorial(n) * math.factorial(n + 1)
    )
    clauses = [
        AugmentedClause(Clause([-e(1, 2), -c(1, 1), -c(2, 1)]), group),
        AugmentedClause(Clause([c(1, l) for l in colors]), group),
        AugmentedClause(Clause([q(1, j) for j in nodes]), group),
        AugmentedClause(Clause([-q(1, 1), -q(2, 1)]), group),
        AugmentedClause(Clause([e(1, 2), -q(1, 1), -q(2, 2)]), group),
    ]
    names = {e(i, j): f"e{i}_{j}" for i, j in edges}
    names.update({c(i, l): f"c{i}_{l}" for i in nodes for l in colors})
    names.update({q(k, j): f"q{k}_{j}" for k in members for j in nodes})
    return AugmentedTheory(clauses, num_vars, names)


# -- random theories ----------------------------------------------------------


def random_parity_theory(num_vars: int, num_constraints: int, seed: Optional[int] = None) -> List[ParityConstraint]:
    """Constraints over random nonempty variable subsets with random right-hand sides."""
    if num_vars < 1 or num_constraints < 1:
        raise BadSize(f"Need at least one variable and one constraint, got {num_vars}, {num_constraints}")
    rng = Random(seed)
    theory = []
    for _ in range(num_constraints):
        size = rng.randint(1, num_vars)
        theory.append(ParityConstraint(tuple(sorted(rng.sample(range(1, num_vars + 1), size))), rng.randrange(2)))
    return theory


def encode_parity_theory(
    constraints: Sequence[ParityConstraint], num_vars: int, compact: bool = False
) -> List[AugmentedClause]:
    return [encode_parity(c, num_vars, compact) for c in constraints]


def random_kcnf(num_vars: int, num_clauses: int, k: int, seed: Optional[int] = None) -> List[Clause]:
    """Uniform random k-CNF: k distinct variables per clause, random signs."""
    if not 1 <= k <= num_vars:
        raise BadSize(f"Clause width {k} outside 1..{num_vars}")
    rng = Random(seed)
    clauses = []
    for _ in range(num_clauses):
        variables = rng.sample(range(1, num_vars + 1), k)
        clauses.append(Clause(v if rng.randrange(2) else -v for v in variables))
    return clauses


__all__ = [
    "AugmentedTheory",
    "ParityConstraint",
    "QuantifiedLiteral",
    "QuantifiedClause",
    "Vocabulary",
    "QPropEncoding",
    "encode_cardinality",
    "encode_parity",
    "encode_parity_theory",
    "encode_qprop",
    "encode_qprop_theory",
    "ground_instances",
    "encode_pigeonhole",
    "pigeonhole_var",
    "encode_clique_coloring",
    "random_parity_theory",
    "random_kcnf",
    "representation_size",
]
