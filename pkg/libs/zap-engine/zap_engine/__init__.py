"""
ZAP Engine

Satisfiability over augmented clauses: a clause paired with a permutation
group of the literals, standing for every image of the clause under the group.

Core Abstraction:
    AugmentedClause - a base clause and its PermGroup
    RBLSolver       - relevance-bounded learning over augmented databases
"""

__version__ = "0.1.0"

from zap_engine.errors import (
    ZapError,
    NotResolvable,
    TautologyError,
    ParseError,
    WnConflict,
    NotBijective,
    NoLift,
    InstanceCountMismatch,
    TooManyInstances,
    NotAnInstance,
    TooLarge,
    BudgetExceeded,
    BadThreshold,
    DomainTooSmall,
    BadSize,
    NoBranchAvailable,
    InconsistentAssignment,
    NotASubgroup,
)
from zap_engine.core import (
    BRANCH,
    AnnotatedAssignment,
    Clause,
    curr,
    poss,
    resolve_ground,
    resolve_reasons,
)
from zap_engine.dimacs import format_dimacs, parse_dimacs
from zap_engine.perm import Permutation, format_cycles, parse_cycles, representation_size
from zap_engine.group import PermGroup, shrink_to_transitive
from zap_engine.augmented import AugmentedClause, expand_theory
from zap_engine.resolution import (
    ResolventWitness,
    check_resolvent,
    extn_enumerate,
    ground_resolvents,
    resolve_augmented,
    stab_group,
)
from zap_engine.solver import (
    RBLSolver,
    SolveResult,
    SolverOptions,
    SolverStats,
    rbl_solve,
    unit_propagate_augmented,
    unit_propagate_ground,
)
from zap_engine.encoders import (
    AugmentedTheory,
    ParityConstraint,
    QuantifiedClause,
    Vocabulary,
    encode_cardinality,
    encode_clique_coloring,
    encode_parity,
    encode_pigeonhole,
    encode_qprop,
    random_kcnf,
    random_parity_theory,
)
from zap_engine.oracle import dpll_solve, enumerate_models, gf2_solve

__all__ = [
    # Errors
    'ZapError',
    'NotResolvable',
    'TautologyError',
    'ParseError',
    'WnConflict',
    'NotBijective',
    'NoLift',
    'InstanceCountMismatch',
    'TooManyInstances',
    'NotAnInstance',
    'TooLarge',
    'BudgetExceeded',
    'BadThreshold',
    'DomainTooSmall',
    'BadSize',
    'NoBranchAvailable',
    'InconsistentAssignment',
    'NotASubgroup',

    # Ground layer
    'BRANCH',
    'AnnotatedAssignment',
    'Clause',
    'curr',
    'poss',
    'resolve_ground',
    'resolve_reasons',
    'parse_dimacs',
    'format_dimacs',

    # Groups
    'Permutation',
    'parse_cycles',
    'format_cycles',
    'representation_size',
    'PermGroup',
    'shrink_to_transitive',

    # Augmented clauses and resolution
    'AugmentedClause',
    'expand_theory',
    'ResolventWitness',
    'resolve_augmented',
    'check_resolvent',
    'stab_group',
    'extn_enumerate',
    'ground_resolvents',

    # Solver
    'RBLSolver',
    'SolveResult',
    'SolverOptions',
    'SolverStats',
    'rbl_solve',
    'unit_propagate_ground',
    'unit_propagate_augmented',

    # Encoders
    'AugmentedTheory',
    'ParityConstraint',
    'QuantifiedClause',
    'Vocabulary',
    'encode_cardinality',
    'encode_parity',
    'encode_qprop',
    'encode_pigeonhole',
    'encode_clique_coloring',
    'random_parity_theory',
    'random_kcnf',

    # Oracles
    'dpll_solve',
    'gf2_solve',
    'enumerate_models',
]
