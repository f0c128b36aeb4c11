"""
Tests for augmented resolution, stable-extension groups and resolvent checking.
"""

import random

import pytest

from zap_engine.augmented import AugmentedClause
from zap_engine.core import Clause
from zap_engine.encoders import QuantifiedClause, Vocabulary, encode_qprop, ground_instances
from zap_engine.errors import NotASubgroup, NotResolvable, TooLarge, ZapError
from zap_engine.group import PermGroup
from zap_engine.oracle import enumerate_models
from zap_engine.perm import Permutation, parse_cycles
from zap_engine.resolution import (
    ResolventWitness,
    check_resolvent,
    extn_enumerate,
    ground_resolvents,
    resolve_augmented,
    stab_group,
)

A, B, C, D, E = 1, 2, 3, 4, 5


def cycles(*texts, n=5):
    return {parse_cycles(text, n) for text in texts}


def random_signed(n: int, rng: random.Random) -> Permutation:
    variables = list(range(1, n + 1))
    rng.shuffle(variables)
    return Permutation.from_literal_map(
        n, {v: w if rng.random() < 0.5 else -w for v, w in zip(range(1, n + 1), variables)}
    )


def random_pair(rng: random.Random, n: int = 5):
    """Two augmented clauses whose bases clash on exactly one variable."""
    pivot = rng.randint(1, n)
    others = [v for v in range(1, n + 1) if v != pivot]
    left = rng.sample(others, rng.randint(0, 2))
    right = [v for v in rng.sample(others, rng.randint(0, 2)) if v not in left]
    sign = lambda v: v if rng.random() < 0.5 else -v
    c1 = Clause([pivot] + [sign(v) for v in left])
    c2 = Clause([-pivot] + [sign(v) for v in right])
    groups = [
        PermGroup(n, [random_signed(n, rng) for _ in range(rng.randint(0, 2))]) for _ in range(2)
    ]
    return AugmentedClause(c1, groups[0]), AugmentedClause(c2, groups[1])


class TestExtnEnumerate:
    """Tests for the brute-force extension set."""

    def test_letter_example(self, sym_bcd, swap_ed):
        """
        Test the ten permutations agreeing with Sym{b,c,d} on {a,b} and <(ed)> on {-a,e}.

        Ten, not nine: (b c e d) sends b to c, as (bc) in Sym{b,c,d} does,
        and e to d, as (ed) does, so it belongs to the set. Lists of this
        example that stop at nine elements leave it out.
        """
        result = extn_enumerate([[A, B], [-A, E]], [sym_bcd, swap_ed], range(1, 6))
        expected = cycles(
            "()", "(2 3)", "(2 4)", "(3 4)", "(2 3 4)", "(2 4 3)",
            "(5 4)", "(5 4 3)", "(2 3)(4 5)", "(2 3 5 4)",
        )
        assert result == expected
        assert parse_cycles("(5 3 4)", 5) not in result

    def test_empty_sets_give_symmetric_group(self, sym_bcd, swap_ed):
        """Test unconstrained extension is Sym of the ambient variables."""
        result = extn_enumerate([[], []], [sym_bcd, swap_ed], [1, 2, 3])
        assert len(result) == 6
        assert all(g.moved_variables() <= {1, 2, 3} for g in result)

    def test_closures_match_stab_group(self, sym_bcd, swap_ed):
        """Test extension over the closures is the stable-extension group."""
        result = extn_enumerate([[A, B, C, D], [-A, D, E]], [sym_bcd, swap_ed], range(1, 6))
        assert result == cycles("()", "(2 3)")
        stab = stab_group([Clause([A, B]), Clause([-A, E])], [sym_bcd, swap_ed])
        assert set(stab.elements()) == result

    def test_cap(self, sym_bcd):
        """Test TooLarge when Sym of the ambient variables exceeds the cap."""
        with pytest.raises(TooLarge):
            extn_enumerate([[A]], [sym_bcd], range(1, 6), cap=100)

    def test_mismatched_arguments(self, sym_bcd):
        """Test one literal set is needed per group."""
        with pytest.raises(ZapError, match="one literal set per group"):
            extn_enumerate([[A], [B]], [sym_bcd], range(1, 6))


class TestStabGroup:
    """Tests for the stable-extension group."""

    def test_disjoint_closures(self):
        """Test disjoint closures give the direct product, times the flips of the variable left over."""
        n = 6
        G1 = PermGroup.symmetric(n, [1, 2, 3])
        G2 = PermGroup.symmetric(n, [4, 5])
        assert stab_group([Clause([1]), Clause([4])], [G1, G2]).order() == 12 * 2
        assert stab_group([Clause([1]), Clause([4])], [G1, G2], free_outside=False).order() == 12

    def test_variables_outside_fixed_on_request(self, sym_bcd, swap_ed):
        """Test free_outside=False leaves variables outside every closure in place."""
        stab = stab_group([Clause([B]), Clause([E])], [sym_bcd, swap_ed], free_outside=False)
        assert 1 not in {abs(lit) for lit in stab.support()}

    def test_free_outside_by_default(self, sym_bcd):
        """Test every signed permutation of the remaining variables is included by default."""
        stab = stab_group([Clause([B])], [sym_bcd])
        assert stab.order() == 6 * 2**2 * 2
        assert stab.contains(parse_cycles("(1 -5)", 5))

    def test_trivial_groups(self):
        """Test trivial groups fix both clauses pointwise and leave the rest free."""
        n = 4
        trivial = PermGroup.trivial(n)
        stab = stab_group([Clause([1]), Clause([-1, 2])], [trivial, trivial])
        assert stab.order() == 2**2 * 2
        assert {abs(lit) for lit in stab.support()} == {3, 4}

    def test_resolvent_instances_do_not_depend_on_outside(self):
        """Test fixing or freeing the leftover variables gives the same resolvent instances."""
        rng = random.Random(7)
        for _ in range(50):
            a, b = random_pair(rng, 6)
            fixed = resolve_augmented(a, b)
            free = resolve_augmented(a, b, free_outside=True)
            assert fixed.instances() == free.instances()
            assert fixed.group.order() <= free.group.order()

    def test_space_mismatch(self, sym_bcd):
        """Test groups over different spaces are rejected."""
        with pytest.raises(ZapError, match="share one variable space"):
            stab_group([Clause([1]), Clause([1])], [sym_bcd, PermGroup.trivial(3)])


class TestResolveAugmented:
    """Tests for augmented resolution."""

    @pytest.mark.parametrize(
        "h1, h2, order",
        [
            ("trivial", "trivial", 1),
            ("trivial", "full", 2),
            ("full", "trivial", 6),
            ("full", "full", 2),
            ("bc", "full", 4),
        ],
    )
    def test_witness_choices(self, clause_23, clause_24, h1, h2, order):
        """Test each witness pair gives the resolvent base b v e with its own group."""
        pick = {
            "trivial": lambda ac: PermGroup.trivial(5),
            "full": lambda ac: ac.group,
            "bc": lambda ac: PermGroup(5, [parse_cycles("(2 3)", 5)]),
        }
        witness = ResolventWitness(pick[h1](clause_23), pick[h2](clause_24))
        resolvent = resolve_augmented(clause_23, clause_24, witness)
        assert resolvent.base == Clause([B, E])
        assert resolvent.group.order() == order

    def test_canonical(self, clause_23, clause_24):
        """Test the canonical resolvent group is <(bc)>."""
        resolvent = resolve_augmented(clause_23, clause_24)
        assert set(resolvent.group.elements()) == cycles("()", "(2 3)")
        assert resolvent.instances() == {Clause([B, E]), Clause([C, E])}

    def test_witness_swap_group(self, clause_23, clause_24):
        """Test dropping the left symmetry keeps the right one."""
        witness = ResolventWitness(PermGroup.trivial(5), clause_24.group)
        resolvent = resolve_augmented(clause_23, clause_24, witness)
        assert resolvent.instances() == {Clause([B, E]), Clause([B, D])}

    def test_witness_must_be_subgroup(self, clause_23, clause_24):
        """Test witness groups outside the clause groups are rejected."""
        witness = ResolventWitness(PermGroup(5, [parse_cycles("(1 2)", 5)]), clause_24.group)
        with pytest.raises(NotASubgroup, match="h1"):
            resolve_augmented(clause_23, clause_24, witness)

    def test_canonical_is_not_monotone(self, clause_23):
        """Test a larger right group can lose instances the smaller one kept."""
        plain = AugmentedClause(Clause([-A, E]), PermGroup.trivial(5))
        swapped = AugmentedClause(Clause([-A, E]), PermGroup(5, [parse_cycles("(5 4)", 5)]))
        small = resolve_augmented(clause_23, plain).instances()
        large = resolve_augmented(clause_23, swapped).instances()
        assert small == {Clause([B, E]), Clause([C, E]), Clause([D, E])}
        assert large == {Clause([B, E]), Clause([C, E])}
        model = {A: False, B: True, C: True, D: False, E: False}
        assert all(c.is_satisfied_by(model) for c in large)
        assert not Clause([D, E]).is_satisfied_by(model)

    def test_empty_resolvent(self):
        """Test (x1, <(1 2)>) against (-x1, 1) gives the empty clause."""
        a = AugmentedClause(Clause([1]), PermGroup(2, [parse_cycles("(1 2)", 2)]))
        b = AugmentedClause(Clause([-1]), PermGroup.trivial(2))
        assert resolve_augmented(a, b).base.is_empty()

    def test_bases_must_clash(self):
        """Test bases without a clash are not resolvable even if instances are."""
        a = AugmentedClause(Clause([2]), PermGroup(2, [parse_cycles("(1 2)", 2)]))
        b = AugmentedClause(Clause([-1]), PermGroup.trivial(2))
        with pytest.raises(NotResolvable):
            resolve_augmented(a, b)

    def test_shared_flip_group(self):
        """Test two clauses under one flip group resolve to (x2, G)."""
        G = PermGroup(2, [parse_cycles("(1 -1)(2 -2)", 2)])
        a = AugmentedClause(Clause([1, 2]), G)
        b = AugmentedClause(Clause([-1, 2]), G)
        resolvent = resolve_augmented(a, b)
        assert resolvent.base == Clause([2])
        assert resolvent.group.order() == 2
        assert resolvent.instances() == {Clause([2]), Clause([-2])}

    def test_independent_symmetries_multiply(self):
        """Test symmetries on disjoint sides combine."""
        a = AugmentedClause(Clause([1, 2]), PermGroup.symmetric(5, [2, 3]))
        b = AugmentedClause(Clause([-1, 4]), PermGroup.symmetric(5, [4, 5]))
        resolvent = resolve_augmented(a, b)
        assert resolvent.group.order() == 4
        assert len(resolvent.instances()) == 4

    def test_sound_on_random_pairs(self):
        """Test every resolvent instance follows from the two premises."""
        rng = random.Random(2024)
        n = 5
        for _ in range(100):
            a, b = random_pair(rng, n)
            resolvent = resolve_augmented(a, b)
            premises = [c.literals for c in a.instances() | b.instances()]
            before = enumerate_models(premises, n)
            after = enumerate_models(premises + [c.literals for c in resolvent.instances()], n)
            assert before == after
            assert resolvent.base in resolvent.instances()
            assert resolvent.instances() <= ground_resolvents(a, b)

    def test_canonical_passes_check_on_random_pairs(self):
        """Test the canonical resolvent always verifies against its own witness."""
        rng = random.Random(99)
        for _ in range(100):
            a, b = random_pair(rng)
            resolvent = resolve_augmented(a, b)
            assert check_resolvent(resolvent, a, b, ResolventWitness(a.group, b.group))

    def test_lifted_resolution(self):
        """Test augmented resolution of two encoded quantified clauses grounds like the lifted resolvent."""
        X, Y, Z = ("C", "α"), ("D", "δ"), ("β", "γ")
        vocab = Vocabulary({"a": (("A", "B"), X), "b": (X, Y, Z), "c": (X, Y, Z)})
        assert vocab.num_atoms == 20
        left = QuantifiedClause.of(
            {"x": X, "y": Y, "z": Z}, ["a(A, x)", "b(C, y, z)", "c(x, y, z)"]
        )
        right = QuantifiedClause.of({"x": X, "z": Z}, ["a(B, x)", "-b(x, D, z)"])
        lifted = QuantifiedClause.of({"x": X, "z": Z}, ["a(A, x)", "c(x, D, z)", "a(B, C)"])
        resolvent = resolve_augmented(
            encode_qprop(left, vocab).clause, encode_qprop(right, vocab).clause
        )
        expected = ground_instances(lifted, vocab)
        assert len(expected) == 4
        assert resolvent.group.order() == 4
        assert resolvent.instances() == expected


class TestCheckResolvent:
    """Tests for the polynomial resolvent check."""

    def test_rejects_overlarge_group(self, clause_23, clause_24, sym_bcd):
        """Test (b v e, Sym{b,c,d}) is not a resolvent under the full witness."""
        candidate = AugmentedClause(Clause([B, E]), sym_bcd)
        witness = ResolventWitness(clause_23.group, clause_24.group)
        assert not check_resolvent(candidate, clause_23, clause_24, witness)

    def test_accepts_own_witness(self, clause_23, clause_24):
        """Test each computed resolvent checks against the witness that made it."""
        for h1 in (PermGroup.trivial(5), clause_23.group):
            for h2 in (PermGroup.trivial(5), clause_24.group):
                witness = ResolventWitness(h1, h2)
                resolvent = resolve_augmented(clause_23, clause_24, witness)
                assert check_resolvent(resolvent, clause_23, clause_24, witness)

    def test_rejects_wrong_base(self, clause_23, clause_24):
        """Test a candidate with the wrong base."""
        candidate = AugmentedClause(Clause([B]), PermGroup.trivial(5))
        witness = ResolventWitness(clause_23.group, clause_24.group)
        assert not check_resolvent(candidate, clause_23, clause_24, witness)

    def test_rejects_bad_witness(self, clause_23, clause_24):
        """Test a witness outside the clause groups."""
        candidate = AugmentedClause(Clause([B, E]), PermGroup.trivial(5))
        witness = ResolventWitness(PermGroup(5, [parse_cycles("(1 5)", 5)]), clause_24.group)
        assert not check_resolvent(candidate, clause_23, clause_24, witness)


class TestGroundResolvents:
    """Tests for ground_resolvents."""

    def test_different_lengths(self):
        """Test instance pairs can resolve to clauses of different lengths."""
        a = AugmentedClause(Clause([A, B]), PermGroup(5, [parse_cycles("(2 3)", 5)]))
        b = AugmentedClause(Clause([-A, D]), PermGroup(5, [parse_cycles("(4 3)", 5)]))
        found = ground_resolvents(a, b)
        assert found == {Clause([B, D]), Clause([B, C]), Clause([C, D]), Clause([C])}
        assert {len(c) for c in found} == {1, 2}

    def test_canonical_inside_ground(self, clause_23, clause_24):
        """Test the canonical resolvent's instances are ground resolvents."""
        assert resolve_augmented(clause_23, clause_24).instances() <= ground_resolvents(
            clause_23, clause_24
        )
