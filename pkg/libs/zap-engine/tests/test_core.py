"""
Tests for literals, clauses, annotated assignments and ground resolution.
"""

import random

import pytest

from zap_engine.core import (
    BRANCH,
    AnnotatedAssignment,
    Clause,
    curr,
    is_unit,
    lit_to_point,
    point_to_lit,
    poss,
    resolve_ground,
    resolve_reasons,
)
from zap_engine.errors import InconsistentAssignment, NotResolvable, TautologyError, ZapError
from zap_engine.perm import Permutation


class TestClause:
    """Tests for Clause construction and queries."""

    def test_duplicates_merged(self):
        """Test repeated literals collapse to one."""
        c = Clause([3, 1, 3, -2])
        assert c.literals == (1, -2, 3)
        assert len(c) == 3

    def test_tautology_rejected(self):
        """Test a clause with l and -l is rejected."""
        with pytest.raises(TautologyError, match="both"):
            Clause([1, 2, -2])

    def test_zero_literal_rejected(self):
        """Test 0 is not a literal."""
        with pytest.raises(ZapError, match="Literal 0"):
            Clause([1, 0])

    def test_bool_literal_rejected(self):
        """Test booleans are not accepted as literals."""
        with pytest.raises(ZapError, match="nonzero integer"):
            Clause([True])

    def test_empty_clause(self):
        """Test the empty clause is representable."""
        c = Clause.empty()
        assert c.is_empty()
        assert str(c) == "⊥"
        assert c.max_var == 0

    def test_set_semantics(self):
        """Test equality and hashing ignore literal order."""
        assert Clause([1, -2]) == Clause([-2, 1])
        assert len({Clause([1, -2]), Clause([-2, 1])}) == 1

    def test_variables_and_negation(self):
        """Test derived views of the literal set."""
        c = Clause([-4, 2])
        assert c.variables == frozenset({2, 4})
        assert c.negated_literals == (-2, 4)
        assert c.max_var == 4

    def test_satisfied_by_model(self):
        """Test evaluation against a total model."""
        c = Clause([1, -2])
        assert c.is_satisfied_by({1: False, 2: False})
        assert not c.is_satisfied_by({1: False, 2: True})

    def test_str(self):
        """Test human-readable rendering."""
        assert str(Clause([1, -2])) == "1 ∨ ¬2"


class TestPoints:
    """Tests for the literal/point encoding."""

    def test_positive_then_negative(self):
        """Test positives occupy 0..n-1 and negatives n..2n-1."""
        assert lit_to_point(1, 4) == 0
        assert lit_to_point(4, 4) == 3
        assert lit_to_point(-1, 4) == 4
        assert lit_to_point(-4, 4) == 7

    def test_inverse_maps(self):
        """Test point_to_lit inverts lit_to_point."""
        for lit in (1, 2, 3, -1, -2, -3):
            assert point_to_lit(lit_to_point(lit, 3), 3) == lit


class TestPossCurr:
    """Tests for poss and curr."""

    def test_poss_one_falsified(self):
        """Test poss after falsifying one of three literals."""
        P = AnnotatedAssignment.from_literals([-1])
        assert poss(Clause([1, 2, 3]), P) == 1

    def test_poss_all_falsified(self):
        """Test a falsified clause has poss -1."""
        P = AnnotatedAssignment.from_literals([-1, -2, -3])
        assert poss(Clause([1, 2, 3]), P) == -1

    def test_poss_empty_clause(self):
        """Test the empty clause has poss -1 under the empty assignment."""
        assert poss(Clause.empty(), AnnotatedAssignment()) == -1

    def test_curr_both_satisfied(self):
        """Test curr counts satisfied literals minus one."""
        P = AnnotatedAssignment.from_literals([1, 2])
        assert curr(Clause([1, 2]), P) == 1

    def test_curr_none_satisfied(self):
        """Test curr is -1 when nothing is satisfied."""
        P = AnnotatedAssignment.from_literals([-1])
        assert curr(Clause([1, 2, 3]), P) == -1

    def test_unit_classification(self):
        """Test poss 0 and curr -1 means unit."""
        P = AnnotatedAssignment.from_literals([-1, -2])
        assert is_unit(Clause([1, 2, 3]), P)
        assert not is_unit(Clause([1, 2, 3]), AnnotatedAssignment())

    def test_poss_drops_by_one_per_falsified_literal(self):
        """Test poss falls by exactly one when a member is falsified, else stays."""
        c = Clause([1, 2, 3])
        P = AnnotatedAssignment()
        before = poss(c, P)
        P.append(4)
        assert poss(c, P) == before
        P.append(-2)
        assert poss(c, P) == before - 1


class TestResolveGround:
    """Tests for ground resolution."""

    def test_simple(self):
        """Test (a v b, -a v d) -> b v d."""
        assert resolve_ground(Clause([1, 2]), Clause([-1, 4])) == Clause([2, 4])

    def test_pigeonhole_reasons(self):
        """Test (-p33 v -p43, p41 v p42 v p43) -> -p33 v p41 v p42."""
        p33, p41, p42, p43 = 9, 10, 11, 12
        result = resolve_ground(Clause([-p33, -p43]), Clause([p41, p42, p43]))
        assert result == Clause([-p33, p41, p42])

    def test_two_clashes(self):
        """Test two clashing pairs are not resolvable."""
        with pytest.raises(NotResolvable, match="2 literals"):
            resolve_ground(Clause([1, 2]), Clause([-1, -2]))

    def test_no_clash(self):
        """Test clauses without a clash are not resolvable."""
        with pytest.raises(NotResolvable, match="0 literals"):
            resolve_ground(Clause([1]), Clause([2]))

    def test_commutes_with_signed_permutations(self):
        """Test resolve(w(c1), w(c2)) = w(resolve(c1, c2)) on random inputs."""
        rng = random.Random(7)
        n = 6
        for _ in range(100):
            pivot = rng.randint(1, n)
            others = [v for v in range(1, n + 1) if v != pivot]
            left = rng.sample(others, 2)
            right = [v for v in rng.sample(others, 2) if v not in left]
            c1 = Clause([pivot] + [v if rng.random() < 0.5 else -v for v in left])
            c2 = Clause([-pivot] + [v if rng.random() < 0.5 else -v for v in right])
            variables = list(range(1, n + 1))
            rng.shuffle(variables)
            mapping = {
                v: w if rng.random() < 0.5 else -w
                for v, w in zip(range(1, n + 1), variables)
            }
            w = Permutation.from_literal_map(n, mapping)
            assert resolve_ground(w.apply(c1), w.apply(c2)) == w.apply(resolve_ground(c1, c2))


class TestResolveReasons:
    """Tests for reason resolution with the branch marker."""

    def test_branch_left_identity(self):
        """Test BRANCH on the left returns the right reason."""
        assert resolve_reasons(BRANCH, Clause([-1, 4])) == Clause([-1, 4])

    def test_branch_right_identity(self):
        """Test BRANCH on the right returns the left reason."""
        assert resolve_reasons(Clause([1, 2]), BRANCH) == Clause([1, 2])

    def test_contradiction(self):
        """Test (a, -a) resolves to the empty clause."""
        assert resolve_reasons(Clause([1]), Clause([-1])).is_empty()


class TestAnnotatedAssignment:
    """Tests for AnnotatedAssignment bookkeeping."""

    def test_inconsistent_append(self):
        """Test assigning a variable twice raises."""
        P = AnnotatedAssignment.from_literals([1])
        with pytest.raises(InconsistentAssignment, match="already valued"):
            P.append(-1)
        with pytest.raises(InconsistentAssignment):
            P.append(1)

    def test_values_array(self):
        """Test the dense value array tracks both signs."""
        P = AnnotatedAssignment(num_vars=3)
        P.append(-2)
        assert P.values.tolist() == [0, -1, 0, 0, 1, 0]

    def test_values_needs_num_vars(self):
        """Test the dense view is unavailable without num_vars."""
        with pytest.raises(ZapError, match="num_vars"):
            AnnotatedAssignment().values

    def test_truncate(self):
        """Test truncation clears entries and dense values."""
        P = AnnotatedAssignment.from_literals([1, -2, 3], num_vars=3)
        P.truncate(1)
        assert P.literals == [1]
        assert P.is_unvalued(2) and P.is_unvalued(3)
        assert P.values.tolist() == [1, 0, 0, -1, 0, 0]

    def test_index_and_reason(self):
        """Test index_of answers for either sign and reason_of for the true literal."""
        reason = Clause([-1, 2])
        P = AnnotatedAssignment([(1, BRANCH), (2, reason)])
        assert P.index_of(2) == 1
        assert P.index_of(-2) == 1
        assert P.reason_of(2) == reason
        assert P.decision_count == 1

    def test_model_completes_with_false(self):
        """Test the total model sets unvalued variables to False."""
        P = AnnotatedAssignment.from_literals([2])
        assert P.model(3) == {1: False, 2: True, 3: False}

    def test_validate_accepts_sound_prefixes(self):
        """Test a correctly annotated assignment validates."""
        P = AnnotatedAssignment([(1, BRANCH), (2, Clause([-1, 2])), (3, Clause([-2, 3]))])
        P.validate()

    def test_validate_rejects_literal_outside_reason(self):
        """Test a reason must contain its literal."""
        P = AnnotatedAssignment([(1, BRANCH), (2, Clause([-1, 3]))])
        with pytest.raises(InconsistentAssignment, match="not in its reason"):
            P.validate()

    def test_validate_rejects_non_unit_reason(self):
        """Test a reason must be unit when its literal is added."""
        P = AnnotatedAssignment([(2, Clause([1, 2]))])
        with pytest.raises(InconsistentAssignment, match="not unit"):
            P.validate()

    def test_copy_is_independent(self):
        """Test copies do not share entries."""
        P = AnnotatedAssignment.from_literals([1], num_vars=2)
        Q = P.copy()
        Q.append(2)
        assert len(P) == 1 and len(Q) == 2
