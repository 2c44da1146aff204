import random

import pytest

import incalc as ic
from incalc.propagation import RULES, RULES_BY_CONNECTIVE
from helpers import arbitrary_instance, sound_instance

A, B = ic.Atom("a"), ic.Atom("b")


def u(n):
    return ic.SampleSpace.uniform(n)


class TestRuleCatalog:
    def test_census(self):
        assert len(RULES) == 22
        assert len(RULES_BY_CONNECTIVE[ic.Not]) == 4
        for kind in (ic.And, ic.Or, ic.Implies):
            assert len(RULES_BY_CONNECTIVE[kind]) == 6

    def test_every_rule_is_justified(self):
        for rule in RULES:
            assert "i(" in rule.note, rule

    def _axiom(self, kind, ta, tb, width):
        full = (1 << width) - 1
        if kind is ic.Not:
            return ~ta & full
        if kind is ic.And:
            return ta & tb
        if kind is ic.Or:
            return ta | tb
        return (~ta & full) | tb

    def test_exhaustive_soundness_small_widths(self):
        # Every rule, every ground truth, every bound pair bracketing it,
        # at widths 1 to 3: the truth must stay inside the merged bound.
        for width in (1, 2, 3):
            values = range(1 << width)
            masks = list(values)
            for kind, rules in RULES_BY_CONNECTIVE.items():
                unary = kind is ic.Not
                for ta in values:
                    for tb in (0,) if unary else values:
                        tc = self._axiom(kind, ta, tb, width)
                        truths = {"self": tc, "left": ta, "right": tb}
                        for ma in masks:
                            for mb in (0,) if unary else masks:
                                for mc in masks:
                                    b_a = (
                                        ic.Incidence(ta & ma, width),
                                        ic.Incidence(ta | ma, width),
                                    )
                                    b_b = (
                                        ic.Incidence(tb & mb, width),
                                        ic.Incidence(tb | mb, width),
                                    )
                                    b_c = (
                                        ic.Incidence(tc & mc, width),
                                        ic.Incidence(tc | mc, width),
                                    )
                                    for rule in rules:
                                        grown = rule.compute(b_c, b_a, None if unary else b_b)
                                        truth = truths[rule.target]
                                        if rule.action == "raise":
                                            # Everything the rule adds to the lower
                                            # bound must actually be in the truth.
                                            assert grown.bits & ~truth == 0, rule.note
                                        else:
                                            # The cut set must keep the whole truth.
                                            assert truth & ~grown.bits == 0, rule.note


class TestWorkedExamples:
    def test_conjunction_upper_bound_tightening(self):
        space = u(10)
        assignment = ic.BoundAssignment(space)
        assignment.declare(
            ic.parse_formula("a & b"), lower=space.empty(), upper=space.incidence([0, 1, 2])
        )
        assignment.declare(B, lower=space.incidence(range(8)), upper=space.full())
        outcome = ic.propagate(assignment)
        assert outcome.ok
        assert outcome.final.upper(A) == space.incidence([0, 1, 2, 8, 9])

    def test_negation_bound_transfer(self):
        space = u(2)
        assignment = ic.BoundAssignment(space)
        assignment.declare(A)
        assignment.declare(ic.Not(A), lower=space.incidence([0]))
        outcome = ic.propagate(assignment)
        assert outcome.ok
        assert outcome.final.upper(A) == space.incidence([1])
        legal = ic.enumerate_legal(assignment)
        assert sorted(env["a"].indices() for env in legal) == [(), (1,)]

    def test_contradictory_lower_bounds(self):
        space = u(2)
        assignment = ic.BoundAssignment(space)
        assignment.declare(A, lower=space.incidence([0]))
        assignment.declare(ic.Not(A), lower=space.incidence([0]))
        outcome = ic.propagate(assignment)
        assert outcome.status == ic.INCONSISTENT
        assert outcome.culprit == A
        assert outcome.final.upper(A) == space.incidence([1])

    def test_detachment_through_implication(self):
        space = u(4)
        assignment = ic.BoundAssignment(space)
        assignment.declare(ic.parse_formula("a -> b"), lower=space.full())
        assignment.declare(A, lower=space.incidence([0, 1]))
        outcome = ic.propagate(assignment)
        assert outcome.ok
        assert space.incidence([0, 1]).is_subset(outcome.final.lower(B))


class TestBoundAssignment:
    def test_constants_are_pinned_at_registration(self):
        space = u(3)
        assignment = ic.BoundAssignment(space)
        assignment.declare(ic.parse_formula("a & true"))
        assert assignment.bounds(ic.TRUE) == (space.full(), space.full())
        assignment.declare(ic.parse_formula("a | false"))
        assert assignment.bounds(ic.FALSE) == (space.empty(), space.empty())

    def test_subformulas_registered_in_preorder(self):
        assignment = ic.BoundAssignment(u(2))
        f = ic.parse_formula("~a & b")
        assignment.declare(f)
        assert assignment.sentences() == (f, ic.Not(A), A, B)

    def test_duplicate_declarations_amalgamate(self):
        space = u(4)
        assignment = ic.BoundAssignment(space)
        assignment.declare(A, lower=space.incidence([0]), upper=space.incidence([0, 1, 2]))
        assignment.declare(A, lower=space.incidence([1]), upper=space.incidence([0, 1, 3]))
        assert assignment.lower(A) == space.incidence([0, 1])
        assert assignment.upper(A) == space.incidence([0, 1])

    def test_exact_shorthand(self):
        space = u(3)
        assignment = ic.BoundAssignment(space)
        assignment.declare(A, exact=space.incidence([1]))
        assert assignment.is_exact(A)
        with pytest.raises(ValueError):
            assignment.declare(B, exact=space.empty(), lower=space.empty())

    def test_dump_format(self):
        space = u(4)
        assignment = ic.BoundAssignment(space)
        assignment.declare(A, lower=space.incidence([0]), upper=space.incidence([0, 1]))
        assert assignment.dump() == "a inf=1000 sup=1100 p=[1/4 (= 0.25), 1/2 (= 0.5)]"

    def test_unknown_sentence(self):
        assignment = ic.BoundAssignment(u(2))
        with pytest.raises(ic.UnknownSentenceError):
            assignment.bounds(A)

    def test_width_checked(self):
        assignment = ic.BoundAssignment(u(2))
        with pytest.raises(ic.WidthMismatchError):
            assignment.declare(A, lower=ic.Incidence.empty(3))

    def test_check_consistency_reports_first_registered(self):
        space = u(2)
        assignment = ic.BoundAssignment(space)
        assignment.declare(B, lower=space.incidence([0]), upper=space.incidence([1]))
        assignment.declare(A, lower=space.incidence([0]), upper=space.incidence([1]))
        assert ic.check_consistency(assignment) == B
        outcome = ic.propagate(assignment)
        assert outcome.status == ic.INCONSISTENT and outcome.culprit == B

    def test_propagate_leaves_input_untouched(self):
        space = u(2)
        assignment = ic.BoundAssignment(space)
        assignment.declare(A)
        assignment.declare(ic.Not(A), lower=space.incidence([0]))
        before = assignment.copy()
        ic.propagate(assignment)
        assert assignment == before


class TestAmalgamation:
    def test_worked_example(self):
        lowers = [ic.Incidence.from_indices([0, 1], 6), ic.Incidence.from_indices([1, 5], 6)]
        assert ic.amalgamate_lower_bounds(lowers) == ic.Incidence.from_indices([0, 1, 5], 6)

    def test_empty_collection_needs_width(self):
        assert ic.amalgamate_lower_bounds([], width=4) == ic.Incidence.empty(4)
        with pytest.raises(ValueError):
            ic.amalgamate_lower_bounds([])

    def test_width_mismatch(self):
        with pytest.raises(ic.WidthMismatchError):
            ic.amalgamate_lower_bounds([ic.Incidence.empty(3), ic.Incidence.empty(4)])
        with pytest.raises(ic.WidthMismatchError):
            ic.amalgamate_lower_bounds([ic.Incidence.empty(3)], width=4)

    def test_union_of_sound_lower_bounds_is_sound(self):
        rng = random.Random(3)
        for _ in range(100):
            width = rng.randint(1, 10)
            truth = rng.getrandbits(width)
            parts = [
                ic.Incidence(truth & rng.getrandbits(width), width) for _ in range(3)
            ]
            merged = ic.amalgamate_lower_bounds(parts)
            assert merged.bits & ~truth == 0


class TestPropagate:
    def test_rejects_unknown_mode(self):
        assignment = ic.BoundAssignment(u(2))
        with pytest.raises(ValueError):
            ic.propagate(assignment, "eager")

    def test_bounds_only_tighten(self):
        rng = random.Random(17)
        for _ in range(60):
            _, assignment, _ = sound_instance(
                rng, width=rng.randint(1, 8), atoms=("a", "b", "c"), n_sentences=4
            )
            outcome = ic.propagate(assignment)
            for sentence in assignment:
                low0, high0 = assignment.bounds(sentence)
                low1, high1 = outcome.final.bounds(sentence)
                assert low0.is_subset(low1)
                assert high1.is_subset(high0)

    def test_sound_on_instances_with_a_model(self):
        rng = random.Random(29)
        for _ in range(100):
            space, assignment, env = sound_instance(
                rng, width=rng.randint(1, 10), atoms=("a", "b", "c", "d"), n_sentences=6
            )
            outcome = ic.propagate(assignment)
            assert outcome.ok
            for sentence in assignment:
                truth = ic.incidence_of(sentence, env, space)
                low, high = outcome.final.bounds(sentence)
                assert low.is_subset(truth) and truth.is_subset(high)

    def test_fixpoint_is_stable(self):
        rng = random.Random(41)
        for _ in range(30):
            _, assignment, _ = sound_instance(
                rng, width=rng.randint(1, 8), atoms=("a", "b"), n_sentences=4
            )
            once = ic.propagate(assignment)
            again = ic.propagate(once.final)
            assert again.steps == 0
            assert again.final == once.final

    def test_confluence_under_shuffled_worklists(self):
        rng = random.Random(53)
        for _ in range(25):
            width = rng.randint(1, 8)
            _, assignment, _ = sound_instance(
                rng, width=width, atoms=("a", "b", "c"), n_sentences=5
            )
            reference = ic.propagate(assignment)
            bound = 2 * width * len(assignment)
            assert reference.steps <= bound
            for seed in range(5):
                shuffled = ic.propagate(
                    assignment, worklist_rng=random.Random(seed)
                )
                assert shuffled.final == reference.final
                assert shuffled.steps <= bound


class TestOracle:
    def test_legal_respects_all_bounds(self):
        rng = random.Random(61)
        for _ in range(40):
            space, assignment = arbitrary_instance(
                rng, width=rng.randint(1, 4), atoms=("a", "b"), n_sentences=3
            )
            for env in ic.enumerate_legal(assignment):
                for sentence in assignment:
                    value = ic.incidence_of(sentence, env, space)
                    low, high = assignment.bounds(sentence)
                    assert low.is_subset(value) and value.is_subset(high)

    def test_propagated_bounds_contain_tight_bounds(self):
        rng = random.Random(67)
        for _ in range(60):
            _, assignment = arbitrary_instance(
                rng, width=rng.randint(1, 4), atoms=("a", "b", "c"), n_sentences=3
            )
            tight = ic.tight_bounds(assignment)
            if tight is None:
                continue
            outcome = ic.propagate(assignment)
            assert outcome.ok
            for sentence in assignment:
                assert outcome.final.lower(sentence).is_subset(tight.lower(sentence))
                assert tight.upper(sentence).is_subset(outcome.final.upper(sentence))

    def test_complete_mode_matches_oracle_exactly(self):
        rng = random.Random(71)
        for _ in range(60):
            _, assignment = arbitrary_instance(
                rng, width=rng.randint(1, 4), atoms=("a", "b", "c"), n_sentences=3
            )
            tight = ic.tight_bounds(assignment)
            outcome = ic.propagate(assignment, "complete")
            if tight is None:
                assert outcome.status == ic.INCONSISTENT
            else:
                assert outcome.ok
                assert outcome.final == tight

    def test_guard_refuses_large_instances(self):
        space = u(10)
        assignment = ic.BoundAssignment(space)
        assignment.declare(ic.parse_formula("a & b & c"))
        with pytest.raises(ic.InstanceTooLargeError):
            ic.enumerate_legal(assignment)
        with pytest.raises(ic.InstanceTooLargeError):
            ic.propagate(assignment, "complete")
        assert ic.propagate(assignment).ok
