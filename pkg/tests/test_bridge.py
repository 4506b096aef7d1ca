import json
import random

import pytest

from porevise.bridge import (
    GuardExceeded,
    check_belief_equivalence,
    check_commutation,
    beliefs_syn,
    consistent_subsets,
    falsified_core,
    falsified_cores,
    first_difference,
    infers,
    preferred_consistent_subsets,
    subset_order,
    we_map,
)
from porevise.experiments import random_base, random_formula
from porevise.logic import FALSE, TRUE, Vocabulary, evaluate, models
from porevise.preorder import Mode, PartialPreorder
from porevise.semantic import Operator, beliefs_sem
from porevise.syntactic import BeliefBase, revise_history_syn

from conftest import ABCD, TOBACCO_CLASSES, TOBACCO_EDGES, class_structure, f
from oracles import naive_lifted_leq, naive_min

# falsified cores of the tobacco base, one row per interpretation
CORES = {w: frozenset() for w in (0, 2, 8, 9, 10, 11, 12, 13)}
CORES.update({1: {"r3"}, 3: {"r3"}, 4: {"r1"}, 6: {"r1"},
              5: {"r1", "r3"}, 7: {"r1", "r3"}, 14: {"r2"}, 15: {"r2"}})

# the subset table C0..C7: members, min of the complement
SUBSETS = {
    "C0": (set(), {"r2", "r3"}),
    "C1": ({"r2"}, {"r1", "r3"}),
    "C2": ({"r1"}, {"r2", "r3"}),
    "C3": ({"r3"}, {"r2"}),
    "C4": ({"r1", "r2"}, {"r3"}),
    "C5": ({"r1", "r3"}, {"r2"}),
    "C6": ({"r2", "r3"}, {"r1"}),
    "C7": ({"r1", "r2", "r3"}, set()),
}


def pq_base(order=()):
    v = Vocabulary(("p",))
    return BeliefBase.build(v, [("x", f("p", v)), ("y", f("!p", v))], order)


class TestCores:
    def test_all_sixteen(self, tobacco):
        assert falsified_cores(tobacco) == {w: frozenset(c) for w, c in CORES.items()}

    def test_single(self, tobacco):
        core = falsified_core(tobacco, 5)
        assert core.interpretation == 5 and core.labels == {"r1", "r3"}

    def test_cores_against_brute_force(self):
        rng = random.Random(1)
        for _ in range(200):
            base = random_base(rng, 3, 5)
            for w, core in falsified_cores(base).items():
                bad = {l for l, phi in base.entries if not evaluate(phi, w, base.vocab)}
                assert core == naive_min(base.order.leq, bad)


class TestWeMap:
    def test_mapped_state(self, tobacco):
        assert class_structure(we_map(tobacco, Mode.WEAK).order) == (TOBACCO_CLASSES, TOBACCO_EDGES)

    def test_strong_same_on_tobacco(self, tobacco):
        assert we_map(tobacco, Mode.STRONG).order == we_map(tobacco, Mode.WEAK).order

    def test_empty_base_is_ignorance(self):
        state = we_map(BeliefBase.empty(ABCD))
        assert len(state.order.classes) == 1

    @pytest.mark.parametrize("mode", ["weak", "strong"])
    def test_matches_pairwise_definition(self, mode):
        rng = random.Random(f"we:{mode}")
        for _ in range(150):
            base = random_base(rng, 3, 5)
            order = we_map(base, mode).order
            cores = falsified_cores(base)
            for w in cores:
                for v in cores:
                    expected = naive_lifted_leq(base.order.leq, cores[v], cores[w], mode)
                    assert order.leq(w, v) == expected

    def test_unfalsifying_interpretations_are_min_when_consistent(self):
        rng = random.Random(2)
        for _ in range(200):
            base = random_base(rng, 3, 4)
            clean = {w for w, c in falsified_cores(base).items() if not c}
            if clean:
                assert beliefs_sem(we_map(base)) == clean


class TestSubsets:
    def test_table(self, tobacco):
        got = {frozenset(r.subset): r.complement_min for r in consistent_subsets(tobacco)}
        assert got == {frozenset(s): frozenset(m) for s, m in SUBSETS.values()}

    def test_subset_order_classes(self, tobacco):
        records = consistent_subsets(tobacco)
        order = subset_order(tobacco, "weak", records)
        idx = {name: next(i for i, r in enumerate(records) if r.subset == s)
               for name, (s, _) in SUBSETS.items()}
        named = order.relabel({i: n for n, i in idx.items()}.__getitem__)
        expected = PartialPreorder.build(
            SUBSETS,
            [("C7", "C1"), ("C7", "C4"), ("C7", "C6"), ("C6", "C2"), ("C6", "C5")],
            [("C0", "C2"), ("C3", "C5")])
        assert named == expected

    def test_cons_is_full_set(self, tobacco):
        assert preferred_consistent_subsets(tobacco) == [frozenset({"r1", "r2", "r3"})]

    def test_contradictory_pair(self):
        subsets = [r.subset for r in consistent_subsets(pq_base())]
        assert subsets == [frozenset(), frozenset({"x"}), frozenset({"y"})]
        assert preferred_consistent_subsets(pq_base([("x", "y")])) == [frozenset({"x"})]

    def test_empty_base(self):
        records = consistent_subsets(BeliefBase.empty(ABCD))
        assert [r.subset for r in records] == [frozenset()]

    def test_guard(self, tobacco):
        with pytest.raises(GuardExceeded):
            consistent_subsets(tobacco, max_formulas=2)

    def test_revised_base_cons_is_everything(self, tobacco):
        revised = revise_history_syn(tobacco, f("d"))
        assert preferred_consistent_subsets(revised) == [frozenset(revised.labels)]


class TestBeliefs:
    def test_tobacco(self, tobacco):
        assert beliefs_syn(tobacco)[1] == {0, 2, 8, 9, 10, 11, 12, 13}

    def test_revised(self, tobacco):
        assert beliefs_syn(revise_history_syn(tobacco, f("d")))[1] == {9, 11, 13}

    def test_empty_base(self):
        formula, mods = beliefs_syn(BeliefBase.empty(ABCD))
        assert formula == TRUE and mods == frozenset(range(16))

    def test_formula_matches_model_set(self, tobacco):
        formula, mods = beliefs_syn(tobacco)
        assert models(formula, ABCD) == mods

    def test_infers(self, tobacco):
        assert infers(tobacco, f("b -> a"))
        assert not infers(tobacco, f("d"))
        assert infers(tobacco, TRUE)
        assert infers(pq_base(), TRUE)

    def test_infers_definition_random(self):
        rng = random.Random(4)
        for _ in range(300):
            base = random_base(rng, 3, 4)
            phi = random_formula(rng, base.vocab)
            mode = rng.choice(["weak", "strong"])
            assert infers(base, phi, mode) == (beliefs_syn(base, mode)[1] <= models(phi, base.vocab))

    def test_beliefs_match_mapping_random(self):
        rng = random.Random(9)
        for _ in range(300):
            base = random_base(rng, 3, 4)
            mode = rng.choice(["weak", "strong"])
            assert beliefs_syn(base, mode)[1] == beliefs_sem(we_map(base, mode))


class TestCheckers:
    @pytest.mark.parametrize("op", list(Operator))
    @pytest.mark.parametrize("mode", list(Mode))
    def test_tobacco(self, tobacco, op, mode):
        assert check_commutation(tobacco, f("d"), op, mode).verdict
        report = check_belief_equivalence(tobacco, f("d"), op, mode)
        assert report.verdict and report.details["models"] == [9, 11, 13]

    @pytest.mark.parametrize("op", list(Operator))
    def test_true_input(self, tobacco, op):
        assert check_commutation(tobacco, TRUE, op).verdict

    @pytest.mark.parametrize("op", list(Operator))
    def test_false_input(self, tobacco, op):
        assert check_commutation(tobacco, FALSE, op).verdict
        assert check_belief_equivalence(tobacco, FALSE, op).verdict

    def test_report_json(self, tobacco):
        data = json.loads(check_commutation(tobacco, f("d"), "history").to_json())
        assert data == {"check": "commutation", "verdict": "pass", "operator": "history",
                        "mode": "weak", "witness": None}

    def test_first_difference(self):
        a = PartialPreorder.build("xyz", [("x", "y")])
        b = PartialPreorder.build("xyz", [("y", "x")])
        assert first_difference(a, a) is None
        assert first_difference(a, b) == {"pair": ["x", "y"], "left": "<", "right": ">"}
        assert "carrier_left" in first_difference(a, PartialPreorder.build("xy"))
