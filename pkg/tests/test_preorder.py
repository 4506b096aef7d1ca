import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from porevise.experiments import random_preorder
from porevise.preorder import (
    Mode,
    PartialPreorder,
    PreorderAxiomError,
    StrictCycleError,
    UnknownElementError,
)

from oracles import (
    naive_closure,
    naive_incomparable_pairs,
    naive_lifted_leq,
    naive_min,
    naive_set_equal,
    naive_strong,
    naive_weak,
)


@pytest.fixture
def rules():
    # r2 = b&c->!a preferred to r1 = b->a; r3 = d->a unrelated
    return PartialPreorder.build(["r1", "r2", "r3"], [("r2", "r1")])


@pytest.fixture
def crossed_pairs():
    return PartialPreorder.build(["x1", "x2", "y1", "y2"], [("x1", "y1"), ("x2", "y2")])


class TestBuild:
    def test_rules_order(self, rules):
        assert rules.lt("r2", "r1")
        assert rules.incomparable("r3", "r1")
        assert rules.incomparable("r3", "r2")

    def test_two_cycle_rejected(self):
        with pytest.raises(StrictCycleError) as e:
            PartialPreorder.build("xy", [("x", "y"), ("y", "x")])
        assert set(e.value.cycle) == {"x", "y"}

    def test_long_cycle_reports_members(self):
        with pytest.raises(StrictCycleError) as e:
            PartialPreorder.build("wxyz", [("x", "y"), ("y", "z"), ("z", "x"), ("w", "x")])
        assert set(e.value.cycle) == {"x", "y", "z"}

    def test_strict_between_equals_rejected(self):
        with pytest.raises(StrictCycleError):
            PartialPreorder.build("xyz", [("x", "z")], [("x", "y"), ("y", "z")])

    def test_closure(self):
        p = PartialPreorder.build("xyz", [("x", "y"), ("y", "z")])
        assert p.lt("x", "z")

    def test_equalities_merge_transitively(self):
        p = PartialPreorder.build("wxyz", [("y", "w")], [("x", "y"), ("y", "z")])
        assert p.equiv("x", "z")
        assert p.lt("x", "w") and p.lt("z", "w")

    def test_unknown_id(self):
        with pytest.raises(UnknownElementError):
            PartialPreorder.build("xy", [("x", "q")])
        with pytest.raises(UnknownElementError):
            PartialPreorder.build("xy").leq("x", "q")

    def test_structural_equality_is_representation_independent(self):
        p1 = PartialPreorder.build("xyz", [("x", "y"), ("y", "z")])
        p2 = PartialPreorder.build("zyx", [("y", "z"), ("x", "z"), ("x", "y")])
        assert p1 == p2 and hash(p1) == hash(p2)
        assert p1 != PartialPreorder.build("xyz", [("x", "y")])


def test_build_matches_floyd_warshall_oracle():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 8)
        elems = list(range(n))
        # constraints respecting a hidden rank so no strict cycle arises
        rank = {x: rng.randint(0, 4) for x in elems}
        strict, equal = [], []
        for x, y in itertools.permutations(elems, 2):
            r = rng.random()
            if rank[x] < rank[y] and r < 0.25:
                strict.append((x, y))
            elif rank[x] == rank[y] and r < 0.15:
                equal.append((x, y))
        p = PartialPreorder.build(elems, strict, equal)
        p.check_invariants()
        expected = naive_closure(elems, strict, equal)
        for (x, y), v in expected.items():
            assert p.leq(x, y) == v


class TestQueries:
    def test_four_way_partition(self, rules):
        for x, y in itertools.product(rules.elements, repeat=2):
            flags = [rules.equiv(x, y), rules.lt(x, y), rules.lt(y, x), rules.incomparable(x, y)]
            assert sum(flags) == 1
            assert rules.leq(x, y) == (rules.lt(x, y) or rules.equiv(x, y))

    def test_reflexive(self, rules):
        assert rules.equiv("r1", "r1")

    def test_mapped_state_arrow(self, tobacco_state):
        assert tobacco_state.order.lt(4, 14)
        assert tobacco_state.order.lt(6, 15)


class TestMin:
    def test_min_of_mapped_state(self, tobacco_state):
        assert tobacco_state.order.min_elements(range(16)) == {0, 2, 8, 9, 10, 11, 12, 13}

    def test_min_over_models_of_d(self, tobacco_state):
        assert tobacco_state.order.min_elements({1, 3, 5, 7, 9, 11, 13, 15}) == {9, 11, 13}

    def test_empty(self, rules):
        assert rules.min_elements(set()) == frozenset()


class TestSetEqual:
    def test_subset_with_incomparable_extra(self, rules):
        assert not rules.set_equal({"r1"}, {"r1", "r3"})
        assert naive_set_equal(rules.leq, {"r1"}, {"r1", "r3"}) is False

    def test_complements_c0_c2(self, rules):
        # complements of {} and {r1} both have min {r2, r3}
        assert rules.set_equal({"r1", "r2", "r3"}, {"r2", "r3"})

    def test_empty_sets(self, rules):
        assert rules.set_equal(set(), set())
        assert not rules.set_equal(set(), {"r3"})


class TestStrictPreference:
    def test_weak_without_strong(self, crossed_pairs):
        xs, ys = {"x1", "x2"}, {"y1", "y2"}
        assert crossed_pairs.strictly_preferred(xs, ys, Mode.WEAK)
        assert not crossed_pairs.strictly_preferred(xs, ys, Mode.STRONG)

    @pytest.mark.parametrize("mode", list(Mode))
    def test_singletons(self, rules, mode):
        assert rules.strictly_preferred({"r2"}, {"r1"}, mode)

    @pytest.mark.parametrize("mode", list(Mode))
    def test_empty_conventions(self, rules, mode):
        assert rules.strictly_preferred({"r3"}, set(), mode)
        assert not rules.strictly_preferred(set(), {"r3"}, mode)

    def test_lifted_leq(self, rules):
        assert rules.lifted_leq({"r2"}, {"r1"})
        assert not rules.lifted_leq({"r1", "r3"}, {"r1"})
        assert not rules.lifted_leq({"r1"}, {"r1", "r3"})
        assert rules.lifted_leq({"r1", "r3"}, {"r1", "r3"})
        # the same facts from the brute-force definitions
        assert not naive_lifted_leq(rules.leq, {"r1", "r3"}, {"r1"}, "weak")
        assert not naive_lifted_leq(rules.leq, {"r1"}, {"r1", "r3"}, "weak")


class TestGlobal:
    def test_totality(self, tobacco_state):
        assert not tobacco_state.order.is_total()
        assert PartialPreorder.build("abc", [("a", "b"), ("b", "c")]).is_total()
        assert PartialPreorder([["a", "b", "c"]]).is_total()

    def test_incomparable_counts(self, rules, tobacco_state):
        assert PartialPreorder.build("abc", [("a", "b"), ("b", "c")]).incomparable_pair_count() == 0
        assert rules.incomparable_pair_count() == 2
        assert tobacco_state.order.incomparable_pair_count() == naive_incomparable_pairs(tobacco_state.order)

    def test_dot_counts(self, rules, tobacco_state):
        def count(dot):
            lines = dot.splitlines()
            return (sum(1 for l in lines if "[label=" in l),
                    sum(1 for l in lines if "->" in l))

        assert count(rules.to_dot()) == (3, 1)
        assert count(tobacco_state.order.to_dot()) == (5, 4)
        assert count(PartialPreorder([["x", "y"]]).to_dot()) == (1, 0)

    def test_dot_is_deterministic(self):
        p1 = PartialPreorder.build("xyz", [("x", "y"), ("y", "z")])
        p2 = PartialPreorder.build("zyx", [("x", "z"), ("y", "z"), ("x", "y")])
        assert p1.to_dot() == p2.to_dot()
        assert "c0 -> c1" in p1.to_dot() and "c0 -> c2" not in p1.to_dot()

    def test_linear_extension_respects_order(self, tobacco_state):
        ext = tobacco_state.order.linear_extension()
        assert sorted(ext) == list(range(16))
        pos = {x: i for i, x in enumerate(ext)}
        for x, y in itertools.permutations(range(16), 2):
            if tobacco_state.order.lt(x, y):
                assert pos[x] < pos[y]

    def test_from_leq_rejects_non_transitive(self):
        rel = {("x", "y"), ("y", "z")}
        with pytest.raises(PreorderAxiomError):
            PartialPreorder.from_leq("xyz", lambda a, b: a == b or (a, b) in rel)

    def test_from_leq_rejects_non_reflexive(self):
        with pytest.raises(PreorderAxiomError):
            PartialPreorder.from_leq("xy", lambda a, b: False)

    def test_restrict(self, tobacco_state):
        r = tobacco_state.order.restrict({1, 3, 5, 9, 14})
        assert r.lt(9, 1) and r.equiv(1, 3) and r.incomparable(1, 14)


# -- randomized properties ----------------------------------------------------

def orders_and_subsets(max_elems):
    @st.composite
    def strat(draw):
        n = draw(st.integers(1, max_elems))
        rnd = draw(st.randoms(use_true_random=False))
        order = random_preorder(rnd, range(n), p_equal=draw(st.floats(0, 0.5)),
                                p_strict=draw(st.floats(0, 0.9)))
        xs = draw(st.frozensets(st.integers(0, n - 1)))
        ys = draw(st.frozensets(st.integers(0, n - 1)))
        zs = draw(st.frozensets(st.integers(0, n - 1)))
        return order, xs, ys, zs
    return strat()


@settings(max_examples=500, deadline=None)
@given(orders_and_subsets(8))
def test_strong_implies_weak(args):
    order, xs, ys, _ = args
    if order.strictly_preferred(xs, ys, Mode.STRONG):
        assert order.strictly_preferred(xs, ys, Mode.WEAK)


@settings(max_examples=500, deadline=None)
@given(orders_and_subsets(8))
def test_lifting_matches_brute_force_definitions(args):
    order, xs, ys, _ = args
    assert order.min_elements(xs) == naive_min(order.leq, xs)
    assert order.set_equal(xs, ys) == naive_set_equal(order.leq, xs, ys)
    assert order.strictly_preferred(xs, ys, "weak") == naive_weak(order.leq, xs, ys)
    assert order.strictly_preferred(xs, ys, "strong") == naive_strong(order.leq, xs, ys)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 8), st.randoms(use_true_random=False))
def test_weak_iff_strong_on_total_orders(n, rnd):
    elems = list(range(n))
    rnd.shuffle(elems)
    layers = [[e] for e in elems]
    for _ in range(rnd.randint(0, n)):
        if len(layers) > 1:
            i = rnd.randrange(len(layers) - 1)
            layers[i:i + 2] = [layers[i] + layers[i + 1]]
    order = PartialPreorder.total_from_ranks(layers)
    assert order.is_total()
    for _ in range(10):
        xs = frozenset(x for x in elems if rnd.random() < 0.5) or frozenset(elems[:1])
        ys = frozenset(x for x in elems if rnd.random() < 0.5) or frozenset(elems[-1:])
        assert order.strictly_preferred(xs, ys, "weak") == order.strictly_preferred(xs, ys, "strong")


@settings(max_examples=300, deadline=None)
@given(orders_and_subsets(6), st.sampled_from(list(Mode)))
def test_lifted_relation_is_preorder_on_nonempty_sets(args, mode):
    order, xs, ys, zs = args
    if not (xs and ys and zs):
        return
    sp = order.strictly_preferred
    assert not (sp(xs, ys, mode) and sp(ys, xs, mode))
    if order.lifted_leq(xs, ys, mode) and order.lifted_leq(ys, zs, mode):
        assert order.lifted_leq(xs, zs, mode)
    assert order.lifted_leq(xs, xs, mode)


@settings(max_examples=300, deadline=None)
@given(orders_and_subsets(8))
def test_min_nonempty(args):
    order, xs, _, _ = args
    if xs:
        assert order.min_elements(xs)
