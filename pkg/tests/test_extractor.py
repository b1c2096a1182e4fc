import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chroma.extractor import (
    OrderedWeightedGraph,
    _pick,
    candidate_pool,
    classify_types,
    dense_bound_holds,
    dense_count_bound_holds,
    dense_probability_base,
    extract_triangle_free,
    h0_union_bound_check,
    is_dense,
    is_principal,
    is_reducible,
    is_sparse,
    prefix,
    random_attachment,
    reducible_family,
    sparse_weight_check,
    step_integral,
)
from chroma.fractional import VertexWeighting
from chroma.graph import Graph, complete, cycle, grotzsch, path, triangles

from oracles import is_sparse_bruteforce
from strategies import graphs

Y10 = list(range(10))


class TestPrefix:
    def test_below_one(self):
        assert prefix(Y10, 0.9) == []

    def test_whole(self):
        assert prefix(Y10, 10) == Y10

    def test_floor(self):
        assert prefix([4, 3, 2, 1, 0], Fraction(27, 10)) == [4, 3]


class TestSparse:
    def test_first_is_principal(self):
        assert is_principal([0], Y10, 1)

    def test_second_is_sparse(self):
        assert is_sparse([1], Y10, 1)

    def test_pair_sparse(self):
        assert is_sparse([3, 7], Y10, 3)
        assert sparse_weight_check([3, 7], Y10, 3, [1] * 10)

    def test_empty(self):
        assert is_sparse([], Y10, 2)
        assert not is_principal([], Y10, 2)
        assert sparse_weight_check([], Y10, 2, [1] * 10)

    def test_not_in_y(self):
        with pytest.raises(ValueError):
            is_sparse([11], Y10, 1)

    def test_precondition(self):
        with pytest.raises(ValueError):
            sparse_weight_check([0], Y10, 1, [1] * 10)
        with pytest.raises(ValueError):
            sparse_weight_check([5], Y10, 1, list(range(10)))

    @given(
        st.integers(1, 12).flatmap(lambda n: st.tuples(st.permutations(list(range(n))), st.sets(st.integers(0, n - 1)))),
        st.fractions(Fraction(1, 2), 5, max_denominator=6),
    )
    def test_matches_subset_bruteforce(self, case, s):
        Y, X = case
        assert is_sparse(X, Y, s) == is_sparse_bruteforce(X, Y, s)

    @given(
        st.lists(st.fractions(0, 10, max_denominator=9), min_size=1, max_size=25),
        st.fractions(1, 6, max_denominator=7),
        st.randoms(use_true_random=False),
    )
    def test_sparse_weight_bound(self, weights, s, rnd):
        w = sorted(weights, reverse=True)
        Y = list(range(len(w)))
        # grow a random sparse X one admissible element at a time
        X = []
        for y in rnd.sample(Y, len(Y)):
            if rnd.random() < 0.5 and is_sparse(X + [y], Y, s):
                X.append(y)
        assert sparse_weight_check(X, Y, s, w)


class TestReducible:
    def test_edgeless(self):
        owg = OrderedWeightedGraph.unit(Graph.empty(4))
        assert is_reducible(owg, range(4), 1, 1)

    def test_k3(self):
        res = is_reducible(OrderedWeightedGraph.unit(complete(3)), range(3), 3, 2)
        assert not res and res.reason == "left-chi_f" and res.witness == 2

    def test_weight_floor(self):
        owg = OrderedWeightedGraph(Graph.empty(3), VertexWeighting((Fraction(1), Fraction(1), Fraction(1, 100))))
        res = is_reducible(owg, [2], 1, 5)
        assert not res and res.reason == "weight"

    def test_family_is_disjoint_and_reducible(self):
        owg = OrderedWeightedGraph.unit(complete(4))
        fam = reducible_family(owg, 2, 2)
        assert fam == [frozenset({0, 1}), frozenset({2, 3})]
        assert all(is_reducible(owg, a, 2, 2) for a in fam)

    def test_pool_skips_used(self):
        owg = OrderedWeightedGraph.unit(path(3))
        assert all(0 not in c for c in candidate_pool(owg, frozenset({0})))


class TestTypes:
    def test_left_neighbor_inside(self):
        owg = OrderedWeightedGraph.unit(path(2))
        assert 1 in classify_types(owg, {0, 1}, 1).T1

    def test_left_neighbor_outside(self):
        owg = OrderedWeightedGraph.unit(path(2))
        tp = classify_types(owg, {1}, 1)
        assert tp.T2 == {1} and tp.disjoint[1] == 1

    def test_empty_left_is_type_one(self):
        tp = classify_types(OrderedWeightedGraph.unit(path(2)), {0}, 1)
        assert tp.T1 == {0} and tp.t[0] == 0

    def test_k3_all_type_one(self):
        tp = classify_types(OrderedWeightedGraph.unit(complete(3)), range(3), 1)
        assert tp.T1 == {0, 1, 2} and not tp.T2


class TestDense:
    def test_edgeless_first(self):
        assert is_dense(OrderedWeightedGraph.unit(Graph.empty(4)), [0], range(4), 1)

    def test_not_principal(self):
        assert not is_dense(OrderedWeightedGraph.unit(Graph.empty(6)), [5], range(6), 1)

    def test_k3_last_vertex(self):
        # {v3} is outside Rbar_2, so the principal condition already fails
        assert not is_dense(OrderedWeightedGraph.unit(complete(3)), [2], range(3), 1)

    def test_preconditions(self):
        owg = OrderedWeightedGraph.unit(Graph.empty(3))
        with pytest.raises(ValueError):
            is_dense(owg, [], range(3), 1)
        with pytest.raises(ValueError):
            is_dense(owg, [2], [0, 1], 1)


class TestAttachment:
    def test_triangle_free_input(self):
        owg = OrderedWeightedGraph.unit(grotzsch())
        for seed in range(1000):
            assert not triangles(random_attachment(owg, (), Graph.empty(11), seed))

    def test_k3_gives_path_or_less(self):
        owg = OrderedWeightedGraph.unit(complete(3))
        seen = set()
        for seed in range(200):
            h = random_attachment(owg, (), Graph.empty(3), seed)
            assert h.m <= 2
            seen.add(tuple(h.edges()))
        # vertex 1 always joins 0; vertex 2 picks 0 or 1
        assert seen == {((0, 1), (0, 2)), ((0, 1), (1, 2))}

    def test_deterministic(self):
        owg = OrderedWeightedGraph.unit(cycle(7))
        a = random_attachment(owg, (), Graph.empty(7), "s")
        assert a == random_attachment(owg, (), Graph.empty(7), "s")

    def test_h0_kept(self):
        owg = OrderedWeightedGraph.unit(complete(4))
        h0 = Graph.from_edges(4, [(0, 1)])
        h = random_attachment(owg, {0, 1}, h0, 3)
        assert h.has_edge(0, 1)

    def test_bad_h0(self):
        owg = OrderedWeightedGraph.unit(path(3))
        with pytest.raises(ValueError):
            random_attachment(owg, {0, 2}, Graph.from_edges(3, [(0, 2)]), 0)
        with pytest.raises(ValueError):
            random_attachment(owg, {0, 1}, Graph.empty(2), 0)

    @given(graphs(min_n=1, max_n=9), st.integers(0, 10**6))
    def test_never_triangle(self, g, seed):
        owg = OrderedWeightedGraph.unit(g)
        h = random_attachment(owg, (), Graph.empty(g.n), seed)
        assert not triangles(h)
        assert all(g.has_edge(u, v) for u, v in h.edges())

    def test_pick_frequencies(self):
        rng = random.Random(12345)
        entries = [(frozenset({0}), Fraction(1)), (frozenset({1}), Fraction(2))]
        draws = 10**5
        hits = sum(_pick(rng, entries) == frozenset({0}) for _ in range(draws))
        sigma = math.sqrt(draws * (1 / 3) * (2 / 3))
        assert abs(hits - draws / 3) < 3 * sigma


class TestDenseBound:
    def test_values(self):
        assert abs(dense_probability_base(59) - 0.4998) < 1e-3
        assert dense_bound_holds(59)
        assert abs(dense_probability_base(10) - 0.663) < 1e-3
        assert not dense_bound_holds(10)
        assert abs(dense_probability_base(10**6) - math.e / 6) < 1e-3
        assert dense_bound_holds(10**6)

    @given(st.floats(59, 1e6))
    def test_holds_from_59(self, x):
        assert dense_bound_holds(x)

    @given(st.integers(1, 30), st.fractions(1, 100, max_denominator=10))
    def test_stirling(self, k, x):
        assert dense_count_bound_holds(k, x)

    def test_domain(self):
        with pytest.raises(ValueError):
            dense_probability_base(0)


class TestStepIntegral:
    def test_whole_terms(self):
        assert step_integral([3, 2, 1], 0, 3) == 6

    def test_fractional_bounds(self):
        assert step_integral([3, 2, 1], Fraction(1, 2), Fraction(5, 2)) == Fraction(3, 2) + 2 + Fraction(1, 2)

    def test_empty(self):
        assert step_integral([3, 2, 1], 1, 1) == 0

    def test_range(self):
        with pytest.raises(ValueError):
            step_integral([1], 0, 2)

    @given(st.lists(st.fractions(0, 5, max_denominator=5), min_size=1, max_size=8), st.data())
    def test_additive(self, w, data):
        a, b, c = sorted(data.draw(st.fractions(0, len(w), max_denominator=4)) for _ in range(3))
        assert step_integral(w, a, b) + step_integral(w, b, c) == step_integral(w, a, c)


class TestExtraction:
    def test_triangle_free_small_l_is_identity(self):
        owg = OrderedWeightedGraph.unit(cycle(5))
        cert = extract_triangle_free(owg, 2, Fraction(3, 2))
        assert cert.H == cycle(5) and cert.accepted and cert.attempts == 0
        assert cert.check(owg)

    def test_k4(self):
        owg = OrderedWeightedGraph.unit(complete(4))
        cert = extract_triangle_free(owg, 2, 2, budget=200)
        assert cert.accepted and cert.triangle_free
        assert cert.max_independent_weight == 2 == cert.target
        assert cert.check(owg)

    def test_budget_zero(self):
        owg = OrderedWeightedGraph.unit(complete(4))
        cert = extract_triangle_free(owg, 2, 2, budget=0)
        assert cert.triangle_free and cert.attempts == 0
        assert cert.check(owg)

    def test_best_effort_flag(self):
        owg = OrderedWeightedGraph.unit(complete(5))
        cert = extract_triangle_free(owg, 4, 2, budget=3)
        assert not cert.accepted and cert.attempts == 3
        assert cert.check(owg)

    def test_json(self):
        owg = OrderedWeightedGraph.unit(complete(4))
        data = extract_triangle_free(owg, 2, 2).to_json()
        assert data["accepted"] and data["n"] == 4

    def test_tampered_certificate_fails(self):
        from dataclasses import replace

        owg = OrderedWeightedGraph.unit(complete(4))
        cert = extract_triangle_free(owg, 2, 2)
        assert not replace(cert, max_independent_weight=Fraction(1)).check(owg)
        assert not replace(cert, H=complete(4)).check(owg)

    @given(graphs(min_n=1, max_n=7), st.integers(0, 100))
    def test_certificates_recompute(self, g, seed):
        owg = OrderedWeightedGraph.unit(g)
        cert = extract_triangle_free(owg, 2, 2, budget=5, seed=seed)
        assert cert.triangle_free
        assert cert.check(owg)

    def test_domain(self):
        with pytest.raises(ValueError):
            extract_triangle_free(OrderedWeightedGraph.unit(cycle(5)), Fraction(1, 2), 2)


class TestUnionBound:
    def test_single_part(self):
        assert h0_union_bound_check([([0, 1], Graph.from_edges(2, [(0, 1)]), Fraction(1))], [1, 1])

    def test_two_k2(self):
        k2 = Graph.from_edges(2, [(0, 1)])
        assert h0_union_bound_check([([0, 1], k2, 1), ([2, 3], k2, 1)], [1] * 4)

    def test_violated(self):
        assert not h0_union_bound_check([([0, 1], Graph.empty(2), Fraction(1))], [1, 1])

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            h0_union_bound_check([([0, 1], Graph.empty(2), 2), ([1, 2], Graph.empty(2), 2)], [1] * 3)


def test_owg_validation():
    with pytest.raises(ValueError):
        OrderedWeightedGraph(cycle(3), VertexWeighting.uniform(2))
    with pytest.raises(ValueError):
        OrderedWeightedGraph(cycle(3), VertexWeighting.uniform(3, 0))
    owg = OrderedWeightedGraph(path(3), VertexWeighting((Fraction(1), Fraction(3), Fraction(2))))
    assert owg.ord.perm == (1, 2, 0)
    assert owg.left(0) == [1]
