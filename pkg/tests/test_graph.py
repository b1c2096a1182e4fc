import math

import pytest
from hypothesis import given, strategies as st

from chroma.graph import (
    DimacsError,
    Graph,
    VertexOrder,
    chromatic_number,
    complete,
    cycle,
    format_dimacs,
    generate,
    girth,
    graph_digest,
    grotzsch,
    induced,
    is_proper_coloring,
    left_neighborhood,
    max_clique,
    mycielskian,
    parse_dimacs,
    path,
    random_graph,
    read_dimacs,
    star,
    triangles,
    write_dimacs,
)
from chroma.config import CapExceeded
from chroma.kneser import kneser

from oracles import chi_bruteforce, girth_bruteforce
from strategies import graphs

PETERSEN = kneser(5, 2)


class TestGraphType:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(1, 1)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 2)])

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(ValueError):
            Graph(2, ((1,), ()))

    def test_rejects_unsorted_adjacency(self):
        with pytest.raises(ValueError):
            Graph(3, ((2, 1), (0,), (0,)))

    def test_duplicate_edges_collapse(self):
        assert Graph.from_edges(2, [(0, 1), (1, 0)]).m == 1

    @given(graphs())
    def test_edge_count_is_half_degree_sum(self, g):
        assert 2 * g.m == sum(g.degree(v) for v in range(g.n))
        assert len(list(g.edges())) == g.m


class TestGirth:
    def test_petersen(self):
        assert girth(PETERSEN) == 5

    def test_tree_is_infinite(self):
        assert girth(star(4)) == math.inf
        assert girth(path(6)) == math.inf
        assert girth(Graph.empty(3)) == math.inf

    def test_k4(self):
        assert girth(complete(4)) == 3

    @pytest.mark.parametrize("n", [3, 4, 7, 10])
    def test_cycles(self, n):
        assert girth(cycle(n)) == n

    @given(graphs(max_n=8))
    def test_matches_bruteforce(self, g):
        assert girth(g) == girth_bruteforce(g.n, list(g.edges()))

    @given(graphs(max_n=10))
    def test_triangles_iff_girth_three(self, g):
        assert bool(triangles(g)) == (girth(g) == 3)


class TestTriangles:
    def test_k4_has_four(self):
        assert len(triangles(complete(4))) == 4

    def test_petersen_none(self):
        assert triangles(PETERSEN) == []

    def test_c5_none(self):
        assert triangles(cycle(5)) == []


class TestInduced:
    def test_k4_three_vertices(self):
        sub, back = induced(complete(4), [0, 2, 3])
        assert sub == complete(3) and back == [0, 2, 3]

    def test_c5_adjacent_pair(self):
        sub, _ = induced(cycle(5), [1, 2])
        assert sub == complete(2)

    def test_petersen_neighborhood_is_edgeless(self):
        for v in range(10):
            sub, _ = induced(PETERSEN, PETERSEN.adj[v])
            assert sub.n == 3 and sub.m == 0


class TestChromatic:
    def test_petersen(self):
        assert chromatic_number(PETERSEN)[0] == 3

    @pytest.mark.parametrize("n", range(1, 8))
    def test_complete(self, n):
        assert chromatic_number(complete(n))[0] == n

    def test_c7(self):
        assert chromatic_number(cycle(7))[0] == 3

    def test_grotzsch(self):
        assert chromatic_number(grotzsch())[0] == 4

    def test_empty(self):
        assert chromatic_number(Graph.empty(0))[0] == 0
        assert chromatic_number(Graph.empty(4))[0] == 1

    def test_cap(self):
        with pytest.raises(CapExceeded):
            chromatic_number(Graph.empty(10), cap=5)

    @given(graphs(max_n=8))
    def test_matches_bruteforce(self, g):
        chi, colors = chromatic_number(g)
        assert is_proper_coloring(g, colors)
        assert len(set(colors)) == chi
        assert chi == chi_bruteforce(g.n, list(g.edges()))

    @given(graphs(max_n=10))
    def test_clique_lower_bound(self, g):
        clique = max_clique(g)
        assert all(g.has_edge(u, v) for i, u in enumerate(clique) for v in clique[i + 1:])
        assert len(clique) <= chromatic_number(g)[0]


class TestLeftNeighborhood:
    def test_first_vertex_empty(self):
        order = VertexOrder((2, 0, 1))
        assert left_neighborhood(complete(3), order, 2) == frozenset()

    def test_last_vertex_of_complete(self):
        assert left_neighborhood(complete(5), VertexOrder.identity(5), 4) == frozenset(range(4))

    def test_c4_vertex_three(self):
        assert left_neighborhood(cycle(4), VertexOrder.identity(4), 3) == frozenset({0, 2})

    def test_by_weight_ties_by_index(self):
        assert VertexOrder.by_weight([1, 3, 3, 2]).perm == (1, 2, 3, 0)

    def test_invalid_permutation(self):
        with pytest.raises(ValueError):
            VertexOrder((0, 0, 1))


class TestGenerators:
    def test_grotzsch_counts(self):
        g = mycielskian(cycle(5))
        assert (g.n, g.m) == (11, 20)
        assert g == grotzsch()

    def test_cycle3_is_k3(self):
        assert cycle(3) == complete(3)

    def test_random_p0_edgeless(self):
        assert random_graph(10, 0, seed=4).m == 0

    def test_random_deterministic(self):
        assert random_graph(12, 0.4, 9) == random_graph(12, 0.4, 9)

    def test_generate_dispatch(self):
        assert generate("cycle", n=5) == cycle(5)
        assert generate("mycielskian", base=cycle(5)) == grotzsch()
        with pytest.raises(ValueError):
            generate("hypercube", n=3)
        with pytest.raises(ValueError):
            generate("random", n=3)

    @given(graphs(max_n=7))
    def test_mycielskian_keeps_triangle_free(self, g):
        if not triangles(g):
            assert not triangles(mycielskian(g))

    @given(graphs(min_n=1, max_n=6))
    def test_mycielskian_raises_chi(self, g):
        if g.m:
            assert chromatic_number(mycielskian(g))[0] == chromatic_number(g)[0] + 1


class TestDimacs:
    def test_roundtrip_petersen(self):
        assert parse_dimacs(format_dimacs(PETERSEN, ["petersen"])) == PETERSEN

    @given(graphs(max_n=12))
    def test_roundtrip(self, g):
        assert parse_dimacs(format_dimacs(g)) == g

    def test_file_roundtrip(self, tmp_path):
        path_ = tmp_path / "g.col"
        write_dimacs(grotzsch(), path_)
        assert read_dimacs(path_) == grotzsch()

    def test_accepts_col_keyword_and_comments(self):
        g = parse_dimacs("c hello\np col 3 2\ne 1 2\n\ne 3 2\n")
        assert list(g.edges()) == [(0, 1), (1, 2)]

    @pytest.mark.parametrize(
        "text, line",
        [
            ("p edge 3 2\ne 1 2\ne 2 1\n", 3),
            ("p edge 3 1\ne 1 1\n", 2),
            ("p edge 3 1\ne 1 4\n", 2),
            ("e 1 2\n", 1),
            ("p edge 3\n", 1),
            ("p edge 3 1\nx 1 2\n", 2),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(DimacsError) as err:
            parse_dimacs(text)
        assert err.value.lineno == line

    def test_count_mismatch(self):
        with pytest.raises(DimacsError):
            parse_dimacs("p edge 3 2\ne 1 2\n")

    def test_digest_is_stable(self):
        assert graph_digest(cycle(5)) == graph_digest(parse_dimacs(format_dimacs(cycle(5), ["x"])))
        assert graph_digest(cycle(5)) != graph_digest(cycle(6))
