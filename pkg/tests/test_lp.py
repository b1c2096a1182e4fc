from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chroma.lp import InfeasibleLP, solve_covering

from oracles import packing_lp_max


def _check_optimal(columns, b, c, sol):
    """Primal and dual feasibility plus equal objectives certify optimality."""
    m = len(b)
    assert all(y >= 0 for y in sol.primal)
    assert all(w >= 0 for w in sol.dual)
    for i in range(m):
        lhs = sum((col.get(i, 0) * y for col, y in zip(columns, sol.primal)), Fraction(0))
        assert lhs >= b[i]
    for col, cj in zip(columns, c):
        assert sum((a * sol.dual[i] for i, a in col.items()), Fraction(0)) <= cj
    dual_value = sum((bi * wi for bi, wi in zip(b, sol.dual)), Fraction(0))
    assert dual_value == sol.value
    assert sum((cj * y for cj, y in zip(c, sol.primal)), Fraction(0)) == sol.value


def test_single_row():
    sol = solve_covering([{0: 2}, {0: 3}], [6], [1, 1])
    assert sol.value == 2
    assert sol.primal == (0, 2)


def test_triangle_edges_cover():
    # cover each vertex of K3 by edges: optimum 3/2
    cols = [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: 1}]
    sol = solve_covering(cols, [1, 1, 1], [1, 1, 1])
    assert sol.value == Fraction(3, 2)
    _check_optimal(cols, [1, 1, 1], [1, 1, 1], sol)


def test_zero_rhs_is_free():
    sol = solve_covering([{0: 1}], [0], [5])
    assert sol.value == 0 and sol.pivots == 0


def test_infeasible_row():
    with pytest.raises(InfeasibleLP):
        solve_covering([{0: 1}], [1, 1], [1])


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        solve_covering([{0: 1}], [1], [1, 2])
    with pytest.raises(ValueError):
        solve_covering([{0: 1}], [1], [-1])
    with pytest.raises(ValueError):
        solve_covering([{0: 1}], [Fraction(1, 2)], [1])


@st.composite
def set_systems(draw):
    n = draw(st.integers(1, 6))
    rows = draw(st.lists(st.frozensets(st.integers(0, n - 1), min_size=1), min_size=1, max_size=10))
    # every element must be coverable
    rows = rows + [frozenset([v]) for v in range(n) if not any(v in r for r in rows)]
    return n, rows


@given(set_systems())
def test_unit_covering_matches_packing_oracle(system):
    n, rows = system
    cols = [{v: 1 for v in r} for r in rows]
    sol = solve_covering(cols, [1] * n, [1] * len(rows))
    assert sol.value == packing_lp_max(rows, n)
    _check_optimal(cols, [1] * n, [1] * len(rows), sol)


@given(
    st.integers(1, 5).flatmap(
        lambda m: st.tuples(
            st.just(m),
            st.lists(st.dictionaries(st.integers(0, m - 1), st.integers(1, 4), min_size=1), min_size=1, max_size=8),
            st.lists(st.integers(0, 5), min_size=m, max_size=m),
        )
    ),
    st.data(),
)
def test_general_data_is_certified(problem, data):
    m, cols, b = problem
    cols = cols + [{i: 1} for i in range(m)]
    c = data.draw(st.lists(st.integers(0, 6), min_size=len(cols), max_size=len(cols)))
    sol = solve_covering(cols, b, c)
    _check_optimal(cols, b, c, sol)


@given(set_systems(), st.integers(0, 3))
def test_stall_limit_does_not_change_value(system, limit):
    n, rows = system
    cols = [{v: 1 for v in r} for r in rows]
    base = solve_covering(cols, [1] * n, [1] * len(rows))
    assert solve_covering(cols, [1] * n, [1] * len(rows), stall_limit=limit).value == base.value
