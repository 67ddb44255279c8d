import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gaugecalc.lp import (
    CertificateError,
    Constraint,
    Feasible,
    Infeasible,
    LinearProgram,
    LPStructureError,
    Optimal,
    Unbounded,
    check_feasible,
    farkas_holds,
    point_satisfies,
    ray_holds,
    solve_lp,
)
from gaugecalc.linalg import solve as lin_solve


def test_unit_simplex_max():
    lp = LinearProgram([1, 1], [([1, 1], "<=", 1)], sense="max", lower=[0, 0])
    out = solve_lp(lp)
    assert isinstance(out, Optimal)
    assert out.value == 1


def test_infeasible_with_farkas():
    lp = LinearProgram([0], [([1], "<=", -1)], lower=[0])
    out = solve_lp(lp)
    assert isinstance(out, Infeasible)
    assert farkas_holds(lp.rows(), out.farkas)


def test_check_feasible_examples():
    out = check_feasible([([1], "==", 1), ([1], ">=", 0)])
    assert isinstance(out, Feasible) and out.point == (1,)
    bad = check_feasible([([1], ">=", 1), ([1], "<=", 0)])
    assert isinstance(bad, Infeasible)
    rows = [Constraint((1,), ">=", 1), Constraint((1,), "<=", 0)]
    assert farkas_holds(rows, bad.farkas)


def test_meet_witness_system():
    # z1 + z2 = (1,1), (v, z_k) <= S(x_k) for square vertices v
    square = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    xs = [(1, 0), (0, 1)]
    cons = [([1, 0, 1, 0], "==", 1), ([0, 1, 0, 1], "==", 1)]
    for k, x in enumerate(xs):
        s = max(v[0] * x[0] + v[1] * x[1] for v in square)
        for v in square:
            row = [0] * 4
            row[2 * k:2 * k + 2] = v
            cons.append((row, "<=", s))
    out = check_feasible(cons)
    assert out
    assert point_satisfies([Constraint(tuple(a), r, b) for a, r, b in cons], out.point)


def test_unbounded_ray():
    lp = LinearProgram([1, 0], [([1, -1], "<=", 0)], sense="max", lower=[0, 0])
    out = solve_lp(lp)
    assert isinstance(out, Unbounded)
    assert ray_holds(lp, out.point, out.ray)


def test_structural_errors():
    with pytest.raises(LPStructureError):
        LinearProgram([1, 1], [([1], "<=", 1)])
    with pytest.raises(LPStructureError):
        LinearProgram([])
    with pytest.raises(LPStructureError):
        LinearProgram([1], [([1], "<>", 1)])
    with pytest.raises(LPStructureError):
        LinearProgram([1], sense="maximize")


def test_floats_refused():
    with pytest.raises(TypeError):
        LinearProgram([0.5])


def test_farkas_replay_rejects_wrong_signs():
    rows = [Constraint((1,), "<=", -1), Constraint((1,), ">=", 0)]
    assert farkas_holds(rows, (1, -1))
    assert not farkas_holds(rows, (-1, 1))
    assert not farkas_holds(rows, (1, 1))


def _brute_force_2d(c, rows, sense):
    """Optimum of a bounded 2-variable LP by enumerating pairwise intersections."""
    best = None
    for r1, r2 in itertools.combinations(rows, 2):
        try:
            p = lin_solve([list(r1.coeffs), list(r2.coeffs)], [r1.rhs, r2.rhs])
        except ValueError:
            continue
        if p is None or not all(r.holds(p) for r in rows):
            continue
        v = c[0] * p[0] + c[1] * p[1]
        if best is None or (v > best if sense == "max" else v < best):
            best = v
    return best


small = st.integers(-4, 4)


@given(
    st.lists(st.tuples(small, small, st.integers(-3, 6)), min_size=1, max_size=5),
    small,
    small,
    st.sampled_from(["min", "max"]),
)
def test_matches_vertex_enumeration_on_boxed_2d(rows, c1, c2, sense):
    box = [((1, 0), "<=", 5), ((-1, 0), "<=", 5), ((0, 1), "<=", 5), ((0, -1), "<=", 5)]
    cons = [(a, "<=", b) for a, b in [((r[0], r[1]), r[2]) for r in rows]] + box
    lp = LinearProgram([c1, c2], cons, sense=sense)
    out = solve_lp(lp)
    oracle = _brute_force_2d((c1, c2), lp.constraints, sense)
    if oracle is None:
        assert isinstance(out, Infeasible)
        assert farkas_holds(lp.rows(), out.farkas)
    else:
        assert isinstance(out, Optimal)
        assert out.value == oracle


@given(
    st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4),
    st.lists(st.integers(0, 5), min_size=4, max_size=4),
    st.lists(small, min_size=3, max_size=3),
)
def test_strong_duality(A, b, c):
    cons = [(row, "<=", bi) for row, bi in zip(A, b)]
    cons.append(([1, 1, 1], "<=", 7))
    lp = LinearProgram(c, cons, sense="max", lower=[0, 0, 0])
    out = solve_lp(lp)
    assert isinstance(out, Optimal)  # 0 is feasible and the region is bounded
    dual = solve_lp(lp.dual())
    assert isinstance(dual, Optimal)
    assert dual.value == out.value


@given(st.lists(st.tuples(small, small, small, st.sampled_from(["<=", ">=", "=="]), small), min_size=1, max_size=6))
def test_outcomes_always_replay(rows):
    cons = [((a, b, c), rel, r) for a, b, c, rel, r in rows]
    out = check_feasible(cons, nvars=3)
    parsed = [Constraint(a, rel, r) for a, rel, r in cons]
    if out:
        assert point_satisfies(parsed, out.point)
    else:
        assert farkas_holds(parsed, out.farkas)


def test_determinism():
    cons = [([1, 2, 3], "<=", 4), ([2, 1, 0], ">=", Fraction(1, 3)), ([1, 1, 1], "==", 1)]
    lp = LinearProgram([1, -1, 2], cons, lower=[0, 0, 0])
    assert solve_lp(lp) == solve_lp(lp)


def test_degenerate_problem_terminates():
    # a classic cycling example for Dantzig's rule without anti-cycling
    c = [Fraction(-3, 4), 150, Fraction(-1, 50), 6]
    cons = [
        ([Fraction(1, 4), -60, Fraction(-1, 25), 9], "<=", 0),
        ([Fraction(1, 2), -90, Fraction(-1, 50), 3], "<=", 0),
        ([0, 0, 1, 0], "<=", 1),
    ]
    out = solve_lp(LinearProgram(c, cons, lower=[0] * 4))
    assert isinstance(out, Optimal)
    assert out.value == Fraction(-1, 20)
