import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import generators as G
from gaugecalc.convex import DomainError, VPolytope, meet, minkowski_sum, same_figure, scale, support
from gaugecalc.grids import fan
from gaugecalc.measures import ConicMeasure
from gaugecalc.semilattice import (
    BallFamily,
    Consistent,
    DegenerateFamily,
    Expr,
    Member,
    MeetDecomposition,
    MeetInfeasible,
    Rejected,
    _normal_set,
    ball,
    check_meet_decomposition,
    check_sy_absorbing,
    decompose_meet,
    eval_541_bound,
    expression_holds,
    hull_membership,
    infconv_identity_check,
    is_nondegenerate,
    make_certificate,
    n1_reduction_check,
    outer_rep_422,
    rep_421,
    replay_rejection,
    scaled,
    truncate,
    upper_hull_membership,
)

F = Fraction
SQUARE = VPolytope([(1, 1), (1, -1), (-1, 1), (-1, -1)])
DIAMOND = VPolytope([(1, 0), (0, 1), (-1, 0), (0, -1)])
SEG = VPolytope([(-1, 0), (1, 0)])
THIN = VPolytope([(2, F(1, 4)), (2, F(-1, 4)), (-2, F(1, 4)), (-2, F(-1, 4))])
VERTEX_DIRS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]
AXES = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def test_nondegeneracy():
    assert is_nondegenerate(BallFamily([SQUARE, DIAMOND]))
    assert is_nondegenerate(BallFamily([SQUARE]))
    assert not is_nondegenerate(BallFamily([SEG]))
    with pytest.raises(ValueError):
        BallFamily([VPolytope([(0, 0), (1, 0), (0, 1)])])
    with pytest.raises(ValueError):
        BallFamily([])


def test_absorbing():
    assert check_sy_absorbing(BallFamily([SQUARE]), (1, 0))
    assert check_sy_absorbing(BallFamily([SQUARE, DIAMOND]), (1, 1))
    assert not check_sy_absorbing(BallFamily([SEG]), (1, 0))
    with pytest.raises(ValueError):
        check_sy_absorbing(BallFamily([SQUARE]), (0, 0))


def test_n1_reduction():
    assert n1_reduction_check(BallFamily([SQUARE, scale(SQUARE, 2)]))
    assert not n1_reduction_check(BallFamily([SQUARE, DIAMOND]))
    assert n1_reduction_check(BallFamily([DIAMOND]))


def test_upper_hull_member_examples():
    v = upper_hull_membership(SQUARE, BallFamily([SQUARE]))
    assert isinstance(v, Member)
    assert expression_holds(SQUARE, [SQUARE], v.expression)
    S = minkowski_sum(SQUARE, DIAMOND)
    v = upper_hull_membership(S, BallFamily([SQUARE, DIAMOND]))
    assert isinstance(v, Member) and v.expression.op == "sum"
    assert expression_holds(S, [SQUARE, DIAMOND], v.expression)


def test_diamond_rejected_against_square():
    v = upper_hull_membership(DIAMOND, BallFamily([SQUARE]))
    assert isinstance(v, Rejected) and v.conclusive
    cert = v.certificate
    assert len(cert.xs) == 1
    assert replay_rejection(DIAMOND, [SQUARE], cert)
    # the hand-made tuple x=(1,1), y=(3/2,0): 2 >= 3/2 for the square, 1 < 3/2 for the diamond
    hand = make_certificate(DIAMOND, [SQUARE], (F(3, 2), 0), [(1, 1)])
    assert hand.family_lhs == (2,) and hand.family_rhs == (F(3, 2),)
    assert hand.lhs == 1 and hand.rhs == F(3, 2)
    assert replay_rejection(DIAMOND, [SQUARE], hand)


def test_tampered_certificate_fails_replay():
    v = upper_hull_membership(DIAMOND, BallFamily([SQUARE]))
    c = v.certificate
    forged = type(c)(c.y, c.xs, c.family_lhs, c.family_rhs, c.lhs, c.rhs - 1)
    assert not replay_rejection(DIAMOND, [SQUARE], forged)


def test_upper_hull_errors():
    with pytest.raises(DegenerateFamily):
        upper_hull_membership(SQUARE, BallFamily([SEG]))
    with pytest.raises(DomainError):
        upper_hull_membership(SEG, BallFamily([SQUARE]))


def test_outer_rep_examples():
    R, dev = outer_rep_422(SQUARE, BallFamily([SQUARE]), AXES + VERTEX_DIRS)
    assert dev == 0 and same_figure(R, SQUARE)
    S = minkowski_sum(SQUARE, DIAMOND)
    fam = BallFamily([SQUARE, DIAMOND])
    R, dev = outer_rep_422(S, fam, _normal_set([S, SQUARE, DIAMOND]))
    assert dev == 0
    _, dev = outer_rep_422(DIAMOND, BallFamily([SQUARE]), AXES + VERTEX_DIRS)
    assert dev > 0
    with pytest.raises(ValueError):
        outer_rep_422(SQUARE, BallFamily([SQUARE]), [(0, 0)])


def test_rep_421_examples():
    grid = AXES + VERTEX_DIRS
    fam = BallFamily([SQUARE, DIAMOND])
    S = minkowski_sum(SQUARE, scale(DIAMOND, 2))
    R1, d1 = outer_rep_422(S, fam, grid)
    R2, d2 = rep_421(S, fam, [(x,) for x in grid])
    assert same_figure(R1, R2) and d1 == d2
    assert rep_421(SQUARE, BallFamily([SQUARE]), [((1, 0), (0, 1)), ((1, 2),)])[1] == 0
    assert rep_421(DIAMOND, BallFamily([SQUARE]), [(x,) for x in grid])[1] > 0
    with pytest.raises(ValueError):
        rep_421(SQUARE, BallFamily([SQUARE]), [((0, 0), (0, 0))])


def test_hull_membership_examples():
    fam = BallFamily([SQUARE, DIAMOND])
    v, _ = hull_membership(DIAMOND, fam)
    assert isinstance(v, Member)
    S = meet(SQUARE, scale(DIAMOND, F(3, 2)))
    v, T = hull_membership(S, fam, depth=1)
    assert isinstance(v, Member)
    assert expression_holds(S, [SQUARE, DIAMOND], v.expression) or v.scope != "family"
    assert T.depth == 1 and "meet" in T.closure_ops
    v, T = hull_membership(THIN, BallFamily([SQUARE]))
    assert isinstance(v, Rejected) and v.conclusive
    # the certificate refers to the truncated family the search ran against
    assert replay_rejection(THIN, T.generated, v.certificate)


def test_truncation():
    fam = BallFamily([SQUARE, DIAMOND])
    T0 = truncate(fam, 0)
    assert len(T0.generated) == 2
    T1 = truncate(fam, 1)
    assert any(same_figure(G_, scale(SQUARE, F(1, 2))) for G_ in T1.generated)
    assert len({g.vertices for g in T1.generated}) == len(T1.generated)
    with pytest.raises(ValueError):
        truncate(fam, 1, ("rotate",))
    with pytest.raises(ValueError):
        truncate(fam, -1)


def test_expression_json():
    e = Expr("sum", (ball(0), scaled(F(1, 2), ball(1))))
    assert e.to_json() == {"sum": [{"ball": 0}, {"scale": "1/2", "of": {"ball": 1}}]}
    assert same_figure(e.evaluate([SQUARE, DIAMOND]), minkowski_sum(SQUARE, scale(DIAMOND, F(1, 2))))


def test_decompose_meet_examples():
    d = decompose_meet([SQUARE], (1, 1), [(1, 0), (0, 1)])
    assert isinstance(d, MeetDecomposition)
    assert check_meet_decomposition([SQUARE], (1, 1), [(1, 0), (0, 1)], d)
    assert check_meet_decomposition([SQUARE], (1, 1), [(1, 0), (0, 1)], MeetDecomposition(((1, 0), (0, 1))))
    bad = decompose_meet([SQUARE], (3, 0), [(1, 0), (0, 1)])
    assert isinstance(bad, MeetInfeasible) and not bad and not bad.coverage_warning
    out = decompose_meet([SQUARE, DIAMOND], (1, 0), [(1, 1), (0, -1)])
    if out:
        assert check_meet_decomposition([SQUARE, DIAMOND], (1, 0), [(1, 1), (0, -1)], out)
    else:
        assert out.farkas
    with pytest.raises(ValueError):
        decompose_meet([], (1, 0), [(1, 0)])
    with pytest.raises(ValueError):
        decompose_meet([SQUARE], (1, 0), [])


def test_meet_coverage_warning():
    # each listed figure satisfies the necessary inequality on its own, but no
    # single split works for both
    box = VPolytope([(2, 1), (2, -1), (-2, 1), (-2, -1)])
    xs, y = [(-2, -2), (0, -1)], (-3, -1)
    for S in (box, DIAMOND):
        assert sum(support(S, x) for x in xs) >= support(S, y)
    out = decompose_meet([box, DIAMOND], y, xs)
    assert isinstance(out, MeetInfeasible) and out.coverage_warning


def test_infconv_identity_examples():
    assert infconv_identity_check(SQUARE, DIAMOND, fan(16)) == 0
    assert infconv_identity_check(SQUARE, SQUARE, fan(16)) == 0
    shifted = VPolytope([(0, 0), (2, 0), (0, 2), (2, 2)])
    assert infconv_identity_check(SQUARE, shifted, fan(16)) == 0
    far = VPolytope([(5, 5), (6, 5), (5, 6)])
    with pytest.raises(DomainError):
        infconv_identity_check(SQUARE, far, fan(8))


def test_eval_541_examples():
    mu = ConicMeasure([((1, 0), 1)])
    b = eval_541_bound(SQUARE, DIAMOND, mu, [(1, 0)])
    assert (b.lhs, b.best_rhs) == (1, 1) and b.attained
    b = eval_541_bound(SQUARE, DIAMOND, ConicMeasure((), 2), [(1, 0)])
    assert (b.lhs, b.best_rhs) == (0, 0)
    mu = ConicMeasure([((1, 2), 1), ((-1, 1), 2)])
    b = eval_541_bound(SQUARE, SQUARE, mu, AXES)
    assert b.lhs == b.best_rhs == 3 + 2 * 2
    with pytest.raises(ValueError):
        eval_541_bound(SQUARE, DIAMOND, mu, [])


# ---------------------------------------------------------------------------
# properties

seeds = st.integers(0, 10**6)


def random_expr(rng, depth):
    if depth == 0 or rng.random() < 0.25:
        return scaled(F(rng.randint(1, 4), rng.randint(1, 3)), ball(rng.randrange(2)))
    op = rng.choice(["join", "sum", "scale"])
    if op == "scale":
        return scaled(F(rng.randint(1, 3), rng.randint(1, 2)), random_expr(rng, depth - 1))
    return Expr(op, (random_expr(rng, depth - 1), random_expr(rng, depth - 1)))


@settings(max_examples=25)
@given(seeds)
def test_expressions_have_exact_outer_representation(seed):
    rng = random.Random(seed)
    fam = BallFamily([G.symmetric_ball(rng), G.symmetric_ball(rng)])
    S = random_expr(rng, 2).evaluate(fam.balls)
    _, dev = outer_rep_422(S, fam, _normal_set([S, *fam.balls]))
    assert dev == 0


@settings(max_examples=25)
@given(seeds)
def test_outer_rep_deviation_monotone_in_grid(seed):
    rng = random.Random(seed)
    fam = BallFamily([G.symmetric_ball(rng)])
    S = G.symmetric_ball(rng)
    grid = [G.rvec(rng, 2) for _ in range(3)]
    more = grid + [G.rvec(rng, 2) for _ in range(3)]
    assert outer_rep_422(S, fam, grid)[1] <= outer_rep_422(S, fam, more)[1]


@settings(max_examples=25)
@given(seeds)
def test_verdicts_replay(seed):
    rng = random.Random(seed)
    fam = BallFamily([G.symmetric_ball(rng)])
    S = G.symmetric_ball(rng)
    v = upper_hull_membership(S, fam, search_budget=40, seed=seed)
    if isinstance(v, Member):
        assert expression_holds(S, fam.balls, v.expression)
    elif isinstance(v, Rejected):
        assert replay_rejection(S, fam.balls, v.certificate)
    else:
        assert isinstance(v, Consistent)


@given(seeds)
def test_infconv_identity_random(seed):
    rng = random.Random(seed)
    P = G.polytope(rng, 2)
    Q = G.polytope(rng, 2)
    assert infconv_identity_check(P, Q, fan(8)) == 0


@settings(max_examples=30)
@given(seeds)
def test_meet_decompositions_replay_chain(seed):
    rng = random.Random(seed)
    H = [G.symmetric_ball(rng) for _ in range(rng.randint(1, 3))]
    xs = [G.rvec(rng, 2, -3, 3) for _ in range(rng.randint(1, 3))]
    y = tuple(sum(c) + rng.randint(-1, 1) for c in zip(*xs))
    d = decompose_meet(H, y, xs)
    if d:
        for S in H:
            chain = [sum(support(S, x) for x in xs), sum(support(S, z) for z in d.zs), support(S, y)]
            assert chain[0] >= chain[1] >= chain[2]
    elif not d.coverage_warning:
        assert any(sum(support(S, x) for x in xs) < support(S, y) for S in H)


@settings(max_examples=20)
@given(seeds)
def test_541_bound_sound_and_monotone(seed):
    rng = random.Random(seed)
    P, Q = G.symmetric_ball(rng), G.symmetric_ball(rng)
    mu = G.conic_measure(rng, 2, max_atoms=3)
    small = eval_541_bound(P, Q, mu, AXES[:2])
    large = eval_541_bound(P, Q, mu, AXES + VERTEX_DIRS)
    assert small.best_rhs >= small.lhs
    assert large.best_rhs <= small.best_rhs
