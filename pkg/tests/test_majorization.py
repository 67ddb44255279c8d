import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import generators as G
from gaugecalc.convex import VPolytope
from gaugecalc.lp import Infeasible
from gaugecalc.majorization import (
    No,
    SeparatingConvex,
    Yes,
    assignments_split,
    atomic_split,
    check_affine_transport,
    check_join_inequality,
    check_linear_transport,
    compose_transports,
    decomposition_witness,
    dominates_affine,
    dominates_linear,
    in_dual_cone,
    integrate_convex,
    separates_affine,
    separates_linear,
)
from gaugecalc.measures import (
    ConicMeasure,
    PointMeasure,
    SeparatingSublinear,
    SignedConicMeasure,
    canonicalize_measure,
    pair,
    pair_sublinear,
    resultant,
)

F = Fraction
SQUARE = VPolytope([(1, 1), (1, -1), (-1, 1), (-1, -1)])
DIAMOND = VPolytope([(1, 0), (0, 1), (-1, 0), (0, -1)])
CROSS = ConicMeasure([((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1)])
DIAG = ConicMeasure([((1, 1), 1), ((-1, -1), 1)])


def test_m1_yes():
    v = dominates_linear(CROSS, DIAG)
    assert isinstance(v, Yes)
    cert = v.certificate
    assert check_linear_transport(cert)
    cols = {}
    for (u, _), row in zip(cert.source.atoms, cert.t):
        cols[u] = [j for j, x in enumerate(row) if x]
    target = [v for v, _ in cert.target.atoms]
    assert [target[j] for j in cols[(1, 0)]] == [(1, 1)]
    assert [target[j] for j in cols[(0, 1)]] == [(1, 1)]
    assert [target[j] for j in cols[(-1, 0)]] == [(-1, -1)]
    assert [target[j] for j in cols[(0, -1)]] == [(-1, -1)]


def test_m1_reverse_no():
    v = dominates_linear(DIAG, CROSS)
    assert isinstance(v, No)
    assert separates_linear(DIAG, CROSS, v.separator)
    # the hand-made functional from the example also separates: 0 < 4
    p = SeparatingSublinear([(1, -1), (-1, 1)])
    assert pair_sublinear(DIAG, p) == 0 and pair_sublinear(CROSS, p) == 4


def test_self_dominance_identity():
    mu = ConicMeasure([((1, 2), 1), ((3, -1), 2)])
    v = dominates_linear(mu, mu)
    assert v
    n = len(v.certificate.t)
    assert all(v.certificate.t[i][j] == (v.certificate.source.atoms[i][1] if i == j else 0)
               for i in range(n) for j in range(n))


def test_different_resultants_no():
    v = dominates_linear(ConicMeasure([((1, 0), 1)]), ConicMeasure([((0, 1), 1)]))
    assert not v
    assert separates_linear(ConicMeasure([((1, 0), 1)]), ConicMeasure([((0, 1), 1)]), v.separator)


def test_empty_measures():
    empty = ConicMeasure((), 2)
    assert dominates_linear(empty, empty)
    assert not dominates_linear(empty, ConicMeasure([((1, 0), 1)]))
    assert dominates_linear(CROSS, empty)
    assert not dominates_linear(ConicMeasure([((1, 0), 1)]), empty)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        dominates_linear(CROSS, ConicMeasure([((1, 0, 0), 1)]))


def test_affine_examples():
    mid = PointMeasure([((-1,), F(1, 2)), ((1,), F(1, 2))])
    center = PointMeasure([((0,), 1)])
    yes = dominates_affine(mid, center)
    assert yes and check_affine_transport(yes.certificate)
    no = dominates_affine(center, mid)
    assert not no
    f = no.separator
    assert integrate_convex(center, f) < integrate_convex(mid, f)
    absx = SeparatingConvex([((1,), 0), ((-1,), 0)])
    assert integrate_convex(center, absx) == 0 and integrate_convex(mid, absx) == 1
    assert dominates_affine(mid, mid)


def test_affine_mass_mismatch():
    v = dominates_affine(PointMeasure([((0,), 1)]), PointMeasure([((0,), 2)]))
    assert not v and separates_affine(PointMeasure([((0,), 1)]), PointMeasure([((0,), 2)]), v.separator)
    with pytest.raises(ValueError):
        dominates_affine(PointMeasure((), 1), PointMeasure([((0,), 2)]))


def test_dual_cone_examples():
    assert in_dual_cone(SignedConicMeasure([((1, 0), 1), ((0, 1), 1), ((1, 1), -1)]))
    v = in_dual_cone(SignedConicMeasure([((1, 1), 1), ((1, 0), -1), ((0, 1), -1)]))
    assert not v
    # positive measures: in the cone only when their resultant vanishes, since a
    # single point figure has support of either sign
    assert in_dual_cone(SignedConicMeasure([((1, 0), 1), ((-1, 0), 2)]).__class__(
        [((1, 0), 2), ((-1, 0), 2)]))
    lone = in_dual_cone(SignedConicMeasure([((1, 0), 1)]))
    assert not lone
    point = VPolytope([(-1, 0)])
    assert pair(ConicMeasure([((1, 0), 1)]), point) < 0


def test_decomposition_example():
    parts = atomic_split(DIAG)
    gens = [[SQUARE, DIAMOND], [SQUARE, DIAMOND]]
    out = decomposition_witness(CROSS, DIAG, parts, gens)
    assert not isinstance(out, Infeasible)
    for fk, gk, hs in zip(out, parts, gens):
        for h in hs:
            assert pair(fk, h) >= pair(gk, h)
    # the split from the worked example also satisfies every constraint
    f1 = ConicMeasure([((1, 0), 1), ((0, 1), 1)])
    f2 = ConicMeasure([((-1, 0), 1), ((0, -1), 1)])
    for fk, gk in zip((f1, f2), parts):
        assert all(pair(fk, h) >= pair(gk, h) for h in (SQUARE, DIAMOND))


def test_decomposition_single_part_and_identity():
    gens = [[SQUARE, DIAMOND, VPolytope([(1, 2), (0, 0), (2, 1)])]]
    out = decomposition_witness(CROSS, DIAG, [DIAG], gens)
    assert canonicalize_measure(out[0]) == canonicalize_measure(CROSS)
    g = ConicMeasure([((1, 0), 2), ((0, 1), 1)])
    parts = atomic_split(g)
    split = decomposition_witness(g, g, parts, [[SQUARE], [SQUARE]])
    assert canonicalize_measure(split[0] + split[1]) == canonicalize_measure(g)
    for fk, gk in zip(split, parts):
        assert pair(fk, SQUARE) >= pair(gk, SQUARE)


def test_decomposition_infeasible_and_errors():
    g = ConicMeasure([((1, 0), 1)])
    f = ConicMeasure([((0, 1), 1)])
    # the square alone cannot tell (0,1) from (1,0)
    assert not isinstance(decomposition_witness(f, g, [g], [[SQUARE]]), Infeasible)
    out = decomposition_witness(ConicMeasure([((1, 0), F(1, 2))]), g, [g], [[SQUARE]])
    assert isinstance(out, Infeasible)
    with pytest.raises(ValueError):
        decomposition_witness(f, g, [f], [[SQUARE]])
    with pytest.raises(ValueError):
        decomposition_witness(f, g, [g], [[]])


def test_join_inequality_examples():
    assert check_join_inequality(CROSS, CROSS, [SQUARE])
    assert pair(CROSS, SQUARE) == 4 and pair(DIAG, SQUARE) == 4
    assert check_join_inequality(CROSS, DIAG, [SQUARE])
    assert check_join_inequality(DIAG, CROSS, [SQUARE, DIAMOND])  # 4 >= 4 on the square
    assert not check_join_inequality(DIAG, CROSS, [DIAMOND])


# ---------------------------------------------------------------------------
# properties

seeds = st.integers(0, 10**6)


@given(seeds, st.sampled_from([2, 3]))
def test_verdicts_are_sound(seed, dim):
    rng = random.Random(seed)
    mu = G.conic_measure(rng, dim)
    nu = G.coarsening(rng, mu) if rng.random() < 0.6 else G.conic_measure(rng, dim)
    v = dominates_linear(mu, nu)
    if v:
        assert check_linear_transport(v.certificate)
        assert resultant(mu) == resultant(nu)
        for _ in range(5):
            P = G.polytope(rng, dim, origin_interior=False)
            assert pair(mu, P) >= pair(nu, P)
    else:
        assert separates_linear(mu, nu, v.separator)


@given(seeds)
def test_coarsening_is_dominated(seed):
    rng = random.Random(seed)
    mu = G.conic_measure(rng, 2)
    assert dominates_linear(mu, G.coarsening(rng, mu))


@given(seeds)
def test_transports_compose(seed):
    rng = random.Random(seed)
    mu = G.conic_measure(rng, 2)
    nu = canonicalize_measure(G.coarsening(rng, mu))
    rho = G.coarsening(rng, nu)
    a, b = dominates_linear(mu, nu), dominates_linear(nu, rho)
    assert a and b
    assert check_linear_transport(compose_transports(a.certificate, b.certificate))


@given(seeds)
def test_affine_yes_preserves_mass_and_barycenter(seed):
    rng = random.Random(seed)
    mu = G.point_measure(rng, 2)
    if rng.random() < 0.5:
        nu = PointMeasure([(mu.barycenter(), mu.mass)])
    else:
        nu = G.point_measure(rng, 2)
    v = dominates_affine(mu, nu)
    if v:
        assert mu.mass == nu.mass and mu.barycenter() == nu.barycenter()
        assert check_affine_transport(v.certificate)
    else:
        assert separates_affine(mu, nu, v.separator)


@given(seeds)
def test_dual_cone_matches_dominance_of_parts(seed):
    rng = random.Random(seed)
    atoms = [(G.rvec(rng, 2, -2, 2), F(rng.choice([-2, -1, 1, 2]))) for _ in range(rng.randint(1, 5))]
    sigma = SignedConicMeasure(tuple(atoms), 2)
    v = in_dual_cone(sigma)
    for _ in range(5):
        P = G.polytope(rng, 2, origin_interior=False)
        if v:
            assert pair(sigma, P) >= 0


@given(seeds)
def test_assignment_splits_sum_to_g(seed):
    rng = random.Random(seed)
    g = canonicalize_measure(G.conic_measure(rng, 2, max_atoms=4))
    for asg in itertools.product(range(2), repeat=len(g.atoms)):
        parts = assignments_split(g, asg, 2)
        total = parts[0] + parts[1]
        assert canonicalize_measure(total) == g
