"""Certified eigenvalue, Perron vector, and balance-ratio computations."""

import random
from fractions import Fraction

import pytest

from perronbalance.algebra import RationalInterval, SqrtRat, sqrt_interval
from perronbalance.graphs import (
    Graph,
    attach_path,
    bifork_graph,
    complete_graph,
    cycle_graph,
    diamond_graph,
    e_graph,
    enumerate_connected_graphs,
    fork_graph,
    path_graph,
    star_graph,
    write_graph6,
    canonical_relabel,
)
from perronbalance.spectral import (
    BETA_STAR,
    BETA_TR,
    LAMBDA_K4_INF,
    LAMBDA_S5_INF,
    beta_d,
    certified_below,
    gamma_enclosure,
    gamma_family_closed_form,
    gamma_refiner,
    kp_infinite_gamma,
    lambda_enclosure,
    lambda_le_2_graphs,
    master_vertex,
    min_gamma_table,
    perron_enclosure,
    resolvent_data,
    sp_infinite_gamma,
    two_sqrt_d_plus_3_exceeds,
    vertex_orbits,
)


def rand_connected(rng, n):
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < 0.5]
        g = Graph.from_edges(n, edges)
        if g.is_connected():
            return g


def gamma_of_vector(xs):
    s = sum(xs)
    return s * s / sum(x * x for x in xs)


# -- eigenvalue enclosures -----------------------------------------------------

def test_lambda_examples():
    assert lambda_enclosure(complete_graph(4)) == RationalInterval(3, 3)
    assert lambda_enclosure(cycle_graph(4)) == RationalInterval(2, 2)
    iv = lambda_enclosure(attach_path(complete_graph(3), 0, 3))
    assert abs(iv.mid_float() - 2.2283) < 1e-4


def test_lambda_disconnected_rejected():
    with pytest.raises(ValueError):
        lambda_enclosure(Graph.from_edges(3, [(0, 1)]))


def test_lambda_sqrt_degree_bounds():
    # sqrt(d) <= lambda <= d with d the degree of a certified-maximal vertex
    rng = random.Random(41)
    checked = 0
    for _ in range(60):
        g = rand_connected(rng, rng.randint(2, 7))
        try:
            o = master_vertex(g)
        except ArithmeticError:
            continue
        d = g.degree(o)
        lam = lambda_enclosure(g, Fraction(1, 2 ** 30))
        sq = sqrt_interval(d, Fraction(1, 2 ** 30))
        assert lam.hi >= sq.lo and lam.lo <= d
        checked += 1
    assert checked > 40


# -- Perron data -----------------------------------------------------------------

def test_perron_k4_symmetric():
    pd = perron_enclosure(complete_graph(4))
    assert len({(w.lo, w.hi) for w in pd.weights}) == 1
    assert pd.residual_contains_zero(complete_graph(4))


def test_perron_p3_ratio_sqrt2():
    pd = perron_enclosure(path_graph(3), Fraction(1, 10 ** 10))
    ratio = pd.weights[1].div(pd.weights[0])
    s2 = sqrt_interval(2, Fraction(1, 10 ** 12))
    assert ratio.lo <= s2.hi and s2.lo <= ratio.hi


def test_perron_k4p2_matches_resolvent_column():
    # with the outside neighbor's weight scaled to one, the inner weights
    # equal the resolvent-column entries at the top eigenvalue
    g = attach_path(complete_graph(4), 0, 2)
    pd = perron_enclosure(g, Fraction(1, 10 ** 9))
    assert pd.residual_contains_zero(g)
    assert pd.weights[4].lo > pd.weights[5].hi
    inner = g.induced(range(5))                   # clique plus one path vertex
    rd = resolvent_data(inner)
    pvals = rd.char_poly.eval_interval(pd.lam)
    outside = pd.weights[5]
    for u in range(5):
        b_uv = rd.adjugate[u][4].eval_interval(pd.lam).div(pvals)
        got = pd.weights[u].div(outside)
        assert got.lo <= b_uv.hi and b_uv.lo <= got.hi


def test_perron_residual_random():
    rng = random.Random(43)
    for _ in range(40):
        g = rand_connected(rng, rng.randint(2, 8))
        pd = perron_enclosure(g)
        assert pd.residual_contains_zero(g)
        assert all(w.strictly_positive() for w in pd.weights)


# -- gamma enclosures ---------------------------------------------------------------

def test_gamma_cycles_exact():
    for n in range(3, 11):
        gv = gamma_enclosure(cycle_graph(n))
        assert gv.value.lo == gv.value.hi == n


def test_gamma_k4p2():
    gv = gamma_enclosure(attach_path(complete_graph(4), 0, 2), Fraction(1, 10 ** 8))
    assert abs(gv.midpoint() - 4.8777978) < 1e-6


def test_gamma_diamond_path():
    g = attach_path(diamond_graph(), 0, 3)
    gv = gamma_enclosure(g, Fraction(1, 10 ** 8))
    assert abs(gv.midpoint() - 5.180545) < 1e-5


def test_gamma_relabel_invariant():
    rng = random.Random(47)
    g = attach_path(complete_graph(3), 0, 3)
    base = gamma_enclosure(g, Fraction(1, 10 ** 9)).value
    for _ in range(10):
        perm = list(range(g.n))
        rng.shuffle(perm)
        iv = gamma_enclosure(g.relabel(perm), Fraction(1, 10 ** 9)).value
        assert iv.lo <= base.hi and base.lo <= iv.hi


def test_gamma_bounds_vs_lambda():
    # ratio - 1 >= top eigenvalue, certified, on every enumerated graph
    for n in range(2, 7):
        for g in enumerate_connected_graphs(n):
            gv = gamma_enclosure(g, Fraction(1, 10 ** 6)).value
            lam = lambda_enclosure(g, Fraction(1, 2 ** 30))
            assert gv.hi - 1 >= lam.lo - Fraction(1, 10 ** 5)
            assert gv.lo <= n


def test_master_weight_lower_bound():
    # x_o >= ||x||_2 / sqrt(gamma) for the maximal-weight vertex
    rng = random.Random(53)
    for _ in range(25):
        g = rand_connected(rng, rng.randint(2, 6))
        try:
            o = master_vertex(g)
        except ArithmeticError:
            continue
        pd = perron_enclosure(g, Fraction(1, 10 ** 8))
        gv = gamma_enclosure(g, Fraction(1, 10 ** 8)).value
        norm2_sq = pd.weights[0].square()
        for w in pd.weights[1:]:
            norm2_sq = norm2_sq.add(w.square())
        # x_o^2 * gamma >= ||x||^2 certified with slack for interval width
        lhs = pd.weights[o].square().mul_interval(gv)
        assert lhs.hi >= norm2_sq.lo * (1 - 1e-6)


# -- vector inequalities --------------------------------------------------------------------

def test_convexity_of_mixtures_random_vectors():
    rng = random.Random(59)
    for _ in range(1000):
        k = rng.randint(2, 6)
        x1 = [Fraction(rng.randint(1, 40), rng.randint(1, 7)) for _ in range(k)]
        x2 = [Fraction(rng.randint(1, 40), rng.randint(1, 7)) for _ in range(k)]
        alpha = Fraction(rng.randint(1, 9), 10)
        mix = [alpha * a + (1 - alpha) * b for a, b in zip(x1, x2)]
        assert gamma_of_vector(mix) >= min(gamma_of_vector(x1),
                                           gamma_of_vector(x2))


def test_reverse_am_qm():
    rng = random.Random(61)
    for _ in range(400):
        k = rng.randint(2, 7)
        m = Fraction(rng.randint(1, 10), rng.randint(1, 4))
        mm = m + Fraction(rng.randint(0, 20), rng.randint(1, 4))
        xs = [m + (mm - m) * Fraction(rng.randint(0, 16), 16) for _ in range(k)]
        s = sum(xs)
        bound = s * s / ((m + mm) * s - k * m * mm)
        assert gamma_of_vector(xs) >= bound


def test_perturbation_monotonicity():
    rng = random.Random(67)
    for _ in range(400):
        k = rng.randint(2, 7)
        xs = [Fraction(rng.randint(1, 30), rng.randint(1, 5)) for _ in range(k)]
        s, t = sum(xs), sum(x * x for x in xs)
        if not xs[0] < t / s:
            continue
        eps = xs[0] * Fraction(rng.randint(1, 15), 16)
        ys = [xs[0] - eps] + xs[1:]
        assert gamma_of_vector(ys) < gamma_of_vector(xs)


# -- closed forms ------------------------------------------------------------------------

def test_closed_form_examples():
    assert gamma_family_closed_form("Dhat", 5) == 4.5
    assert abs(gamma_family_closed_form("D", 7) - 6.157) < 1e-3
    assert gamma_family_closed_form("E7hat", 0) == 6.75
    assert gamma_family_closed_form("Cycle", 8) == 8.0
    assert abs(gamma_family_closed_form("Path", 3) - 2.91421) < 1e-5


def test_closed_forms_match_certified():
    for fam, n in [("Path", 6), ("D", 7), ("Cycle", 5), ("Dhat", 7)]:
        builders = {"Path": path_graph, "D": fork_graph,
                    "Cycle": cycle_graph, "Dhat": bifork_graph}
        val = gamma_family_closed_form(fam, n)
        gv = gamma_enclosure(builders[fam](n), Fraction(1, 10 ** 8))
        assert abs(gv.midpoint() - val) < 1e-6


def test_exceptional_gammas():
    want = {"E6": 5.293, "E7": 6.043, "E8": 6.781,
            "E6hat": 6.0, "E7hat": 6.75, "E8hat": 7.5}
    for name, val in want.items():
        gv = gamma_enclosure(e_graph(name), Fraction(1, 10 ** 8))
        assert abs(gv.midpoint() - val) < 1e-3
    # hatted families are exact rationals
    assert gamma_enclosure(e_graph("E6hat")).value == RationalInterval(6, 6)


def test_lambda_le_2_family_members_have_small_lambda():
    for n in (7, 9):
        for name, g in lambda_le_2_graphs(n):
            lam = lambda_enclosure(g, Fraction(1, 2 ** 30))
            assert lam.hi <= 2 or lam.lo <= 2 <= lam.hi + Fraction(1, 2 ** 20)


# -- degree bound ------------------------------------------------------------------------

def test_beta_d_table():
    want = {3: 3.596, 4: 4.223, 5: 4.788, 6: 5.305, 7: 5.785, 8: 6.235,
            9: 6.660, 10: 7.064, 11: 7.450, 12: 7.820}
    for d, v in want.items():
        iv = beta_d(d)
        assert abs(iv.mid_float() - v) < 1e-3
    with pytest.raises(ValueError):
        beta_d(2)


def test_degree_bound_on_small_graphs():
    # certified: gamma >= min(beta_d, 2 sqrt(d) + 3) with d the master degree
    count = 0
    for n in range(2, 8):
        for g in enumerate_connected_graphs(n):
            try:
                o = master_vertex(g)
            except ArithmeticError:
                continue
            d = g.degree(o)
            gv = gamma_enclosure(g, Fraction(1, 10 ** 7)).value
            if d >= 3:
                bound = beta_d(d)
                sq = sqrt_interval(d, Fraction(1, 2 ** 30))
                alt = sq.mul_scalar(2).add_scalar(3)
                cutoff = min(bound.hi, alt.hi)
                assert gv.hi >= cutoff - Fraction(1, 10 ** 5)
            count += 1
    assert count > 900


def test_two_sqrt_d_helper():
    assert two_sqrt_d_plus_3_exceeds(6, Fraction(21, 4))
    assert not two_sqrt_d_plus_3_exceeds(1, Fraction(6))


# -- orbits and the master vertex -----------------------------------------------------------

def test_vertex_orbits():
    orbs = vertex_orbits(attach_path(complete_graph(4), 0, 2))
    assert sorted(map(sorted, orbs)) == [[0], [1, 2, 3], [4], [5]]
    assert vertex_orbits(cycle_graph(5)) == [[0, 1, 2, 3, 4]]


def test_master_vertex_examples():
    assert master_vertex(attach_path(complete_graph(4), 0, 2)) == 0
    assert master_vertex(star_graph(6)) == 0
    assert master_vertex(cycle_graph(6)) == 0    # orbit tie resolved to id 0


# -- limiting constants ----------------------------------------------------------------------

def test_infinite_closed_forms():
    assert sp_infinite_gamma(6).is_rational()
    assert sp_infinite_gamma(6).as_fraction() == Fraction(15, 2)
    b = kp_infinite_gamma(4)
    assert (b - BETA_STAR).sign() == 0
    s = sp_infinite_gamma(5)
    assert (s - BETA_TR).sign() == 0


def test_limit_constants_minimal_polynomials():
    # the named targets are roots of their integer minimal polynomials
    b = BETA_STAR
    assert (4 * b * b - 20 * b - SqrtRat(2, 0, 3)).sign() == 0
    t = BETA_TR
    assert (t * t - 8 * t + SqrtRat(4, 0, 3)).sign() == 0
    lk = LAMBDA_K4_INF
    assert (4 * lk * lk - 4 * lk - SqrtRat(26, 0, 3)).sign() == 0
    ls = LAMBDA_S5_INF
    assert (3 * ls * ls - SqrtRat(16, 0, 3)).sign() == 0


# -- tables -------------------------------------------------------------------------------------

def test_min_gamma_table_small_graphs():
    rows, below = min_gamma_table(6, "graph", BETA_STAR)
    assert below == 5
    assert rows[0].graph6 == write_graph6(
        canonical_relabel(attach_path(complete_graph(4), 0, 2)))
    mids = [r.gamma.midpoint() for r in rows[:3]]
    assert abs(mids[0] - 4.8777978) < 1e-5
    assert abs(mids[1] - 4.895005) < 1e-5


def test_min_gamma_table_trees_10():
    rows, below = min_gamma_table(10, "tree", BETA_TR)
    assert below == 6
    assert rows[0].graph6 == write_graph6(
        canonical_relabel(attach_path(star_graph(5), 0, 5)))


def test_certified_below_refines():
    g = attach_path(diamond_graph(), 0, 3)     # ratio 5.180545
    assert certified_below(gamma_refiner(g), Fraction(21, 4))
    assert not certified_below(gamma_refiner(g), BETA_STAR)
    assert not certified_below(gamma_refiner(g), Fraction(5))
