import pytest

from longemb import genfunc
from longemb.complex_e import (
    build_epi_slice, differential_epi, enumerate_epi_basis, euler_epi, euler_h_from_pi, expansions,
    graph_degree, homology_ranks_epi, tree_slice, unsigned_slice, wheel_graph,
)
from longemb.genfunc import BiSeries, chi_pi_from_F
from longemb.graphs import OrientedGraph, canonicalize
from longemb.reference import appendix_table, wheel_survives

from oracles import naive_epi_graphs, naive_is_zero

REPS = [(3, 9), (3, 8), (2, 7), (2, 6)]


def test_segment_slice():
    basis = enumerate_epi_basis(3, 9, 2, 1)
    assert list(basis) == [9 - 6 - 1]
    (only,) = basis[2]
    assert only.graph.edges == ((0, 1),) and only.sign == 1


def test_empty_beyond_tree_bound():
    for m, n in REPS:
        assert enumerate_epi_basis(m, n, 4, 1) == {}
        assert enumerate_epi_basis(m, n, 5, 3) == {}


@pytest.mark.parametrize("s,t", [(2, 1), (1, 1), (1, 2), (2, 2), (3, 2), (2, 3), (3, 3), (4, 3)])
def test_basis_matches_naive_generator(s, t):
    naive = naive_epi_graphs(s, t)
    sl = unsigned_slice(s, t)
    assert {k: len(v) for k, v in naive.items()} == {k: len(v) for k, v in sl.levels.items()}
    for m, n in REPS:
        want = {}
        for internal, found in naive.items():
            alive = sum(1 for ne, edges in found if not naive_is_zero(ne, edges, s + internal, m, n))
            if alive:
                want[graph_degree(m, n, s, t, internal)] = alive
        assert build_epi_slice(m, n, s, t).dims() == want


def test_basis_invariants():
    for s, t in [(1, 3), (2, 3), (3, 3), (2, 4)]:
        for m, n in REPS:
            for d, graphs in build_epi_slice(m, n, s, t).bases.items():
                for g in graphs:
                    val = g.valences()
                    assert g.is_connected()
                    assert all(v == 1 for v in val[:s]) and all(v >= 3 for v in val[s:])
                    assert g.n_external == s and g.complexity == t
                    assert len(g.edges) <= 3 * t and g.n_internal <= 2 * t
                    assert g.degree(m, n) == d
                    assert canonicalize(g, m, n).sign == 1


def test_bases_depend_only_on_parity():
    for (m, n), (m2, n2) in [((3, 9), (5, 11)), ((2, 6), (4, 10))]:
        for s, t in [(1, 3), (2, 3)]:
            a = build_epi_slice(m, n, s, t)
            b = build_epi_slice(m2, n2, s, t)
            assert [len(x) for _, x in sorted(a.bases.items())] == [len(x) for _, x in sorted(b.bases.items())]
            ha = homology_ranks_epi(m, n, s, t)
            hb = homology_ranks_epi(m2, n2, s, t)
            assert sorted(ha.values()) == sorted(hb.values())


@pytest.mark.parametrize("ell,count", [(3, 0), (4, 3), (5, 10), (6, 25)])
def test_expansion_term_count(ell, count):
    star = OrientedGraph(ell, 1, tuple((i, ell) for i in range(ell)))
    assert len(expansions(star)) == count == 2 ** (ell - 1) - ell - 1


def test_zero_column_without_internal_vertices():
    sl = build_epi_slice(3, 9, 2, 1)
    mat = differential_epi(sl, 2)
    assert mat.cols == 1 and mat.is_zero()
    with pytest.raises(KeyError):
        differential_epi(sl, 99)


def test_boundary_is_three_times_at_hodge_four():
    sl = build_epi_slice(2, 7, 4, 3)
    assert sl.dims() == {8: 1, 9: 1}
    mat = sl.differentials[9]
    assert [abs(v) for _, _, v in mat.entries] == [3]
    assert homology_ranks_epi(2, 7, 4, 3) == {}


def test_homology_examples():
    assert homology_ranks_epi(3, 9, 2, 1) == {2: 1}
    assert homology_ranks_epi(3, 9, 1, 1) == {}
    assert homology_ranks_epi(2, 7, 1, 2) == {8: 1}
    assert homology_ranks_epi(2, 8, 1, 1) == {4: 1}


@pytest.mark.parametrize("m,n", REPS)
def test_d_squared_up_to_four(m, n):
    for t in range(1, 5):
        for s in range(1, t + 2):
            sl = build_epi_slice(m, n, s, t)
            for d, mat in sl.differentials.items():
                if d - 1 in sl.differentials:
                    assert (sl.differentials[d - 1] @ mat).is_zero()


def test_euler_examples():
    assert euler_epi(3, 9, 2, 1) == 1
    assert euler_epi(3, 9, 1, 2) == -1
    pi = chi_pi_from_F(genfunc.generating_function(3, 9, 4, 2))
    assert euler_epi(3, 9, 4, 2) == pi.get((4, 2), 0)


def test_euler_matches_genfunc_small():
    for m, n in REPS:
        pi = chi_pi_from_F(genfunc.generating_function(m, n, 5, 4))
        for t in range(1, 5):
            for s in range(1, t + 2):
                assert euler_epi(m, n, s, t) == pi.get((s, t), 0)


def test_euler_h_from_pi_single_factor():
    out = euler_h_from_pi({(2, 1): 1}, 4, 2)
    assert out[(2, 1)] == 1 and out[(4, 2)] == 1
    assert out[(0, 0)] == 1
    with pytest.raises(ValueError):
        euler_h_from_pi({(1, 0): 1}, 2, 2)


def test_euler_h_from_published_connected_table():
    pi = appendix_table(3, 9, connected=True)
    full = euler_h_from_pi(pi, 23, 8)
    assert full[(3, 4)] == -3
    published = appendix_table(3, 9, connected=False)
    for (s, t), v in full.items():
        if t >= 1:
            assert published.get((s, t), 0) == v


def test_inversion_round_trip():
    pi = {k: v for k, v in appendix_table(2, 7, connected=True).items() if k[1] <= 6}
    full = euler_h_from_pi(pi, 12, 6)
    back = chi_pi_from_F(BiSeries.from_dict(full, 12, 6))
    assert back == {k: v for k, v in pi.items() if k[0] <= 12}


def test_wheels():
    w2 = wheel_graph(2)
    assert (w2.n_external, w2.n_internal, len(w2.edges)) == (2, 2, 4)
    for t in range(1, 7):
        w = wheel_graph(t)
        assert (w.n_external, w.complexity) == (t, t)
    assert canonicalize(wheel_graph(3), 0, 1).sign != 0
    with pytest.raises(ValueError):
        wheel_graph(0)


@pytest.mark.parametrize("m,n", REPS)
def test_wheel_slice_pattern(m, n):
    for t in range(1, 6):
        ranks = homology_ranks_epi(m, n, t, t)
        total = sum(ranks.values())
        assert total == (1 if wheel_survives(m, n, t) else 0)
        if total:
            assert list(ranks) == [(n - m - 2) * t]
            assert canonicalize(wheel_graph(t), m, n).sign != 0


def test_tree_slices_vanish():
    for t in (3, 4):
        s, tt = tree_slice(t)
        for m, n in REPS:
            assert homology_ranks_epi(m, n, s, tt) == {}


@pytest.mark.parametrize("m,n", [(3, 8), (2, 6)])
def test_reduced_mode_is_quasi_isomorphic(m, n):
    for t in range(2, 5):
        for s in range(1, t + 2):
            full = build_epi_slice(m, n, s, t)
            red = build_epi_slice(m, n, s, t, reduced=True)
            assert sum(len(b) for b in red.bases.values()) <= sum(len(b) for b in full.bases.values())
            assert homology_ranks_epi(m, n, s, t, reduced=True) == homology_ranks_epi(m, n, s, t)
