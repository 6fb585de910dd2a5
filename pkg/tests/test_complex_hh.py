from math import factorial

import pytest
from hypothesis import given, strategies as st

from longemb import genfunc
from longemb.complex_e import homology_ranks_epi
from longemb.complex_hh import (
    BicolorGraph, admissible_basis_dim, admissible_monomials, build_hh_slice, decode_monomials,
    differential_hh, encode_monomials, enumerate_hh_basis, euler_hh, homology_ranks_hh, is_admissible,
    kq_basis, straighten,
)
from longemb.symfunc import psi

from oracles import arnold_quotient_dim, hh_coinvariant_dims, in_arnold_ideal

REPS = [(3, 9), (3, 8), (2, 7), (2, 6)]


@pytest.mark.parametrize("parity", [0, 1])
def test_arnold_relation_straightens_to_zero(parity):
    total = {}
    for mono in [((1, 2), (2, 3)), ((2, 3), (3, 1)), ((3, 1), (1, 2))]:
        for k, v in straighten(mono, parity).items():
            total[k] = total.get(k, 0) + v
    assert {k: v for k, v in total.items() if v} == {}


@pytest.mark.parametrize("parity", [0, 1])
def test_two_edges_into_one_vertex(parity):
    out = straighten(((1, 3), (2, 3)), parity)
    assert set(out) == {((1, 2), (2, 3)), ((1, 2), (1, 3))}
    assert all(abs(v) == 1 for v in out.values())
    combo = {((1, 3), (2, 3)): 1}
    for k, v in out.items():
        combo[k] = combo.get(k, 0) - v
    assert in_arnold_ideal(3, parity, combo)


def test_square_and_cycle_vanish():
    for parity in (0, 1):
        assert straighten(((1, 2), (1, 2)), parity) == {}
        assert straighten(((1, 2), (2, 1)), parity) == {}
        assert straighten(((1, 2), (2, 3), (1, 3)), parity) == {}


monomials = st.integers(2, 4).flatmap(
    lambda k: st.lists(st.tuples(st.integers(1, k), st.integers(1, k)).filter(lambda e: e[0] != e[1]),
                       min_size=1, max_size=min(3, k - 1)).map(lambda gens: (k, tuple(gens))))


@given(monomials, st.integers(0, 1))
def test_straighten_agrees_with_quotient_oracle(data, parity):
    k, mono = data
    out = straighten(mono, parity)
    assert all(is_admissible(m) for m in out)
    combo = {mono: 1}
    for key, v in out.items():
        combo[key] = combo.get(key, 0) - v
    combo = {key: v for key, v in combo.items() if v}
    if combo:
        assert in_arnold_ideal(k, parity, combo)


@given(monomials, st.integers(0, 1))
def test_straighten_is_idempotent(data, parity):
    _, mono = data
    once = straighten(mono, parity)
    for key, v in once.items():
        assert straighten(key, parity) == {key: 1}


def test_admissible_dims():
    assert admissible_basis_dim(2, 1) == 1
    assert admissible_basis_dim(3, 2) == 2
    assert admissible_basis_dim(4, 3) == 6
    for k in range(1, 7):
        assert admissible_basis_dim(k, k - 1) == factorial(k - 1)
        for r in range(k):
            assert admissible_basis_dim(k, r) == len(admissible_monomials(k, r))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_admissible_dims_match_quotient_oracle(k):
    for parity in (0, 1):
        for r in range(k):
            assert arnold_quotient_dim(k, r, parity) == admissible_basis_dim(k, r)


def test_kq_dims():
    assert len(kq_basis(3, 1)) == 2
    assert len(kq_basis(4, 2)) == 11
    for k in range(1, 6):
        assert kq_basis(k, k) == [()]
    with pytest.raises(ValueError):
        kq_basis(3, 0)


def test_monomial_encoding():
    text = encode_monomials([(1, 2), (3, 4)], [(1, 3)])
    assert text == "F:1-2,3-4|D:1-3"
    assert decode_monomials(text) == (((1, 2), (3, 4)), ((1, 3),))
    assert decode_monomials("F:1-2|D:") == (((1, 2),), ())
    for bad in ["F:1-2", "X:1-2|D:", "F:1-|D:"]:
        with pytest.raises(ValueError):
            decode_monomials(bad)


def test_small_basis_graphs():
    # one full edge between two vertices (needs n - m even to survive its flip)
    (g,) = enumerate_hh_basis(3, 9, 2, 1)[2]
    assert (g.k, len(g.full), len(g.dotted)) == (2, 1, 0)
    # one full and one dotted edge on two vertices (needs n even)
    graphs = [g for b in enumerate_hh_basis(3, 8, 1, 1).values() for g in b]
    assert [(g.k, len(g.full), len(g.dotted)) for g in graphs] == [(2, 1, 1)]
    assert enumerate_hh_basis(3, 9, 1, 1) == {}


@pytest.mark.parametrize("m,n", REPS)
def test_basis_sizes_match_coinvariant_oracle(m, n):
    for t in (1, 2):
        for s in range(1, 2 * t + 1):
            for connected in (True, False):
                assert build_hh_slice(m, n, s, t, connected).dims() == hh_coinvariant_dims(m, n, s, t, connected)


def test_vertex_bounds():
    for m, n in REPS:
        for t in (1, 2, 3):
            for s in range(1, 2 * t + 1):
                for connected in (True, False):
                    for graphs in build_hh_slice(m, n, s, t, connected).bases.values():
                        for g in graphs:
                            # a full forest without isolated vertices has at least t + 1 vertices
                            assert max(s, t + 1) <= g.k <= 2 * t
                            assert g.t == t and g.s == s


def test_no_dotted_edges_gives_zero_column():
    sl = build_hh_slice(3, 9, 2, 1)
    assert differential_hh(sl, 2).is_zero()
    with pytest.raises(KeyError):
        differential_hh(sl, 100)


@pytest.mark.parametrize("m,n", REPS)
def test_d_squared(m, n):
    for t in (1, 2, 3):
        for s in range(1, 2 * t + 1):
            for connected in (True, False):
                sl = build_hh_slice(m, n, s, t, connected)
                for d, mat in sl.differentials.items():
                    if d + 1 in sl.differentials:
                        assert (sl.differentials[d + 1] @ mat).is_zero()


def test_homology_examples():
    assert homology_ranks_hh(3, 9, 2, 1) == {2: 1}
    assert homology_ranks_hh(2, 7, 1, 2) == {8: 1}


def test_euler_examples():
    assert euler_hh(3, 9, 2, 1) == 1
    assert euler_hh(3, 9, 1, 1) == 0
    assert euler_hh(2, 7, 1, 1) == 0


@pytest.mark.parametrize("m,n", REPS)
def test_euler_matches_genfunc(m, n):
    pi, full = genfunc.euler_tables(m, n, 6, 3)
    for t in (1, 2, 3):
        for s in range(1, 2 * t + 1):
            assert euler_hh(m, n, s, t, True) == pi.get((s, t), 0)
            assert euler_hh(m, n, s, t, False) == full.get((s, t), 0)


@pytest.mark.parametrize("m,n", REPS)
def test_connected_ranks_match_graph_complex(m, n):
    for t in (1, 2):
        for s in range(1, t + 2):
            assert homology_ranks_hh(m, n, s, t) == homology_ranks_epi(m, n, s, t)


@pytest.mark.parametrize("m,n", REPS)
def test_graded_dims_match_psi(m, n):
    series = psi(m, n, 6, 3)
    for t in (1, 2, 3):
        for s in range(1, 2 * t + 1):
            want = {z: int(v) for (a, b, z), v in series.terms.items() if (a, b) == (s, t)}
            assert build_hh_slice(m, n, s, t, connected=False).dims() == want


def test_bicolor_graph_degree():
    g = BicolorGraph(3, ((0, 1), (1, 2)), ((0, 2),))
    assert (g.t, g.s) == (2, 2)
    assert g.degree(3, 9) == 8 * 2 - 2 * 2 - 3
    assert g.is_connected()
