import itertools
import json
import math

import pytest

from jmobius import matroids as mt
from jmobius.errors import ArityError, ExchangeAxiomError, FixtureError, SizeBoundError
from jmobius.invariants import char_poly, j_char_poly, j_mobius_poly
from jmobius.laurent import LaurentPoly, T
from jmobius.poset import is_geometric, is_isomorphic, is_modular_lattice, boolean_lattice


def test_uniform_and_boolean():
    U = mt.uniform(2, 4)
    assert U.rank == 2 and len(U.bases) == 6
    assert mt.boolean_matroid(3).bases == {frozenset({0, 1, 2})}
    with pytest.raises(ArityError):
        mt.uniform(5, 4)


def test_exchange_axiom_enforced():
    with pytest.raises(ExchangeAxiomError):
        mt.from_bases(4, [{0, 1}, {2, 3}])
    with pytest.raises(ExchangeAxiomError):
        mt.from_bases(3, [{0, 1}, {2}])
    with pytest.raises(ExchangeAxiomError):
        mt.from_bases(3, [])


def test_graphic_matroids():
    K3 = mt.graphic(mt.k_edges(3))
    assert K3 == mt.uniform(2, 3)
    K4 = mt.graphic(mt.k_edges(4))
    assert K4.rank == 3 and len(K4.bases) == 16        # Cayley: 4^2 spanning trees
    K33 = mt.graphic(mt.k33_edges())
    assert K33.rank == 5 and len(K33.bases) == 81      # 3^2 * 3^2 spanning trees
    # parallel edges form a 2-circuit
    G = mt.graphic([(0, 1), (0, 1)])
    assert G.circuits == (frozenset({0, 1}),)


def test_dual_and_direct_sum():
    U = mt.uniform(2, 5)
    assert mt.dual(U) == mt.uniform(3, 5)
    assert mt.dual(mt.dual(U)) == U
    S = mt.direct_sum(mt.uniform(1, 1), mt.uniform(1, 1))
    assert S == mt.boolean_matroid(2)
    assert not mt.is_connected(S)


def test_rank_and_closure():
    U = mt.uniform(2, 4)
    assert mt.matroid_rank(U, {0}) == 1
    assert mt.matroid_rank(U, {0, 1, 2}) == 2
    assert mt.closure(U, {0, 1}) == frozenset(range(4))
    assert mt.closure(U, {0}) == frozenset({0})


def test_vector_matroid_fano():
    cols = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    F = mt.vector_matroid([list(r) for r in zip(*cols)], 2)
    assert F.rank == 3
    assert len(F.bases) == math.comb(7, 3) - 7
    assert mt.is_modular_matroid(F)
    with pytest.raises(ArityError):
        mt.vector_matroid([[1]], 4)


def test_delete_contract():
    U = mt.uniform(2, 4)
    assert mt.delete(U, 0) == mt.uniform(2, 3)
    assert mt.contract(U, 0) == mt.uniform(1, 3)
    # deleting a coloop lowers the rank
    B = mt.boolean_matroid(2)
    assert mt.delete(B, 0) == mt.uniform(1, 1)


def test_flats_lattice_is_geometric():
    for M in [mt.uniform(2, 4), mt.uniform(3, 5), mt.graphic(mt.k_edges(4))]:
        L = mt.flats_lattice(M)
        assert is_geometric(L.poset)
    L = mt.flats_lattice(mt.boolean_matroid(3))
    assert is_isomorphic(L.poset, boolean_lattice(3), respect_ranks=True)


def test_flats_with_loops():
    M = mt.from_bases(3, [{0}, {1}])      # element 2 is a loop; 0 and 1 are parallel
    fl = mt.flats(M)
    assert fl == [frozenset({2}), frozenset({0, 1, 2})]
    assert mt.flats_lattice(M).poset.size == 2
    M = mt.from_bases(3, [{0, 1}])         # loop 2 with two coloops
    assert mt.flats(M)[0] == frozenset({2})
    assert mt.flats_lattice(M).poset.size == 4


def test_k4_flats_and_invariants():
    L = mt.flats_lattice(mt.graphic(mt.k_edges(4)))
    # partitions of a 4-set: 1 + 6 + 7 + 1
    assert L.poset.size == 15
    assert char_poly(L.poset) == T ** 3 - 6 * T ** 2 + 11 * T - 6


def test_dual_k33_factorization():
    M = mt.dual(mt.graphic(mt.k33_edges()))
    expected = (LaurentPoly([-1, 15, -34, -18, 69, 21, -81, 12, 22, -9, 1])
                * (T + 1) * (T - 1))
    L = mt.flats_lattice(M)
    assert j_mobius_poly(L) == expected
    assert not is_modular_lattice(L.poset)
    assert mt.is_connected(M)


def test_subspace_lattice_counts():
    for q, n in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)]:
        L = mt.subspace_lattice(q, n)
        from jmobius.qseries import qbinom
        counts = [len(L.level(k)) for k in range(n + 1)]
        assert counts == [qbinom(n, k).eval(q) for k in range(n + 1)]
        assert is_modular_lattice(L.poset)
    with pytest.raises(SizeBoundError):
        mt.subspace_lattice(3, 5)
    with pytest.raises(ArityError):
        mt.subspace_lattice(4, 2)


def test_connectivity():
    assert mt.is_connected(mt.uniform(2, 4))
    assert not mt.is_connected(mt.boolean_matroid(3))
    assert mt.components(mt.direct_sum(mt.uniform(2, 3), mt.uniform(1, 2))) == [
        frozenset({0, 1, 2}), frozenset({3, 4})]


def test_u24_split_valuation():
    fix = mt.u24_split_fixture()
    fix.validate()
    rep = mt.valuation_check(fix, lambda M: j_char_poly(mt.flats_lattice(M)))
    assert rep.lhs == 3 * T ** 2 + 4 * T + 3
    assert rep.residual.is_zero()
    # sign pattern: +f(M1) + f(M2) - f(M1 ∩ M2)
    assert [s for _, s, _ in rep.terms] == [1, 1, -1]


def test_piece_values():
    fix = mt.u24_split_fixture()
    vals = [j_char_poly(mt.flats_lattice(M)) for M in fix.pieces]
    common = j_char_poly(mt.flats_lattice(fix.intersections[frozenset({0, 1})]))
    assert vals == [2 * T ** 2 + 3 * T + 2] * 2
    assert common == (T + 1) ** 2


def test_fixture_validation():
    fix = mt.u24_split_fixture()
    broken = mt.SubdivisionFixture(fix.parent, fix.pieces[:1], {}, name="half")
    with pytest.raises(FixtureError):
        broken.validate()
    wrong = mt.SubdivisionFixture(fix.parent, fix.pieces,
                                  {frozenset({0, 1}): fix.parent}, name="wrong")
    with pytest.raises(FixtureError):
        wrong.validate()


def test_json_round_trips():
    for doc in [{"type": "uniform", "r": 2, "n": 4}, {"type": "graphic", "edges": [[0, 1], [1, 2], [0, 2]]},
                {"type": "dual", "of": {"type": "uniform", "r": 1, "n": 3}},
                {"type": "direct_sum", "parts": [{"type": "uniform", "r": 1, "n": 1},
                                                 {"type": "uniform", "r": 1, "n": 2}]}]:
        M = mt.matroid_from_json(doc)
        again = mt.matroid_from_json(json.loads(json.dumps(mt.matroid_to_json(M))))
        assert again == M
    fix = mt.u24_split_fixture()
    back = mt.fixture_from_json(json.loads(json.dumps(mt.fixture_to_json(fix))))
    back.validate()
    assert back.parent == fix.parent and back.pieces == fix.pieces


def test_simple_rank3_counts():
    # simple rank-3 matroids on 3..7 points, up to isomorphism
    ms = mt.simple_rank3_matroids(7)
    counts = [sum(M.ground_size == n for M in ms) for n in range(3, 8)]
    assert counts == [1, 2, 4, 9, 23]
    for M in ms:
        assert not M.loops
        assert all(len(c) >= 3 for c in M.circuits)


def test_simple_matroid_bounds():
    with pytest.raises(SizeBoundError):
        mt.simple_matroids(5, 4)
    assert [M.name for M in mt.simple_matroids(3, 2)] == ["U(1,1)", "U(2,2)", "U(2,3)"]


def test_brute_force_rank3_against_enumeration():
    """Brute force over line configurations finds as many 5-point classes as the enumeration."""
    triples = list(itertools.combinations(range(5), 3))
    found = mt.simple_rank3_matroids(5)
    found5 = [M for M in found if M.ground_size == 5]
    seen = set()
    # choose the nontrivial lines (3- or 4-point sets); on 5 points the multiset of
    # line sizes already determines the isomorphism class
    for k in range(0, 3):
        for lines in itertools.combinations(
                [frozenset(s) for r in (3, 4) for s in itertools.combinations(range(5), r)], k):
            if any(len(a & b) >= 2 for a, b in itertools.combinations(lines, 2)):
                continue
            bases = [s for s in triples if not any(set(s) <= L for L in lines)]
            try:
                M = mt.from_bases(5, bases)
            except ExchangeAxiomError:
                continue
            if M.rank != 3:
                continue
            key = tuple(sorted(len(L) for L in lines))
            seen.add(key)
    assert len(seen) == len(found5)
