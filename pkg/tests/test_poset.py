import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jmobius.errors import CycleError, NoBoundsError, OrderError, RankError
from jmobius.poset import (Poset, antichain, atoms, boolean_lattice, bowtie, chain,
                           chain_count_c, chain_count_cij, find_isomorphism, flags, grade,
                           interval, is_atomic, is_geometric, is_isomorphic, is_lattice,
                           is_modular_lattice, is_semimodular, join, longest_chain, meet,
                           opposite, poset_from_covers, poset_from_json, poset_to_json,
                           product, upper_interval)

from conftest import POSETS, brute_flags, diamond_m3, pentagon


def test_boolean_lattice_shape():
    b = boolean_lattice(3)
    assert b.size == 8
    assert b.bottom == 0 and b.top == 7
    assert b.rank == 3
    assert b.label(0b101) == "{1,3}"
    assert len(b.covers) == 12


def test_chain_and_antichain():
    c = chain(4)
    assert c.rank == 3
    assert len(flags(c, 3)) == 20
    a = antichain(3)
    assert a.bottom is None and a.top is None
    assert flags(a, 3) == [(0, 0, 0), (1, 1, 1), (2, 2, 2)]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_flags_match_brute_force(any_poset, k):
    assert sorted(flags(any_poset, k)) == sorted(brute_flags(any_poset, k))


def test_cycle_rejected():
    with pytest.raises(CycleError):
        poset_from_covers(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(CycleError):
        poset_from_covers(2, [(1, 1)])
    with pytest.raises(IndexError):
        poset_from_covers(2, [(0, 5)])


def test_bad_ranks_rejected():
    with pytest.raises(RankError):
        Poset(chain(3).leq, ranks=[0, 2, 3])
    with pytest.raises(RankError):
        Poset(chain(2).leq, ranks=[1, 2])


def test_interval_requires_order():
    b = boolean_lattice(2)
    with pytest.raises(OrderError):
        b.interval_elements(1, 2)
    assert b.interval_elements(0, 3) == (0, 1, 2, 3)


def test_lattice_predicates():
    assert is_lattice(boolean_lattice(3))
    assert not is_lattice(bowtie())
    assert not is_lattice(antichain(2))
    n5, m3 = pentagon(), diamond_m3()
    assert is_lattice(n5) and is_lattice(m3)
    assert is_modular_lattice(m3)
    assert is_geometric(m3)
    assert is_semimodular(chain(3)) and not is_atomic(chain(3))
    assert not is_geometric(chain(3))
    assert atoms(boolean_lattice(2)) == (1, 2)


def test_join_meet_boolean():
    b = boolean_lattice(3)
    for x in range(8):
        for y in range(8):
            assert join(b, x, y) == x | y
            assert meet(b, x, y) == x & y


def test_product_is_boolean():
    b1 = boolean_lattice(1)
    assert is_isomorphic(product(b1, product(b1, b1)), boolean_lattice(3), respect_ranks=True)
    assert product(chain(2), chain(3)).rank == 3


def test_opposite_and_intervals():
    c = chain(3)
    op = opposite(c)
    assert op.leq[2, 0] and not op.leq[0, 2]
    assert op.ranks == (2, 1, 0) or list(op.ranks) == [2, 1, 0]
    up = upper_interval(boolean_lattice(3), 1)
    assert is_isomorphic(up.poset, boolean_lattice(2), respect_ranks=True)
    ivl = interval(boolean_lattice(3), 1, 7)
    assert ivl.poset.size == 4
    with pytest.raises(RankError):
        opposite(bowtie())


def test_chain_counts():
    b = boolean_lattice(3)
    # strict chains 0 = x0 < x1 < ... < xi = 1 in B3: 1 of length 1, 6 of length 2, 6 of length 3
    assert [chain_count_c(b, 0, 7, i) for i in range(5)] == [0, 1, 6, 6, 0]
    assert longest_chain(b, 0, 7) == 3
    # c_{1,1} through the middle element 1 from 0 to 7: the chain 0 < 1 < 7 only
    assert chain_count_cij(b, 0, 1, 7, 1, 1) == 1
    assert chain_count_cij(b, 0, 1, 7, 1, 2) == 2
    assert chain_count_c(b, 3, 3, 0) == 1


def test_isomorphism_finds_relabeling():
    p = poset_from_covers(4, [(3, 1), (3, 2), (1, 0), (2, 0)])
    iso = find_isomorphism(p, boolean_lattice(2))
    assert iso is not None
    assert not is_isomorphic(chain(4), boolean_lattice(2))


def test_json_round_trip(any_poset):
    doc = json.loads(json.dumps(poset_to_json(any_poset)))
    assert poset_from_json(doc) == any_poset


def test_grade_recovers_ranks():
    p = poset_from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    assert list(grade(p).ranks) == [0, 1, 1, 2]
    with pytest.raises(RankError):
        grade(pentagon())


@st.composite
def random_posets(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return poset_from_covers(n, chosen)


@given(random_posets())
@settings(max_examples=60, deadline=None)
def test_order_axioms_random(p):
    m = p.leq
    assert np.all(np.diag(m))
    assert not np.any(m & m.T & ~np.eye(p.size, dtype=bool))
    assert np.array_equal(m, m | ((m.astype(int) @ m.astype(int)) > 0))
    ext = p.linear_extension
    pos = {x: i for i, x in enumerate(ext)}
    assert all(pos[x] <= pos[y] for x in range(p.size) for y in range(p.size) if m[x, y])


@given(random_posets())
@settings(max_examples=40, deadline=None)
def test_flags_random(p):
    for k in (2, 3):
        assert sorted(flags(p, k)) == sorted(brute_flags(p, k))


def test_named_posets_are_valid():
    assert set(POSETS) >= {"B3", "U34", "L2^3"}
    with pytest.raises(NoBoundsError):
        from jmobius.invariants import RankedLatticeView
        RankedLatticeView.of(bowtie())
