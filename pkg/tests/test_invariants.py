import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jmobius import matroids as mt
from jmobius.errors import HypothesisError, NoBoundsError, RankError
from jmobius.invariants import (RankedLatticeView, char_poly, check_positive_coeffs,
                                check_root_at_minus_one, check_root_at_one, eval_at_minus_one,
                                j_char_poly, j_mobius_poly, level_sign_sums, m_decomposition,
                                poly_reciprocal_subst, tutte_grothendieck_fit)
from jmobius.laurent import LaurentPoly, T
from jmobius.poset import boolean_lattice, bowtie, chain, is_geometric, opposite, product
from jmobius.trincidence import j_recursive

from conftest import LATTICES, brute_jmobius, diamond_m3


def flats(M):
    return mt.flats_lattice(M)


def test_rank_one_values():
    b1 = boolean_lattice(1)
    assert j_mobius_poly(b1) == T ** 3 - T ** 2 - T + 1
    assert j_char_poly(b1) == T + 1
    assert char_poly(b1) == T - 1


def test_jmobius_oracle(lattice):
    assert j_mobius_poly(lattice) == brute_jmobius(lattice)
    assert j_mobius_poly(lattice, J=j_recursive(lattice)) == brute_jmobius(lattice)


@pytest.mark.parametrize("n", range(6))
def test_boolean_closed_forms(n):
    b = boolean_lattice(n)
    assert j_char_poly(b) == (T + 1) ** n
    assert j_mobius_poly(b) == (T + 1) ** n * (T - 1) ** (2 * n)
    assert char_poly(b) == (T - 1) ** n


@pytest.mark.parametrize("n", range(2, 7))
def test_rank_two_closed_forms(n):
    L = flats(mt.uniform(2, n))
    assert j_mobius_poly(L) == (T ** 2 - n * T + 1) * (T + 1) ** 2 * (T - 1) ** 2
    assert j_char_poly(L) == (n - 1) * T ** 2 + n * T + (n - 1)


def test_u34_factorization():
    expected = (T - 1) * LaurentPoly([-1, 5, 3, -12, -2, 12, -1, -3, 1])
    assert j_mobius_poly(flats(mt.uniform(3, 4))) == expected


def test_decomposition(lattice):
    assert m_decomposition(lattice) == j_mobius_poly(lattice)


def test_root_at_one(lattice):
    if lattice.size < 2:
        assert j_mobius_poly(lattice) == 1
        with pytest.raises(HypothesisError):
            check_root_at_one(lattice)
    else:
        assert check_root_at_one(lattice)


def test_positive_coefficients_geometric(lattice):
    if is_geometric(lattice):
        assert check_positive_coeffs(lattice, strict=True)


def test_positive_coefficients_semimodular_only_weakly():
    # a chain is semimodular but not atomic; 𝒥(C3) = t has zero coefficients
    c3 = chain(3)
    assert j_char_poly(c3) == T
    assert check_positive_coeffs(c3, strict=False)
    assert not check_positive_coeffs(c3, strict=True)
    with pytest.raises(HypothesisError):
        # the order dual of a non-modular geometric lattice is not semimodular
        check_positive_coeffs(opposite(flats(mt.uniform(3, 4)).poset))


def test_root_at_minus_one_modular():
    for L in [boolean_lattice(3), diamond_m3(), mt.subspace_lattice(2, 3).poset,
              product(boolean_lattice(1), mt.subspace_lattice(3, 2).poset)]:
        assert check_root_at_minus_one(L)
    with pytest.raises(HypothesisError):
        check_root_at_minus_one(flats(mt.uniform(3, 4)).poset)
    assert eval_at_minus_one(flats(mt.uniform(3, 4))) == 4


def test_products_multiply():
    pairs = [(boolean_lattice(1), chain(3)), (diamond_m3(), boolean_lattice(2)),
             (flats(mt.uniform(2, 4)).poset, chain(2))]
    for P, Q in pairs:
        PQ = product(P, Q)
        assert j_char_poly(PQ) == j_char_poly(P) * j_char_poly(Q)
        assert j_mobius_poly(PQ) == j_mobius_poly(P) * j_mobius_poly(Q)
        assert char_poly(PQ) == char_poly(P) * char_poly(Q)


def test_level_sign_sums_recover_jchar(lattice):
    sums = level_sign_sums(lattice)
    jc = j_char_poly(lattice)
    R = lattice.rank
    assert [jc.coefficient(R - k) for k in range(R + 1)] == sums


def test_view_errors():
    with pytest.raises(NoBoundsError):
        j_char_poly(bowtie())
    from jmobius.poset import poset_from_covers
    with pytest.raises(RankError):
        j_mobius_poly(poset_from_covers(2, [(0, 1)]))


def test_reciprocal_subst():
    p = T ** 2 + 2 * T
    assert poly_reciprocal_subst(p, 2) == 1 + 2 * T


# -- deletion / contraction -----------------------------------------------------------

def _triple(f, M, e=0):
    return f(flats(M)), f(flats(mt.delete(M, e))), f(flats(mt.contract(M, e)))


def test_jchar_not_deletion_contraction():
    res = tutte_grothendieck_fit([_triple(j_char_poly, mt.uniform(2, 3))])
    assert res.verdict == "contradiction"
    assert res.certificate["t"] == -1 and res.certificate["lhs"] == 1


def test_jmobius_fit_forced_then_refuted():
    tr = [_triple(j_mobius_poly, mt.uniform(2, n)) for n in (3, 4)]
    fit = tutte_grothendieck_fit(tr)
    assert fit.fits and fit.unique
    assert fit.a == 1 and fit.b == -T * (T + 1)
    u34 = _triple(j_mobius_poly, mt.uniform(3, 4))
    bad = tutte_grothendieck_fit([u34], fixed=(fit.a, fit.b))
    assert bad.verdict == "contradiction"
    assert bad.certificate["t"] == -1 and bad.certificate["lhs"] != 0
    assert (T + 1).divides(u34[1]) and (T + 1).divides(u34[2])
    assert not (T + 1).divides(u34[0])


def test_fit_recovers_planted_recurrence():
    a, b = LaurentPoly([2]), T + 3
    d1, c1 = T ** 2 + 1, T - 5
    d2, c2 = T + 7, 3 * T ** 3 + 1
    tr = [(a * d1 + b * c1, d1, c1), (a * d2 + b * c2, d2, c2)]
    res = tutte_grothendieck_fit(tr)
    assert res.fits and res.a == a and res.b == b
    assert all(r.is_zero() for r in res.residuals)


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=30, deadline=None)
def test_fit_constant_coefficients(a0, b0, b1):
    d, c = T ** 2 + 2, T ** 3 - T + 1
    d2, c2 = 3 * T + 1, T ** 2
    b = LaurentPoly([b0, b1])
    tr = [(a0 * d + b * c, d, c), (a0 * d2 + b * c2, d2, c2)]
    res = tutte_grothendieck_fit(tr)
    assert res.fits
    assert all(r.is_zero() for r in res.residuals)


@given(st.sampled_from(sorted(LATTICES)), st.sampled_from(["B1", "C3", "B2"]))
@settings(max_examples=25, deadline=None)
def test_multiplicativity_property(a, b):
    P, Q = LATTICES[a], LATTICES[b]
    if P.size * Q.size > 120:
        return
    PQ = product(P, Q)
    assert j_mobius_poly(PQ) == j_mobius_poly(P) * j_mobius_poly(Q)
    assert j_char_poly(PQ) == j_char_poly(P) * j_char_poly(Q)


def test_ranked_view_level():
    v = RankedLatticeView.of(boolean_lattice(3))
    assert v.level(1) == [1, 2, 4]
    assert v.rho(0, 1, 7) == 9 - 0 - 1 - 3
