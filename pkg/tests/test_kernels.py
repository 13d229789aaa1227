"""The compiled and pure-Python backends must agree exactly."""
import pytest

from jmobius import kernels
from jmobius.incidence import mobius
from jmobius.invariants import j_mobius_poly
from jmobius.laurent import T
from jmobius.poset import boolean_lattice, chain
from jmobius.trincidence import IncFn3, j_fast, tri_mul, zeta3

from conftest import POSETS, brute_jmobius, brute_mobius

needs_compiled = pytest.mark.skipif(not kernels.compiled_available(),
                                    reason="compiled extension not built")


@pytest.mark.parametrize("name", sorted(POSETS))
def test_python_backend_mobius(name):
    p = POSETS[name]
    with kernels.use_backend("python"):
        m = kernels.mobius_matrix(p)
    assert {f: m[f[0]][f[1]] for f in brute_mobius(p)} == brute_mobius(p)


@needs_compiled
@pytest.mark.parametrize("name", sorted(POSETS))
def test_backends_agree(name):
    p = POSETS[name]
    z3, J = zeta3(p).values, j_fast(p).values
    results = {}
    for b in ("python", "compiled"):
        with kernels.use_backend(b):
            mu = kernels.mobius_matrix(p)
            prod = kernels.tri_mul(p, z3, J)
            coeffs = kernels.jmobius_coeffs(p, mu) if p.ranks is not None else None
        results[b] = (mu, prod, coeffs)
    assert results["python"] == results["compiled"]


@pytest.mark.parametrize("backend", ["python", "compiled"])
def test_jmobius_matches_oracle(backend, lattice):
    if backend == "compiled" and not kernels.compiled_available():
        pytest.skip("compiled extension not built")
    with kernels.use_backend(backend):
        assert j_mobius_poly(lattice) == brute_jmobius(lattice)


def test_overflow_falls_back_to_python():
    p = chain(3)
    big = 2 ** 62
    f = IncFn3(p, {t: big for t in zeta3(p).values})
    g = tri_mul(f, f)
    # (f ⋗ f)(0,1,2) has four terms of size big^3
    assert g[(0, 1, 2)] == 4 * big ** 3


def test_polynomial_values_use_python_path():
    p = boolean_lattice(1)
    f = IncFn3(p, {t: T for t in zeta3(p).values})
    g = tri_mul(f, zeta3(p))
    assert g[(0, 0, 1)] == 2 * T ** 2


def test_use_backend_restores():
    before = kernels.backend()
    with kernels.use_backend("python"):
        assert kernels.backend() == "python"
    assert kernels.backend() == before
    with pytest.raises(ValueError):
        with kernels.use_backend("fortran"):
            pass


def test_mobius_is_cached():
    p = boolean_lattice(2)
    assert mobius(p) is mobius(p)
