import math

import pytest

import sievekit


def test_version():
    assert sievekit.__version__ == "0.1.0"
    assert sievekit._core.__doc__


def test_arithmetic():
    assert sievekit.primes_below(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert sievekit.mobius(30) == -1
    assert sievekit.euler_phi(36) == 12


def test_legendre_example():
    p = sievekit.Problem.interval(1, 30)
    assert sievekit.exact_sift(p, 6) == 8
    d = sievekit.legendre(p, 6)
    assert d["total"] == 8
    assert d["main"] == "8"
    assert d["remainder"] == "0"


def test_selberg_twin_bound_is_valid():
    p = sievekit.Problem("twin", x=10000)
    r = sievekit.selberg(p, 20)
    assert r["verdict"] == "valid"
    assert r["bound"] >= r["exact"]


def test_linnik_example():
    p = sievekit.Problem.from_config(sievekit.Problem.interval(1, 100).to_config())
    r = sievekit.linnik(p, 5)
    assert r["exact"] == 33


def test_sieve_functions():
    rows = sievekit.sieve_functions(4.0, 0.001)
    tau, phi0, phi1 = rows[1999]
    assert tau == pytest.approx(2.0)
    assert phi1 == pytest.approx(math.exp(0.5772156649015329), abs=1e-6)
    assert phi0 == 0.0


def test_chen():
    r = sievekit.chen(10000)
    assert r["holds"]
    assert r["lhs"] == 762


def test_errors():
    with pytest.raises(sievekit.ConfigError):
        sievekit.Problem("twin", q=3)
    with pytest.raises(sievekit.Error):
        sievekit.Problem("twin")
    with pytest.raises(sievekit.BudgetError):
        sievekit.exact_sift(sievekit.Problem.interval(1, 10**10), 5)


def test_verify_small():
    rows = sievekit.verify("legendre", "small", 3)
    assert rows and all(r["passed"] for r in rows)
