"""Python bindings for the sievekit C++ library."""

from ._core import (
    BudgetError,
    ConfigError,
    DomainError,
    Error,
    Problem,
    __version__,
    brun_pure,
    chen,
    chen_weight,
    euler_phi,
    exact_sift,
    legendre,
    li,
    linnik,
    mobius,
    primes_below,
    rosser,
    selberg,
    sieve_functions,
    verify,
)

__all__ = [
    "BudgetError",
    "ConfigError",
    "DomainError",
    "Error",
    "Problem",
    "__version__",
    "brun_pure",
    "chen",
    "chen_weight",
    "euler_phi",
    "exact_sift",
    "legendre",
    "li",
    "linnik",
    "mobius",
    "primes_below",
    "rosser",
    "selberg",
    "sieve_functions",
    "verify",
]
