import pytest

from hypersym.enumeration import classify, enumerate_monoids


@pytest.fixture(scope="session")
def small_monoids():
    """All commutative monoids of order <= 4 up to isomorphism, keyed by order."""
    return {order: enumerate_monoids(order) for order in range(1, 5)}


@pytest.fixture(scope="session")
def census(small_monoids):
    return [classify(M) for monoids in small_monoids.values() for M in monoids]
