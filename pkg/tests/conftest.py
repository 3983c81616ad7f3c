import pytest

from oddseq.oracle import SieveTable


@pytest.fixture(scope="session")
def table():
    """Shared sieve covering every range the suite queries."""
    return SieveTable.build(2_000_000)


@pytest.fixture(scope="session")
def odd_primes_97():
    return [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
            47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97]
