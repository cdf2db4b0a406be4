import pytest

from quiverhopf import choose_prime, parse_group


@pytest.fixture(scope="session")
def s3():
    return parse_group("S3")


@pytest.fixture(scope="session")
def s4():
    return parse_group("S4")


@pytest.fixture(scope="session")
def s3_field(s3):
    return choose_prime(s3)


@pytest.fixture(scope="session")
def s4_field(s4):
    return choose_prime(s4)
