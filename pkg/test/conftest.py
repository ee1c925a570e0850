import pytest
from hypothesis import settings

from aspconf import ConfidentialitySetup

from .utils import load_policy, load_program

settings.register_profile("default", max_examples=100, deadline=None)
settings.register_profile("exhaustive", max_examples=1000, deadline=None)


def pytest_addoption(parser):
    """
    Adds the command line option --exhaustive.

    :param parser: The parser object. Please see <https://docs.pytest.org/en/latest/reference.html#_pytest.hookspec.pytest_addoption>`_
    :type Parser object: For more information please see <https://docs.pytest.org/en/latest/reference.html#_pytest.config.Parser>`_
    """
    parser.addoption(
        "--exhaustive",
        action="store_true",
        help="Runs the property based tests with ten times the number of random examples",
        default=False,
    )


def pytest_configure(config):
    settings.load_profile("exhaustive" if config.getoption("exhaustive") else "default")


@pytest.fixture
def kb():
    return load_program("k.lp")


@pytest.fixture
def kb_prime():
    return load_program("k_prime.lp")


@pytest.fixture
def prior():
    return load_program("prior.lp", "prior")


@pytest.fixture
def policy():
    return load_policy("policy.pol")


@pytest.fixture
def policy_prime():
    return load_policy("policy_prime.pol")


@pytest.fixture
def running_example(kb, prior, policy_prime):
    return ConfidentialitySetup(kb, prior, policy_prime)
