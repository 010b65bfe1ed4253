import logging
from pathlib import Path

import pytest
from click.testing import CliRunner
from dotenv import load_dotenv

# Pytest override environment variables for testing
load_dotenv(".env.test")

from polymem.core.config import Settings
from polymem.dependencies.services import (
    get_chain_service,
    get_koszul_service,
    get_membership_service,
    get_osculate_service,
    get_verify_service,
)
from polymem.models.linalg import PrimeField
from polymem.models.polytope import HPolytope, box, unit_simplex

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

PRIME = 32003
PRIMES = [32003, 46337]
SEEDS = [1, 2]


@pytest.fixture(autouse=True)
def reset_logging():
    """drop stream handlers the CLI installs on the root logger"""
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if type(handler) is logging.StreamHandler:
            root.removeHandler(handler)


@pytest.fixture
def settings() -> Settings:
    """provide default settings"""
    return Settings()


@pytest.fixture
def field() -> PrimeField:
    """provide the default prime field"""
    return PrimeField(PRIME)


@pytest.fixture
def membership_service(settings):
    """provide membership service instance"""
    return get_membership_service(settings)


@pytest.fixture
def chain_service(settings):
    """provide chain service instance"""
    return get_chain_service(settings)


@pytest.fixture
def koszul_service(settings):
    """provide koszul service instance"""
    return get_koszul_service(settings)


@pytest.fixture
def osculate_service(settings):
    """provide osculation service instance"""
    return get_osculate_service(settings)


@pytest.fixture
def verify_service(settings):
    """provide verification service instance"""
    return get_verify_service(settings)


@pytest.fixture
def simplex() -> HPolytope:
    """unit triangle conv{0, e1, e2}"""
    return unit_simplex(2)


@pytest.fixture
def unit_square() -> HPolytope:
    return box([(0, 1), (0, 1)])


@pytest.fixture
def centered_square() -> HPolytope:
    """square [-1, 1]^2"""
    return box([(-1, 1), (-1, 1)])


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def runner() -> CliRunner:
    """provide click test runner"""
    return CliRunner()
