import logging
import os
from typing import List

from dotenv import load_dotenv
from sympy import isprime

from polymem.exceptions.errors import ConfigurationError

# Load environment variables from .env file
load_dotenv(override=True)

# residues are multiplied in int64, so p^2 must stay below 2^63
MAX_PRIME = 2**31


def validate_prime(value: int) -> int:
    """
    Check that a modulus can back the exact field arithmetic.

    Args:
        value: Candidate modulus

    Returns:
        The modulus unchanged

    Raises:
        ConfigurationError: If the value is not a prime in (2, 2^31)
    """
    if not 2 < value < MAX_PRIME or not isprime(value):
        raise ConfigurationError(f"{value} is not a prime in the range (2, 2^31)")
    return value


class Settings:
    """Toolkit settings"""

    PRIME_DEFAULT: int = int(os.getenv("POLYMEM_PRIME_DEFAULT", 32003))
    PRIME_SECONDARY: int = int(os.getenv("POLYMEM_PRIME_SECONDARY", 46337))
    SEED_DEFAULT: int = int(os.getenv("POLYMEM_SEED_DEFAULT", 1))
    SEED_SECONDARY: int = int(os.getenv("POLYMEM_SEED_SECONDARY", 2))

    # resampling rounds before a dimension disagreement becomes fatal
    GENERICITY_RETRIES: int = int(os.getenv("POLYMEM_GENERICITY_RETRIES", 2))

    # normal chains
    TAU_FLOOR_EXPONENT: int = int(os.getenv("POLYMEM_TAU_FLOOR_EXPONENT", 40))
    MAX_CHAIN_ROUNDS: int = int(os.getenv("POLYMEM_MAX_CHAIN_ROUNDS", 64))

    # foundations
    FOUNDATION_SHIFT_RADIUS: int = int(os.getenv("POLYMEM_FOUNDATION_SHIFT_RADIUS", 1))

    # osculation
    SERIES_MARGIN: int = int(os.getenv("POLYMEM_SERIES_MARGIN", 5))
    OSCULATE_RETRIES: int = int(os.getenv("POLYMEM_OSCULATE_RETRIES", 8))

    LOG_LEVEL: str = os.getenv("POLYMEM_LOG_LEVEL", "INFO")
    LOG_FORMAT: str = os.getenv(
        "POLYMEM_LOG_FORMAT", "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    def __init__(self):
        validate_prime(self.PRIME_DEFAULT)
        validate_prime(self.PRIME_SECONDARY)
        if self.GENERICITY_RETRIES < 0 or self.OSCULATE_RETRIES < 1:
            raise ConfigurationError("retry counts must be non-negative (osculation: positive)")
        if self.TAU_FLOOR_EXPONENT < 1:
            raise ConfigurationError("POLYMEM_TAU_FLOOR_EXPONENT must be positive")
        if logging.getLevelName(self.LOG_LEVEL.upper()) == f"Level {self.LOG_LEVEL.upper()}":
            raise ConfigurationError(f"unknown log level {self.LOG_LEVEL}")

    @property
    def PROTOCOL_PRIMES(self) -> List[int]:
        """Primes used by the agreement protocol when none are given"""
        return [self.PRIME_DEFAULT, self.PRIME_SECONDARY]

    @property
    def PROTOCOL_SEEDS(self) -> List[int]:
        """Seeds used by the agreement protocol when none are given"""
        return [self.SEED_DEFAULT, self.SEED_SECONDARY]


settings = Settings()
