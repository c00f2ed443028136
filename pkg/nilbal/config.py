"""Configuration loaded from environment variables."""

from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from sympy import isprime


class NilbalConfig(BaseSettings):
    """Limits and defaults loaded from .env file and NILBAL_* environment variables."""

    # Coset enumeration
    max_cosets: int = Field(default=10**6, gt=0, description="Coset table size limit")

    # Bar-complex oracle
    bar_size_limit: int = Field(
        default=48, gt=0, description="Largest |G| for degree-2 bar homology"
    )
    integral_bar_limit: int = Field(
        default=24, gt=0, description="Largest |G| for integral H2 from the bar complex"
    )

    # Primes
    primes: list[int] = Field(
        default_factory=lambda: [2, 3, 5],
        description="Primes checked in addition to the primes of relevant torsion",
    )

    # Sweep bounds
    h1_bound: int = Field(default=64, gt=0, description="Largest |T| in the h=1 sweep")
    cycboth_bound: int = Field(default=32, gt=0, description="Largest |A| in the cycboth sweep")
    aut_enum_limit: int = Field(
        default=64, gt=0, description="Largest |T| whose automorphisms are enumerated"
    )
    aut_dedup_limit: int = Field(
        default=10**4, gt=0, description="Deduplicate by conjugacy when |Aut(T)| is at most this"
    )

    # Output / execution
    output_format: Literal["json", "text"] = Field(default="text")
    jobs: int = Field(default=1, gt=0, description="Worker processes for sweeps")

    # Logging
    log_level: str = Field(default="WARNING", description="Log level (DEBUG, INFO, WARNING)")
    log_file: str | None = Field(default=None, description="Rotating log file, None for none")

    model_config = SettingsConfigDict(
        env_prefix="NILBAL_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    @field_validator("primes")
    @classmethod
    def _primes_are_prime(cls, value: list[int]) -> list[int]:
        for p in value:
            if not isprime(p):
                raise ValueError(f"prime list entry {p} is not prime")
        return sorted(set(value))
