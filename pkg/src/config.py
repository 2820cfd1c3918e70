"""Centralized configuration for loading environment variables."""

import os
from typing import List
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv(override=True)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw.replace("_", ""))
    except ValueError:
        return default


class Config:
    """Configuration class for budgets, limits and output settings."""

    # Enumeration budgets (candidate cells / facet candidates)
    ENUMERATION_BUDGET: int = _int_env("NTW_BUDGET", 10**9)
    HULL_SUBSET_BUDGET: int = _int_env("NTW_HULL_BUDGET", 5_000_000)

    # Parallelism and reproducibility
    THREADS: int = _int_env("NTW_THREADS", 1)
    SEED: int = _int_env("NTW_SEED", 0)

    # Primality: rounds of Miller-Rabin above the deterministic range
    MR_ROUNDS: int = _int_env("NTW_MR_ROUNDS", 64)

    # Mode limits
    MAX_HULL_DIMENSION: int = 6
    MAX_FACE_VOLUME_DIMENSION: int = 4
    EXACT_EULERIAN_MAX_N: int = 2000
    FLOAT_EULERIAN_MAX_N: int = 50000
    MAX_EXTENSION_DEGREE: int = 3
    MAX_FIELD_CHARACTERISTIC: int = 1 << 20

    # Output
    OUTPUT_DIR: str = os.getenv("NTW_OUTPUT_DIR", "outputs")
    LOG_LEVEL: str = os.getenv("NTW_LOG_LEVEL", "INFO").upper()
    DEBUG_IO: bool = os.getenv("NTW_DEBUG_IO", "false").lower() == "true"

    # Certification workflow
    MAX_AUDIT_RETRIES: int = 1
    RECURSION_LIMIT: int = 20

    @classmethod
    def validate_settings(cls) -> List[str]:
        """
        Validate budgets and limits.

        Returns:
            List of human-readable problems (empty when the settings are usable).
        """
        problems = []
        if cls.ENUMERATION_BUDGET <= 0:
            problems.append(f"NTW_BUDGET must be positive, got {cls.ENUMERATION_BUDGET}")
        if cls.HULL_SUBSET_BUDGET <= 0:
            problems.append(f"NTW_HULL_BUDGET must be positive, got {cls.HULL_SUBSET_BUDGET}")
        if cls.THREADS < 1:
            problems.append(f"NTW_THREADS must be at least 1, got {cls.THREADS}")
        if cls.MR_ROUNDS < 1:
            problems.append(f"NTW_MR_ROUNDS must be at least 1, got {cls.MR_ROUNDS}")
        return problems
