# -*- coding: utf-8 -*-
"""
Global configuration, read from the environment or .env
"""

from pydantic_settings import BaseSettings
from typing import Optional
from pydantic import Field
from pathlib import Path

# Environment file handling
PROJECT_ROOT: Path = Path(__file__).resolve().parent
ENV_FILE: Path = PROJECT_ROOT / ".env"

class Settings(BaseSettings):
    """
    Global settings for hecke-lab.
    Loads from environment variables or .env file.
    """
    # Runtime
    HECKE_LAB_THREADS: int = Field(4, description="Upper bound on concurrently running verification suites")
    LOG_LEVEL: str = Field("INFO", description="loguru level for the stderr sink")
    DEFAULT_SEED: int = Field(0, description="Seed used by every randomized check unless overridden")
    RANDOM_CASES: int = Field(100, description="Number of random cases per randomized check")

    # Safety caps
    COSET_CAP: int = Field(1_000_000, description="Maximum number of coset labels a BFS closure may visit")
    CONVOLUTION_CAP: int = Field(100_000, description="Maximum support size of a convolution power")
    REDUCE_ITERATION_CAP: int = Field(10_000, description="Maximum iterations of the fundamental-domain reduction")
    TILE_CAP: int = Field(20_000, description="Maximum number of tiles visited by a tile search")

    # Tolerances
    INVERTIBILITY_TOL: float = Field(1e-9, description="Minimum eigenvalue accepted as invertible")
    MULTIPLICATIVITY_TOL: float = Field(1e-8, description="Tolerance of floating multiplicativity checks")
    MEMBERSHIP_TOL: float = Field(1e-12, description="Tolerance of point-in-domain predicates")
    AREA_TOL: float = Field(1e-9, description="Tolerance of hyperbolic area comparisons")
    PARTITION_TOL: float = Field(1e-6, description="Relative tolerance of tiling partition sums")
    PSD_TOL: float = Field(1e-8, description="Lower bound accepted for minimum Gram eigenvalues")

    # q-expansions
    QEXP_PRECISION: int = Field(50, description="Default number of q-expansion coefficients")

    # Database Configuration
    DB_DIALECT: str = Field("sqlite", description="Database type: 'sqlite', 'mysql' or 'postgresql'")
    DB_HOST: str = Field("localhost", description="Database host")
    DB_PORT: int = Field(3306, description="Database port")
    DB_USER: str = Field("root", description="Database user")
    DB_PASSWORD: str = Field("", description="Database password")
    DB_NAME: str = Field("hecke_lab", description="Database name")
    SQLITE_PATH: Optional[str] = Field(None, description="sqlite file; defaults to <project>/hecke_lab.db")

    class Config:
        env_file = str(ENV_FILE)
        env_prefix = ""
        case_sensitive = False
        extra = "allow"

settings = Settings()
