from functools import lru_cache
from pathlib import Path

from pydantic import field_validator
from pydantic_settings import BaseSettings

DATA_DIR = Path(__file__).parent / "data"


class Config(BaseSettings):
    """Application configuration loaded from environment variables"""

    # Logging Configuration
    log_level: str = "INFO"
    log_file: str = "logs/torsion_growth.log"
    log_max_bytes: int = 10 * 1024 * 1024  # 10MB
    log_backup_count: int = 5

    # Bundled data
    fixture_path: str = str(DATA_DIR / "growth_examples.txt")
    classification_path: str = str(DATA_DIR / "classification.yaml")

    # Exact arithmetic
    max_tower_generators: int = 4
    root_prime_start: int = 1_000_003
    root_screen_primes: int = 3
    reduction_prime_limit: int = 200

    # Halving closure caps (largest 2-power order allowed)
    quadratic_two_power_cap: int = 16
    tower_two_power_cap: int = 16

    # Batch runs
    jobs: int = 1

    # Machine-readable output
    report_schema_version: str = "1"

    model_config = {
        "env_file": [
            Path(__file__).parent.parent / ".env.local",
        ],
        "case_sensitive": False,
        "env_ignore_empty": True,
        "extra": "ignore",
    }

    @field_validator("log_level")
    def validate_log_level(cls, v):
        """Validate log level"""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Invalid log level: {v}. Must be one of {valid_levels}")
        return v.upper()

    @field_validator("jobs", "root_screen_primes", "max_tower_generators")
    def validate_positive(cls, v, info):
        """Counts must be at least one"""
        if v < 1:
            raise ValueError(f"{info.field_name} must be >= 1, got {v}")
        return v

    @field_validator("quadratic_two_power_cap", "tower_two_power_cap")
    def validate_two_power(cls, v, info):
        """Caps are powers of two"""
        if v < 2 or v & (v - 1):
            raise ValueError(f"{info.field_name} must be a power of two, got {v}")
        return v


@lru_cache()
def get_config() -> Config:
    """Get cached application configuration"""
    return Config()
