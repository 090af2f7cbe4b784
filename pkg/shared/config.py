"""
Configuration management.

Centralizes all configuration with environment variable support.
"""
import logging
import os
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


class Config:
    """
    Application configuration - Single Responsibility Principle.

    Manages all configuration settings from environment variables.
    Provides validation and sensible defaults.
    """

    # Computation
    CACHE_DIR: Optional[str] = os.environ.get('THETA_FORGE_CACHE') or None
    DEPTH: int = int(os.environ.get('THETA_FORGE_DEPTH', 6))
    SEED: int = int(os.environ.get('THETA_FORGE_SEED', 0))
    MAX_RESAMPLE: int = int(os.environ.get('THETA_FORGE_MAX_RESAMPLE', 4))
    VERIFY_SAMPLES: int = 5

    # Logging
    LOG_LEVEL: str = os.environ.get('LOG_LEVEL', 'WARNING').upper()
    LOG_FORMAT: str = '%(asctime)s %(levelname)s %(name)s: %(message)s'

    # Flask
    DEBUG: bool = os.environ.get('DEBUG', 'False').lower() == 'true'
    PORT: int = int(os.environ.get('PORT', 5000))

    @classmethod
    def validate(cls) -> None:
        """
        Validate configuration - Fail Fast Principle.

        Raises:
            ValueError: If a setting is out of range
        """
        if cls.DEPTH < 0:
            raise ValueError("THETA_FORGE_DEPTH must be non-negative")

        if cls.SEED < 0:
            raise ValueError("THETA_FORGE_SEED must be non-negative")

        if cls.MAX_RESAMPLE < 0:
            raise ValueError("THETA_FORGE_MAX_RESAMPLE must be non-negative")

        if not isinstance(logging.getLevelName(cls.LOG_LEVEL), int):
            raise ValueError(f"Unknown LOG_LEVEL: {cls.LOG_LEVEL}")

    @classmethod
    def configure_logging(cls, level: Optional[str] = None) -> None:
        """Install the root handler once for CLI and HTTP entry points."""
        logging.basicConfig(level=(level or cls.LOG_LEVEL).upper(), format=cls.LOG_FORMAT)
