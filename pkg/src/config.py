"""Configuration management for the induced tree hunter."""

from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    # Application
    app_name: str = "Induced Tree Hunter"
    debug: bool = Field(default=False, description="Enable debug mode")

    # Logging
    log_level: str = Field(default="INFO", description="Logging level")
    log_dir: Optional[Path] = Field(
        default=None, description="Directory for rotating log files (disabled if unset)"
    )
    log_max_bytes: int = Field(
        default=10 * 1024 * 1024, description="Max log file size before rotation (10MB)"
    )
    log_backup_count: int = Field(default=5, description="Rotated log files to keep")

    # Coloring
    coloring_node_budget: int = Field(
        default=10_000_000,
        ge=1,
        description="Branch-and-bound node budget for exact chromatic number",
    )

    # Hunt
    oracle_fallback: bool = Field(
        default=True,
        description="Run the brute-force oracle when every constructive path fails",
    )
    max_centers: Optional[int] = Field(
        default=None, ge=1, description="Cap on radius-two centers explored"
    )
    jobs: int = Field(default=1, ge=1, description="Parallel center exploration width")
    claim1_audit: bool = Field(
        default=False, description="Check the coloring extension inside hunt"
    )
    claim1_audit_limit: int = Field(
        default=25, ge=0, description="Largest |S2| for which the extension is audited"
    )
    progress: bool = Field(
        default=False, description="Show a progress bar over centers on stderr"
    )

    # Input files
    max_graph_file_size: int = Field(
        default=16 * 1024 * 1024, description="Max graph/certificate file size (16MB)"
    )

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="TREE_HUNT_",
        extra="ignore",  # Allow extra environment variables
    )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get application settings."""
    return settings
