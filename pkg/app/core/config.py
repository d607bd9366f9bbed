# app/core/config.py
from functools import lru_cache
from typing import Literal

from pydantic import AliasChoices, Field
from pydantic_settings import BaseSettings, SettingsConfigDict

APP_VERSION = "1.0.0"


class Settings(BaseSettings):
    database_url: str = Field(
        "sqlite:///./misbench.db",
        validation_alias=AliasChoices("MISBENCH_DATABASE_URL", "DATABASE_URL"),
    )
    store_records_in_db: bool = False

    records_path: str = "records.jsonl"
    report_path: str = "report.txt"
    workers: int = Field(1, ge=1)
    log_level: str = "INFO"

    # instance sampling
    max_restarts: int = Field(10**6, ge=1)

    # exact oracle cap
    exact_limit: int = Field(40, ge=1)

    # MCMC production defaults
    mcmc_scan: Literal["random", "colored"] = "colored"
    sa_mu_start: float = 0.0
    sa_mu_end: float = 12.0
    sa_sweeps: int = 20_000
    sa_ramp: Literal["linear", "geometric"] = "linear"
    pt_replicas: int = Field(8, ge=2)
    pt_mu_min: float = Field(0.5, gt=0.0)
    pt_mu_max: float = 12.0
    pt_sweeps_per_round: int = 1
    pt_rounds: int = 20_000

    report_precision: int = 6

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="MISBENCH_",
        extra="ignore",
    )


@lru_cache
def get_settings() -> Settings:
    return Settings()
