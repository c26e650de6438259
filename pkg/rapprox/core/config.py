# rapprox/core/config.py
from __future__ import annotations

from fractions import Fraction

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    threads: int = 1
    log_level: str = "INFO"
    rank_cap: int = 10
    tail_min_records: int = 8
    near_radius: str = "1/100"

    class Config:
        env_file = ".env"
        env_prefix = "RAPPROX_"
        case_sensitive = False

    @property
    def workers(self) -> int:
        return max(1, int(self.threads))

    @property
    def radius(self) -> Fraction:
        return Fraction(self.near_radius)


settings = Settings()
