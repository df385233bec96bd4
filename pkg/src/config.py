"""
Runtime settings, read from the environment (and a local .env file).
"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv


@dataclass(frozen=True)
class Settings:
    tolerance: float = 1e-9
    horizon: int = 64
    slow_horizon: int = 160
    dps: int = 50
    series_order: int = 16
    deformation: str = "q"
    p: str = "1"
    q: str = "1/2"
    log_level: str = "WARNING"


def load_settings() -> Settings:
    """
    Build settings from RPQ_* environment variables.

    Values missing from the environment fall back to the dataclass defaults.
    """
    load_dotenv()
    defaults = Settings()
    return Settings(
        tolerance=float(os.getenv("RPQ_TOLERANCE", defaults.tolerance)),
        horizon=int(os.getenv("RPQ_HORIZON", defaults.horizon)),
        slow_horizon=int(os.getenv("RPQ_SLOW_HORIZON", defaults.slow_horizon)),
        dps=int(os.getenv("RPQ_DPS", defaults.dps)),
        series_order=int(os.getenv("RPQ_SERIES_ORDER", defaults.series_order)),
        deformation=os.getenv("RPQ_DEFORMATION", defaults.deformation),
        p=os.getenv("RPQ_P", defaults.p),
        q=os.getenv("RPQ_Q", defaults.q),
        log_level=os.getenv("RPQ_LOG_LEVEL", defaults.log_level),
    )
