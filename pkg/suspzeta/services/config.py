"""suspzeta configuration."""

import os

from pydantic import BaseModel


class SuspZetaConfig(BaseModel):
    sieve_bound: int = int(os.getenv("SUSPZETA_SIEVE_BOUND", "1000000"))
    series_bound: int = int(os.getenv("SUSPZETA_SERIES_BOUND", "10"))
    l_bound: int = int(os.getenv("SUSPZETA_L_BOUND", "6"))
    cone_search_box: int = int(os.getenv("SUSPZETA_CONE_SEARCH_BOX", "25"))
    random_profiles: int = int(os.getenv("SUSPZETA_RANDOM_PROFILES", "50"))
    random_seed: int = int(os.getenv("SUSPZETA_RANDOM_SEED", "20240601"))
    verify_workers: int = int(os.getenv("SUSPZETA_VERIFY_WORKERS", "4"))
    log_level: str = os.getenv("SUSPZETA_LOG_LEVEL", "WARNING")


# Global config instance
config = SuspZetaConfig()
