from pydantic_settings import BaseSettings
from functools import lru_cache
from typing import Optional
from pydantic import computed_field

class Settings(BaseSettings):
    PROJECT_NAME: str = "Pebble Two-Way Automata Toolkit"

    # Logging goes to stderr; stdout is reserved for command output
    LOG_LEVEL: str = "WARNING"

    # Budgets
    EQUIV_WORD_BUDGET: int = 10**6
    TABLE_STATE_CAP: int = 10**5
    PUMP_TAPE_CAP: int = 10**4
    TRACE_MAX_STEPS: int = 1000

    # Randomized corpora
    DEFAULT_SEED: int = 0
    SWEEP_SEED: Optional[int] = None

    model_config = {
        "extra": "allow",
        "env_prefix": "PEBBLE_",
        "env_file": ".env",
    }

    @computed_field
    @property
    def SEED(self) -> int:
        if self.SWEEP_SEED is not None:
            return self.SWEEP_SEED
        return self.DEFAULT_SEED

@lru_cache()
def get_settings():
    return Settings()

settings = get_settings()
