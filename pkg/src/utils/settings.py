"""
Run settings read from the environment (and a .env file), overridable by
command-line flags
"""
import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from src.core.errors import ConfigError

ENV_PREFIX = "OMATRIX_"
TRUE_WORDS = {"1", "true", "yes", "on"}
FALSE_WORDS = {"0", "false", "no", "off"}


class Settings(BaseModel):
    """Knobs shared by every check"""

    max_jet_order: int = Field(default=12, ge=1, description="Ceiling on jet orders in differential computations")
    witness_limit: int = Field(default=10, ge=1, description="Nonzero defect entries listed per failing check")
    seed: int = Field(default=0, description="Seed for randomized sweeps")
    random_trials: int = Field(default=20, ge=1, description="Samples per randomized sweep")
    log_dir: str = Field(default="logs/sessions", description="Root directory of decision logs")
    log_decisions: bool = Field(default=True, description="Whether checks write the decision log")

    @classmethod
    def from_env(cls, env: Optional[Dict[str, str]] = None, dotenv: bool = True) -> "Settings":
        """
        Read OMATRIX_* variables

        Raises:
            ConfigError: If a value does not parse or is out of range
        """
        if dotenv and env is None:
            load_dotenv()
        source = os.environ if env is None else env
        values: Dict[str, Any] = {}
        for name, field in cls.model_fields.items():
            raw = source.get(ENV_PREFIX + name.upper())
            if raw is None:
                continue
            if field.annotation is bool:
                values[name] = _parse_bool(name, raw)
            else:
                values[name] = raw
        return cls._build(values)

    def merged(self, **overrides: Any) -> "Settings":
        """Copy with every non-None override applied"""
        values = self.model_dump()
        values.update({k: v for k, v in overrides.items() if v is not None})
        unknown = set(values) - set(type(self).model_fields)
        if unknown:
            raise ConfigError(f"Unknown setting: {', '.join(sorted(unknown))}")
        return self._build(values)

    @classmethod
    def _build(cls, values: Dict[str, Any]) -> "Settings":
        try:
            return cls(**values)
        except ValidationError as exc:
            fields = ", ".join(".".join(str(p) for p in err["loc"]) for err in exc.errors())
            raise ConfigError(f"Invalid settings value for {fields}") from exc


def _parse_bool(name: str, raw: str) -> bool:
    word = raw.strip().lower()
    if word in TRUE_WORDS:
        return True
    if word in FALSE_WORDS:
        return False
    raise ConfigError(f"Invalid boolean for {ENV_PREFIX}{name.upper()}: {raw!r}")
