import copy
import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel, field_validator

from .galois import MAX_FIELD_ORDER, prime_power_decomposition

SCHEMA_VERSION = 1

COMMANDS = {"expand", "verify", "eval", "bench"}
FORMATS = {"json", "text"}


class RunConfig(BaseModel):
    command: str = "expand"
    q: int = 3
    r: int = 2
    N: int = 50
    mode: str = "monic"
    B: int = 6
    P: int = 200
    D: int | None = None
    seed: int = 0
    format: str = "json"
    out: Path | None = None
    target_digits: int = 40

    @field_validator("command")
    @classmethod
    def validate_command(cls, value: str) -> str:
        normalized = value.strip().lower()
        if normalized not in COMMANDS:
            raise ValueError(f"unknown command: {value}")
        return normalized

    @field_validator("q")
    @classmethod
    def validate_q(cls, value: int) -> int:
        prime_power_decomposition(value)
        if value > MAX_FIELD_ORDER:
            raise ValueError(f"q must be <= {MAX_FIELD_ORDER}")
        return value

    @field_validator("r")
    @classmethod
    def validate_rank(cls, value: int) -> int:
        if value < 2:
            raise ValueError("r must be >= 2")
        return value

    @field_validator("N", "P")
    @classmethod
    def validate_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be >= 1")
        return value

    @field_validator("B", "target_digits")
    @classmethod
    def validate_non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("must be >= 0")
        return value

    @field_validator("D")
    @classmethod
    def validate_degree(cls, value: int | None) -> int | None:
        if value is not None and value < 0:
            raise ValueError("D must be >= 0")
        return value

    @field_validator("mode")
    @classmethod
    def validate_mode(cls, value: str) -> str:
        normalized = value.strip().lower()
        if normalized not in {"monic", "full"}:
            raise ValueError(f"unsupported mode: {value}")
        return normalized

    @field_validator("format")
    @classmethod
    def validate_format(cls, value: str) -> str:
        normalized = value.strip().lower()
        if normalized not in FORMATS:
            raise ValueError(f"unsupported format: {value}")
        return normalized


def read_json(path: Path, default: Any) -> Any:
    if not path.exists():
        return copy.deepcopy(default)
    with path.open("r", encoding="utf-8") as handle:
        return json.load(handle)


def render_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_json(path: Path, payload: Any) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        handle.write(render_json(payload))
