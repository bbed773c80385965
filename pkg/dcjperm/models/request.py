"""
Request Models

Pydantic model for a parsed command line. The argument parser produces a
namespace; CliConfig validates it before a command runs, so handlers can rely
on the input count and flag values.
"""

from argparse import Namespace
from enum import Enum
from typing import Any, Dict, List

from pydantic import BaseModel, Field, root_validator, validator


class Command(str, Enum):
    ENCODE = "encode"
    DECODE = "decode"
    DISTANCE = "distance"
    SORT = "sort"
    SCENARIOS = "scenarios"
    ENUMERATE = "enumerate"
    RANDOM = "random"
    ORACLE_DISTANCE = "oracle-distance"
    AG_STATS = "ag-stats"


class OutputFormat(str, Enum):
    HUMAN = "human"
    STRUCTURED = "structured"


REQUIRED_INPUTS = {
    Command.ENCODE: 1,
    Command.DECODE: 1,
    Command.DISTANCE: 2,
    Command.SORT: 2,
    Command.SCENARIOS: 2,
    Command.ENUMERATE: 1,
    Command.RANDOM: 1,
    Command.ORACLE_DISTANCE: 2,
    Command.AG_STATS: 2,
}

# namespace attributes that are not flags
_RESERVED = {"command", "inputs", "format", "handler"}


class CliConfig(BaseModel):
    """
    One validated invocation.

    Attributes:
        command (Command): the subcommand
        inputs (List[str]): positional arguments (file paths, a region count or cycle notation)
        flags (Dict[str, Any]): every other option, keyed by its argparse destination
        output_format (OutputFormat): human text or the structured document
    """

    command: Command = Field(..., description="Subcommand to run", example="distance")
    inputs: List[str] = Field(default_factory=list, description="Positional arguments", example=["a.genome", "b.genome"])
    flags: Dict[str, Any] = Field(default_factory=dict, description="Options by destination name")
    output_format: OutputFormat = Field(OutputFormat.HUMAN, description="Output rendering")

    @validator("inputs", each_item=True)
    def validate_inputs(cls, v):
        """Positional arguments cannot be blank."""
        if not v or not v.strip():
            raise ValueError("positional arguments cannot be empty")
        return v.strip()

    @validator("flags")
    def validate_flags(cls, v):
        """Numeric limits must be sensible."""
        limit = v.get("limit")
        if limit is not None and limit < 1:
            raise ValueError(f"--limit must be at least 1, got {limit}")
        regions = v.get("regions")
        if regions is not None and regions < 1:
            raise ValueError(f"--regions must be at least 1, got {regions}")
        if v.get("count_only") and v.get("enumerate"):
            raise ValueError("--count-only and --enumerate cannot be combined")
        return v

    @root_validator(skip_on_failure=True)
    def validate_input_count(cls, values):
        """Each command takes a fixed number of positional arguments."""
        expected = REQUIRED_INPUTS[values["command"]]
        if len(values["inputs"]) != expected:
            raise ValueError(
                f"{values['command'].value} takes {expected} positional argument(s), got {len(values['inputs'])}"
            )
        return values

    @classmethod
    def from_namespace(cls, namespace: Namespace) -> "CliConfig":
        options = vars(namespace)
        return cls(
            command=options["command"],
            inputs=[str(item) for item in options.get("inputs", [])],
            flags={key: value for key, value in options.items() if key not in _RESERVED},
            output_format=options.get("format") or OutputFormat.HUMAN,
        )

    def flag(self, name: str, default: Any = None) -> Any:
        value = self.flags.get(name)
        return default if value is None else value

    @property
    def structured(self) -> bool:
        return self.output_format is OutputFormat.STRUCTURED

    class Config:
        """Pydantic configuration."""
        schema_extra = {
            "example": {
                "command": "scenarios",
                "inputs": ["a.genome", "b.genome"],
                "flags": {"count_only": True, "allow_large": False},
                "output_format": "human",
            }
        }
