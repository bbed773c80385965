"""
Response Models

Pydantic models for command results. Every command builds one of these; the
CLI renders it either as human text or as the structured `format=1` document,
so the field names below are the stable structured keys.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field, root_validator, validator

from dcjperm.models.dcj import ComponentKind, DcjEvent, DcjMode


class ComponentReport(BaseModel):
    """
    Distance contribution of one non-trivial component.

    Attributes:
        id (int): position of the component among all classes, ordered by smallest point
        points (List[int]): points of the class
        kind (ComponentKind): conjugate or non_conjugate
        lt (int): transposition length of the product restricted to the class
        nc (int): 1 when a product cycle holds two fixed points of the same genome
        distance (int): (lt + nc) / 2
    """

    id: int = Field(..., description="Component id", ge=1, example=1)
    points: List[int] = Field(..., description="Points of the class", example=[1, 2, 3, 4, 5, 6])
    kind: ComponentKind = Field(..., description="Component kind", example="conjugate")
    lt: int = Field(..., description="Transposition length on the class", ge=0, example=4)
    nc: int = Field(0, description="Same-genome fixed-point cycle count", ge=0, le=1)
    distance: int = Field(..., description="Component distance", ge=0, example=2)

    @root_validator(skip_on_failure=True)
    def validate_distance(cls, values):
        if 2 * values["distance"] != values["lt"] + values["nc"]:
            raise ValueError(f"component distance {values['distance']} != ({values['lt']} + {values['nc']}) / 2")
        return values


class OracleStatus(str, Enum):
    OK = "ok"
    TIMEOUT = "timeout"
    SKIPPED = "skipped"


class OracleReport(BaseModel):
    """
    Independent distance computations run next to the closed form.

    A timed-out or skipped oracle has no value and never counts as a disagreement.
    """

    closed_form: int = Field(..., ge=0)
    bfs: Optional[int] = Field(None, description="Breadth-first search distance", ge=0)
    bfs_status: OracleStatus = OracleStatus.SKIPPED
    adjacency: Optional[int] = Field(None, description="Adjacency-graph distance", ge=0)
    adjacency_status: OracleStatus = OracleStatus.SKIPPED

    @property
    def agrees(self) -> bool:
        values = [v for v in (self.bfs, self.adjacency) if v is not None]
        return all(v == self.closed_form for v in values)


class DistanceReport(BaseModel):
    """
    Closed-form DCJ distance with its breakdown.

    Attributes:
        total (int): the distance, (lt + nc) / 2
        lt (int): transposition length of the product of the two genomes
        nc (int): product cycles holding two fixed points of the same genome
        trivial_components (int): classes where both genomes agree (distance 0)
        components (List[ComponentReport]): the remaining classes
        oracle (Optional[OracleReport]): present when oracles were requested
    """

    total: int = Field(..., description="DCJ distance", ge=0, example=3)
    lt: int = Field(..., description="Transposition length of the product", ge=0, example=5)
    nc: int = Field(..., description="Cycles with two same-genome fixed points", ge=0, example=1)
    trivial_components: int = Field(0, description="Number of distance-0 classes", ge=0)
    components: List[ComponentReport] = Field(default_factory=list)
    oracle: Optional[OracleReport] = None

    @root_validator(skip_on_failure=True)
    def validate_totals(cls, values):
        total, lt, nc = values["total"], values["lt"], values["nc"]
        if 2 * total != lt + nc:
            raise ValueError(f"total {total} != ({lt} + {nc}) / 2")
        summed = sum(component.distance for component in values["components"])
        if summed != total:
            raise ValueError(f"component distances sum to {summed}, not {total}")
        return values

    class Config:
        """Pydantic configuration."""
        schema_extra = {
            "example": {
                "total": 3,
                "lt": 5,
                "nc": 1,
                "trivial_components": 0,
                "components": [
                    {"id": 1, "points": [1, 2, 3, 4, 5, 6], "kind": "conjugate", "lt": 4, "nc": 0, "distance": 2},
                    {"id": 2, "points": [7, 8], "kind": "non_conjugate", "lt": 1, "nc": 1, "distance": 1},
                ],
            }
        }


class StepReport(BaseModel):
    i: int = Field(..., ge=1)
    j: int = Field(..., ge=1)
    mode: DcjMode
    event: DcjEvent
    genome: str = Field(..., description="Genome after the step, in cycle notation", example="(1,6)(2,3)(4,5)")


class ScenarioReport(BaseModel):
    """
    A sorting scenario as printed by `sort`.

    Attributes:
        origin (str): starting genome in cycle notation
        target (str): final genome in cycle notation
        length (int): number of steps
        steps (List[StepReport]): steps in application order
    """

    origin: str
    target: str
    length: int = Field(..., ge=0)
    steps: List[StepReport] = Field(default_factory=list)

    @root_validator(skip_on_failure=True)
    def validate_step_count(cls, values):
        if values["length"] != len(values["steps"]):
            raise ValueError(f"length {values['length']} but {len(values['steps'])} steps")
        return values


class CountMethod(str, Enum):
    TRIVIAL = "trivial"
    CLOSED_FORM = "closed_form"
    EXHAUSTIVE = "exhaustive"


class ScenarioCountReport(BaseModel):
    distance: int = Field(..., ge=0)
    count: int = Field(..., ge=1)
    method: CountMethod


class ScenarioListReport(BaseModel):
    distance: int = Field(..., ge=0)
    truncated: bool = False
    scenarios: List[ScenarioReport] = Field(default_factory=list)


class EncodeReport(BaseModel):
    n: int = Field(..., ge=1, example=6)
    permutation: str = Field(..., example="(2,5)(3,6)(4,7)(9,12)(10,11)")


class GenomeTextReport(BaseModel):
    """A genome in both the chromosome text format and cycle notation."""

    n: int = Field(..., ge=1)
    permutation: str
    chromosomes: List[str] = Field(..., description="Lines of the genome text format", example=["L 1 3 2 4", "C 5 6"])
    seed: Optional[int] = Field(None, description="Seed used for a sampled genome")


class GenomeCountReport(BaseModel):
    n: int = Field(..., ge=0)
    count: int = Field(..., ge=1)


class GenomeListReport(BaseModel):
    n: int = Field(..., ge=0)
    genomes: List[str] = Field(default_factory=list)


class AdjacencyGraphStats(BaseModel):
    """
    Cycle and path counts of the adjacency graph of two genomes.

    Attributes:
        n (int): number of regions
        cycles (int): number of cycles c
        odd_paths (int): number of paths with an odd number of edges p
        even_paths (int): number of paths with an even number of edges
    """

    n: int = Field(..., ge=1)
    cycles: int = Field(..., ge=0)
    odd_paths: int = Field(..., ge=0)
    even_paths: int = Field(..., ge=0)

    @validator("odd_paths")
    def validate_odd_paths(cls, v):
        if v % 2:
            raise ValueError(f"odd path count must be even, got {v}")
        return v

    @property
    def distance(self) -> int:
        """n - (c + p/2)."""
        return self.n - self.cycles - self.odd_paths // 2


class AdjacencyGraphReport(BaseModel):
    stats: AdjacencyGraphStats
    distance: int = Field(..., ge=0)
    dump: List[str] = Field(default_factory=list, description="One line per graph component")


class ErrorReport(BaseModel):
    """
    Model for error output.

    Attributes:
        error (bool): always True
        message (str): human-readable error message
        exit_code (int): process exit code
        line (Optional[int]): input line of a parse error
        column (Optional[int]): input column of a parse error
    """

    error: bool = Field(default=True, description="Indicates this is an error document")
    message: str = Field(..., description="Human-readable error message", example="line 2, column 5: gene id 0 is not allowed")
    exit_code: int = Field(..., description="Process exit code", example=2)
    line: Optional[int] = None
    column: Optional[int] = None
