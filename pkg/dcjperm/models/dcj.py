"""
DCJ Models

Records produced by the DCJ service: applied operations, the component
partition of a genome pair, and sorting scenarios. Permutations and genomes are
carried as the service's own immutable types.
"""

from enum import Enum
from typing import List, Tuple

from pydantic import BaseModel, Field, validator

from dcjperm.services.genome_service import Genome
from dcjperm.services.perm_service import Permutation


class DcjMode(str, Enum):
    MULTIPLY = "multiply"
    CONJUGATE = "conjugate"


class ComponentKind(str, Enum):
    TRIVIAL = "trivial"
    CONJUGATE = "conjugate"
    NON_CONJUGATE = "non_conjugate"


class DcjEvent(str, Enum):
    FUSION = "fusion"
    FISSION = "fission"
    CIRCULARIZATION = "circularization"
    LINEARIZATION = "linearization"
    INVERSION = "inversion"
    TRANSLOCATION = "translocation"
    EXCISION = "excision"
    INTEGRATION = "integration"


class DcjOperation(BaseModel):
    """
    One application of the DCJ operator D_ij.

    Attributes:
        i (int): first point
        j (int): second point, different from i
        mode (DcjMode): multiply when i, j were both telomeres or an adjacency
            of the genome it was applied to, conjugate otherwise
    """

    i: int = Field(..., description="First extremity label", ge=1, example=1)
    j: int = Field(..., description="Second extremity label", ge=1, example=2)
    mode: DcjMode = Field(..., description="How the operator acted", example="conjugate")

    @validator("j")
    def validate_distinct(cls, v, values):
        if "i" in values and v == values["i"]:
            raise ValueError("a DCJ operation needs two distinct points")
        return v

    def __str__(self) -> str:
        return f"D({self.i},{self.j})"

    class Config:
        """Pydantic configuration."""
        frozen = True


class Component(BaseModel):
    """An equivalence class of points together with the two induced sub-permutations."""

    id: int = Field(..., description="1-based position in ascending order of smallest point")
    points: Tuple[int, ...] = Field(..., description="Sorted points of the class")
    sub1: Permutation = Field(..., description="First genome restricted to the class")
    sub2: Permutation = Field(..., description="Second genome restricted to the class")
    kind: ComponentKind

    class Config:
        """Pydantic configuration."""
        arbitrary_types_allowed = True
        frozen = True


class ComponentPartition(BaseModel):
    classes: List[Component] = Field(default_factory=list)

    @property
    def nontrivial(self) -> List[Component]:
        return [c for c in self.classes if c.kind is not ComponentKind.TRIVIAL]

    class Config:
        """Pydantic configuration."""
        arbitrary_types_allowed = True


class ScenarioStep(BaseModel):
    operation: DcjOperation
    genome: Genome

    class Config:
        """Pydantic configuration."""
        arbitrary_types_allowed = True
        frozen = True


class Scenario(BaseModel):
    """
    A sequence of genomes, each one DCJ operation away from the previous one.

    Attributes:
        origin (Genome): starting genome
        steps (List[ScenarioStep]): operations in application order with the
            genome each one produced
    """

    origin: Genome
    steps: List[ScenarioStep] = Field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def final(self) -> Genome:
        return self.steps[-1].genome if self.steps else self.origin

    class Config:
        """Pydantic configuration."""
        arbitrary_types_allowed = True
