"""
Genome Models

Pydantic models for the chromosome-level description of a genome: signed gene
orders on linear or circular chromosomes. These are the human-facing side of
the codec; the permutation side lives in the genome service.
"""

from collections import Counter
from enum import Enum
from typing import List

from pydantic import BaseModel, Field, root_validator, validator


class ExtremityEnd(str, Enum):
    HEAD = "head"
    TAIL = "tail"


class ChromosomeShape(str, Enum):
    LINEAR = "linear"
    CIRCULAR = "circular"

    @property
    def letter(self) -> str:
        return "L" if self is ChromosomeShape.LINEAR else "C"


class Extremity(BaseModel):
    """
    One end of a gene.

    Attributes:
        gene (int): Gene id, 1..n
        end (ExtremityEnd): head or tail
    """

    gene: int = Field(..., description="Gene id", ge=1, example=3)
    end: ExtremityEnd = Field(..., description="Which end of the gene", example="tail")

    def __str__(self) -> str:
        return f"{self.gene}_{self.end.value[0]}"

    class Config:
        """Pydantic configuration."""
        frozen = True


class Chromosome(BaseModel):
    """
    A chromosome as an ordered list of signed genes.

    Attributes:
        shape (ChromosomeShape): linear or circular
        genes (List[int]): signed gene ids; the sign is the orientation
    """

    shape: ChromosomeShape = Field(..., description="Linear or circular", example="linear")
    genes: List[int] = Field(..., description="Signed gene ids in reading order", example=[1, 3, 2, 4])

    @validator("genes")
    def validate_genes(cls, v):
        """Genes must be non-empty, non-zero and not repeat within the chromosome."""
        if not v:
            raise ValueError("a chromosome needs at least one gene")
        if any(gene == 0 for gene in v):
            raise ValueError("gene id 0 is not allowed")
        ids = [abs(gene) for gene in v]
        if len(set(ids)) != len(ids):
            raise ValueError(f"gene ids repeat within the chromosome: {v}")
        return v

    @property
    def is_linear(self) -> bool:
        return self.shape is ChromosomeShape.LINEAR

    class Config:
        """Pydantic configuration."""
        frozen = True
        schema_extra = {"example": {"shape": "linear", "genes": [1, 3, 2, 4]}}


class GenomeSpec(BaseModel):
    """
    A whole genome on the regions 1..n.

    Attributes:
        n_regions (int): number of genes n
        chromosomes (List[Chromosome]): every gene id 1..n appears exactly once
    """

    n_regions: int = Field(..., description="Number of regions (genes)", ge=1, example=6)
    chromosomes: List[Chromosome] = Field(..., description="Chromosomes of the genome")

    @root_validator(skip_on_failure=True)
    def validate_gene_ids(cls, values):
        """The gene ids over all chromosomes are exactly 1..n, each once."""
        n = values["n_regions"]
        ids = sorted(abs(gene) for chromosome in values["chromosomes"] for gene in chromosome.genes)
        if ids != list(range(1, n + 1)):
            counts = Counter(ids)
            duplicates = sorted(gene for gene, count in counts.items() if count > 1)
            missing = sorted(set(range(1, n + 1)) - set(ids))
            extra = sorted(gene for gene in set(ids) if gene > n)
            raise ValueError(
                f"gene ids must be exactly 1..{n}: duplicates={duplicates} missing={missing} out_of_range={extra}"
            )
        return values

    class Config:
        """Pydantic configuration."""
        frozen = True
        schema_extra = {
            "example": {
                "n_regions": 6,
                "chromosomes": [
                    {"shape": "linear", "genes": [1, 3, 2, 4]},
                    {"shape": "circular", "genes": [5, 6]},
                ],
            }
        }
