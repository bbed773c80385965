"""
Genome Service

Codec between chromosome-level genome descriptions and genomic permutations.

Gene extremities are numbered by the assignment map: the tail of gene i is
2i-1 and its head is 2i. A genome on n regions is an involution on {1..2n}:
each adjacency is a 2-cycle and each telomere a fixed point.
"""

import logging
import random
from itertools import combinations
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from dcjperm.config.limits import get_enum_max_n
from dcjperm.exceptions import NotInvolution, OddDegree, RangeError, SizeMismatch, SpecError, TooLarge
from dcjperm.models.genome import Chromosome, ChromosomeShape, Extremity, ExtremityEnd, GenomeSpec
from dcjperm.services.perm_service import (
    Permutation,
    cycle_decomposition,
    fixed_points,
    format_cycles,
    from_cycles,
    is_involution,
)

logger = logging.getLogger(__name__)


class Genome:
    """A genomic permutation: an involution of even degree 2n."""

    __slots__ = ("perm",)

    def __init__(self, perm: Permutation, *, _trusted: bool = False):
        if not _trusted:
            _check_genomic(perm)
        self.perm = perm

    @property
    def n(self) -> int:
        return self.perm.degree // 2

    @property
    def degree(self) -> int:
        return self.perm.degree

    def __call__(self, point: int) -> int:
        return self.perm(point)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Genome):
            return NotImplemented
        return self.perm == other.perm

    def __lt__(self, other: "Genome") -> bool:
        return self.perm < other.perm

    def __hash__(self) -> int:
        return hash(self.perm)

    def __str__(self) -> str:
        return format_cycles(self.perm)

    def __repr__(self) -> str:
        return f"Genome(n={self.n}, {format_cycles(self.perm)!r})"


def _check_genomic(perm: Permutation) -> None:
    if perm.degree % 2:
        raise OddDegree(f"a genome needs an even degree, got {perm.degree}")
    if not is_involution(perm):
        longest = max(len(cycle) for cycle in cycle_decomposition(perm))
        raise NotInvolution(f"{format_cycles(perm)} has a cycle of length {longest}")


def validate(perm: Permutation) -> Genome:
    """Wraps `perm` as a Genome, degree read as 2n."""
    _check_genomic(perm)
    return Genome(perm, _trusted=True)


def check_same_size(g1: Genome, g2: Genome) -> None:
    if g1.n != g2.n:
        raise SizeMismatch(f"genomes are on different numbers of regions: {g1.n} != {g2.n}")


# --------------------------------------------------------------------------
# Assignment map
# --------------------------------------------------------------------------
def phi(extremity: Extremity) -> int:
    if extremity.end is ExtremityEnd.TAIL:
        return 2 * extremity.gene - 1
    return 2 * extremity.gene


def phi_inverse(label: int, n: Optional[int] = None) -> Extremity:
    if label < 1 or (n is not None and label > 2 * n):
        upper = "" if n is None else f" 1..{2 * n}"
        raise RangeError(f"extremity label {label} is outside{upper or ' the positive integers'}")
    gene = (label + 1) // 2
    end = ExtremityEnd.TAIL if label % 2 else ExtremityEnd.HEAD
    return Extremity(gene=gene, end=end)


def _left_right(gene: int) -> Tuple[int, int]:
    """Labels of the extremity read first and last when traversing a signed gene."""
    a = abs(gene)
    if gene > 0:
        return 2 * a - 1, 2 * a
    return 2 * a, 2 * a - 1


# --------------------------------------------------------------------------
# Encode / decode
# --------------------------------------------------------------------------
def make_spec(n_regions: int, chromosomes: Sequence[Tuple[ChromosomeShape, Sequence[int]]]) -> GenomeSpec:
    """Builds a GenomeSpec, reporting validation failures as SpecError."""
    try:
        return GenomeSpec(
            n_regions=n_regions,
            chromosomes=[Chromosome(shape=shape, genes=list(genes)) for shape, genes in chromosomes],
        )
    except ValidationError as e:
        messages = "; ".join(error["msg"] for error in e.errors())
        raise SpecError(f"invalid genome: {messages}") from e


def encode(spec: GenomeSpec) -> Genome:
    cycles: List[Tuple[int, int]] = []
    for chromosome in spec.chromosomes:
        ends = [_left_right(gene) for gene in chromosome.genes]
        for (_, right), (left, _) in zip(ends, ends[1:]):
            cycles.append((right, left))
        if not chromosome.is_linear:
            cycles.append((ends[-1][1], ends[0][0]))
    return Genome(from_cycles(2 * spec.n_regions, cycles), _trusted=True)


def _read_from(images: Sequence[int], entry: int) -> Tuple[List[int], int]:
    """
    Reads genes starting at extremity `entry` until a telomere or until the
    walk comes back to `entry`. Returns the signed genes and the last exit label.
    """
    genes: List[int] = []
    current = entry
    while True:
        gene = (current + 1) // 2
        if current % 2:
            genes.append(gene)
            exit_label = 2 * gene
        else:
            genes.append(-gene)
            exit_label = 2 * gene - 1
        following = images[exit_label - 1]
        if following == exit_label or following == entry:
            return genes, exit_label
        current = following


def _reading_key(genes: Sequence[int]) -> List[Tuple[int, bool]]:
    return [(abs(gene), gene < 0) for gene in genes]


def decode(genome: Genome) -> GenomeSpec:
    """
    Canonical chromosome description: linear chromosomes first, then circular,
    each group sorted by smallest gene id. A linear chromosome is read from the
    telomere giving the smaller sequence of (id, negative) pairs; a circular one
    starts at its smallest gene, read in positive orientation.
    """
    n = genome.n
    images = genome.perm.images
    visited = [False] * (n + 1)
    linear: List[List[int]] = []
    circular: List[List[int]] = []

    for telomere in sorted(fixed_points(genome.perm)):
        if visited[(telomere + 1) // 2]:
            continue
        forward, _ = _read_from(images, telomere)
        backward = [-gene for gene in reversed(forward)]
        for gene in forward:
            visited[abs(gene)] = True
        linear.append(min(forward, backward, key=_reading_key))

    for gene in range(1, n + 1):
        if visited[gene]:
            continue
        genes, _ = _read_from(images, 2 * gene - 1)
        for member in genes:
            visited[abs(member)] = True
        circular.append(genes)

    linear.sort(key=lambda genes: min(abs(g) for g in genes))
    circular.sort(key=lambda genes: min(abs(g) for g in genes))
    chromosomes = [Chromosome(shape=ChromosomeShape.LINEAR, genes=genes) for genes in linear]
    chromosomes += [Chromosome(shape=ChromosomeShape.CIRCULAR, genes=genes) for genes in circular]
    return GenomeSpec(n_regions=n, chromosomes=chromosomes)


def canonicalize(spec: GenomeSpec) -> GenomeSpec:
    return decode(encode(spec))


def adjacencies(genome: Genome) -> List[Tuple[int, int]]:
    return [(cycle[0], cycle[1]) for cycle in cycle_decomposition(genome.perm) if len(cycle) == 2]


def telomeres(genome: Genome) -> Tuple[int, ...]:
    return tuple(sorted(fixed_points(genome.perm)))


# --------------------------------------------------------------------------
# Counting
# --------------------------------------------------------------------------
def double_factorial(k: int) -> int:
    """k!! with (-1)!! = 0!! = 1."""
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


def count_genomes_by_adjacencies(n: int, t: int) -> int:
    """Genomes on n regions with exactly t adjacencies."""
    if t < 0 or 2 * t > 2 * n:
        return 0
    return comb(2 * n, 2 * t) * double_factorial(2 * t - 1)


def count_genomes(n: int) -> int:
    if n < 0:
        raise RangeError(f"number of regions must be non-negative, got {n}")
    return sum(count_genomes_by_adjacencies(n, t) for t in range(n + 1))


# --------------------------------------------------------------------------
# Enumeration and sampling
# --------------------------------------------------------------------------
def _all_pairings(items: List[int]) -> Iterator[List[Tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for k, partner in enumerate(rest):
        for pairing in _all_pairings(rest[:k] + rest[k + 1:]):
            yield [(first, partner)] + pairing


def enumerate_genomes(n: int, allow_large: bool = False, max_n: Optional[int] = None) -> Iterator[Genome]:
    """
    Every genome on n regions exactly once: by increasing number of
    adjacencies, then by the lexicographic order of the paired points.
    """
    if n < 0:
        raise RangeError(f"number of regions must be non-negative, got {n}")
    limit = get_enum_max_n() if max_n is None else max_n
    if n > limit and not allow_large:
        raise TooLarge(f"enumerating genomes on {n} regions exceeds the guard n <= {limit}; use --allow-large")
    degree = 2 * n
    logger.info(f"🔍 Enumerating {count_genomes(n)} genomes on {n} regions")
    for t in range(n + 1):
        for moved in combinations(range(1, degree + 1), 2 * t):
            for pairing in _all_pairings(list(moved)):
                yield Genome(from_cycles(degree, pairing), _trusted=True)


def random_genome(n: int, seed: int) -> Genome:
    """
    Uniform sample from the genomes on n regions, deterministic in (n, seed):
    the number of adjacencies is drawn with the exact counting weights, then
    the paired points and their perfect matching are drawn uniformly.
    """
    if n < 1:
        raise RangeError(f"number of regions must be at least 1, got {n}")
    rng = random.Random(seed)
    draw = rng.randrange(count_genomes(n))
    t = 0
    while draw >= count_genomes_by_adjacencies(n, t):
        draw -= count_genomes_by_adjacencies(n, t)
        t += 1
    moved = rng.sample(range(1, 2 * n + 1), 2 * t)
    pairs = [(moved[k], moved[k + 1]) for k in range(0, 2 * t, 2)]
    return Genome(from_cycles(2 * n, pairs), _trusted=True)
