"""
DCJ Service

The double cut and join operator acting on genomic permutations, the
decomposition of a genome pair into components, the closed-form distance,
and optimal sorting scenarios.

D_ij(g) is (i,j)g when i and j are both telomeres or form an adjacency of g
(a join or a split), and (i,j)g(i,j) otherwise. The distance between g1 and
g2 is (lt + nc) / 2 where lt is the transposition length of g2*g1 and nc
counts the cycles of g2*g1 holding two fixed points of the same genome.
"""

import logging
from itertools import combinations
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from networkx.utils import UnionFind

from dcjperm.config.limits import get_scenario_max_d
from dcjperm.exceptions import (
    NotConjugate,
    OutOfTheoremScope,
    RangeError,
    SamePoint,
    ScenarioError,
    SpecError,
    TooLarge,
)
from dcjperm.models.dcj import (
    Component,
    ComponentKind,
    ComponentPartition,
    DcjEvent,
    DcjMode,
    DcjOperation,
    Scenario,
    ScenarioStep,
)
from dcjperm.models.response import ComponentReport, DistanceReport, ScenarioReport, StepReport
from dcjperm.services.genome_service import Genome, check_same_size, decode
from dcjperm.services.perm_service import (
    Cycle,
    Permutation,
    TranspositionSequence,
    compose,
    cycle_decomposition,
    cycle_type,
    restrict,
    transposition_length,
)

logger = logging.getLogger(__name__)

Images = Tuple[int, ...]


class Neighbor(NamedTuple):
    i: int
    j: int
    mode: DcjMode
    genome: Genome


# --------------------------------------------------------------------------
# The operator
# --------------------------------------------------------------------------
def _dcj_images(images: Images, i: int, j: int) -> Tuple[Images, DcjMode]:
    pi, pj = images[i - 1], images[j - 1]
    table = list(images)
    if pi == j:
        table[i - 1], table[j - 1] = i, j
        return tuple(table), DcjMode.MULTIPLY
    if pi == i and pj == j:
        table[i - 1], table[j - 1] = j, i
        return tuple(table), DcjMode.MULTIPLY

    def swap(x: int) -> int:
        return j if x == i else i if x == j else x

    # conjugation relabels i and j; only i, j and their partners change
    for x in {i, j, pi, pj}:
        table[swap(x) - 1] = swap(images[x - 1])
    return tuple(table), DcjMode.CONJUGATE


def _wrap(table: Images) -> Genome:
    return Genome(Permutation(table, _trusted=True), _trusted=True)


def apply_dcj(genome: Genome, i: int, j: int) -> Tuple[Genome, DcjOperation]:
    """Applies D_ij, recording whether it acted by multiplication or conjugation."""
    if i == j:
        raise SamePoint(f"a DCJ operation needs two distinct points, got ({i},{j})")
    for point in (i, j):
        if point < 1 or point > genome.degree:
            raise RangeError(f"point {point} is outside 1..{genome.degree}")
    table, mode = _dcj_images(genome.perm.images, i, j)
    return _wrap(table), DcjOperation(i=i, j=j, mode=mode)


def _neighbor_tables(images: Images) -> Dict[Images, Tuple[int, int, DcjMode]]:
    found: Dict[Images, Tuple[int, int, DcjMode]] = {}
    degree = len(images)
    for i in range(1, degree + 1):
        for j in range(i + 1, degree + 1):
            table, mode = _dcj_images(images, i, j)
            if table not in found:
                found[table] = (i, j, mode)
    return found


def neighbors(genome: Genome) -> List[Neighbor]:
    """Every distinct genome one DCJ away, each with the smallest (i, j) producing it."""
    return [
        Neighbor(i, j, mode, _wrap(table))
        for table, (i, j, mode) in _neighbor_tables(genome.perm.images).items()
    ]


# --------------------------------------------------------------------------
# Distance
# --------------------------------------------------------------------------
def _product_cycles(first: Images, second: Images) -> Iterator[Tuple[List[int], bool]]:
    """
    Cycles of second*first, each flagged when it holds two fixed points of
    `first` or two fixed points of `second`. Cycles come out in ascending order
    of their smallest point.
    """
    degree = len(first)
    seen = [False] * (degree + 1)
    for start in range(1, degree + 1):
        if seen[start]:
            continue
        cycle: List[int] = []
        fixed_first = fixed_second = 0
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            if first[x - 1] == x:
                fixed_first += 1
            if second[x - 1] == x:
                fixed_second += 1
            x = second[first[x - 1] - 1]
        yield cycle, fixed_first >= 2 or fixed_second >= 2


def _distance_between(first: Images, second: Images) -> int:
    lt = nc = 0
    for cycle, counted in _product_cycles(first, second):
        lt += len(cycle) - 1
        nc += counted
    return (lt + nc) // 2


def distance_total(g1: Genome, g2: Genome) -> int:
    """The DCJ distance alone, without the per-component breakdown."""
    check_same_size(g1, g2)
    return _distance_between(g1.perm.images, g2.perm.images)


def _union_find(g1: Genome, g2: Genome) -> UnionFind:
    first, second = g1.perm.images, g2.perm.images
    classes = UnionFind(range(1, g1.degree + 1))
    for x in range(1, g1.degree + 1):
        classes.union(x, first[x - 1], second[x - 1])
    return classes


def distance(g1: Genome, g2: Genome) -> DistanceReport:
    check_same_size(g1, g2)
    classes = _union_find(g1, g2)
    lt = nc = 0
    per_class: Dict[int, List] = {}
    for cycle, counted in _product_cycles(g1.perm.images, g2.perm.images):
        length = len(cycle) - 1
        lt += length
        nc += counted
        entry = per_class.setdefault(classes[cycle[0]], [[], 0, 0])
        entry[0].extend(cycle)
        entry[1] += length
        entry[2] += counted

    components: List[ComponentReport] = []
    trivial = 0
    ordered = sorted(per_class.values(), key=lambda entry: entry[0][0])
    for component_id, (points, class_lt, class_nc) in enumerate(ordered, start=1):
        if class_lt == 0:
            trivial += 1
            continue
        components.append(
            ComponentReport(
                id=component_id,
                points=sorted(points),
                kind=ComponentKind.NON_CONJUGATE if class_nc else ComponentKind.CONJUGATE,
                lt=class_lt,
                nc=class_nc,
                distance=(class_lt + class_nc) // 2,
            )
        )
    report = DistanceReport(total=(lt + nc) // 2, lt=lt, nc=nc, trivial_components=trivial, components=components)
    logger.info(f"📊 Distance {report.total} on n={g1.n}: lt={lt} nc={nc}, {len(components)} non-trivial components")
    return report


# --------------------------------------------------------------------------
# Components
# --------------------------------------------------------------------------
def classify_component(points: Sequence[int], sub1: Permutation, sub2: Permutation) -> ComponentKind:
    if all(sub1(x) == sub2(x) for x in points):
        return ComponentKind.TRIVIAL
    if cycle_type(sub1) == cycle_type(sub2):
        return ComponentKind.CONJUGATE
    return ComponentKind.NON_CONJUGATE


def components(g1: Genome, g2: Genome) -> ComponentPartition:
    """
    Partition of {1..2n} into the classes joined by either genome, each with
    both sub-permutations and its kind. Classes are ordered by smallest point.
    """
    check_same_size(g1, g2)
    classes = sorted((sorted(group) for group in _union_find(g1, g2).to_sets()), key=lambda group: group[0])
    result = []
    for component_id, points in enumerate(classes, start=1):
        sub1 = restrict(g1.perm, points)
        sub2 = restrict(g2.perm, points)
        result.append(
            Component(
                id=component_id,
                points=tuple(points),
                sub1=sub1,
                sub2=sub2,
                kind=classify_component(points, sub1, sub2),
            )
        )
    logger.debug(f"📊 {len(result)} components on n={g1.n}")
    return ComponentPartition(classes=result)


def component_product(component: Component) -> List[Cycle]:
    """Cycles of sub2*sub1 lying in the class."""
    points = set(component.points)
    return [cycle for cycle in cycle_decomposition(compose(component.sub2, component.sub1)) if cycle[0] in points]


def component_distance(component: Component) -> int:
    if component.kind is ComponentKind.TRIVIAL:
        return 0
    lt = transposition_length(compose(component.sub2, component.sub1))
    if component.kind is ComponentKind.CONJUGATE:
        return lt // 2
    return (lt + 1) // 2


# --------------------------------------------------------------------------
# Sorting elements
# --------------------------------------------------------------------------
def _rotate_to_min(cycle: Sequence[int]) -> Cycle:
    k = cycle.index(min(cycle))
    return tuple(cycle[k:]) + tuple(cycle[:k])


def _sorting_cycle(
    points: Sequence[int],
    first: Callable[[int], int],
    second: Callable[[int], int],
    alternate: bool = False,
) -> Cycle:
    """
    A cycle g on the class with g*first*g^-1 = second there, of transposition
    length equal to the class distance. Both genomes must have the same number
    of fixed points on the class (zero, or one each).

    Without fixed points second*first is two cycles of equal length and either
    one works. With one fixed point each it is a single cycle of length 2u+1,
    and g is the run of u+1 points starting at the fixed point of `second`.
    """

    def step(x: int) -> int:
        return second(first(x))

    anchor = min(points)
    target_fixed = [x for x in points if second(x) == x]
    if target_fixed:
        start = target_fixed[0]
        length = (len(points) - 1) // 2 + 1
    else:
        start = first(anchor) if alternate else anchor
        length = len(points)
    cycle = [start]
    x = step(start)
    while x != start and len(cycle) < length:
        cycle.append(x)
        x = step(x)
    return _rotate_to_min(cycle)


def sorting_element(component: Component, alternate: bool = False) -> Cycle:
    """
    Cycle g with conjugate(sub1, g) = sub2 and transposition length equal to
    the component distance, listed from its smallest point. A trivial
    component gives a 1-cycle. `alternate` picks the other cycle of sub2*sub1
    on components without fixed points.
    """
    if component.kind is ComponentKind.NON_CONJUGATE:
        raise NotConjugate(
            f"component {component.id} has two telomeres of the same genome; join or split them first"
        )
    return _sorting_cycle(component.points, component.sub1, component.sub2, alternate)


def star_factorization(cycle: Sequence[int]) -> TranspositionSequence:
    """(a,p_u)...(a,p_1) for the cycle (a,p_1,...,p_u), written left to right."""
    anchor, rest = cycle[0], cycle[1:]
    return tuple((anchor, point) for point in reversed(rest))


# --------------------------------------------------------------------------
# Scenarios
# --------------------------------------------------------------------------
def _classes(g1: Genome, g2: Genome) -> List[List[int]]:
    return sorted((sorted(group) for group in _union_find(g1, g2).to_sets()), key=lambda group: group[0])


def _record(
    steps: List[ScenarioStep], current: Genome, i: int, j: int, expected: Optional[DcjMode] = None
) -> Genome:
    genome, operation = apply_dcj(current, i, j)
    if expected is not None and operation.mode is not expected:
        raise ScenarioError(f"{operation} acted by {operation.mode.value}, expected {expected.value}")
    steps.append(ScenarioStep(operation=operation, genome=genome))
    return genome


def _image_of(images: Images) -> Callable[[int], int]:
    return lambda x: images[x - 1]


def _joined(images: Images, i1: int, i2: int) -> Callable[[int], int]:
    def image(x: int) -> int:
        if x == i1:
            return i2
        if x == i2:
            return i1
        return images[x - 1]

    return image


def optimal_scenario(g1: Genome, g2: Genome) -> Scenario:
    """
    A shortest scenario from g1 to g2. Components are sorted one after the
    other in ascending order of smallest point. A component with two telomeres
    of g1 starts by joining them; one with two telomeres of g2 is conjugated
    onto g2 with those telomeres joined and ends by splitting them. The
    conjugations follow the star factorization of the sorting element,
    rightmost factor first.
    """
    check_same_size(g1, g2)
    target = g2.perm.images
    current = g1
    steps: List[ScenarioStep] = []

    for points in _classes(g1, g2):
        first = current.perm.images
        if all(first[x - 1] == target[x - 1] for x in points):
            continue
        fixed_first = [x for x in points if first[x - 1] == x]
        fixed_second = [x for x in points if target[x - 1] == x]
        second = _image_of(target)
        split: Optional[Tuple[int, int]] = None

        if len(fixed_first) > len(fixed_second):
            current = _record(steps, current, fixed_first[0], fixed_first[1], DcjMode.MULTIPLY)
            first = current.perm.images
        elif len(fixed_second) > len(fixed_first):
            split = (fixed_second[0], fixed_second[1])
            second = _joined(target, *split)

        cycle = _sorting_cycle(points, _image_of(first), second)
        for i, j in reversed(star_factorization(cycle)):
            current = _record(steps, current, i, j, DcjMode.CONJUGATE)
        if split is not None:
            current = _record(steps, current, split[0], split[1], DcjMode.MULTIPLY)

    if current != g2:
        raise ScenarioError(f"scenario ends at {current}, not at {g2}")
    logger.info(f"✅ Built a scenario of {len(steps)} steps on n={g1.n}")
    return Scenario(origin=g1, steps=steps)


def replay(scenario: Scenario) -> Genome:
    """Re-applies every recorded operation and checks the recorded genomes and modes."""
    current = scenario.origin
    for k, step in enumerate(scenario.steps, start=1):
        genome, operation = apply_dcj(current, step.operation.i, step.operation.j)
        if operation.mode is not step.operation.mode:
            raise ScenarioError(
                f"step {k}: {operation} acts by {operation.mode.value}, recorded as {step.operation.mode.value}"
            )
        if genome != step.genome:
            raise ScenarioError(f"step {k}: {operation} gives {genome}, recorded as {step.genome}")
        current = genome
    return current


def _check_depth(d: int, allow_large: bool, max_d: Optional[int]) -> None:
    limit = get_scenario_max_d() if max_d is None else max_d
    if d > limit and not allow_large:
        raise TooLarge(f"exhaustive scenario search at distance {d} exceeds the guard d <= {limit}; use --allow-large")


def count_optimal_scenarios(g1: Genome, g2: Genome) -> int:
    """
    (d+1)^(d-1) optimal scenarios, for genomes with the same cycle type whose
    difference is confined to a single component.
    """
    check_same_size(g1, g2)
    if g1 == g2:
        return 1
    if cycle_type(g1.perm) != cycle_type(g2.perm):
        raise OutOfTheoremScope("the genomes have different numbers of telomeres")
    report = distance(g1, g2)
    if len(report.components) != 1:
        raise OutOfTheoremScope(f"the genomes differ on {len(report.components)} components, the count needs one")
    d = report.total
    return (d + 1) ** (d - 1)


def count_scenarios(g1: Genome, g2: Genome, allow_large: bool = False, max_d: Optional[int] = None) -> int:
    """Number of optimal scenarios by exhaustive search, memoized per genome."""
    check_same_size(g1, g2)
    d = distance_total(g1, g2)
    _check_depth(d, allow_large, max_d)
    target = g2.perm.images
    memo: Dict[Images, int] = {}

    def paths(images: Images, remaining: int) -> int:
        if remaining == 0:
            return 1
        if images in memo:
            return memo[images]
        total = sum(
            paths(table, remaining - 1)
            for table in _neighbor_tables(images)
            if _distance_between(table, target) == remaining - 1
        )
        memo[images] = total
        return total

    count = paths(g1.perm.images, d)
    logger.info(f"📊 {count} optimal scenarios at distance {d}, {len(memo)} genomes visited")
    return count


class ScenarioStream:
    """
    Optimal scenarios from `origin` to `target` in depth-first order, each
    emitted once. After iteration, `truncated` tells whether `limit` cut the
    stream short.
    """

    def __init__(self, origin: Genome, target: Genome, distance: int, limit: Optional[int] = None):
        self.origin = origin
        self.target = target
        self.distance = distance
        self.limit = limit
        self.truncated = False

    def __iter__(self) -> Iterator[Scenario]:
        emitted = 0
        for scenario in self._walk():
            if self.limit is not None and emitted >= self.limit:
                self.truncated = True
                return
            emitted += 1
            yield scenario

    def _walk(self) -> Iterator[Scenario]:
        target = self.target.perm.images
        path: List[ScenarioStep] = []

        def walk(images: Images, remaining: int) -> Iterator[Scenario]:
            if remaining == 0:
                yield Scenario(origin=self.origin, steps=list(path))
                return
            for table, (i, j, mode) in _neighbor_tables(images).items():
                if _distance_between(table, target) != remaining - 1:
                    continue
                path.append(ScenarioStep(operation=DcjOperation(i=i, j=j, mode=mode), genome=_wrap(table)))
                yield from walk(table, remaining - 1)
                path.pop()

        yield from walk(self.origin.perm.images, self.distance)


def enumerate_scenarios(
    g1: Genome,
    g2: Genome,
    limit: Optional[int] = None,
    allow_large: bool = False,
    max_d: Optional[int] = None,
) -> ScenarioStream:
    check_same_size(g1, g2)
    d = distance_total(g1, g2)
    _check_depth(d, allow_large, max_d)
    logger.info(f"🔍 Enumerating optimal scenarios at distance {d} on n={g1.n}")
    return ScenarioStream(g1, g2, d, limit)


# --------------------------------------------------------------------------
# Events
# --------------------------------------------------------------------------
def _find_operation(before: Genome, after: Genome) -> DcjOperation:
    if before == after:
        raise SpecError("the genomes are identical, no DCJ operation relates them")
    old, new = before.perm.images, after.perm.images
    changed = [x for x in range(1, before.degree + 1) if old[x - 1] != new[x - 1]]
    if len(changed) <= 4:
        for i, j in combinations(changed, 2):
            table, mode = _dcj_images(old, i, j)
            if table == new:
                return DcjOperation(i=i, j=j, mode=mode)
    raise SpecError(f"{after} is not one DCJ operation away from {before}")


def _classify(before: Genome, after: Genome, operation: DcjOperation) -> DcjEvent:
    before_spec = decode(before)
    if operation.mode is DcjMode.MULTIPLY:
        home = {
            abs(gene): index
            for index, chromosome in enumerate(before_spec.chromosomes)
            for gene in chromosome.genes
        }
        gene_i, gene_j = (operation.i + 1) // 2, (operation.j + 1) // 2
        if before(operation.i) == operation.i:
            return DcjEvent.CIRCULARIZATION if home[gene_i] == home[gene_j] else DcjEvent.FUSION
        chromosome = before_spec.chromosomes[home[gene_i]]
        return DcjEvent.FISSION if chromosome.is_linear else DcjEvent.LINEARIZATION

    after_spec = decode(after)
    change = len(after_spec.chromosomes) - len(before_spec.chromosomes)
    if change > 0:
        return DcjEvent.EXCISION
    if change < 0:
        return DcjEvent.INTEGRATION

    def gene_sets(spec) -> List[frozenset]:
        return sorted((frozenset(abs(g) for g in c.genes) for c in spec.chromosomes), key=min)

    if gene_sets(before_spec) == gene_sets(after_spec):
        return DcjEvent.INVERSION
    return DcjEvent.TRANSLOCATION


def classify_event(before: Genome, after: Genome) -> DcjEvent:
    """Names the rearrangement that a single DCJ step from `before` to `after` models."""
    check_same_size(before, after)
    return _classify(before, after, _find_operation(before, after))


def scenario_report(scenario: Scenario) -> ScenarioReport:
    steps = []
    previous = scenario.origin
    for step in scenario.steps:
        steps.append(
            StepReport(
                i=step.operation.i,
                j=step.operation.j,
                mode=step.operation.mode,
                event=_classify(previous, step.genome, step.operation),
                genome=str(step.genome),
            )
        )
        previous = step.genome
    return ScenarioReport(
        origin=str(scenario.origin),
        target=str(scenario.final),
        length=scenario.length,
        steps=steps,
    )
