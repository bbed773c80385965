"""
Permutation Service

Symmetric-group arithmetic on the point set {1..degree}. Permutations are
immutable and hashable; composition is right-to-left, so compose(outer, inner)
applies `inner` first.

Text form is cycle notation in canonical order: each cycle starts at its
smallest point, cycles are sorted by that point, 1-cycles are omitted and the
identity is written `()`.
"""

import logging
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from dcjperm.exceptions import (
    DegreeMismatch,
    NotConjugate,
    OverlapError,
    ParseError,
    RangeError,
    SamePoint,
)

logger = logging.getLogger(__name__)

Cycle = Tuple[int, ...]
CycleType = Tuple[int, ...]
Transposition = Tuple[int, int]
TranspositionSequence = Tuple[Transposition, ...]


class Permutation:
    """A bijection on {1..degree}, stored as its image table."""

    __slots__ = ("_images", "_hash")

    def __init__(self, images: Iterable[int], *, _trusted: bool = False):
        table = tuple(images)
        if not _trusted:
            degree = len(table)
            seen = [False] * (degree + 1)
            for point, image in enumerate(table, start=1):
                if not isinstance(image, int) or image < 1 or image > degree:
                    raise RangeError(f"image {image!r} of point {point} is outside 1..{degree}")
                if seen[image]:
                    raise OverlapError(f"point {image} appears twice as an image")
                seen[image] = True
        self._images = table
        self._hash = hash(table)

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> Tuple[int, ...]:
        """Image table: images[k] is the image of point k + 1."""
        return self._images

    def __call__(self, point: int) -> int:
        _check_point(point, self.degree)
        return self._images[point - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._images == other._images

    def __lt__(self, other: "Permutation") -> bool:
        return self._images < other._images

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({self.degree}, {format_cycles(self)!r})"


def _check_point(point: int, degree: int) -> None:
    if point < 1 or point > degree:
        raise RangeError(f"point {point} is outside 1..{degree}")


def _check_degrees(a: Permutation, b: Permutation) -> None:
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees differ: {a.degree} != {b.degree}")


# --------------------------------------------------------------------------
# Construction
# --------------------------------------------------------------------------
def identity(degree: int) -> Permutation:
    if degree < 0:
        raise RangeError(f"degree must be non-negative, got {degree}")
    return Permutation(range(1, degree + 1), _trusted=True)


def from_images(images: Sequence[int]) -> Permutation:
    return Permutation(images)


def from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
    """Builds the product of disjoint cycles; unmentioned points are fixed."""
    if degree < 0:
        raise RangeError(f"degree must be non-negative, got {degree}")
    table = list(range(1, degree + 1))
    used = set()
    for cycle in cycles:
        for point in cycle:
            _check_point(point, degree)
            if point in used:
                raise OverlapError(f"point {point} appears in more than one cycle")
            used.add(point)
        for k, point in enumerate(cycle):
            table[point - 1] = cycle[(k + 1) % len(cycle)]
    return Permutation(table, _trusted=True)


def transposition(i: int, j: int, degree: int) -> Permutation:
    if i == j:
        raise SamePoint(f"transposition needs two distinct points, got ({i},{j})")
    return from_cycles(degree, [(i, j)])


def product(factors: Iterable[Transposition], degree: int) -> Permutation:
    """Right-to-left product t1 t2 ... tk of the given transpositions."""
    result = identity(degree)
    for i, j in reversed(list(factors)):
        result = compose(transposition(i, j, degree), result)
    return result


# --------------------------------------------------------------------------
# Group operations
# --------------------------------------------------------------------------
def compose(outer: Permutation, inner: Permutation) -> Permutation:
    """result(i) = outer(inner(i))."""
    _check_degrees(outer, inner)
    o = outer.images
    return Permutation([o[image - 1] for image in inner.images], _trusted=True)


def inverse(p: Permutation) -> Permutation:
    table = [0] * p.degree
    for point, image in enumerate(p.images, start=1):
        table[image - 1] = point
    return Permutation(table, _trusted=True)


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """Returns g p g^-1, which sends g(i) to g(p(i))."""
    _check_degrees(p, g)
    gi = g.images
    table = [0] * p.degree
    for point, image in enumerate(p.images, start=1):
        table[gi[point - 1] - 1] = gi[image - 1]
    return Permutation(table, _trusted=True)


# --------------------------------------------------------------------------
# Cycle structure
# --------------------------------------------------------------------------
def orbit(p: Permutation, point: int) -> Cycle:
    """The cycle of p through `point`, listed from `point`."""
    _check_point(point, p.degree)
    images = p.images
    cycle = [point]
    current = images[point - 1]
    while current != point:
        cycle.append(current)
        current = images[current - 1]
    return tuple(cycle)


def cycle_decomposition(p: Permutation) -> List[Cycle]:
    """All cycles, 1-cycles included, in canonical order."""
    images = p.images
    seen = [False] * (p.degree + 1)
    cycles: List[Cycle] = []
    for start in range(1, p.degree + 1):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        current = images[start - 1]
        while current != start:
            seen[current] = True
            cycle.append(current)
            current = images[current - 1]
        cycles.append(tuple(cycle))
    return cycles


def cycle_type(p: Permutation) -> CycleType:
    """Cycle lengths in non-increasing order, 1-cycles included."""
    return tuple(sorted((len(c) for c in cycle_decomposition(p)), reverse=True))


def transposition_length(p: Permutation) -> int:
    """Minimal number of transpositions whose product is p: degree - #cycles."""
    return p.degree - len(cycle_decomposition(p))


def fixed_points(p: Permutation) -> FrozenSet[int]:
    return frozenset(point for point, image in enumerate(p.images, start=1) if point == image)


def is_involution(p: Permutation) -> bool:
    images = p.images
    return all(images[image - 1] == point for point, image in enumerate(images, start=1))


def restrict(p: Permutation, points: Iterable[int]) -> Permutation:
    """Agrees with p on `points` (which must be p-closed) and fixes the rest."""
    support = set(points)
    table = list(range(1, p.degree + 1))
    for point in support:
        image = p(point)
        if image not in support:
            raise RangeError(f"point set is not closed under the permutation: {point} -> {image}")
        table[point - 1] = image
    return Permutation(table, _trusted=True)


def conjugating_element(p: Permutation, q: Permutation) -> Permutation:
    """Some g with conjugate(p, g) == q, built from aligned cycle decompositions."""
    _check_degrees(p, q)
    if cycle_type(p) != cycle_type(q):
        raise NotConjugate(f"cycle types differ: {cycle_type(p)} vs {cycle_type(q)}")
    p_cycles = sorted(cycle_decomposition(p), key=len)
    q_cycles = sorted(cycle_decomposition(q), key=len)
    table = [0] * p.degree
    for source, target in zip(p_cycles, q_cycles):
        for a, b in zip(source, target):
            table[a - 1] = b
    return Permutation(table, _trusted=True)


# --------------------------------------------------------------------------
# Minimal factorizations
# --------------------------------------------------------------------------
def _minimal_factorizations(p: Permutation) -> Iterator[TranspositionSequence]:
    # The leftmost factor (a,b) of a minimal product must split a cycle of p,
    # so a and b lie in the same cycle and (a,b)p is one transposition shorter.
    moved = [cycle for cycle in cycle_decomposition(p) if len(cycle) > 1]
    if not moved:
        yield ()
        return
    for cycle in moved:
        for a, b in combinations(sorted(cycle), 2):
            peeled = compose(transposition(a, b, p.degree), p)
            for rest in _minimal_factorizations(peeled):
                yield ((a, b),) + rest


def enumerate_minimal_factorizations(cycle: Sequence[int], degree: int) -> List[TranspositionSequence]:
    """
    All ordered sequences of len(cycle) - 1 transpositions whose right-to-left
    product is the cycle. Each transposition is written with its smaller point
    first. A k-cycle has k^(k-2) of them; a 1-cycle has only the empty one.
    """
    if len(cycle) == 0:
        raise RangeError("a cycle needs at least one point")
    target = from_cycles(degree, [tuple(cycle)])
    factorizations = list(_minimal_factorizations(target))
    logger.debug(f"📊 {len(factorizations)} minimal factorizations of {format_cycles(target)}")
    return factorizations


# --------------------------------------------------------------------------
# Cycle notation
# --------------------------------------------------------------------------
def format_cycles(p: Permutation, include_fixed: bool = False) -> str:
    parts = [
        "(" + ",".join(str(point) for point in cycle) + ")"
        for cycle in cycle_decomposition(p)
        if include_fixed or len(cycle) > 1
    ]
    return "".join(parts) if parts else "()"


def parse_cycles(text: str, degree: int, line: Optional[int] = None) -> Permutation:
    """
    Parses cycle notation such as `(1,3)(2, 4,6,5)`. Whitespace is free,
    1-cycles may be written explicitly, `()` is the identity.
    """
    cycles: List[Cycle] = []
    pos = 0
    length = len(text)

    def skip_blank(at: int) -> int:
        while at < length and text[at].isspace():
            at += 1
        return at

    pos = skip_blank(pos)
    if pos == length:
        raise ParseError("empty permutation text", line, 1)
    while pos < length:
        if text[pos] != "(":
            raise ParseError(f"expected '(' but found {text[pos]!r}", line, pos + 1)
        pos = skip_blank(pos + 1)
        points: List[int] = []
        expect_number = True
        while True:
            if pos >= length:
                raise ParseError("unterminated cycle", line, pos + 1)
            char = text[pos]
            if char == ")" and (not expect_number or not points):
                pos += 1
                break
            if expect_number:
                start = pos
                while pos < length and text[pos].isdigit():
                    pos += 1
                if start == pos:
                    raise ParseError(f"expected a point number but found {char!r}", line, start + 1)
                value = int(text[start:pos])
                if value < 1 or value > degree:
                    raise RangeError(f"point {value} at column {start + 1} is outside 1..{degree}")
                points.append(value)
                expect_number = False
            elif char == ",":
                pos += 1
                expect_number = True
            else:
                raise ParseError(f"expected ',' or ')' but found {char!r}", line, pos + 1)
            pos = skip_blank(pos)
        if points:
            cycles.append(tuple(points))
        pos = skip_blank(pos)
    return from_cycles(degree, cycles)
