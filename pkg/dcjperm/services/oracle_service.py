"""
Oracle Service

Two ways of computing the DCJ distance that do not use the closed form:
breadth-first search over all genomes on n regions, and the cycle and path
counts of the adjacency graph. Also the set-level view of a genome (a
partition of the extremities into adjacencies and telomeres) with the DCJ
rewrites stated on that view.
"""

import logging
from collections import deque
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from dcjperm.config.limits import get_bfs_max_n
from dcjperm.exceptions import RangeError, SamePoint, TooLarge
from dcjperm.models.response import AdjacencyGraphStats
from dcjperm.services.dcj_service import neighbors
from dcjperm.services.genome_service import Genome, check_same_size
from dcjperm.services.perm_service import cycle_decomposition, from_cycles

logger = logging.getLogger(__name__)

Part = FrozenSet[int]
VertexSet = FrozenSet[Part]
AgNode = Tuple[str, Part]


# --------------------------------------------------------------------------
# Breadth-first search
# --------------------------------------------------------------------------
def _check_bfs_size(n: int, allow_large: bool, max_n: Optional[int]) -> None:
    limit = get_bfs_max_n() if max_n is None else max_n
    if n > limit and not allow_large:
        raise TooLarge(f"breadth-first search on {n} regions exceeds the guard n <= {limit}; use --allow-large")


def bfs_distance_map(source: Genome, allow_large: bool = False, max_n: Optional[int] = None) -> Dict[Genome, int]:
    """Distance from `source` to every genome on the same number of regions."""
    _check_bfs_size(source.n, allow_large, max_n)
    seen: Dict[Genome, int] = {source: 0}
    queue = deque([source])
    while queue:
        genome = queue.popleft()
        d = seen[genome]
        for neighbor in neighbors(genome):
            if neighbor.genome not in seen:
                seen[neighbor.genome] = d + 1
                queue.append(neighbor.genome)
    logger.info(f"🔍 BFS from {source} reached {len(seen)} genomes, eccentricity {max(seen.values())}")
    return seen


def bfs_distance(g1: Genome, g2: Genome, allow_large: bool = False, max_n: Optional[int] = None) -> int:
    check_same_size(g1, g2)
    _check_bfs_size(g1.n, allow_large, max_n)
    if g1 == g2:
        return 0
    seen: Dict[Genome, int] = {g1: 0}
    queue = deque([g1])
    while queue:
        genome = queue.popleft()
        d = seen[genome]
        for neighbor in neighbors(genome):
            if neighbor.genome == g2:
                logger.debug(f"🔍 BFS found distance {d + 1} after {len(seen)} genomes")
                return d + 1
            if neighbor.genome not in seen:
                seen[neighbor.genome] = d + 1
                queue.append(neighbor.genome)
    # DCJ moves connect all genomes on n regions
    raise RuntimeError(f"{g2} is unreachable from {g1}")


# --------------------------------------------------------------------------
# Set-level view
# --------------------------------------------------------------------------
def genome_to_vertex_set(genome: Genome) -> VertexSet:
    """Adjacencies as 2-element parts, telomeres as 1-element parts."""
    return frozenset(frozenset(cycle) for cycle in cycle_decomposition(genome.perm))


def vertex_set_to_genome(vertices: Iterable[Iterable[int]], n: int) -> Genome:
    parts = [tuple(sorted(part)) for part in vertices]
    for part in parts:
        if len(part) not in (1, 2):
            raise RangeError(f"part {set(part)} must hold one or two extremities")
    covered = sorted(point for part in parts for point in part)
    if covered != list(range(1, 2 * n + 1)):
        raise RangeError(f"parts must partition 1..{2 * n}, got {covered}")
    return Genome(from_cycles(2 * n, [part for part in parts if len(part) == 2]), _trusted=True)


def _part_holding(vertices: VertexSet, point: int) -> Part:
    for part in vertices:
        if point in part:
            return part
    raise RangeError(f"extremity {point} is not in the vertex set")


def graph_dcj_apply(vertices: VertexSet, targets: Tuple[int, int]) -> VertexSet:
    """
    Cuts at the parts holding i and j and rejoins: an adjacency {i,j} splits,
    telomeres {i},{j} join, and otherwise i and j trade partners.
    """
    i, j = targets
    if i == j:
        raise SamePoint(f"a DCJ operation needs two distinct points, got ({i},{j})")
    part_i = _part_holding(vertices, i)
    part_j = _part_holding(vertices, j)
    rest = set(vertices) - {part_i, part_j}

    if part_i == part_j:
        rejoined = [{i}, {j}]
    elif len(part_i) == 1 and len(part_j) == 1:
        rejoined = [{i, j}]
    else:
        partner_i = set(part_i) - {i}
        partner_j = set(part_j) - {j}
        rejoined = [{i} | partner_j, {j} | partner_i]
    return frozenset(rest | {frozenset(part) for part in rejoined})


def graph_dcj_neighbors(vertices: VertexSet) -> Set[VertexSet]:
    """Every result of the set-level rewrites, both alternatives included."""
    adjacency_parts = [part for part in vertices if len(part) == 2]
    telomere_parts = [part for part in vertices if len(part) == 1]
    results: Set[VertexSet] = set()

    def rewrite(removed: Iterable[Part], added: Iterable[Iterable[int]]) -> VertexSet:
        return frozenset((set(vertices) - set(removed)) | {frozenset(part) for part in added})

    for first, second in combinations(adjacency_parts, 2):
        p, q = sorted(first)
        r, s = sorted(second)
        results.add(rewrite([first, second], [{p, r}, {q, s}]))
        results.add(rewrite([first, second], [{p, s}, {q, r}]))
    for adjacency in adjacency_parts:
        p, q = sorted(adjacency)
        for telomere in telomere_parts:
            (r,) = telomere
            results.add(rewrite([adjacency, telomere], [{p, r}, {q}]))
            results.add(rewrite([adjacency, telomere], [{q, r}, {p}]))
        results.add(rewrite([adjacency], [{p}, {q}]))
    for first, second in combinations(telomere_parts, 2):
        results.add(rewrite([first, second], [first | second]))
    return results


def genome_graph(genome: Genome) -> nx.MultiGraph:
    """
    Vertices are the adjacencies and telomeres (as sorted tuples); each gene
    is an edge between the vertices holding its tail and its head. Connected
    components are the chromosomes, paths being the linear ones.
    """
    graph = nx.MultiGraph()
    owner: Dict[int, Tuple[int, ...]] = {}
    for part in genome_to_vertex_set(genome):
        node = tuple(sorted(part))
        graph.add_node(node, telomere=len(node) == 1)
        for point in node:
            owner[point] = node
    for gene in range(1, genome.n + 1):
        graph.add_edge(owner[2 * gene - 1], owner[2 * gene], key=gene, gene=gene)
    return graph


# --------------------------------------------------------------------------
# Adjacency graph
# --------------------------------------------------------------------------
def _adjacency_graph(g1: Genome, g2: Genome) -> nx.MultiGraph:
    """
    Bipartite multigraph on the parts of g1 (side A) and g2 (side B), one edge
    per extremity keyed by its label.
    """
    graph = nx.MultiGraph()
    owners: Dict[Tuple[str, int], AgNode] = {}
    for side, genome in (("A", g1), ("B", g2)):
        for part in genome_to_vertex_set(genome):
            node = (side, part)
            graph.add_node(node)
            for point in part:
                owners[(side, point)] = node
    for point in range(1, g1.degree + 1):
        graph.add_edge(owners[("A", point)], owners[("B", point)], key=point)
    return graph


def _is_cycle(graph: nx.MultiGraph, nodes: Iterable[AgNode]) -> bool:
    return all(graph.degree(node) == 2 for node in nodes)


def adjacency_graph(g1: Genome, g2: Genome) -> AdjacencyGraphStats:
    check_same_size(g1, g2)
    graph = _adjacency_graph(g1, g2)
    cycles = odd_paths = even_paths = 0
    for nodes in nx.connected_components(graph):
        if _is_cycle(graph, nodes):
            cycles += 1
        elif graph.subgraph(nodes).number_of_edges() % 2:
            odd_paths += 1
        else:
            even_paths += 1
    stats = AdjacencyGraphStats(n=g1.n, cycles=cycles, odd_paths=odd_paths, even_paths=even_paths)
    logger.debug(f"📊 Adjacency graph: {cycles} cycles, {odd_paths} odd paths, {even_paths} even paths")
    return stats


def adjacency_distance(g1: Genome, g2: Genome) -> int:
    """n - (c + p/2) with c cycles and p odd paths of the adjacency graph."""
    return adjacency_graph(g1, g2).distance


def _node_label(node: AgNode) -> str:
    side, part = node
    return side + "{" + ",".join(str(point) for point in sorted(part)) + "}"


def _walk(graph: nx.MultiGraph, nodes: Set[AgNode]) -> List[AgNode]:
    ends = [node for node in nodes if graph.degree(node) == 1]
    start = min(ends or nodes, key=lambda node: (min(node[1]), node[0]))
    order = [start]
    used = set()
    current = start
    while True:
        step = next(((other, key) for _, other, key in graph.edges(current, keys=True) if key not in used), None)
        if step is None:
            break
        other, key = step
        used.add(key)
        if other == start:
            break
        order.append(other)
        current = other
    return order


def adjacency_graph_dump(g1: Genome, g2: Genome) -> List[str]:
    """One line per component, ordered by smallest extremity, e.g. `cycle length=2: A{1,2} B{1,2}`."""
    check_same_size(g1, g2)
    graph = _adjacency_graph(g1, g2)
    lines = []
    ordered = sorted(nx.connected_components(graph), key=lambda nodes: min(min(part) for _, part in nodes))
    for nodes in ordered:
        edges = graph.subgraph(nodes).number_of_edges()
        kind = "cycle" if _is_cycle(graph, nodes) else "path"
        walk = " ".join(_node_label(node) for node in _walk(graph, nodes))
        lines.append(f"{kind} length={edges}: {walk}")
    return lines
