"""Feedback-driven coding matrix construction via a graphic matroid.

Packets are placed one by one as labeled edges of a growing multigraph.
At step k every receiver still missing packet k contributes the set of
its wanted packets seen so far; each such set must stay a forest, so the
vertex pairs already connected inside a set's other edges are forbidden
locations for the new edge.  If every pair is forbidden the graph gains
a vertex and the edge attaches to vertex 1.  The signed incidence matrix
of the finished graph, with its first row deleted, is the coding matrix:
edge-subset forests correspond exactly to independent column sets, over
every field, which is what makes the construction field-agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .gf import GF
from .linalg import CodingMatrix, prune_rows
from .model import WantsCollection


class DisjointSet:
    """Union-find over arbitrary hashable items, path-halving."""

    def __init__(self):
        self.parent = {}

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            return x
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class LabeledMultigraph:
    """Vertices 1..vertex_count; edges[k] = (i, j) with i < j is packet k."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class IterationConstraints:
    """The independence requirements packet k's placement must respect."""

    packet: int
    independent_sets: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class Placement:
    location: tuple[int, int]
    new_vertex: bool


@dataclass(frozen=True)
class IterationTrace:
    packet: int
    set_count: int
    forbidden: tuple[tuple[int, int], ...]
    allowed: tuple[tuple[int, int], ...]
    location: tuple[int, int]
    new_vertex: bool


def constraints_for(wants: WantsCollection, packet: int) -> IterationConstraints:
    """Prefix wants sets that contain the packet, deduplicated.

    Each set is W_n intersected with packets 0..packet; receivers not
    missing this packet contribute nothing, and singleton sets impose no
    real restriction but are kept for faithfulness.
    """
    if not 0 <= packet < wants.k:
        raise ValueError(f"packet {packet} outside [0, {wants.k})")
    seen = set()
    for w in wants.wants:
        if packet in w:
            seen.add(frozenset(m for m in w if m <= packet))
    ordered = tuple(sorted(seen, key=sorted))
    return IterationConstraints(packet=packet, independent_sets=ordered)


def forbidden_locations(
    graph: LabeledMultigraph, constraints: IterationConstraints
) -> set[tuple[int, int]]:
    """Vertex pairs where placing the new edge would close a cycle.

    For each constraint set, vertices connected by the set's already
    placed edges may not be joined again; the union over all sets is the
    forbidden region.
    """
    placed = len(graph.edges)
    forbidden: set[tuple[int, int]] = set()
    for s in constraints.independent_sets:
        dsu = DisjointSet()
        for packet in s:
            if packet == constraints.packet:
                continue
            if packet >= placed:
                raise ValueError(f"constraint references unplaced packet {packet}")
            i, j = graph.edges[packet]
            dsu.union(i, j)
        groups: dict[int, list[int]] = {}
        for v in dsu.parent:
            groups.setdefault(dsu.find(v), []).append(v)
        for members in groups.values():
            if len(members) > 1:
                members.sort()
                forbidden.update(combinations(members, 2))
    return forbidden


def place_edge(
    graph: LabeledMultigraph, packet: int, forbidden
) -> tuple[LabeledMultigraph, Placement]:
    """Put packet's edge at the smallest allowed pair, or grow the graph.

    The allowed pairs are scanned in lexicographic order; when none
    remain a fresh vertex is appended and the edge runs from vertex 1 to
    it.  The packet must be the next unplaced index.
    """
    if packet != len(graph.edges):
        raise ValueError(
            f"packet {packet} is not the next edge (have {len(graph.edges)})"
        )
    u = graph.vertex_count
    for i in range(1, u):
        for j in range(i + 1, u + 1):
            if (i, j) not in forbidden:
                placement = Placement(location=(i, j), new_vertex=False)
                return (
                    LabeledMultigraph(u, graph.edges + ((i, j),)),
                    placement,
                )
    placement = Placement(location=(1, u + 1), new_vertex=True)
    return (
        LabeledMultigraph(u + 1, graph.edges + ((1, u + 1),)),
        placement,
    )


def build_graph(
    wants: WantsCollection, trace: list[IterationTrace] | None = None
) -> LabeledMultigraph:
    """Run the per-packet placement loop; the result has one edge per packet.

    The graph depends only on the wants sets, never on a field.  Pass a
    list as trace to capture the per-iteration decisions.
    """
    graph = LabeledMultigraph(vertex_count=2, edges=())
    for packet in range(wants.k):
        constraints = constraints_for(wants, packet)
        forbidden = forbidden_locations(graph, constraints)
        graph, placement = place_edge(graph, packet, forbidden)
        if trace is not None:
            u_before = graph.vertex_count - (1 if placement.new_vertex else 0)
            allowed = tuple(
                p
                for p in combinations(range(1, u_before + 1), 2)
                if p not in forbidden
            )
            trace.append(
                IterationTrace(
                    packet=packet,
                    set_count=len(constraints.independent_sets),
                    forbidden=tuple(sorted(forbidden)),
                    allowed=allowed,
                    location=placement.location,
                    new_vertex=placement.new_vertex,
                )
            )
    return graph


def to_matrix(
    graph: LabeledMultigraph, field: GF, k_packets: int | None = None
) -> CodingMatrix:
    """Signed incidence matrix of the graph with its first row deleted.

    Edge (i, j) with i < j puts 1 in row i and the field's -1 in row j;
    dropping row 1 leaves a (vertex_count - 1) x K matrix whose column
    subsets are independent exactly when the edge subsets are forests.
    """
    if k_packets is not None and len(graph.edges) != k_packets:
        raise ValueError(
            f"graph has {len(graph.edges)} placed edges, expected {k_packets}"
        )
    neg_one = field.neg_one()
    full = np.zeros((graph.vertex_count, len(graph.edges)), dtype=np.int64)
    for k, (i, j) in enumerate(graph.edges):
        full[i - 1, k] = 1
        full[j - 1, k] = neg_one
    return CodingMatrix(field, full[1:])


def build_solution(
    wants: WantsCollection, field: GF, prune: bool = False
) -> CodingMatrix:
    """Build a coding matrix for the wants sets over the given field.

    Every receiver can decode from the result (rank of its wanted columns
    is full); with prune=True rows are additionally thinned until no
    single one is redundant.  When nobody wants anything the solution is
    the empty 0 x K matrix.
    """
    if wants.wmax == 0:
        return CodingMatrix.empty(field, wants.k)
    graph = build_graph(wants)
    matrix = to_matrix(graph, field, wants.k)
    if prune:
        matrix = prune_rows(matrix, wants)
    return matrix


def format_trace(entries) -> list[str]:
    """One line per iteration: packet, set count, F, F*, chosen location."""

    def pairs(ps):
        return "{" + ",".join(f"({i},{j})" for i, j in ps) + "}"

    lines = []
    for t in entries:
        tag = "new-vertex " if t.new_vertex else ""
        lines.append(
            f"k={t.packet + 1} sets={t.set_count} F={pairs(t.forbidden)} "
            f"F*={pairs(t.allowed)} {tag}place=({t.location[0]},{t.location[1]})"
        )
    return lines
