"""Immutable simple graphs on vertex set {0, ..., n-1} and structural queries.

The null graph (order 0) is a legal value: it shows up naturally when a
closed neighborhood swallows every vertex. Operations state their own
conventions for it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

from .errors import ResourceLimitError

DEFAULT_CYCLE_CAP = 10**6


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of a vertex mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices 0..order-1.

    ``edges`` holds pairs (u, v) with u < v; no loops, no duplicates.
    Instances are immutable and hashable, so they are safe to share
    across threads and to use as cache keys.
    """

    order: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("graph order must be non-negative")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.order):
                raise ValueError(f"edge ({u},{v}) out of range for order {self.order}")

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={sorted(self.edges)})"

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.order)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        masks = [0] * self.order
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(m | (1 << v) for v, m in enumerate(self.neighbor_masks))

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def vertices(self) -> range:
        return range(self.order)


@dataclass(frozen=True)
class VertexSet:
    """A subset of the vertices of a graph of order ``bound_order``."""

    members: frozenset[int]
    bound_order: int

    def __post_init__(self) -> None:
        for v in self.members:
            if not 0 <= v < self.bound_order:
                raise ValueError(f"vertex {v} out of range for order {self.bound_order}")

    @classmethod
    def of(cls, graph: Graph, members: Iterable[int]) -> "VertexSet":
        return cls(frozenset(members), graph.order)

    @classmethod
    def from_mask(cls, mask: int, bound_order: int) -> "VertexSet":
        return cls(frozenset(iter_bits(mask)), bound_order)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.members:
            m |= 1 << v
        return m

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.members

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self.members)}, n={self.bound_order})"


class DegreeProfile(NamedTuple):
    min_degree: int
    max_degree: int
    is_regular: bool


def build_graph(order: int, edges: Iterable[Iterable[int]]) -> Graph:
    """Build a graph, normalizing edge orientation and dropping duplicates.

    Raises ValueError for out-of-range endpoints or self-loops.
    """
    normalized = set()
    for edge in edges:
        u, v = edge
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < order and 0 <= v < order):
            raise ValueError(f"edge ({u},{v}) out of range for order {order}")
        normalized.add((min(u, v), max(u, v)))
    return Graph(order, frozenset(normalized))


def _require_bound(graph: Graph, subset: VertexSet) -> None:
    if subset.bound_order != graph.order:
        raise ValueError(
            f"vertex set indexes order {subset.bound_order}, graph has order {graph.order}"
        )


def closed_neighborhood(graph: Graph, subset: VertexSet) -> VertexSet:
    """N[D]: the members of D together with all their neighbors."""
    _require_bound(graph, subset)
    mask = 0
    for v in subset.members:
        mask |= graph.closed_masks[v]
    return VertexSet.from_mask(mask, graph.order)


def induced_mapped(graph: Graph, subset: VertexSet) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``subset``, relabeled contiguously.

    Returns the subgraph and the relabeling map: entry i is the original
    label of new vertex i.
    """
    _require_bound(graph, subset)
    kept = sorted(subset.members)
    position = {v: i for i, v in enumerate(kept)}
    edges = frozenset(
        (position[u], position[v])
        for u, v in graph.edges
        if u in position and v in position
    )
    return Graph(len(kept), edges), tuple(kept)


def induced(graph: Graph, subset: VertexSet) -> Graph:
    return induced_mapped(graph, subset)[0]


def remove_closed_neighborhood_mapped(
    graph: Graph, subset: VertexSet
) -> tuple[Graph, tuple[int, ...]]:
    """G - N[D] with the relabeling map back to the parent graph."""
    removed = closed_neighborhood(graph, subset)
    survivors = VertexSet.from_mask(graph.full_mask & ~removed.mask, graph.order)
    return induced_mapped(graph, survivors)


def remove_closed_neighborhood(graph: Graph, subset: VertexSet) -> Graph:
    """G - N[D]; may be the null graph."""
    return remove_closed_neighborhood_mapped(graph, subset)[0]


def components(graph: Graph) -> list[VertexSet]:
    """Connected components in ascending order of their smallest vertex."""
    seen = 0
    out: list[VertexSet] = []
    for start in range(graph.order):
        if seen >> start & 1:
            continue
        comp = 1 << start
        frontier = [start]
        while frontier:
            v = frontier.pop()
            new = graph.neighbor_masks[v] & ~comp
            comp |= new
            frontier.extend(iter_bits(new))
        seen |= comp
        out.append(VertexSet.from_mask(comp, graph.order))
    return out


def is_connected(graph: Graph) -> bool:
    return len(components(graph)) == 1


def degree_profile(graph: Graph) -> DegreeProfile:
    """Minimum and maximum degree; errors on the null graph."""
    if graph.order == 0:
        raise ValueError("degree profile of the null graph is undefined")
    degrees = [graph.degree(v) for v in range(graph.order)]
    lo, hi = min(degrees), max(degrees)
    return DegreeProfile(lo, hi, lo == hi)


def is_bipartite(graph: Graph) -> bool:
    """True iff 2-colorable; the null graph counts as bipartite."""
    color: dict[int, int] = {}
    for start in range(graph.order):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in graph.adjacency[v]:
                if w not in color:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


def find_cycle_mask(graph: Graph, avail: int | None = None) -> int | None:
    """Vertex mask of some cycle inside ``avail``, or None if acyclic there."""
    if avail is None:
        avail = graph.full_mask
    masks = graph.neighbor_masks
    visited = 0
    path: list[int] = []
    path_pos: dict[int, int] = {}

    def dfs(v: int, parent: int) -> int | None:
        nonlocal visited
        visited |= 1 << v
        path_pos[v] = len(path)
        path.append(v)
        skipped_parent = False
        for w in iter_bits(masks[v] & avail):
            if w == parent and not skipped_parent:
                skipped_parent = True
                continue
            if w in path_pos:
                cycle = 0
                for u in path[path_pos[w]:]:
                    cycle |= 1 << u
                return cycle
            if not (visited >> w & 1):
                found = dfs(w, v)
                if found is not None:
                    return found
        path.pop()
        del path_pos[v]
        return None

    for root in iter_bits(avail):
        if visited >> root & 1:
            continue
        found = dfs(root, -1)
        if found is not None:
            return found
    return None


def has_cycle(graph: Graph, avail: int | None = None) -> bool:
    return find_cycle_mask(graph, avail) is not None


def cycle_masks(
    graph: Graph, avail: int | None = None, cycle_cap: int = DEFAULT_CYCLE_CAP
) -> list[int]:
    """Vertex masks of every simple cycle whose vertices lie in ``avail``.

    Each cycle is reported once. Raises ResourceLimitError after
    ``cycle_cap`` cycles have been enumerated.
    """
    if avail is None:
        avail = graph.full_mask
    masks = graph.neighbor_masks
    out: list[int] = []

    def dfs(root_bit: int, allowed: int, v: int, path_mask: int, first: int) -> None:
        for w in iter_bits(masks[v] & allowed & ~path_mask):
            wbit = 1 << w
            new_mask = path_mask | wbit
            if masks[w] & root_bit and first < w and new_mask.bit_count() >= 3:
                out.append(new_mask)
                if len(out) > cycle_cap:
                    raise ResourceLimitError(
                        f"cycle enumeration exceeded cap of {cycle_cap}"
                    )
            dfs(root_bit, allowed, w, new_mask, first)

    for root in iter_bits(avail):
        root_bit = 1 << root
        allowed = avail & ~(root_bit | (root_bit - 1))
        for first in iter_bits(masks[root] & allowed):
            dfs(root_bit, allowed, first, root_bit | (1 << first), first)
    return out


def all_cycle_lengths(graph: Graph, cycle_cap: int = DEFAULT_CYCLE_CAP) -> set[int]:
    """Set of lengths of all cycles of G; empty iff G is a forest."""
    return {m.bit_count() for m in cycle_masks(graph, cycle_cap=cycle_cap)}
