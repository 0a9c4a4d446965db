"""Graph family specifications and their containment / packing oracles.

A family is one of:

* ``SinglePattern(F)``: all copies of a fixed pattern graph F,
* ``Generator(kind, k)``: a named standard graph (clique, path, cycle, star),
* ``AllCycles()``: every cycle, of any length,
* ``Scaled(t, inner)``: disjoint unions of t pairwise vertex-disjoint
  inner-family copies.

Containment is subgraph containment, not induced-subgraph containment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Union

from .errors import ResourceLimitError, UnsupportedFamilyError
from .graph_core import (
    Graph,
    VertexSet,
    build_graph,
    cycle_masks,
    find_cycle_mask,
    iter_bits,
)

CLIQUE = "clique"
PATH = "path"
CYCLE = "cycle"
STAR = "star"
_KINDS = (CLIQUE, PATH, CYCLE, STAR)

DEFAULT_NODE_BUDGET = 10**8
_BUDGET_ENV = "ISOLATION_LAB_NODE_BUDGET"


def resolve_node_budget(value: int | None = None) -> int:
    """Explicit value, else the ISOLATION_LAB_NODE_BUDGET env var, else default."""
    if value is not None:
        return value
    env = os.environ.get(_BUDGET_ENV)
    return int(env) if env else DEFAULT_NODE_BUDGET


class Budget:
    """Mutable search-node counter with a hard cap."""

    __slots__ = ("limit", "spent")

    def __init__(self, limit: int | None = None):
        self.limit = resolve_node_budget(limit)
        self.spent = 0

    def spend(self, amount: int = 1) -> None:
        self.spent += amount
        if self.spent > self.limit:
            raise ResourceLimitError(f"search exceeded node budget of {self.limit}")


@dataclass(frozen=True)
class SinglePattern:
    pattern: Graph

    def __post_init__(self) -> None:
        if self.pattern.order == 0:
            raise ValueError("pattern graph must be non-null")


@dataclass(frozen=True)
class Generator:
    kind: str
    k: int

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.k < 1:
            raise ValueError("generator parameter k must be >= 1")
        if self.kind == CYCLE and self.k < 3:
            raise ValueError("cycles need k >= 3")


@dataclass(frozen=True)
class AllCycles:
    pass


@dataclass(frozen=True)
class Scaled:
    t: int
    inner: "FamilySpec"

    def __post_init__(self) -> None:
        if self.t < 1:
            raise ValueError("scale factor t must be >= 1")
        if isinstance(self.inner, Scaled):
            # Scaled of Scaled collapses by multiplying the factors.
            object.__setattr__(self, "t", self.t * self.inner.t)
            object.__setattr__(self, "inner", self.inner.inner)


FamilySpec = Union[SinglePattern, Generator, AllCycles, Scaled]


def generator_graph(kind: str, k: int) -> Graph:
    """The standard graph K_k, P_k, C_k or the star on k+1 vertices."""
    if kind == CLIQUE:
        return build_graph(k, combinations(range(k), 2))
    if kind == PATH:
        return build_graph(k, ((i, i + 1) for i in range(k - 1)))
    if kind == CYCLE:
        if k < 3:
            raise ValueError("cycles need k >= 3")
        return build_graph(k, ((i, (i + 1) % k) for i in range(k)))
    if kind == STAR:
        return build_graph(k + 1, ((0, i) for i in range(1, k + 1)))
    raise ValueError(f"unknown generator kind {kind!r}")


@lru_cache(maxsize=None)
def base_pattern(spec: FamilySpec) -> Graph:
    """Concrete pattern graph of a SinglePattern or Generator spec."""
    if isinstance(spec, SinglePattern):
        return spec.pattern
    if isinstance(spec, Generator):
        return generator_graph(spec.kind, spec.k)
    raise UnsupportedFamilyError(f"{spec!r} has no single pattern graph")


def family_label(spec: FamilySpec) -> str:
    """Compact text form of a family, matching the CLI syntax."""
    if isinstance(spec, Generator):
        letter = {CLIQUE: "K", PATH: "P", CYCLE: "C", STAR: "S"}[spec.kind]
        return f"{letter}{spec.k}"
    if isinstance(spec, AllCycles):
        return "cycles"
    if isinstance(spec, Scaled):
        return f"{spec.t}*{family_label(spec.inner)}"
    pattern = spec.pattern
    edges = ",".join(f"{u}-{v}" for u, v in sorted(pattern.edges))
    return f"pattern[n{pattern.order}:{edges}]"


def parse_family(text: str) -> FamilySpec:
    """Parse the textual family syntax: [t*]base.

    Bases: K<k>, P<k>, C<k>, S<k> (star with k leaves), "cycles", or
    "file:<path>" naming an edge-list pattern file.
    """
    text = text.strip()
    scale = 1
    if "*" in text:
        head, _, rest = text.partition("*")
        try:
            scale = int(head)
        except ValueError:
            raise ValueError(f"bad scale factor {head!r} in family {text!r}") from None
        if scale < 1:
            raise ValueError(f"scale factor must be >= 1 in family {text!r}")
        text = rest.strip()
    base: FamilySpec
    if text == "cycles":
        base = AllCycles()
    elif text.startswith("file:"):
        from .graph_io import read_graph

        base = SinglePattern(read_graph(text[len("file:"):]))
    elif text[:1] in "KPCS" and text[1:].isdigit():
        kind = {"K": CLIQUE, "P": PATH, "C": CYCLE, "S": STAR}[text[0]]
        base = Generator(kind, int(text[1:]))
    else:
        raise ValueError(f"unrecognized family token {text!r}")
    return Scaled(scale, base) if scale > 1 else base


# --------------------------------------------------------------------------
# Backtracking subgraph isomorphism
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _pattern_order(pattern: Graph) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Search order for pattern vertices plus per-position placed neighbors.

    Vertices are ordered to keep the partial match connected where
    possible: each step picks the unplaced vertex with the most already
    placed neighbors, breaking ties by degree then by index.
    """
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < pattern.order:
        best = max(
            (v for v in range(pattern.order) if v not in placed),
            key=lambda v: (
                sum(1 for w in pattern.adjacency[v] if w in placed),
                pattern.degree(v),
                -v,
            ),
        )
        order.append(best)
        placed.add(best)
    position = {p: i for i, p in enumerate(order)}
    earlier = tuple(
        tuple(q for q in pattern.adjacency[p] if position[q] < i)
        for i, p in enumerate(order)
    )
    degrees = tuple(pattern.degree(p) for p in order)
    return tuple(order), earlier, degrees


def _iter_embedding_masks(
    graph: Graph,
    avail: int,
    pattern: Graph,
    budget: Budget,
    exact_degree: bool = False,
):
    """Yield target-vertex masks of embeddings of ``pattern`` into ``graph``.

    Only vertices in ``avail`` are used. Distinct embeddings may yield the
    same mask; callers that need distinct placements deduplicate.
    """
    if pattern.order > avail.bit_count():
        return
    order, earlier, degrees = _pattern_order(pattern)
    nbr = graph.neighbor_masks
    assign: dict[int, int] = {}

    def rec(i: int, used: int):
        budget.spend()
        if i == len(order):
            yield used
            return
        p = order[i]
        cand = avail & ~used
        for q in earlier[i]:
            cand &= nbr[assign[q]]
        need = degrees[i]
        for v in iter_bits(cand):
            dv = (nbr[v] & avail).bit_count()
            if dv < need or (exact_degree and dv != need):
                continue
            assign[p] = v
            yield from rec(i + 1, used | (1 << v))
        assign.pop(p, None)

    yield from rec(0, 0)


def _find_pattern_mask(
    graph: Graph, avail: int, pattern: Graph, budget: Budget
) -> int | None:
    for mask in _iter_embedding_masks(graph, avail, pattern, budget):
        return mask
    return None


def are_isomorphic(first: Graph, second: Graph) -> bool:
    """Exact isomorphism test by backtracking; intended for desk scale."""
    if first.order != second.order or first.size != second.size:
        return False
    if sorted(first.degree(v) for v in first.vertices()) != sorted(
        second.degree(v) for v in second.vertices()
    ):
        return False
    if first.order == 0:
        return True
    budget = Budget()
    return (
        _find_pattern_mask_exact(first, first.full_mask, second, budget) is not None
    )


def _find_pattern_mask_exact(
    graph: Graph, avail: int, pattern: Graph, budget: Budget
) -> int | None:
    for mask in _iter_embedding_masks(graph, avail, pattern, budget, exact_degree=True):
        return mask
    return None


# --------------------------------------------------------------------------
# Containment and packing
# --------------------------------------------------------------------------


def find_copy_mask(
    graph: Graph, spec: FamilySpec, avail: int | None = None, budget: Budget | None = None
) -> int | None:
    """Vertex mask of some family copy inside ``avail``, or None.

    For Scaled(t, inner) the mask is the union of t disjoint inner copies.
    """
    if avail is None:
        avail = graph.full_mask
    if budget is None:
        budget = Budget()
    if isinstance(spec, AllCycles):
        budget.spend()
        return find_cycle_mask(graph, avail)
    if isinstance(spec, Scaled):
        count, chosen = _pack(graph, spec.inner, avail, budget, stop_at=spec.t)
        if count >= spec.t:
            union = 0
            for m in chosen:
                union |= m
            return union
        return None
    return _find_pattern_mask(graph, avail, base_pattern(spec), budget)


def contains_family(graph: Graph, spec: FamilySpec, node_budget: int | None = None) -> bool:
    """True iff G contains a copy of some member of the family."""
    return find_copy_mask(graph, spec, budget=Budget(node_budget)) is not None


def find_family_copy(graph: Graph, spec: FamilySpec) -> VertexSet | None:
    mask = find_copy_mask(graph, spec)
    if mask is None:
        return None
    return VertexSet.from_mask(mask, graph.order)


def _candidate_masks(
    graph: Graph, spec: FamilySpec, avail: int, budget: Budget
) -> list[int]:
    """Distinct vertex masks that host a copy of the (unscaled) family."""
    if isinstance(spec, AllCycles):
        seen = set(cycle_masks(graph, avail))
        budget.spend(len(seen))
        return sorted(seen)
    pattern = base_pattern(spec)
    if pattern.order == 1:
        return [1 << v for v in iter_bits(avail)]
    if pattern.order == 2 and pattern.size == 1:
        return sorted(
            (1 << u) | (1 << v)
            for u, v in graph.edges
            if avail >> u & 1 and avail >> v & 1
        )
    seen = set()
    for mask in _iter_embedding_masks(graph, avail, pattern, budget):
        seen.add(mask)
    return sorted(seen)


def _pack(
    graph: Graph,
    spec: FamilySpec,
    avail: int,
    budget: Budget,
    stop_at: int | None = None,
) -> tuple[int, list[int]]:
    """Maximum number of pairwise disjoint family copies inside ``avail``.

    Branch and bound over candidate placements; stops early once
    ``stop_at`` disjoint copies are found. Returns (count, chosen masks).
    """
    if isinstance(spec, Scaled):
        raise ValueError("packing of a scaled family is not defined")
    candidates = _candidate_masks(graph, spec, avail, budget)
    best = 0
    best_sel: list[int] = []
    sel: list[int] = []

    def rec(start: int, used: int) -> bool:
        nonlocal best, best_sel
        budget.spend()
        if len(sel) > best:
            best = len(sel)
            best_sel = sel.copy()
            if stop_at is not None and best >= stop_at:
                return True
        if len(sel) + (len(candidates) - start) <= best:
            return False
        for j in range(start, len(candidates)):
            cand = candidates[j]
            if cand & used:
                continue
            sel.append(cand)
            stop = rec(j + 1, used | cand)
            sel.pop()
            if stop:
                return True
        return False

    rec(0, 0)
    return best, best_sel


def packing_number(graph: Graph, spec: FamilySpec, node_budget: int | None = None) -> int:
    """Maximum number of pairwise vertex-disjoint family copies in G."""
    count, _ = _pack(graph, spec, graph.full_mask, Budget(node_budget))
    return count


def packing_with_witness(
    graph: Graph, spec: FamilySpec, node_budget: int | None = None
) -> tuple[int, list[VertexSet], int]:
    """Packing number, one optimal family of disjoint copies, and node count."""
    budget = Budget(node_budget)
    count, chosen = _pack(graph, spec, graph.full_mask, budget)
    witness = [VertexSet.from_mask(m, graph.order) for m in chosen]
    return count, witness, budget.spent


def packing_number_exhaustive(graph: Graph, spec: FamilySpec) -> int:
    """Plain exhaustive packing oracle: recurse over all disjoint subsets
    hosting a copy. Exponential; cross-check use only (roughly <= 8 vertices).
    """
    if isinstance(spec, Scaled):
        raise ValueError("packing of a scaled family is not defined")
    budget = Budget()
    if isinstance(spec, AllCycles):
        sizes = range(3, graph.order + 1)
    else:
        k = base_pattern(spec).order
        sizes = range(k, k + 1)

    def best(avail: int) -> int:
        result = 0
        members = list(iter_bits(avail))
        for size in sizes:
            if size > len(members):
                break
            for subset in combinations(members, size):
                mask = 0
                for v in subset:
                    mask |= 1 << v
                if find_copy_mask(graph, spec, mask, budget) is not None:
                    result = max(result, 1 + best(avail & ~mask))
        return result

    return best(graph.full_mask)


@lru_cache(maxsize=None)
def family_domination(spec: FamilySpec) -> int:
    """Largest domination number over the family's members.

    Closed forms for the generators; the exact solver for a concrete
    pattern. Unbounded or scale-relative families are rejected.
    """
    if isinstance(spec, Generator):
        if spec.kind in (CLIQUE, STAR):
            return 1
        # paths and cycles on k vertices: ceil(k / 3)
        return -(-spec.k // 3)
    if isinstance(spec, SinglePattern):
        from .exact_solvers import domination_number

        return domination_number(spec.pattern).value
    if isinstance(spec, AllCycles):
        raise UnsupportedFamilyError("domination over all cycles is unbounded")
    raise UnsupportedFamilyError(
        "family domination refers to the base family, not a scaled one"
    )
