"""
hamilton.py: Exact Hamiltonian cycle / path deciders returning verifiable certificates.

Two engines answer every query:
- subset dynamic programming over (visited set, endpoint) states, vectorized with numpy,
  for graphs up to dp_max_n vertices;
- depth-first backtracking on bitsets with individually toggleable pruning rules,
  for graphs up to 64 vertices.
Search order is ascending vertex index everywhere, so certificates are reproducible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from src.graph_core import Graph, GraphError, bits, induced_subgraph, mask_of
from src.structure import component_masks, components_after_deletion, cut_vertices, is_connected, is_two_connected

logger = logging.getLogger(__name__)

ENGINES = ('auto', 'dp', 'backtrack')
DP_CAPACITY = 26


@dataclass(frozen=True)
class Certificate:
    """
    Attributes:
        kind (str): 'cycle' or 'path'.
        order (tuple): Vertex sequence; a cycle closes from the last vertex to the first.
        spanning (bool): Whether the sequence must cover every vertex.
    """
    kind: str
    order: tuple
    spanning: bool = True


@dataclass(frozen=True)
class PruneRules:
    """Admissible prunes for the backtracking engine.

    degree: an unvisited vertex needs 2 available neighbours (cycle) or 1 (path).
    connectivity: the unvisited region must be connected and touch the path end.
    dead_ends: in path mode at most one unvisited vertex may have a single available neighbour.
    articulation: in path mode no vertex of the remaining region may split it into 3+ parts;
        in cycle mode the graph must be 2-connected.
    """
    degree: bool = True
    connectivity: bool = True
    dead_ends: bool = True
    articulation: bool = True


@dataclass(frozen=True)
class SolverSettings:
    engine: str = 'auto'
    dp_max_n: int = 24
    prunes: PruneRules = field(default_factory=PruneRules)

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"Unknown engine {self.engine!r}; expected one of {ENGINES}")
        if not 1 <= self.dp_max_n <= DP_CAPACITY:
            raise ValueError(f"dp_max_n must be in [1, {DP_CAPACITY}], got {self.dp_max_n}")

    @classmethod
    def from_config(cls, section: dict | None) -> 'SolverSettings':
        section = section or {}
        prunes = PruneRules(**section.get('prunes', {}))
        return cls(engine=section.get('engine', 'auto'), dp_max_n=section.get('dp_max_n', 24), prunes=prunes)


DEFAULT_SETTINGS = SolverSettings()


def verify_certificate(G: Graph, c: Certificate, required: Iterable[int] | None = None) -> bool:
    """
    Check a certificate against G.

    Args:
        G (Graph): The graph.
        c (Certificate): Claimed cycle or path.
        required (iterable, optional): Vertices the sequence must contain.

    Returns:
        bool: True iff the vertices are distinct and in range, consecutive vertices are
            adjacent, a cycle has at least 3 vertices and closes, a spanning certificate
            covers V(G), and every required vertex appears.
    """
    order = list(c.order)
    if c.kind not in ('cycle', 'path') or not order:
        return False
    if any(not 0 <= v < G.n for v in order) or len(set(order)) != len(order):
        return False
    if any(not G.has_edge(a, b) for a, b in zip(order, order[1:])):
        return False
    if c.kind == 'cycle' and (len(order) < 3 or not G.has_edge(order[-1], order[0])):
        return False
    if c.spanning and len(order) != G.n:
        return False
    if required is not None and not set(required) <= set(order):
        return False
    return True


def _use_dp(G: Graph, settings: SolverSettings) -> bool:
    if settings.engine == 'dp':
        if G.n > settings.dp_max_n:
            raise ValueError(f"DP engine limited to {settings.dp_max_n} vertices, graph has {G.n}")
        return True
    return settings.engine == 'auto' and G.n <= settings.dp_max_n


def _checked(G: Graph, cert: Certificate | None) -> Certificate | None:
    if cert is not None and not verify_certificate(G, cert):
        raise RuntimeError(f"Solver produced an invalid certificate {cert.order} for {G!r}")
    return cert


# subset dynamic programming

def endpoint_table(G: Graph, sources: Iterable[int]) -> np.ndarray:
    """
    table[mask] is the bitset of vertices e such that some path starting at a source
    visits exactly the vertices of mask and ends at e.
    """
    n = G.n
    if n > DP_CAPACITY:
        raise ValueError(f"DP engine capacity is {DP_CAPACITY} vertices, graph has {n}")
    size = 1 << n
    table = np.zeros(size, dtype=np.uint32)
    for s in sources:
        table[1 << s] = 1 << s
    masks = np.arange(size, dtype=np.uint32)
    popcount = np.zeros(size, dtype=np.uint8)
    for b in range(n):
        popcount[1 << b:1 << (b + 1)] = popcount[:1 << b] + 1
    adjacency = [np.uint32(row) for row in G.rows]
    for p in range(2, n + 1):
        layer = masks[popcount == p]
        for v in range(n):
            bit = np.uint32(1 << v)
            members = layer[(layer & bit) != 0]
            if members.size == 0:
                continue
            hit = (table[members ^ bit] & adjacency[v]) != 0
            if hit.any():
                table[members[hit]] |= bit
    return table


def _walk_back(G: Graph, table: np.ndarray, end: int, mask: int) -> list[int]:
    order = [end]
    while mask & (mask - 1):
        prev = mask ^ (1 << end)
        candidates = int(table[prev]) & G.rows[end]
        end = (candidates & -candidates).bit_length() - 1
        order.append(end)
        mask = prev
    return order[::-1]


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _dp_cycle(G: Graph) -> list[int] | None:
    table = endpoint_table(G, [0])
    ends = int(table[G.vertex_mask]) & G.rows[0]
    return _walk_back(G, table, _lowest(ends), G.vertex_mask) if ends else None


def _dp_path(G: Graph, sources: list[int]) -> list[int] | None:
    table = endpoint_table(G, sources)
    ends = int(table[G.vertex_mask])
    return _walk_back(G, table, _lowest(ends), G.vertex_mask) if ends else None


# backtracking

def _splits_into_three(G: Graph, region: int) -> bool:
    """True if some vertex of the region leaves 3 or more parts when deleted from it."""
    sub, _ = induced_subgraph(G, bits(region))
    return any(len(components_after_deletion(sub, c)) >= 3 for c in cut_vertices(sub))


def _feasible(G: Graph, start: int, end: int, remaining: int, cycle: bool, rules: PruneRules) -> bool:
    if not remaining:
        return True
    available = remaining | 1 << end | (1 << start if cycle else 0)
    if rules.degree or rules.dead_ends:
        need = 2 if cycle else 1
        single = 0
        for u in bits(remaining):
            count = (G.rows[u] & available).bit_count()
            if rules.degree and count < need:
                return False
            if count == 1:
                single += 1
        if rules.dead_ends and not cycle and single > 1:
            return False
    if rules.connectivity:
        if not G.rows[end] & remaining:
            return False
        if cycle and not G.rows[start] & remaining:
            return False
        if len(component_masks(G, remaining)) > 1:
            return False
    if rules.articulation and not cycle and _splits_into_three(G, remaining | 1 << end):
        return False
    return True


def _backtrack(G: Graph, start: int, cycle: bool, rules: PruneRules) -> list[int] | None:
    full = G.vertex_mask
    order = [start]

    def extend(end: int, visited: int) -> bool:
        if visited == full:
            return not cycle or G.has_edge(end, start)
        remaining = full & ~visited
        if not _feasible(G, start, end, remaining, cycle, rules):
            return False
        for w in bits(G.rows[end] & remaining):
            order.append(w)
            if extend(w, visited | 1 << w):
                return True
            order.pop()
        return False

    return order if extend(start, 1 << start) else None


# public queries

def hamiltonian_cycle(G: Graph, settings: SolverSettings = DEFAULT_SETTINGS) -> Certificate | None:
    """
    Find a Hamiltonian cycle of G.

    Args:
        G (Graph): The graph.
        settings (SolverSettings): Engine choice and pruning rules.

    Returns:
        Certificate | None: A verified cycle certificate, or None if G is not Hamiltonian.
    """
    if G.n < 3:
        return None
    if _use_dp(G, settings):
        order = _dp_cycle(G)
    else:
        if settings.prunes.articulation and not is_two_connected(G):
            return None
        order = _backtrack(G, 0, True, settings.prunes)
    return _checked(G, Certificate('cycle', tuple(order))) if order else None


def hamiltonian_path(G: Graph, settings: SolverSettings = DEFAULT_SETTINGS) -> Certificate | None:
    """Find a Hamiltonian path of G, trying start vertices in ascending order."""
    if _use_dp(G, settings):
        order = _dp_path(G, list(range(G.n)))
    else:
        order = None
        if is_connected(G):
            for s in range(G.n):
                order = _backtrack(G, s, False, settings.prunes)
                if order:
                    break
    return _checked(G, Certificate('path', tuple(order))) if order else None


def hamiltonian_path_from(G: Graph, v: int, settings: SolverSettings = DEFAULT_SETTINGS) -> Certificate | None:
    """Find a Hamiltonian path whose first vertex is v."""
    if not 0 <= v < G.n:
        raise GraphError(f"Vertex {v} outside [0, {G.n})")
    if _use_dp(G, settings):
        order = _dp_path(G, [v])
    else:
        order = _backtrack(G, v, False, settings.prunes) if is_connected(G) else None
    return _checked(G, Certificate('path', tuple(order))) if order else None


def cycle_through(G: Graph, S: Iterable[int]) -> Certificate | None:
    """
    Find a cycle, not necessarily spanning, that visits every vertex of S.

    The cycle grows from min(S); a branch is cut when the required vertices still
    unvisited do not share one component of the unvisited region that touches both
    the path end and the start. An empty S asks for any cycle.

    Args:
        G (Graph): The graph.
        S (iterable): Required vertex set.

    Returns:
        Certificate | None: Cycle certificate listing the cycle's vertices in order.
    """
    required = sorted(set(S))
    if any(not 0 <= v < G.n for v in required):
        raise GraphError(f"Required set {required} is not contained in [0, {G.n})")
    if not required:
        for s in range(G.n):
            found = cycle_through(G, [s])
            if found:
                return found
        return None
    start = required[0]
    need_mask = mask_of(required)
    full = G.vertex_mask
    order = [start]

    def extend(end: int, visited: int) -> bool:
        if len(order) >= 3 and G.has_edge(end, start) and not need_mask & ~visited:
            return True
        remaining = full & ~visited
        need = need_mask & ~visited
        if need:
            region = next(part for part in component_masks(G, remaining) if part & need & -need)
            if need & ~region or not G.rows[end] & region or not G.rows[start] & region:
                return False
        for w in bits(G.rows[end] & remaining):
            order.append(w)
            if extend(w, visited | 1 << w):
                return True
            order.pop()
        return False

    if not extend(start, 1 << start):
        return None
    cert = Certificate('cycle', tuple(order), spanning=len(order) == G.n)
    if not verify_certificate(G, cert, required):
        raise RuntimeError(f"cycle_through produced an invalid certificate {cert.order}")
    return cert
