"""
structure.py: Structural deciders for connectivity, cut vertices, blocks and regularity.
"""

import logging
from dataclasses import dataclass
from typing import Iterator

from src.graph_core import Graph, GraphError, bits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockDecomposition:
    """
    Attributes:
        cut_vertices (frozenset): Vertices lying in two or more blocks.
        blocks (tuple): Vertex sets of the maximal 2-connected subgraphs, bridges and
            isolated vertices, ordered by their sorted vertex tuples.
    """
    cut_vertices: frozenset
    blocks: tuple


def reach(G: Graph, start: int, allowed: int) -> int:
    """Bitset of vertices reachable from start while staying inside allowed."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= G.rows[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def component_masks(G: Graph, allowed: int) -> list[int]:
    """Connected components of G restricted to allowed, ordered by minimum vertex."""
    parts = []
    remaining = allowed
    while remaining:
        low = (remaining & -remaining).bit_length() - 1
        part = reach(G, low, allowed)
        parts.append(part)
        remaining &= ~part
    return parts


def is_connected(G: Graph) -> bool:
    return reach(G, 0, G.vertex_mask) == G.vertex_mask


def components_after_deletion(G: Graph, v: int) -> list[frozenset]:
    """
    Components of G - v, each reported as a vertex set, ordered by minimum element.

    Args:
        G (Graph): Source graph.
        v (int): Vertex to delete.

    Returns:
        list: Partition of V(G) \\ {v} into the vertex sets of the components of G - v.
    """
    if not 0 <= v < G.n:
        raise GraphError(f"Vertex {v} outside [0, {G.n})")
    return [frozenset(bits(part)) for part in component_masks(G, G.vertex_mask & ~(1 << v))]


def _lowpoint_dfs(G: Graph):
    """Iterative lowpoint DFS collecting cut vertices and edge-stack blocks."""
    disc = [-1] * G.n
    low = [0] * G.n
    cut = set()
    blocks = []
    clock = 0
    for root in range(G.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        if not G.rows[root]:
            blocks.append(frozenset([root]))
            continue
        root_children = 0
        edge_stack = []
        stack = [(root, -1, iter(G.neighbors(root)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(G.neighbors(w))))
                    if v == root:
                        root_children += 1
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cut.add(parent)
                block = set()
                while True:
                    a, b = edge_stack.pop()
                    block.update((a, b))
                    if (a, b) == (parent, v):
                        break
                blocks.append(frozenset(block))
        if root_children >= 2:
            cut.add(root)
    return cut, blocks


def cut_vertices(G: Graph) -> frozenset:
    """Cut vertices via a single lowpoint DFS pass."""
    cut, _ = _lowpoint_dfs(G)
    return frozenset(cut)


def cut_vertices_by_deletion(G: Graph) -> frozenset:
    """Definition-based oracle: v is a cut vertex iff deleting it adds a component."""
    base = len(component_masks(G, G.vertex_mask))
    found = set()
    for v in range(G.n):
        if len(component_masks(G, G.vertex_mask & ~(1 << v))) > base - (0 if G.rows[v] else 1):
            found.add(v)
    return frozenset(found)


def block_decomposition(G: Graph) -> BlockDecomposition:
    """
    Blocks and cut vertices of G (per component when G is disconnected).

    Returns:
        BlockDecomposition: Every edge lies in exactly one block; a vertex lies in two
            or more blocks iff it is a cut vertex.
    """
    cut, blocks = _lowpoint_dfs(G)
    ordered = tuple(sorted(blocks, key=lambda b: sorted(b)))
    return BlockDecomposition(cut_vertices=frozenset(cut), blocks=ordered)


def is_two_connected(G: Graph) -> bool:
    return G.n >= 3 and is_connected(G) and not cut_vertices(G)


def is_k_regular(G: Graph, k: int) -> bool:
    return all(row.bit_count() == k for row in G.rows)


def count_triangles(G: Graph) -> int:
    total = 0
    for u in range(G.n):
        higher = G.rows[u] >> (u + 1) << (u + 1)
        for v in bits(higher):
            total += (G.rows[v] & higher & ~((1 << (v + 1)) - 1)).bit_count()
    return total


def component_sizes_after_cut(G: Graph, k: int) -> list[tuple[int, list[int]]]:
    """For each cut vertex v, the sizes of the components of G - v.

    Used to assert the counting step: in a connected k-regular graph every component
    left by deleting a cut vertex has at least k+1 vertices.
    """
    result = []
    for v in sorted(cut_vertices(G)):
        sizes = [len(part) for part in components_after_deletion(G, v)]
        if any(size < k + 1 for size in sizes):
            logger.warning(f"Cut vertex {v} leaves a component smaller than k+1={k + 1}: {sizes}")
        result.append((v, sizes))
    return result


def separating_cuts(G: Graph, sizes) -> Iterator[tuple[int, list[frozenset]]]:
    """Cut vertices v whose deletion leaves components of exactly the given sizes, with those components.

    A bridge makes both of its ends cut vertices, so more than one v may qualify.
    """
    wanted = sorted(sizes)
    for v in sorted(cut_vertices(G)):
        parts = components_after_deletion(G, v)
        if sorted(len(part) for part in parts) == wanted:
            yield v, parts
