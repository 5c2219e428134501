"""
graph_core.py: Immutable small-graph representation for the hamilton-regular project.
Graphs hold at most 64 vertices with one integer bitset per adjacency row. Also provides
graph6 interchange, canonical labeling by individualization-refinement and isomorphism tests.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

logger = logging.getLogger(__name__)

MAX_VERTICES = 64
GRAPH6_HEADER = '>>graph6<<'


class GraphError(ValueError):
    """Raised for invalid graph input: capacity, loops, endpoints out of range, empty sets."""


class Graph6Error(GraphError):
    """Raised for malformed graph6 text."""


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..n-1.

    Attributes:
        n (int): Vertex count, 1 <= n <= 64.
        rows (tuple): rows[v] is the neighbor bitset of v.
    """
    n: int
    rows: tuple

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"Vertex count must be in [1, {MAX_VERTICES}], got {self.n}")
        if len(self.rows) != self.n:
            raise GraphError(f"Expected {self.n} adjacency rows, got {len(self.rows)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"Vertex {v} has neighbor bits outside [0, {self.n})")
            if row >> v & 1:
                raise GraphError(f"Loop at vertex {v}")
            for u in bits(row):
                if not self.rows[u] >> v & 1:
                    raise GraphError(f"Asymmetric adjacency between {v} and {u}")

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges (u, v) with u < v in ascending order."""
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u] >> (u + 1) << (u + 1))]

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple
    delta_max: int
    is_regular_of: int | None

    @property
    def delta_min(self) -> int:
        return min(self.degrees)

    def counts(self) -> dict[int, int]:
        """Map each degree to the number of vertices having it."""
        result: dict[int, int] = {}
        for d in self.degrees:
            result[d] = result.get(d, 0) + 1
        return dict(sorted(result.items()))


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical encoding of a graph.

    Attributes:
        bytes (bytes): Vertex count byte followed by the upper triangle of the
            canonically relabeled graph, column by column, packed big-endian.
        perm (tuple): perm[v] is the canonical label of source vertex v.
    """
    bytes: bytes
    perm: tuple


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """
    Build a graph from an edge list, collapsing duplicate edges.

    Args:
        n (int): Vertex count (1..64).
        edges (iterable): Vertex pairs (u, v) with u != v and both in [0, n).

    Returns:
        Graph: The graph containing exactly the given edges.

    Raises:
        GraphError: On capacity violations, loops or out-of-range endpoints.
    """
    if not isinstance(n, int) or not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"Vertex count must be in [1, {MAX_VERTICES}], got {n}")
    rows = [0] * n
    for edge in edges:
        u, v = edge
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"Edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise GraphError(f"Loop edge at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def empty_graph(n: int) -> Graph:
    return build_graph(n, [])


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"A cycle needs at least 3 vertices, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complement(G: Graph) -> Graph:
    full = G.vertex_mask
    return Graph(G.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(G.rows)))


def add_edges(G: Graph, pairs: Iterable[Sequence[int]]) -> Graph:
    return build_graph(G.n, G.edges() + [tuple(p) for p in pairs])


def remove_edges(G: Graph, pairs: Iterable[Sequence[int]]) -> Graph:
    rows = list(G.rows)
    for u, v in pairs:
        if not G.has_edge(u, v):
            raise GraphError(f"Cannot remove missing edge ({u}, {v})")
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
    return Graph(G.n, tuple(rows))


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """Union with H's vertices shifted up by G.n."""
    if G.n + H.n > MAX_VERTICES:
        raise GraphError(f"Union of {G.n} and {H.n} vertices exceeds capacity {MAX_VERTICES}")
    return Graph(G.n + H.n, G.rows + tuple(row << G.n for row in H.rows))


def relabel(G: Graph, perm: Sequence[int]) -> Graph:
    """Return the graph in which vertex v of G is renamed perm[v]."""
    if sorted(perm) != list(range(G.n)):
        raise GraphError(f"Relabeling is not a permutation of 0..{G.n - 1}")
    rows = [0] * G.n
    for v, row in enumerate(G.rows):
        rows[perm[v]] = mask_of(perm[u] for u in bits(row))
    return Graph(G.n, tuple(rows))


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, tuple]:
    """
    Induced subgraph on S, relabeled 0..|S|-1 in ascending vertex order.

    Args:
        G (Graph): Source graph.
        S (iterable): Vertex set.

    Returns:
        tuple: (subgraph, index_map) where index_map[i] is the source vertex of new vertex i.

    Raises:
        GraphError: If S is empty or contains a vertex outside G.
    """
    chosen = sorted(set(S))
    if not chosen:
        raise GraphError("Induced subgraph needs a nonempty vertex set")
    if chosen[0] < 0 or chosen[-1] >= G.n:
        raise GraphError(f"Vertex set {chosen} is not contained in [0, {G.n})")
    position = {v: i for i, v in enumerate(chosen)}
    sub_mask = mask_of(chosen)
    rows = tuple(mask_of(position[u] for u in bits(G.rows[v] & sub_mask)) for v in chosen)
    return Graph(len(chosen), rows), tuple(chosen)


def degree_profile(G: Graph) -> DegreeProfile:
    degs = tuple(G.degrees())
    regular = degs[0] if all(d == degs[0] for d in degs) else None
    return DegreeProfile(degrees=degs, delta_max=max(degs), is_regular_of=regular)


# graph6 interchange

def _encode_size(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    return '~' + ''.join(chr(63 + (n >> shift & 63)) for shift in (12, 6, 0))


def _upper_triangle_bits(rows: Sequence[int], n: int) -> list[int]:
    return [rows[i] >> j & 1 for j in range(1, n) for i in range(j)]


def _pack_sextets(bit_list: list[int]) -> list[int]:
    padded = bit_list + [0] * (-len(bit_list) % 6)
    return [int(''.join(map(str, padded[i:i + 6])), 2) for i in range(0, len(padded), 6)]


def graph6_encode(G: Graph) -> str:
    """Encode G as a graph6 line (without header or newline)."""
    body = ''.join(chr(63 + x) for x in _pack_sextets(_upper_triangle_bits(G.rows, G.n)))
    return _encode_size(G.n) + body


def graph6_decode(line: str) -> Graph:
    """
    Decode one graph6 line.

    Args:
        line (str): graph6 text, optionally prefixed by '>>graph6<<' and followed by whitespace.

    Returns:
        Graph: The decoded graph.

    Raises:
        Graph6Error: On a malformed size header, characters outside [63, 126],
            a wrong body length or nonzero padding bits.
    """
    text = line.strip()
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER):]
    if not text:
        raise Graph6Error("Empty graph6 line")
    for pos, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"Character {ch!r} at position {pos} is outside the graph6 range [63, 126]")
    values = [ord(ch) - 63 for ch in text]
    if values[0] == 63:
        if len(values) < 4 or values[1] == 63:
            raise Graph6Error("Unsupported or truncated graph6 size header")
        n = values[1] << 12 | values[2] << 6 | values[3]
        body = values[4:]
    else:
        n = values[0]
        body = values[1:]
    if not 1 <= n <= MAX_VERTICES:
        raise Graph6Error(f"graph6 vertex count {n} outside supported range [1, {MAX_VERTICES}]")
    nbits = n * (n - 1) // 2
    if len(body) != -(-nbits // 6):
        raise Graph6Error(f"graph6 body has {len(body)} characters, expected {-(-nbits // 6)} for n={n}")
    stream = [x >> (5 - i) & 1 for x in body for i in range(6)]
    if any(stream[nbits:]):
        raise Graph6Error("graph6 padding bits are nonzero")
    rows = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if stream[pos]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    return Graph(n, tuple(rows))


# canonical labeling

def _encode_relabeled(G: Graph, perm: Sequence[int]) -> bytes:
    # column j contributes j bits: its adjacency to labels 0..j-1
    rows = [0] * G.n
    for v, row in enumerate(G.rows):
        rows[perm[v]] = mask_of(perm[u] for u in bits(row))
    acc = 0
    for j in range(1, G.n):
        acc = acc << j | rows[j] & ((1 << j) - 1)
    nbits = G.n * (G.n - 1) // 2
    return bytes([G.n]) + acc.to_bytes(-(-nbits // 8), 'big')


def _refine(G: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Refine an ordered partition to the coarsest equitable refinement.

    The new cell order depends only on cell order and neighbour counts, so the
    result commutes with relabeling.
    """
    while True:
        masks = [mask_of(cell) for cell in cells]
        split: list[list[int]] = []
        for cell in cells:
            if len(cell) == 1:
                split.append(cell)
                continue
            keyed = sorted((tuple((G.rows[v] & m).bit_count() for m in masks), v) for v in cell)
            group = [keyed[0][1]]
            for (prev_key, _), (key, v) in zip(keyed, keyed[1:]):
                if key == prev_key:
                    group.append(v)
                else:
                    split.append(group)
                    group = [v]
            split.append(group)
        if len(split) == len(cells):
            return cells
        cells = split


def _orbit_roots(n: int, generators: list[tuple]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gen in generators:
        for v in range(n):
            a, b = find(v), find(gen[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canonical_form(G: Graph) -> CanonicalForm:
    """
    Canonical form by individualization-refinement.

    The initial partition groups vertices by ascending degree. Search branches on the
    first smallest non-singleton cell in ascending vertex order and keeps the
    lexicographically least leaf encoding. Automorphisms discovered at equal leaves
    prune sibling branches lying in the same orbit.

    Args:
        G (Graph): Graph to canonicalize.

    Returns:
        CanonicalForm: Encoding and the relabeling that produces it.
    """
    degs = G.degrees()
    cells = [[v for v in range(G.n) if degs[v] == d] for d in sorted(set(degs))]
    best: list = [None, None]
    automorphisms: list[tuple] = []

    def search(partition, fixed):
        partition = _refine(G, partition)
        if len(partition) == G.n:
            perm = [0] * G.n
            for label, (v,) in enumerate(partition):
                perm[v] = label
            code = _encode_relabeled(G, perm)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, perm
            elif code == best[0]:
                inverse = [0] * G.n
                for v, label in enumerate(best[1]):
                    inverse[label] = v
                automorphisms.append(tuple(inverse[perm[v]] for v in range(G.n)))
            return
        target = min(range(len(partition)), key=lambda i: (len(partition[i]) == 1, len(partition[i]), i))
        cell = partition[target]
        explored: list[int] = []
        for w in sorted(cell):
            stabilizer = [g for g in automorphisms if all(g[x] == x for x in fixed)]
            if stabilizer and explored:
                roots = _orbit_roots(G.n, stabilizer)
                if any(roots[w] == roots[u] for u in explored):
                    continue
            rest = [v for v in cell if v != w]
            search(partition[:target] + [[w], rest] + partition[target + 1:], fixed + [w])
            explored.append(w)

    search(cells, [])
    return CanonicalForm(bytes=best[0], perm=tuple(best[1]))


def canonical_graph(G: Graph) -> Graph:
    """The canonically relabeled copy of G."""
    return relabel(G, canonical_form(G).perm)


def are_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or sorted(G.degrees()) != sorted(H.degrees()):
        return False
    return canonical_form(G).bytes == canonical_form(H).bytes


def are_isomorphic_bruteforce(G: Graph, H: Graph) -> bool:
    """
    Exhaustive isomorphism test used as an oracle for small graphs.

    Extends a partial bijection vertex by vertex, trying every degree-compatible image
    and checking adjacency against all previously mapped vertices.
    """
    if G.n != H.n or G.edge_count() != H.edge_count():
        return False
    gdeg, hdeg = G.degrees(), H.degrees()
    if sorted(gdeg) != sorted(hdeg):
        return False
    image = [-1] * G.n

    def extend(v: int, used: int) -> bool:
        if v == G.n:
            return True
        for w in range(H.n):
            if used >> w & 1 or hdeg[w] != gdeg[v]:
                continue
            if all(G.has_edge(u, v) == H.has_edge(image[u], w) for u in range(v)):
                image[v] = w
                if extend(v + 1, used | 1 << w):
                    return True
        image[v] = -1
        return False

    return extend(0, 0)

