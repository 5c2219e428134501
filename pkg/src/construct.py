"""
construct.py: Deterministic generators for the extremal regular graph families and
structural membership deciders for the two characterization families.

Labeling convention: a clique side occupies the lowest indices of its block, a deleted
matching is always {(0,1), (2,3), ...} on the lowest indices of that block, and the glue
vertex carries the highest index of its side.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional

from src.graph_core import (
    Graph, bits, build_graph, complete_graph, degree_profile, disjoint_union, empty_graph,
    induced_subgraph, remove_edges,
)
from src.structure import is_connected, is_k_regular, separating_cuts

logger = logging.getLogger(__name__)

FAMILIES = (
    'F_rt', 'Fprime_rt', 'FamilyF', 'H_rt', 'Hprime_rt', 'FamilyH', 'NoPathF', 'NoPathH',
    'Petersen', 'PetersenPrime', 'Circulant', 'GeneralizedF', 'GeneralizedH', 'GeneralizedNoPath',
)


class FamilyParamsError(ValueError):
    """Raised when construction parameters fall outside a family's valid range."""


@dataclass(frozen=True)
class ComplementShape:
    """
    Spanning subgraph deleted from K_{2r+3} to form an H'_{r,t} side.

    Attributes:
        paths (tuple): Vertex counts of the disjoint paths (each at least 2), non-increasing.
        cycles (tuple): Lengths of the disjoint cycles (each at least 3), non-increasing.
    """
    paths: tuple
    cycles: tuple = ()

    @property
    def vertex_count(self) -> int:
        return sum(self.paths) + sum(self.cycles)

    def edges(self) -> list[tuple[int, int]]:
        """Edges of the shape laid out paths first on the lowest indices, then cycles."""
        result = []
        start = 0
        for size in self.paths:
            result.extend((start + i, start + i + 1) for i in range(size - 1))
            start += size
        for size in self.cycles:
            result.extend((start + i, start + (i + 1) % size) for i in range(size))
            start += size
        return result

    def interior_vertices(self) -> list[int]:
        """Vertices of degree 2 in the shape: inner path vertices and every cycle vertex."""
        result = []
        start = 0
        for size in self.paths:
            result.extend(range(start + 1, start + size - 1))
            start += size
        result.extend(range(start, self.vertex_count))
        return result

    def describe(self) -> str:
        paths = '+'.join(f"P{p}" for p in self.paths)
        cycles = ''.join(f"+C{c}" for c in self.cycles)
        return paths + cycles


@dataclass(frozen=True)
class FamilyParams:
    family: str
    r: Optional[int] = None
    t: Optional[int] = None
    variant: Optional[ComplementShape] = None
    n: Optional[int] = None
    k: Optional[int] = None
    connection_set: tuple = field(default_factory=tuple)

    def label(self) -> str:
        parts = [f"{name}={value}" for name, value in (('r', self.r), ('t', self.t), ('k', self.k), ('n', self.n))
                 if value is not None]
        if self.connection_set:
            parts.append(f"S={list(self.connection_set)}")
        if self.variant is not None:
            parts.append(f"variant={self.variant.describe()}")
        return f"{self.family}({', '.join(parts)})"


def _matching(count: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + i, offset + i + 1) for i in range(0, count, 2)]


def _path(count: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + i, offset + i + 1) for i in range(count - 1)]


def _check_f(r: int, t: int) -> None:
    if r < 2 or t % 2 or not 2 <= t <= 2 * r - 2:
        raise FamilyParamsError(f"F-family needs r >= 2 and even t in [2, 2r-2], got r={r}, t={t}")


def _check_h(r: int, t: int) -> None:
    if r < 1 or t % 2 or not 2 <= t <= 2 * r:
        raise FamilyParamsError(f"H-family needs r >= 1 and even t in [2, 2r], got r={r}, t={t}")


def _expect_regular(G: Graph, k: int, n: int, name: str) -> Graph:
    if G.n != n or not is_k_regular(G, k) or not is_connected(G):
        raise RuntimeError(f"{name} produced an invalid graph: n={G.n}, profile={degree_profile(G).counts()}")
    return G


def _attach_hub(blocks: list[Graph], k: int) -> Graph:
    """Disjoint union of blocks plus one new vertex joined to every vertex of degree k-1."""
    G = blocks[0]
    for block in blocks[1:]:
        G = disjoint_union(G, block)
    hub = G.n
    edges = G.edges() + [(hub, v) for v in range(G.n) if G.degree(v) == k - 1]
    return build_graph(G.n + 1, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def petersen_prime() -> Graph:
    """Petersen graph with vertex 0 replaced by a triangle, one triangle vertex per former neighbour."""
    P = petersen()
    rest, index_map = induced_subgraph(P, range(1, 10))
    position = {v: i for i, v in enumerate(index_map)}
    G = disjoint_union(rest, complete_graph(3))
    spokes = [(9 + i, position[u]) for i, u in enumerate(P.neighbors(0))]
    return build_graph(12, G.edges() + spokes)


def f_rt(r: int, t: int) -> Graph:
    """
    K_{2r+1} minus a matching on t vertices, plus vertex 2r+1 joined to the t matched vertices.

    Raises:
        FamilyParamsError: Unless r >= 2 and t is even in [2, 2r-2].
    """
    _check_f(r, t)
    m = 2 * r + 1
    base = remove_edges(complete_graph(m), _matching(t))
    return build_graph(m + 1, base.edges() + [(m, v) for v in range(t)])


def f_prime_rt(r: int, t: int) -> Graph:
    """K_{2r+1} minus a matching on its lowest 2r-t vertices."""
    _check_f(r, t)
    return remove_edges(complete_graph(2 * r + 1), _matching(2 * r - t))


def family_f(r: int, t: int) -> Graph:
    """
    Member of the even-degree characterization family on 4r+3 vertices.

    The F_{r,t} side occupies 0..2r+1 with glue vertex 2r+1; the F'_{r,t} side occupies
    2r+2..4r+2 and its 2r-t vertices of degree 2r-1 are joined to the glue vertex.
    family_f(r, t) and family_f(r, 2r-t) are isomorphic.
    """
    left = f_rt(r, t)
    right = f_prime_rt(r, t)
    glue = 2 * r + 1
    G = disjoint_union(left, right)
    edges = G.edges() + [(glue, left.n + v) for v in range(2 * r - t)]
    return _expect_regular(build_graph(G.n, edges), 2 * r, 4 * r + 3, f"family_f({r}, {t})")


def h_rt(r: int, t: int) -> Graph:
    _check_h(r, t)
    m = 2 * r + 2
    base = remove_edges(complete_graph(m), _matching(t))
    return build_graph(m + 1, base.edges() + [(m, v) for v in range(t)])


def default_shape(r: int, t: int) -> ComplementShape:
    """Union of a near perfect matching and a second matching through the missed vertex."""
    _check_h(r, t)
    return ComplementShape(paths=(2 * r + 3 - t,) + (2,) * (t // 2))


def validate_shape(r: int, t: int, shape: ComplementShape) -> None:
    _check_h(r, t)
    if len(shape.paths) != (t + 2) // 2:
        raise FamilyParamsError(f"H'_{r},{t} needs exactly {(t + 2) // 2} deleted paths, got {len(shape.paths)}")
    if any(p < 2 for p in shape.paths) or any(c < 3 for c in shape.cycles):
        raise FamilyParamsError(f"Paths need at least 2 vertices and cycles at least 3: {shape}")
    if shape.vertex_count != 2 * r + 3:
        raise FamilyParamsError(f"Shape {shape.describe()} covers {shape.vertex_count} vertices, expected {2 * r + 3}")


def h_prime_rt(r: int, t: int, variant: Optional[ComplementShape] = None) -> Graph:
    """
    K_{2r+3} minus a spanning union of disjoint cycles and exactly (t+2)/2 disjoint paths.

    Args:
        r (int): Half of k-1.
        t (int): Even, 2 <= t <= 2r.
        variant (ComplementShape, optional): Deleted subgraph; the matching-union by default.

    Returns:
        Graph: t+2 vertices of degree 2r+1 and 2r+1-t vertices of degree 2r.

    Raises:
        FamilyParamsError: If the parameters or the variant are invalid.
    """
    shape = variant or default_shape(r, t)
    validate_shape(r, t, shape)
    G = remove_edges(complete_graph(2 * r + 3), shape.edges())
    profile = degree_profile(G).counts()
    if profile != {2 * r + 1: t + 2, **({2 * r: 2 * r + 1 - t} if 2 * r + 1 - t else {})}:
        raise RuntimeError(f"H'_{r},{t} with {shape.describe()} has degree profile {profile}")
    return G


def _partitions(total: int, parts: int, minimum: int, maximum: int) -> Iterator[tuple]:
    """Non-increasing tuples of exactly `parts` integers in [minimum, maximum] summing to total."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(maximum, total - minimum * (parts - 1)), minimum - 1, -1):
        for rest in _partitions(total - first, parts - 1, minimum, first):
            yield (first,) + rest


def _free_partitions(total: int, minimum: int, maximum: int) -> Iterator[tuple]:
    if total == 0:
        yield ()
        return
    for first in range(min(maximum, total), minimum - 1, -1):
        for rest in _free_partitions(total - first, minimum, first):
            yield (first,) + rest


def h_prime_variants(r: int, t: int) -> list[ComplementShape]:
    """Every deleted-subgraph shape valid for H'_{r,t}, the matching-union first."""
    _check_h(r, t)
    size = 2 * r + 3
    count = (t + 2) // 2
    shapes = []
    for path_total in range(size, 2 * count - 1, -1):
        for paths in _partitions(path_total, count, 2, size):
            for cycles in _free_partitions(size - path_total, 3, size):
                shapes.append(ComplementShape(paths=paths, cycles=cycles))
    return shapes


def family_h(r: int, t: int, variant: Optional[ComplementShape] = None) -> Graph:
    """
    Member of the odd-degree characterization family on 4r+6 vertices.

    The H_{r,t} side occupies 0..2r+2 with glue vertex 2r+2; the H'_{r,t} side occupies
    2r+3..4r+5 and its vertices of degree 2r are joined to the glue vertex.
    """
    shape = variant or default_shape(r, t)
    left = h_rt(r, t)
    right = h_prime_rt(r, t, shape)
    glue = 2 * r + 2
    G = disjoint_union(left, right)
    edges = G.edges() + [(glue, left.n + v) for v in shape.interior_vertices()]
    return _expect_regular(build_graph(G.n, edges), 2 * r + 1, 4 * r + 6, f"family_h({r}, {t}, {shape.describe()})")


def no_path_f(k: int) -> Graph:
    """Two copies of K_{k+1}-e and K_{k+1} minus a matching on k-4 vertices around one hub."""
    if k % 2 or k < 6:
        raise FamilyParamsError(f"no_path_f needs even k >= 6, got {k}")
    near_clique = remove_edges(complete_graph(k + 1), [(0, 1)])
    third = remove_edges(complete_graph(k + 1), _matching(k - 4))
    return _expect_regular(_attach_hub([near_clique, near_clique, third], k), k, 3 * k + 4, f"no_path_f({k})")


def no_path_h(k: int) -> Graph:
    if k % 2 == 0 or k < 5:
        raise FamilyParamsError(f"no_path_h needs odd k >= 5, got {k}")
    near_clique = remove_edges(complete_graph(k + 1), [(0, 1)])
    third = h_prime_rt((k - 1) // 2, 4)
    return _expect_regular(_attach_hub([near_clique, near_clique, third], k), k, 3 * k + 5, f"no_path_h({k})")


def circulant(n: int, connection_set) -> Graph:
    """
    Circulant graph: vertex i adjacent to i +- s (mod n) for every offset s.

    Raises:
        FamilyParamsError: On an empty set or an offset outside [1, n/2].
    """
    offsets = sorted(set(connection_set))
    if not offsets:
        raise FamilyParamsError("Circulant connection set must be nonempty")
    if offsets[0] < 1 or 2 * offsets[-1] > n:
        raise FamilyParamsError(f"Circulant offsets must lie in [1, {n // 2}], got {offsets}")
    if n < 3:
        raise FamilyParamsError(f"Circulant needs at least 3 vertices, got {n}")
    return build_graph(n, [(i, (i + s) % n) for s in offsets for i in range(n)])


def regular_circulant(m: int, d: int) -> Graph:
    """Connected d-regular circulant on m vertices: offsets {1..d/2}, plus m/2 when d is odd."""
    if d % 2 == 0:
        if not 2 <= d <= m - 1:
            raise FamilyParamsError(f"No {d}-regular circulant of this form on {m} vertices")
        return circulant(m, range(1, d // 2 + 1))
    if m % 2 or not 1 <= d <= m - 1:
        raise FamilyParamsError(f"Odd degree {d} needs an even order above {d}, got {m}")
    return circulant(m, list(range(1, (d - 1) // 2 + 1)) + [m // 2])


def _spanning_paths(m: int, long_path: int) -> list[tuple[int, int]]:
    """A path on the lowest long_path vertices, then consecutive pairs over the rest."""
    return _path(long_path) + _matching(m - long_path, long_path)


def generalized_no_hamilton(k: int, n: int) -> Graph:
    """
    Connected k-regular non-Hamiltonian graph with a cut vertex on exactly n vertices.

    Even k: a k-regular circulant base on n-k-2 vertices minus edge (0,1), glue vertex n-k-2
    joined to 0 and 1, and an F'-side on the top k+1 vertices.
    Odd k: an H-side on 0..k+1 with glue k+1, and a (k+1)-regular circulant base on n-k-2
    vertices minus a path on k vertices and a perfect matching of the rest.

    Raises:
        FamilyParamsError: k even needs odd n >= 2k+3; k odd needs even n >= 2k+4.
    """
    m = n - k - 2
    if k % 2 == 0:
        if k < 4 or n % 2 == 0 or n < 2 * k + 3:
            raise FamilyParamsError(f"Even k needs k >= 4 and odd n >= 2k+3, got k={k}, n={n}")
        base = remove_edges(regular_circulant(m, k), [(0, 1)])
        side = f_prime_rt(k // 2, 2)
        G = disjoint_union(disjoint_union(base, empty_graph(1)), side)
        glue = m
        edges = G.edges() + [(glue, 0), (glue, 1)] + [(glue, m + 1 + v) for v in range(k - 2)]
    else:
        if k < 3 or n % 2 or n < 2 * k + 4:
            raise FamilyParamsError(f"Odd k needs k >= 3 and even n >= 2k+4, got k={k}, n={n}")
        side = h_rt((k - 1) // 2, 2)
        base = remove_edges(regular_circulant(m, k + 1), _spanning_paths(m, k))
        G = disjoint_union(side, base)
        glue = k + 1
        edges = G.edges() + [(glue, side.n + v) for v in range(1, k - 1)]
    return _expect_regular(build_graph(n, edges), k, n, f"generalized_no_hamilton({k}, {n})")


def generalized_no_path(k: int, n: int) -> Graph:
    """
    Connected k-regular graph on n vertices without a Hamiltonian path.

    The third block of no_path_f / no_path_h is grown from a circulant base on n-2k-3 vertices.

    Raises:
        FamilyParamsError: For k < 5, odd k with odd n, or n below 3k+4 (3k+5 for odd k).
    """
    if k < 5:
        raise FamilyParamsError(f"No three-block construction for k={k}")
    m = n - 2 * k - 3
    near_clique = remove_edges(complete_graph(k + 1), [(0, 1)])
    if k % 2 == 0:
        if n < 3 * k + 4:
            raise FamilyParamsError(f"Even k={k} needs n >= {3 * k + 4}, got {n}")
        third = remove_edges(regular_circulant(m, k), _matching(k - 4))
    else:
        if n % 2 or n < 3 * k + 5:
            raise FamilyParamsError(f"Odd k={k} needs even n >= {3 * k + 5}, got {n}")
        third = remove_edges(regular_circulant(m, k + 1), _spanning_paths(m, k - 2))
    return _expect_regular(_attach_hub([near_clique, near_clique, third], k), k, n, f"generalized_no_path({k}, {n})")


def build_family(params: FamilyParams) -> Graph:
    """Dispatch a FamilyParams record to its generator."""
    builders = {
        'F_rt': lambda p: f_rt(p.r, p.t),
        'Fprime_rt': lambda p: f_prime_rt(p.r, p.t),
        'FamilyF': lambda p: family_f(p.r, p.t),
        'H_rt': lambda p: h_rt(p.r, p.t),
        'Hprime_rt': lambda p: h_prime_rt(p.r, p.t, p.variant),
        'FamilyH': lambda p: family_h(p.r, p.t, p.variant),
        'NoPathF': lambda p: no_path_f(p.k),
        'NoPathH': lambda p: no_path_h(p.k),
        'Petersen': lambda p: petersen(),
        'PetersenPrime': lambda p: petersen_prime(),
        'Circulant': lambda p: circulant(p.n, p.connection_set),
        'GeneralizedF': lambda p: generalized_no_hamilton(p.k, p.n),
        'GeneralizedH': lambda p: generalized_no_hamilton(p.k, p.n),
        'GeneralizedNoPath': lambda p: generalized_no_path(p.k, p.n),
    }
    if params.family not in builders:
        raise FamilyParamsError(f"Unknown family {params.family!r}; expected one of {FAMILIES}")
    if params.family == 'GeneralizedF' and (params.k or 0) % 2:
        raise FamilyParamsError(f"GeneralizedF needs even k, got {params.k}")
    if params.family == 'GeneralizedH' and (params.k or 1) % 2 == 0:
        raise FamilyParamsError(f"GeneralizedH needs odd k, got {params.k}")
    try:
        G = builders[params.family](params)
    except TypeError as e:
        raise FamilyParamsError(f"Missing parameters for {params.family}: {e}") from e
    logger.debug(f"Built {params.label()} on {G.n} vertices")
    return G


# membership deciders

def _two_sided(G: Graph, k: int, sizes: tuple[int, int]) -> Iterator[tuple[int, list[frozenset]]]:
    """Every cut vertex splitting a connected k-regular G into two sides of the given sizes."""
    if not is_k_regular(G, k) or not is_connected(G):
        return iter(())
    return separating_cuts(G, sizes)


def _complement_within(G: Graph, side: frozenset) -> Graph:
    sub, _ = induced_subgraph(G, side)
    full = sub.vertex_mask
    return Graph(sub.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(sub.rows)))


def _is_matching_on(G: Graph, side: frozenset, hub: int) -> Optional[int]:
    """Size of the hub's neighbourhood in side if the complement there is a perfect matching on it."""
    missing = _complement_within(G, side)
    ordered = sorted(side)
    touched = {ordered[i] for i in range(missing.n) if missing.rows[i]}
    if any(row.bit_count() > 1 for row in missing.rows):
        return None
    hub_side = {u for u in side if G.has_edge(hub, u)}
    return len(hub_side) if touched == hub_side else None


def is_family_f_member(G: Graph) -> Optional[tuple[int, int]]:
    """
    Decide membership in the even-degree characterization family.

    Returns:
        tuple | None: (r, t) with t normalized to min(t, 2r-t), since the two sides of
            a member are interchangeable.
    """
    if G.n < 11 or (G.n - 3) % 4:
        return None
    r = (G.n - 3) // 4
    for hub, sides in _two_sided(G, 2 * r, (2 * r + 1, 2 * r + 1)):
        counts = [_is_matching_on(G, side, hub) for side in sides]
        if None in counts or any(c % 2 or not 2 <= c <= 2 * r - 2 for c in counts):
            continue
        return r, min(counts)
    return None


def complement_shape(G: Graph, side: frozenset) -> Optional[ComplementShape]:
    """Shape of the complement of G[side] when it is a spanning union of paths and cycles."""
    missing = _complement_within(G, side)
    if any(row.bit_count() not in (1, 2) for row in missing.rows):
        return None
    paths, cycles = [], []
    seen = 0
    for start in range(missing.n):
        if seen >> start & 1:
            continue
        part = 1 << start
        frontier = part
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= missing.rows[u]
            frontier = nxt & ~part
            part |= frontier
        seen |= part
        size = part.bit_count()
        edge_count = sum(missing.rows[u].bit_count() for u in bits(part)) // 2
        (cycles if edge_count == size else paths).append(size)
    return ComplementShape(paths=tuple(sorted(paths, reverse=True)), cycles=tuple(sorted(cycles, reverse=True)))


def is_family_h_member(G: Graph) -> Optional[tuple[int, int]]:
    """Decide membership in the odd-degree characterization family; returns (r, t)."""
    if G.n < 10 or (G.n - 6) % 4:
        return None
    r = (G.n - 6) // 4
    # with t = 2r the hub reaches the prime side through a bridge, whose far end also splits 2r+2 / 2r+3
    for hub, sides in _two_sided(G, 2 * r + 1, (2 * r + 2, 2 * r + 3)):
        by_size = {len(side): side for side in sides}
        t = _is_matching_on(G, by_size[2 * r + 2], hub)
        if t is None or t % 2 or not 2 <= t <= 2 * r:
            continue
        prime_side = by_size[2 * r + 3]
        shape = complement_shape(G, prime_side)
        if shape is None or len(shape.paths) != (t + 2) // 2:
            continue
        missing = _complement_within(G, prime_side)
        ordered = sorted(prime_side)
        interior = {ordered[i] for i in range(missing.n) if missing.rows[i].bit_count() == 2}
        if interior != {u for u in prime_side if G.has_edge(hub, u)}:
            continue
        return r, t
    return None

