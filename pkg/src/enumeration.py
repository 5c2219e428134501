"""
enumeration.py: Exhaustive generation of connected k-regular graphs up to isomorphism.

The generator works level by level. At each level every partial graph gives its lowest
vertex of degree below k all of its missing edges; open vertices with identical
neighbourhoods are interchangeable, so only the lowest members of each such class are
picked. A vertex of degree k can take no further edges, so the completions of a partial
graph depend only on its isomorphism class and each level keeps one canonical
representative per class. Completed graphs are emitted in ascending canonical order.
"""

import logging
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Optional, TextIO

from joblib import Parallel, delayed

from src.graph_core import (
    Graph, MAX_VERTICES, bits, canonical_form, graph6_encode, mask_of, relabel,
)
from src.structure import count_triangles, is_connected

logger = logging.getLogger(__name__)

DEFAULT_ENVELOPE = {2: 16, 3: 14, 4: 12, 5: 14}
FALLBACK_MAX_N = 12
ALL_GRAPHS_MAX_N = 9
ALL_GRAPHS_OPT_IN_MAX_N = 10


class EnvelopeError(ValueError):
    """Raised when a requested order lies outside the configured enumeration envelope."""


@dataclass(frozen=True)
class EnumerationTask:
    """
    Attributes:
        k (int): Degree.
        n (int): Order.
        filters (tuple): Predicates applied to each emitted graph; all must hold.
        limit (int, optional): Stop after this many graphs pass the filters.
    """
    k: int
    n: int
    filters: tuple = field(default_factory=tuple)
    limit: Optional[int] = None


def check_envelope(k: int, n: int, envelope: Optional[dict] = None) -> None:
    envelope = DEFAULT_ENVELOPE if envelope is None else {int(key): value for key, value in envelope.items()}
    max_n = envelope.get(k, FALLBACK_MAX_N)
    if n > max_n or n > MAX_VERTICES:
        raise EnvelopeError(f"Enumeration of {k}-regular graphs is limited to n <= {max_n}, requested n={n}")


def _is_feasible(k: int, n: int) -> bool:
    if n < 1 or k < 0:
        return False
    if k >= n:
        logger.warning(f"No {k}-regular graph on {n} vertices (k must be below n)")
        return False
    if k * n % 2:
        logger.warning(f"No {k}-regular graph on {n} vertices (k*n is odd)")
        return False
    if k == 0 and n > 1:
        logger.warning(f"No connected 0-regular graph on {n} vertices")
        return False
    return True


def _class_prefixes(classes: list[list[int]], need: int, index: int = 0) -> Iterator[list[int]]:
    """Every way of taking a lowest-index prefix from each class, need vertices in total."""
    if need == 0:
        yield []
        return
    if index == len(classes):
        return
    members = classes[index]
    for count in range(min(len(members), need), -1, -1):
        for rest in _class_prefixes(classes, need - count, index + 1):
            yield members[:count] + rest


def _reach(rows: list[int], start: int) -> int:
    seen = frontier = 1 << start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def _completions(k: int, n: int, rows: tuple) -> Iterator[tuple]:
    """Partial graphs obtained by giving the lowest open vertex all of its missing edges."""
    degs = [row.bit_count() for row in rows]
    open_mask = mask_of(v for v in range(n) if degs[v] < k)
    v = (open_mask & -open_mask).bit_length() - 1
    candidates = list(bits(open_mask & ~rows[v] & ~(1 << v)))
    need = k - degs[v]
    if need > len(candidates):
        return
    # open vertices with equal neighbourhoods can be swapped by an automorphism
    classes: dict[int, list[int]] = {}
    for j in candidates:
        classes.setdefault(rows[j], []).append(j)
    for chosen in _class_prefixes(list(classes.values()), need):
        new_rows = list(rows)
        for j in chosen:
            new_rows[v] |= 1 << j
            new_rows[j] |= 1 << v
        still_open = mask_of(u for u in bits(open_mask) if new_rows[u].bit_count() < k)
        if any(k - new_rows[u].bit_count() > (still_open & ~new_rows[u] & ~(1 << u)).bit_count()
               for u in bits(still_open)):
            continue
        component = _reach(new_rows, v)
        if component != (1 << n) - 1 and not component & still_open:
            continue
        yield tuple(new_rows)


def _expand(k: int, n: int, states: list[tuple]) -> tuple[dict[bytes, tuple], dict[bytes, tuple]]:
    """One search level: (canonical partial graphs still open, canonical completed graphs)."""
    grown: dict[bytes, tuple] = {}
    done: dict[bytes, tuple] = {}
    for rows in states:
        for child in _completions(k, n, rows):
            G = Graph(n, child)
            complete = all(row.bit_count() == k for row in child)
            if complete and not is_connected(G):
                continue
            target = done if complete else grown
            form = canonical_form(G)
            if form.bytes not in target:
                target[form.bytes] = relabel(G, form.perm).rows
    return grown, done


def _chunks(items: list, parts: int) -> list[list]:
    size = -(-len(items) // parts)
    return [items[i:i + size] for i in range(0, len(items), size)]


def _generate(k: int, n: int, workers: int) -> list[Graph]:
    if k == 0:
        return [Graph(n, (0,) * n)]
    states = {b'': (0,) * n}
    finished: dict[bytes, tuple] = {}
    depth = 0
    while states:
        ordered = [states[code] for code in sorted(states)]
        if workers > 1 and len(ordered) >= 2 * workers:
            results = Parallel(n_jobs=workers)(delayed(_expand)(k, n, chunk) for chunk in _chunks(ordered, 4 * workers))
        else:
            results = [_expand(k, n, ordered)]
        states = {}
        for grown, done in results:
            states.update(grown)
            finished.update(done)
        depth += 1
        logger.debug(f"k={k} n={n} level {depth}: {len(states)} open partial graphs, {len(finished)} complete")
    return [Graph(n, finished[code]) for code in sorted(finished)]


def enumerate_connected_k_regular(task: EnumerationTask, envelope: Optional[dict] = None,
                                  workers: int = 1) -> Iterator[Graph]:
    """
    Stream every connected k-regular graph on n vertices, one per isomorphism class.

    Args:
        task (EnumerationTask): Degree, order, optional filters and limit.
        envelope (dict, optional): Maximum n per k; DEFAULT_ENVELOPE when omitted.
        workers (int): Number of processes sharing the partial graphs of each search level.

    Yields:
        Graph: Canonically labeled representatives in ascending canonical-byte order.

    Raises:
        EnvelopeError: If n exceeds the envelope for k.
    """
    check_envelope(task.k, task.n, envelope)
    if not _is_feasible(task.k, task.n):
        return
    started = time.time()
    graphs = _generate(task.k, task.n, max(1, workers))
    logger.info(f"Enumerated {len(graphs)} connected {task.k}-regular graphs on {task.n} vertices "
                f"in {time.time() - started:.2f}s")
    emitted = 0
    for G in graphs:
        if task.limit is not None and emitted >= task.limit:
            return
        if all(predicate(G) for predicate in task.filters):
            emitted += 1
            yield G


def count_connected_k_regular(k: int, n: int, envelope: Optional[dict] = None, workers: int = 1) -> int:
    return sum(1 for _ in enumerate_connected_k_regular(EnumerationTask(k, n), envelope, workers))


# independent oracle

def _vertex_invariant(G: Graph, v: int) -> tuple:
    """Triangles through v and the count of vertices at each BFS distance from v."""
    triangles = sum((G.rows[u] & G.rows[v]).bit_count() for u in bits(G.rows[v])) // 2
    layers = []
    seen = frontier = 1 << v
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= G.rows[u]
        frontier = nxt & ~seen
        seen |= frontier
        if frontier:
            layers.append(frontier.bit_count())
    return triangles, tuple(layers)


def _same_graph(G: Graph, H: Graph, g_inv: list, h_inv: list) -> bool:
    """Bijection search restricted to vertices with equal invariants."""
    image = [-1] * G.n

    def extend(v: int, used: int) -> bool:
        if v == G.n:
            return True
        for u in range(H.n):
            if used >> u & 1 or h_inv[u] != g_inv[v]:
                continue
            if all(G.has_edge(v, w) == H.has_edge(u, image[w]) for w in range(v)):
                image[v] = u
                if extend(v + 1, used | 1 << u):
                    return True
        image[v] = -1
        return False

    return extend(0, 0)


def enumerate_naive(k: int, n: int) -> list[Graph]:
    """
    Oracle generator: labeled row-by-row search with only vertex 0's neighbourhood fixed,
    isomorph rejection by invariant buckets and bijection search. Sorted by graph6.
    """
    if not _is_feasible(k, n):
        return []
    buckets: dict[tuple, list[tuple[Graph, list]]] = {}
    representatives = []
    rows = [0] * n
    degs = [0] * n

    def fill(i: int) -> None:
        if i == n:
            G = Graph(n, tuple(rows))
            if not is_connected(G):
                return
            inv = [_vertex_invariant(G, v) for v in range(n)]
            key = (count_triangles(G), tuple(sorted(inv)))
            for H, h_inv in buckets.get(key, []):
                if _same_graph(G, H, inv, h_inv):
                    return
            buckets.setdefault(key, []).append((G, inv))
            representatives.append(G)
            return
        need = k - degs[i]
        candidates = [j for j in range(i + 1, n) if degs[j] < k]
        pool = [list(range(1, k + 1))] if i == 0 else combinations(candidates, need)
        for chosen in pool:
            for j in chosen:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
                degs[j] += 1
            if all(k - degs[j] <= n - i - 2 for j in range(i + 1, n)):
                saved = degs[i]
                degs[i] = k
                fill(i + 1)
                degs[i] = saved
            for j in chosen:
                rows[i] &= ~(1 << j)
                rows[j] &= ~(1 << i)
                degs[j] -= 1

    fill(0)
    return sorted(representatives, key=graph6_encode)


def enumerate_graphs(n: int, keep: Optional[Callable[[Graph], bool]] = None,
                     max_n: int = ALL_GRAPHS_MAX_N) -> list[Graph]:
    """
    All graphs on n vertices up to isomorphism, connected or not, by vertex augmentation.

    Args:
        n (int): Order.
        keep (callable, optional): Isomorphism-invariant filter applied to the final layer
            before canonical labeling, so rejected graphs are never labeled or stored.
        max_n (int): Enumeration limit; raise it to ALL_GRAPHS_OPT_IN_MAX_N to reach n = 10,
            which extends 274668 graphs on 9 vertices by every neighbourhood and takes hours.

    Raises:
        EnvelopeError: If n exceeds max_n or max_n exceeds ALL_GRAPHS_OPT_IN_MAX_N.
    """
    if max_n > ALL_GRAPHS_OPT_IN_MAX_N:
        raise EnvelopeError(f"All-graphs limit {max_n} exceeds the supported {ALL_GRAPHS_OPT_IN_MAX_N}")
    if not 1 <= n <= max_n:
        raise EnvelopeError(f"Enumeration of all graphs is limited to 1 <= n <= {max_n}, requested {n}")
    if max_n > ALL_GRAPHS_MAX_N and n > ALL_GRAPHS_MAX_N:
        logger.warning(f"Enumerating all graphs on {n} vertices; expect hours of runtime")
    layer = {canonical_form(Graph(1, (0,))).bytes: Graph(1, (0,))}
    if n == 1:
        return [G for G in layer.values() if keep is None or keep(G)]
    for m in range(1, n):
        last = m + 1 == n
        grown: dict[bytes, Graph] = {}
        for G in layer.values():
            for neighbourhood in range(1 << m):
                rows = tuple(row | (neighbourhood >> v & 1) << m for v, row in enumerate(G.rows)) + (neighbourhood,)
                H = Graph(m + 1, rows)
                if last and keep is not None and not keep(H):
                    continue
                form = canonical_form(H)
                if form.bytes not in grown:
                    grown[form.bytes] = relabel(H, form.perm)
        layer = grown
        logger.debug(f"{len(layer)} graphs on {m + 1} vertices")
    return [layer[code] for code in sorted(layer)]


def write_graph6_stream(graphs: Iterable[Graph], handle: TextIO) -> int:
    """Write one graph6 line per graph; returns the number written."""
    count = 0
    for G in graphs:
        handle.write(graph6_encode(G) + '\n')
        count += 1
    return count

