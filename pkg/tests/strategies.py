"""Shared hypothesis strategies and oracles for the test suite."""

from itertools import permutations

import networkx as nx
from hypothesis import strategies as st

from src.graph_core import Graph, build_graph


@st.composite
def graphs(draw, min_n=1, max_n=9):
    """Arbitrary labeled graphs with min_n..max_n vertices."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [pair for pair, keep in zip(pairs, chosen) if keep])


def to_networkx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def brute_hamiltonian_cycle(G: Graph) -> bool:
    """Permutation oracle fixing vertex 0; only for tiny graphs."""
    if G.n < 3:
        return False
    for rest in permutations(range(1, G.n)):
        if rest[0] > rest[-1]:
            continue
        order = (0,) + rest
        if all(G.has_edge(order[i], order[(i + 1) % G.n]) for i in range(G.n)):
            return True
    return False


def brute_hamiltonian_path(G: Graph) -> bool:
    if G.n == 1:
        return True
    return any(all(G.has_edge(order[i], order[i + 1]) for i in range(G.n - 1))
               for order in permutations(range(G.n)) if order[0] < order[-1])


@st.composite
def hub_joined_blocks(draw, min_blocks=3, max_blocks=4, max_block_n=4):
    """Connected graphs in which the last vertex is a cut vertex whose deletion leaves min_blocks or more parts."""
    count = draw(st.integers(min_value=min_blocks, max_value=max_blocks))
    edges, offset, attach = [], 0, []
    for _ in range(count):
        block = draw(graphs(min_n=1, max_n=max_block_n))
        edges += [(offset + u, offset + v) for u, v in block.edges()]
        edges += [(offset + v, offset + v + 1) for v in range(block.n - 1)]
        reach = draw(st.lists(st.integers(min_value=0, max_value=block.n - 1), min_size=1, unique=True))
        attach += [offset + v for v in reach]
        offset += block.n
    hub = offset
    return build_graph(offset + 1, edges + [(hub, v) for v in attach])
