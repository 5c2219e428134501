import io

import networkx as nx
import pytest

from src.enumeration import (
    EnumerationTask, EnvelopeError, check_envelope, count_connected_k_regular, enumerate_connected_k_regular,
    enumerate_graphs, enumerate_naive, write_graph6_stream,
)
from src.graph_core import canonical_form, graph6_encode
from src.structure import is_connected, is_k_regular, is_two_connected
from tests.strategies import to_networkx

CUBIC = {4: 1, 6: 2, 8: 5, 10: 19}
QUARTIC = {5: 1, 6: 1, 7: 2, 8: 6, 9: 16}


@pytest.mark.parametrize("n, expected", sorted(CUBIC.items()))
def test_cubic_counts(n, expected):
    assert count_connected_k_regular(3, n) == expected


@pytest.mark.parametrize("n, expected", sorted(QUARTIC.items()))
def test_quartic_counts(n, expected):
    assert count_connected_k_regular(4, n) == expected


@pytest.mark.slow
@pytest.mark.parametrize("k, n, expected", [(3, 12, 85), (4, 10, 59), (4, 11, 265), (5, 10, 60)])
def test_larger_counts(k, n, expected):
    assert count_connected_k_regular(k, n) == expected


def test_cycles_and_trivial_cases():
    for n in range(3, 9):
        assert count_connected_k_regular(2, n) == 1
    assert count_connected_k_regular(0, 1) == 1
    assert count_connected_k_regular(3, 7) == 0
    assert count_connected_k_regular(4, 4) == 0
    assert count_connected_k_regular(1, 2) == 1


def test_outputs_are_connected_regular_and_pairwise_non_isomorphic():
    graphs = list(enumerate_connected_k_regular(EnumerationTask(3, 10)))
    assert all(G.n == 10 and is_k_regular(G, 3) and is_connected(G) for G in graphs)
    forms = {canonical_form(G).bytes for G in graphs}
    assert len(forms) == len(graphs)
    for i, G in enumerate(graphs):
        for H in graphs[i + 1:]:
            assert not nx.is_isomorphic(to_networkx(G), to_networkx(H))


@pytest.mark.parametrize("k, n", [
    (3, 6), (3, 8), (4, 7), (4, 8), (4, 9), (2, 7), pytest.param(3, 10, marks=pytest.mark.slow),
])
def test_generator_agrees_with_naive_oracle(k, n):
    fast = {canonical_form(G).bytes for G in enumerate_connected_k_regular(EnumerationTask(k, n))}
    naive = {canonical_form(G).bytes for G in enumerate_naive(k, n)}
    assert fast == naive


@pytest.mark.parametrize("k, n", [(3, 10), (4, 9), (5, 8)])
def test_stream_is_strictly_increasing_in_canonical_form(k, n):
    forms = [canonical_form(G).bytes for G in enumerate_connected_k_regular(EnumerationTask(k, n))]
    assert forms == sorted(set(forms))


def test_enumeration_is_deterministic():
    first = [graph6_encode(G) for G in enumerate_connected_k_regular(EnumerationTask(4, 9))]
    second = [graph6_encode(G) for G in enumerate_connected_k_regular(EnumerationTask(4, 9))]
    assert first == second


@pytest.mark.slow
def test_parallel_workers_produce_identical_stream():
    serial = [graph6_encode(G) for G in enumerate_connected_k_regular(EnumerationTask(3, 10), workers=1)]
    parallel = [graph6_encode(G) for G in enumerate_connected_k_regular(EnumerationTask(3, 10), workers=2)]
    assert serial == parallel


def test_filters_and_limit():
    two_connected = list(enumerate_connected_k_regular(EnumerationTask(3, 10, filters=(is_two_connected,))))
    everything = list(enumerate_connected_k_regular(EnumerationTask(3, 10)))
    assert len(two_connected) == sum(1 for G in everything if is_two_connected(G))
    assert len(two_connected) < len(everything)
    assert len(list(enumerate_connected_k_regular(EnumerationTask(3, 10, limit=4)))) == 4


def test_envelope():
    with pytest.raises(EnvelopeError):
        check_envelope(4, 13)
    with pytest.raises(EnvelopeError):
        list(enumerate_connected_k_regular(EnumerationTask(9, 20)))
    with pytest.raises(EnvelopeError):
        list(enumerate_connected_k_regular(EnumerationTask(3, 10), envelope={'3': 8}))
    check_envelope(3, 14)
    check_envelope(4, 13, envelope={'4': 13})


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_all_graph_counts(n, expected):
    assert len(enumerate_graphs(n)) == expected


def test_all_graphs_envelope():
    with pytest.raises(EnvelopeError):
        enumerate_graphs(10)
    with pytest.raises(EnvelopeError):
        enumerate_graphs(0)
    with pytest.raises(EnvelopeError):
        enumerate_graphs(11, max_n=11)
    with pytest.raises(EnvelopeError):
        enumerate_graphs(10, max_n=9)


def test_all_graphs_keep_filter_matches_filtering_afterwards():
    for n in (1, 4, 6):
        kept = enumerate_graphs(n, keep=is_two_connected)
        assert kept == [G for G in enumerate_graphs(n) if is_two_connected(G)]
    assert len(enumerate_graphs(6, keep=is_two_connected)) == 56


def test_write_graph6_stream():
    handle = io.StringIO()
    graphs = list(enumerate_connected_k_regular(EnumerationTask(3, 6)))
    assert write_graph6_stream(graphs, handle) == 2
    assert handle.getvalue().splitlines() == [graph6_encode(G) for G in graphs]
