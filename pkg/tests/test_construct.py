import networkx as nx
import pytest

from src.construct import (
    ComplementShape, FamilyParams, FamilyParamsError, build_family, circulant, complement_shape, default_shape,
    f_prime_rt, f_rt, family_f, family_h, generalized_no_hamilton, generalized_no_path, h_prime_rt,
    h_prime_variants, h_rt, is_family_f_member, is_family_h_member, no_path_f, no_path_h, petersen,
    petersen_prime, regular_circulant,
)
from src.graph_core import are_isomorphic, complete_graph, cycle_graph, degree_profile, graph6_encode
from src.structure import (
    components_after_deletion, count_triangles, cut_vertices, is_connected, is_k_regular, is_two_connected,
    separating_cuts,
)
from tests.strategies import to_networkx


def test_petersen_matches_networkx():
    assert nx.is_isomorphic(to_networkx(petersen()), nx.petersen_graph())


def test_petersen_prime_inflates_one_vertex():
    G = petersen_prime()
    assert G.n == 12
    assert is_k_regular(G, 3)
    assert count_triangles(G) == 1
    assert is_two_connected(G)


@pytest.mark.parametrize("r, t", [(1, 2), (2, 0), (2, 3), (2, 4), (3, 6)])
def test_f_side_rejects_invalid_parameters(r, t):
    with pytest.raises(FamilyParamsError):
        f_rt(r, t)
    with pytest.raises(FamilyParamsError):
        family_f(r, t)


@pytest.mark.parametrize("r, t", [(0, 2), (1, 0), (1, 4), (2, 3)])
def test_h_side_rejects_invalid_parameters(r, t):
    with pytest.raises(FamilyParamsError):
        h_rt(r, t)


def test_side_degree_profiles():
    assert degree_profile(f_rt(3, 2)).counts() == {2: 1, 6: 7}
    assert degree_profile(f_prime_rt(3, 2)).counts() == {5: 4, 6: 3}
    assert degree_profile(h_rt(2, 4)).counts() == {4: 1, 5: 6}
    assert degree_profile(h_prime_rt(2, 2)).counts() == {5: 4, 4: 3}


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_family_f_members(r):
    for t in range(2, 2 * r - 1, 2):
        G = family_f(r, t)
        assert G.n == 4 * r + 3
        assert is_k_regular(G, 2 * r)
        assert is_connected(G)
        assert len(cut_vertices(G)) == 1
        assert next(separating_cuts(G, (2 * r + 1, 2 * r + 1)), None) is not None
        assert is_family_f_member(G) == (r, min(t, 2 * r - t))


def test_family_f_is_symmetric_in_t():
    assert are_isomorphic(family_f(3, 2), family_f(3, 4))
    assert not are_isomorphic(family_f(4, 2), family_f(4, 4))


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_family_h_default_members(r):
    for t in range(2, 2 * r + 1, 2):
        G = family_h(r, t)
        assert G.n == 4 * r + 6
        assert is_k_regular(G, 2 * r + 1)
        # t = 2r leaves a single edge from the hub into the prime side, a bridge with two cut ends
        assert len(cut_vertices(G)) == (2 if t == 2 * r else 1)
        hubs = [v for v, _ in separating_cuts(G, (2 * r + 2, 2 * r + 3))]
        assert 2 * r + 2 in hubs
        assert is_family_h_member(G) == (r, t)


def test_h_prime_variants_enumerate_every_shape():
    assert [s.describe() for s in h_prime_variants(1, 2)] == ['P3+P2']
    assert [s.describe() for s in h_prime_variants(2, 2)] == ['P5+P2', 'P4+P3', 'P2+P2+C3']
    assert h_prime_variants(2, 4)[0] == default_shape(2, 4)


@pytest.mark.parametrize("r, t", [(2, 2), (2, 4), (3, 2), (3, 4)])
def test_every_variant_builds_a_member(r, t):
    for shape in h_prime_variants(r, t):
        G = family_h(r, t, shape)
        assert is_family_h_member(G) == (r, t)
        side = frozenset(range(2 * r + 3, 4 * r + 6))
        assert complement_shape(G, side) == shape


def test_invalid_variant_is_rejected():
    with pytest.raises(FamilyParamsError):
        h_prime_rt(2, 2, ComplementShape(paths=(7,)))
    with pytest.raises(FamilyParamsError):
        h_prime_rt(2, 2, ComplementShape(paths=(3, 2)))


def test_membership_rejects_non_members():
    for G in (petersen(), petersen_prime(), complete_graph(11), cycle_graph(11), no_path_h(5)):
        assert is_family_f_member(G) is None
        assert is_family_h_member(G) is None
    assert is_family_h_member(family_f(2, 2)) is None
    assert is_family_f_member(family_h(2, 2)) is None


@pytest.mark.parametrize("builder, k, n", [
    (no_path_f, 6, 22), (no_path_f, 8, 28), (no_path_h, 5, 20), (no_path_h, 7, 26),
])
def test_three_block_constructions(builder, k, n):
    G = builder(k)
    assert G.n == n
    assert is_k_regular(G, k)
    assert is_connected(G)
    hubs = [v for v in cut_vertices(G) if len(components_after_deletion(G, v)) == 3]
    assert len(hubs) == 1


@pytest.mark.parametrize("builder, k", [(no_path_f, 4), (no_path_f, 7), (no_path_h, 3), (no_path_h, 6)])
def test_three_block_constructions_reject_small_or_wrong_parity(builder, k):
    with pytest.raises(FamilyParamsError):
        builder(k)


@pytest.mark.parametrize("k, n", [(4, 11), (4, 13), (4, 15), (4, 17), (6, 19), (3, 10), (3, 12), (3, 14), (3, 16),
                                  (5, 16)])
def test_generalized_no_hamilton(k, n):
    G = generalized_no_hamilton(k, n)
    assert G.n == n
    assert is_k_regular(G, k)
    assert is_connected(G)
    assert cut_vertices(G)


@pytest.mark.parametrize("k, n", [(4, 14), (4, 9), (3, 13), (3, 8), (2, 9)])
def test_generalized_no_hamilton_rejects_parity_and_size(k, n):
    with pytest.raises(FamilyParamsError):
        generalized_no_hamilton(k, n)


@pytest.mark.parametrize("k, n", [(6, 22), (6, 23), (5, 20), (5, 22), (7, 28)])
def test_generalized_no_path(k, n):
    G = generalized_no_path(k, n)
    assert G.n == n
    assert is_k_regular(G, k)
    hubs = [v for v in cut_vertices(G) if len(components_after_deletion(G, v)) == 3]
    assert len(hubs) == 1


@pytest.mark.parametrize("k, n", [(4, 20), (3, 16), (6, 21), (5, 21), (5, 18)])
def test_generalized_no_path_rejects_invalid(k, n):
    with pytest.raises(FamilyParamsError):
        generalized_no_path(k, n)


def test_circulants():
    assert are_isomorphic(circulant(5, [1]), cycle_graph(5))
    assert circulant(6, [1, 3]).edge_count() == 9
    for m, d in ((7, 4), (8, 5), (9, 6), (10, 3)):
        G = regular_circulant(m, d)
        assert is_k_regular(G, d) and is_connected(G)
    with pytest.raises(FamilyParamsError):
        circulant(6, [])
    with pytest.raises(FamilyParamsError):
        circulant(6, [4])
    with pytest.raises(FamilyParamsError):
        regular_circulant(7, 3)


def test_build_family_dispatch():
    assert build_family(FamilyParams('FamilyF', r=2, t=2)) == family_f(2, 2)
    assert build_family(FamilyParams('Petersen')) == petersen()
    assert build_family(FamilyParams('Circulant', n=7, connection_set=(1, 2))) == circulant(7, [1, 2])
    shape = h_prime_variants(2, 2)[1]
    assert build_family(FamilyParams('FamilyH', r=2, t=2, variant=shape)) == family_h(2, 2, shape)
    assert build_family(FamilyParams('GeneralizedH', k=3, n=12)) == generalized_no_hamilton(3, 12)


@pytest.mark.parametrize("params", [
    FamilyParams('Nope'),
    FamilyParams('FamilyF', r=2),
    FamilyParams('GeneralizedF', k=3, n=12),
    FamilyParams('GeneralizedH', k=4, n=13),
])
def test_build_family_rejects_bad_params(params):
    with pytest.raises(FamilyParamsError):
        build_family(params)


def test_family_params_label():
    assert FamilyParams('FamilyF', r=2, t=2).label() == 'FamilyF(r=2, t=2)'
    assert FamilyParams('Circulant', n=5, connection_set=(1,)).label() == 'Circulant(n=5, S=[1])'


def test_generators_are_deterministic():
    assert graph6_encode(family_h(2, 4)) == graph6_encode(family_h(2, 4))
    assert graph6_encode(generalized_no_hamilton(4, 15)) == graph6_encode(generalized_no_hamilton(4, 15))
