from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lmriv.graphcore import (
    Graph6Error,
    GraphError,
    all_graphs,
    canonical_code,
    complement_edges,
    decode_graph6,
    degree_stats,
    elementary_symmetric,
    empty_graph,
    encode_graph6,
    enumerate_connected,
    format_edge_list,
    from_edge_list,
    graph6_codec,
    is_connected,
    neighbor_sums,
    parse_edge_list,
    read_graph6_stream,
)
from lmriv.lmpoly import matching_counts, newton_power_sums


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return from_edge_list(n, [p for p, b in zip(pairs, mask) if b])


# -- graph6 -----------------------------------------------------------------

@pytest.mark.parametrize("text, n, edges", [
    ("A_", 2, [(0, 1)]),
    ("Bw", 3, [(0, 1), (0, 2), (1, 2)]),
    ("?", 0, []),
    ("@", 1, []),
    ("Bg", 3, [(0, 1), (1, 2)]),
])
def test_graph6_known(text, n, edges):
    g = decode_graph6(text)
    assert g.n == n and g.edges() == edges
    assert encode_graph6(g) == text


def test_graph6_header_and_codec():
    assert decode_graph6(">>graph6<<Bw") == decode_graph6("Bw")
    g = graph6_codec("Bw")
    assert graph6_codec(g) == "Bw"


def test_graph6_bit_layout_by_hand():
    # n=4, only edge (2,3): upper triangle column-major is
    # x01 x02 x12 x03 x13 x23 = 000001 -> 63 + 1
    g = from_edge_list(4, [(2, 3)])
    assert encode_graph6(g) == "C" + chr(64)


@pytest.mark.parametrize("text, offset", [
    ("B", 1),             # truncated
    ("Bww", 2),           # trailing garbage
    ("A ", 1),            # space is outside 63..126
    ("Bx", 1),            # padding bits set: 'x' = 57 = 111001
    ("", 0),
])
def test_graph6_errors_carry_offset(text, offset):
    with pytest.raises(Graph6Error) as exc:
        decode_graph6(text)
    assert exc.value.offset == offset
    assert f"byte offset {offset}" in str(exc.value)


def test_graph6_order_limit():
    with pytest.raises(Graph6Error):
        decode_graph6(chr(63 + 40) + "?" * 130)


@given(graphs())
def test_graph6_roundtrip_random(g):
    assert decode_graph6(encode_graph6(g)) == g


def test_graph6_roundtrip_exhaustive_small():
    for n in range(6):
        for g in all_graphs(n):
            assert decode_graph6(encode_graph6(g)) == g


def test_graph6_matches_networkx():
    for n in range(1, 7):
        for g in enumerate_connected(n):
            ng = nx.from_graph6_bytes(encode_graph6(g).encode())
            assert sorted(tuple(sorted(e)) for e in ng.edges()) == g.edges()


def test_read_stream_skips_blank_lines():
    got = list(read_graph6_stream(["A_\n", "\n", "Bw\n"]))
    assert [encode_graph6(g) for g in got] == ["A_", "Bw"]


# -- construction -----------------------------------------------------------

def test_from_edge_list_examples(P3):
    assert P3.degrees == (1, 2, 1)
    two = from_edge_list(2, [])
    assert two.m == 0 and two.degrees == (0, 0)
    with pytest.raises(GraphError, match="duplicate"):
        from_edge_list(3, [(0, 1), (0, 1)])
    with pytest.raises(GraphError, match="duplicate"):
        from_edge_list(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphError, match="self-loop"):
        from_edge_list(3, [(1, 1)])
    with pytest.raises(GraphError, match="out of range"):
        from_edge_list(3, [(0, 3)])


def test_edge_list_text_roundtrip(P3):
    text = format_edge_list(P3)
    assert text == "3 2\n0 1\n1 2\n"
    assert parse_edge_list(text) == P3
    with pytest.raises(GraphError):
        parse_edge_list("3 2\n0 1\n")


def test_is_connected(P3):
    assert is_connected(P3)
    assert not is_connected(from_edge_list(2, []))
    assert is_connected(empty_graph(1))
    assert is_connected(empty_graph(0))


@given(graphs(7))
def test_is_connected_matches_networkx(g):
    ng = nx.Graph()
    ng.add_nodes_from(range(g.n))
    ng.add_edges_from(g.edges())
    expect = True if g.n == 0 else nx.is_connected(ng)
    assert is_connected(g) == expect


def test_complement_edges(P3, K3):
    assert complement_edges(K3) == []
    assert complement_edges(P3) == [(0, 2)]
    assert complement_edges(from_edge_list(2, [])) == [(0, 1)]


# -- statistics ---------------------------------------------------------------

def test_degree_stats_P3(P3):
    s = degree_stats(P3)
    assert s.m == 2
    assert s.A == (4, 6, 10, 18, 34)
    assert (s.B, s.C) == (4, 12)
    assert s.E == (4, 5, 2, 0, 0)
    assert s.phi2 == 0


def test_degree_stats_K3(K3):
    s = degree_stats(K3)
    assert s.m == 3
    assert s.A == tuple(3 * 2 ** r for r in range(1, 6))
    assert (s.B, s.C, s.phi2) == (12, 48, 0)


def test_degree_stats_edgeless():
    s = degree_stats(empty_graph(5))
    assert s.m == 0 and s.A == (0,) * 5 and s.E == (0,) * 5
    assert s.B == s.C == s.phi2 == 0


@given(graphs(9))
def test_degree_stats_invariants(g):
    s = degree_stats(g)
    assert sum(g.degrees) == 2 * s.m == s.A[0]
    assert (s.m ** 2 + s.m - s.A[1]) % 2 == 0
    assert s.m ** 2 + s.m - s.A[1] >= 0
    assert min(s.A + s.E + (s.B, s.C, s.phi2)) >= 0
    # E_r from Newton's identities applied to the power sums A_r
    # p_r = sum_{i<r} (-1)^(i-1) E_i p_{r-i} + (-1)^(r-1) r E_r, solved for E_r
    E = []
    for r in range(1, 6):
        acc = s.A[r - 1]
        for i in range(1, r):
            acc -= (-1) ** (i - 1) * E[i - 1] * s.A[r - i - 1]
        assert acc % r == 0
        E.append(acc * (-1) ** (r - 1) // r)
    assert tuple(E) == s.E
    assert newton_power_sums(s.E, 5) == list(s.A)


def test_elementary_symmetric_direct():
    vals = [3, 1, 4, 1, 5, 9]
    from itertools import combinations
    from math import prod
    expect = [sum(prod(c) for c in combinations(vals, r)) for r in range(1, 6)]
    assert elementary_symmetric(vals) == expect


def test_phi2_matches_enumeration():
    for n in range(1, 8):
        for g in enumerate_connected(n):
            phi = matching_counts(g).phi
            assert degree_stats(g).phi2 == (phi[2] if len(phi) > 2 else 0)


def test_neighbor_sums(P3):
    assert (neighbor_sums(P3, 1).S, neighbor_sums(P3, 1).T) == (2, 2)
    assert (neighbor_sums(P3, 0).S, neighbor_sums(P3, 0).T) == (2, 4)
    iso = from_edge_list(3, [(0, 1)])
    assert (neighbor_sums(iso, 2).S, neighbor_sums(iso, 2).T) == (0, 0)
    with pytest.raises(GraphError):
        neighbor_sums(P3, 3)


@given(graphs(9))
def test_neighbor_sums_cauchy(g):
    for w in range(g.n):
        ns = neighbor_sums(g, w)
        d = g.degrees[w]
        if d:
            assert ns.T * d >= ns.S ** 2
        assert (ns.S == 0) == (ns.T == 0) == (d == 0)


# -- enumeration ---------------------------------------------------------------

def _bruteforce_classes(n):
    # minimum adjacency code over every vertex permutation, every labelled graph
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    seen = set()
    for g in all_graphs(n):
        if not is_connected(g):
            continue
        best = None
        for perm in permutations(range(n)):
            code = 0
            for i, j in pairs:
                code = code << 1 | g.has_edge(perm[i], perm[j])
            best = code if best is None or code < best else best
        seen.add(best)
    return len(seen)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21)])
def test_enumeration_counts_bruteforce(n, count):
    assert _bruteforce_classes(n) == count
    assert sum(1 for _ in enumerate_connected(n)) == count


def test_enumeration_matches_graph_atlas():
    # independent oracle: the networkx atlas of all graphs on <= 7 vertices
    atlas = {}
    for ng in nx.graph_atlas_g()[1:]:
        if nx.is_connected(ng):
            atlas.setdefault(ng.number_of_nodes(), []).append(ng)
    for n in range(1, 8):
        ours = list(enumerate_connected(n))
        assert len(ours) == len(atlas[n])
        buckets = {}
        for ng in atlas[n]:
            buckets.setdefault(nx.weisfeiler_lehman_graph_hash(ng), []).append(ng)
        matched = set()
        for g in ours:
            ng = nx.Graph()
            ng.add_nodes_from(range(n))
            ng.add_edges_from(g.edges())
            hits = [id(a) for a in buckets.get(nx.weisfeiler_lehman_graph_hash(ng), [])
                    if nx.is_isomorphic(a, ng)]
            assert len(hits) == 1
            matched.add(hits[0])
        assert len(matched) == len(ours)
    assert [len(atlas[n]) for n in range(1, 8)] == [1, 1, 2, 6, 21, 112, 853]


def test_enumeration_deterministic_and_canonical():
    a = [encode_graph6(g) for g in enumerate_connected(6)]
    b = [encode_graph6(g) for g in enumerate_connected(6)]
    assert a == b and len(set(a)) == len(a)
    for g in enumerate_connected(6):
        assert is_connected(g)


@given(graphs(7), st.permutations(range(7)))
def test_canonical_code_is_invariant(g, perm):
    perm = [p for p in perm if p < g.n]
    h = from_edge_list(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert canonical_code(g)[0] == canonical_code(h)[0]


def test_enumeration_range():
    with pytest.raises(ValueError, match="graph6"):
        enumerate_connected(9)
    with pytest.raises(ValueError):
        enumerate_connected(0)


@pytest.mark.slow
def test_enumeration_order_8():
    assert sum(1 for _ in enumerate_connected(8)) == 11117
