import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from walkform.graphs import Graph, complete, dynkin_d, emit_graph6, parse_graph6, path, random_graph
from walkform.linalg import BitMatrix, pack_bits


def test_dynkin_d4():
    G = dynkin_d(4)
    assert G.edges == {(0, 2), (1, 2), (2, 3)}
    assert G.degrees() == (1, 1, 3, 1)


def test_dynkin_d6():
    assert dynkin_d(6).edges == {(0, 2), (1, 2), (2, 3), (3, 4), (4, 5)}


@pytest.mark.parametrize("n", [3, 0, -1])
def test_dynkin_rejects_small(n):
    with pytest.raises(ValueError):
        dynkin_d(n)


@pytest.mark.parametrize("n", range(5, 40))
def test_dynkin_degrees(n):
    G = dynkin_d(n)
    deg = G.degrees()
    assert G.num_edges == n - 1
    assert [v for v in range(n) if deg[v] == 3] == [2]
    assert [v for v in range(n) if deg[v] == 1] == [0, 1, n - 1]


@pytest.mark.parametrize("n", range(4, 41, 2))
def test_dynkin_kernel_vectors_mod2(n):
    # alpha = (1,1,0,...,0), beta = (0,1,0,1,...,0,1) are killed by A mod 2
    A = BitMatrix.from_int_matrix(dynkin_d(n).adjacency_matrix())
    alpha = pack_bits([1, 1] + [0] * (n - 2))
    beta = pack_bits([i % 2 for i in range(n)])
    assert A.apply(alpha) == 0
    assert A.apply(beta) == 0


def test_path():
    assert path(1).num_edges == 0 and path(1).n == 1
    assert path(2).num_edges == 1
    assert path(5).degrees() == (1, 2, 2, 2, 1)
    with pytest.raises(ValueError):
        path(0)


def test_graph_invariants():
    with pytest.raises(ValueError):
        Graph(3, frozenset({(1, 1)}))
    with pytest.raises(ValueError):
        Graph(3, frozenset({(0, 3)}))
    G = Graph(3, frozenset({(2, 0)}))
    assert G.has_edge(0, 2) and G.has_edge(2, 0)
    A = G.adjacency_matrix()
    assert A == A.T
    assert all(A[i, i] == 0 for i in range(3))


def test_graph6_examples():
    K2 = parse_graph6("A_")
    assert K2.n == 2 and K2.edges == {(0, 1)}
    E3 = parse_graph6("B?")
    assert E3.n == 3 and E3.num_edges == 0
    assert emit_graph6(dynkin_d(6)) == "EXCG"
    assert parse_graph6(">>graph6<<A_\n") == K2
    assert parse_graph6(b"A_") == K2


@pytest.mark.parametrize("bad", ["", "A", "B", "A__", "A\x7f", "~??"])
def test_graph6_malformed(bad):
    with pytest.raises(ValueError):
        parse_graph6(bad)


def test_graph6_cap():
    # 4097 = 1*4096 + 0*64 + 1 in the 3-byte size form
    with pytest.raises(ValueError, match="cap"):
        parse_graph6("~" + chr(64) + chr(63) + chr(64))


def test_graph6_long_header_matches_networkx():
    G = random_graph(70, 0.1, 3)
    s = emit_graph6(G)
    assert s.startswith("~")
    ref = nx.from_graph6_bytes(s.encode())
    assert sorted(tuple(sorted(e)) for e in ref.edges()) == sorted(G.edges)
    assert parse_graph6(s) == G


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 30), p=st.floats(0, 1), seed=st.integers(0, 2**32))
def test_graph6_roundtrip_against_networkx(n, p, seed):
    G = random_graph(n, p, seed) if n else Graph(0)
    s = emit_graph6(G)
    assert parse_graph6(s) == G
    H = nx.Graph()
    H.add_nodes_from(range(n))
    H.add_edges_from(G.edges)
    assert nx.to_graph6_bytes(H, header=False).decode().strip() == s


def test_random_graph():
    assert random_graph(5, 0, 42).num_edges == 0
    assert random_graph(5, 1, 42) == complete(5)
    assert random_graph(9, 0.4, 7) == random_graph(9, 0.4, 7)
    with pytest.raises(ValueError):
        random_graph(5, 1.5, 0)
    with pytest.raises(ValueError):
        random_graph(5, -0.1, 0)


def test_relabel():
    G = dynkin_d(5)
    H = G.relabel([4, 3, 2, 1, 0])
    assert H.degrees() == tuple(reversed(G.degrees()))
