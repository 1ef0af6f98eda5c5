import pytest
from hypothesis import given, strategies as st

from critgroup.exactlin import IntMatrix, MatrixFormatError, critical_group, group_order
from critgroup.graphs import (
    Multigraph,
    complete,
    cone,
    cuv,
    cycle,
    duplicate,
    dump_graph,
    family,
    laplacian,
    load_graph,
    path,
    reduced_laplacian,
    spanning_tree_count,
)
from critgroup.matforms import ParamMatrixSpec, build

from oracles import sympy_det


def _same_graph(G: Multigraph, H: Multigraph) -> bool:
    return G.vertex_count == H.vertex_count and G.multiplicity == H.multiplicity


def _wheel(n: int) -> Multigraph:
    edges = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
    return Multigraph.from_edges(n + 1, edges, sink=n)


# --- construction ------------------------------------------------------------


def test_basic_families():
    assert path(2).edge_count == 1
    assert all(cycle(4).degree(u) == 2 for u in range(4))
    assert complete(4).edge_count == 6


def test_multigraph_validation():
    with pytest.raises(ValueError):
        Multigraph(2, ((0, 1), (2, 0)))
    with pytest.raises(ValueError):
        Multigraph(2, ((1, 0), (0, 0)))
    with pytest.raises(ValueError):
        Multigraph(2, ((0, -1), (-1, 0)))
    with pytest.raises(ValueError):
        Multigraph(2, ((0, 1), (1, 0)), sink=2)
    with pytest.raises(ValueError):
        path(1)
    with pytest.raises(ValueError):
        cone(path(2), -1)
    with pytest.raises(ValueError):
        duplicate(path(2), 0)


def test_two_block_families():
    K33 = cuv("m", "m", "K", 3)
    assert all(K33.multiplicity[i][j] == 1 for i in range(3) for j in range(3, 6))
    assert K33.edge_count == 9
    hexagon = cuv("m", "m", "L", 3)
    assert all(hexagon.degree(u) == 2 for u in range(6))
    # a 2-regular graph on 6 vertices with 6 spanning trees is the hexagon, not two triangles
    assert spanning_tree_count(hexagon.with_sink(0)) == 6


@pytest.mark.parametrize("m", range(2, 6))
def test_prism_is_cartesian_product(m):
    G = cuv("M", "M", "M", m)
    for u in range(2 * m):
        for v in range(2 * m):
            same_block = (u < m) == (v < m)
            want = int(u != v and (same_block or abs(u - v) == m))
            assert G.multiplicity[u][v] == want


@pytest.mark.parametrize("m", range(2, 6))
def test_special_case_collapses(m):
    assert _same_graph(cuv("M", "M", "K", m), complete(2 * m))
    matching = Multigraph.from_edges(2 * m, [(i, m + i) for i in range(m)])
    assert _same_graph(cuv("m", "m", "M", m), matching)


def test_family_names():
    assert _same_graph(family("LmM", 3), cuv("m", "M", "L", 3))
    assert _same_graph(family("KMM", 3), complete(6))
    with pytest.raises(ValueError):
        family("wheel", 3)


def test_duplicate_and_cone_examples():
    assert duplicate(path(2), 3).multiplicity[0][1] == 3
    assert _same_graph(duplicate(cycle(5), 1), cycle(5))
    assert laplacian(duplicate(cycle(4), 2)) == 2 * laplacian(cycle(4))
    assert _same_graph(cone(cycle(4), 1), _wheel(4))
    assert _same_graph(cone(path(2), 1), complete(3))
    assert cone(path(3), 2).sink == 3


def test_laplacian_examples():
    assert laplacian(path(2)) == IntMatrix.from_rows([[1, -1], [-1, 1]])
    assert reduced_laplacian(cone(path(2), 1)) == IntMatrix.from_rows([[2, -1], [-1, 2]])
    with pytest.raises(ValueError):
        reduced_laplacian(path(3))


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("l", range(1, 4))
@pytest.mark.parametrize("k", range(0, 4))
def test_complete_cone_is_parametric_matrix(n, l, k):
    got = reduced_laplacian(cone(duplicate(complete(n), l), k))
    assert got == build(ParamMatrixSpec("K", n, k + n * l, -l))
    # (a+b)I + bA: diagonal a+b = k + (n-1)l
    assert got == IntMatrix.from_rows([[k + (n - 1) * l if i == j else -l for j in range(n)] for i in range(n)])


def test_spanning_tree_counts():
    assert spanning_tree_count(path(5).with_sink(0)) == 1
    assert spanning_tree_count(cone(cycle(4), 1)) == 45
    assert spanning_tree_count(cone(cycle(6), 1)) == 320
    assert spanning_tree_count(cone(path(3), 0)) == 0


# --- properties ------------------------------------------------------------


@st.composite
def multigraphs(draw, max_n=6, max_mult=3):
    n = draw(st.integers(1, max_n))
    m = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            m[u][v] = m[v][u] = draw(st.integers(0, max_mult))
    return Multigraph(n, tuple(map(tuple, m)))


@given(multigraphs())
def test_laplacian_rows_sum_to_zero(G):
    assert all(sum(row) == 0 for row in laplacian(G).to_rows())


@given(multigraphs(), st.integers(0, 5))
def test_cone_adds_k_identity(G, k):
    assert reduced_laplacian(cone(G, k)) == laplacian(G) + IntMatrix.scalar(k, G.vertex_count)


@given(multigraphs(), st.integers(1, 4))
def test_duplication_scales_laplacian(G, l):
    assert laplacian(duplicate(G, l)) == l * laplacian(G)


@given(multigraphs(), st.integers(0, 3))
def test_matrix_tree_consistency(G, k):
    H = cone(G, k)
    count = spanning_tree_count(H)
    assert count == sympy_det(reduced_laplacian(H))
    order = group_order(critical_group(reduced_laplacian(H)))
    assert order == (count if count else float("inf"))


# --- graph documents -------------------------------------------------------


@given(multigraphs(), st.one_of(st.none(), st.integers(0, 5)))
def test_graph_document_roundtrip(G, sink):
    if sink is not None and sink >= G.vertex_count:
        sink = None
    H = G.with_sink(sink)
    assert load_graph(dump_graph(H)) == H


@pytest.mark.parametrize(
    "text, field",
    [
        ("{", "document"),
        ('{"multiplicity": []}', "vertex_count"),
        ('{"vertex_count": 0, "multiplicity": []}', "vertex_count"),
        ('{"vertex_count": 2, "multiplicity": [["0", "1"]]}', "multiplicity"),
        ('{"vertex_count": 2, "multiplicity": [["0", "1"], ["1"]]}', "multiplicity[1]"),
        ('{"vertex_count": 2, "multiplicity": [["0", "1"], ["one", "0"]]}', "multiplicity[1][0]"),
        ('{"vertex_count": 2, "multiplicity": [["0", "1"], ["2", "0"]]}', "multiplicity"),
        ('{"vertex_count": 2, "multiplicity": [["0", "1"], ["1", "0"]], "sink": "0"}', "sink"),
        ('{"vertex_count": 2, "multiplicity": [["0", "1"], ["1", "0"]], "sink": 5}', "sink"),
    ],
)
def test_malformed_graph_names_field(text, field):
    with pytest.raises(MatrixFormatError) as info:
        load_graph(text)
    assert info.value.field == field
