"""Multigraphs, duplication and cones, Laplacians, and the named families.

Vertex order is fixed so reduced Laplacians compare entrywise with the
parametric matrices in :mod:`critgroup.matforms`: path and cycle vertices
run 0..n-1, two-block families list the u-block then the v-block, and a
cone vertex is appended last and becomes the sink.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .exactlin import IntMatrix, MatrixFormatError, det, parse_decimal

FAMILIES = (
    "path", "cycle", "complete",
    "Kmm", "Lmm", "Mmm", "KMM", "LMM", "MMM", "KmM", "LmM", "MmM",
)
MIN_SIZE = {"path": 2, "cycle": 3, "complete": 2}


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    multiplicity: tuple[tuple[int, ...], ...]
    sink: int | None = None

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise ValueError("a multigraph needs at least one vertex")
        if len(self.multiplicity) != n or any(len(r) != n for r in self.multiplicity):
            raise ValueError("multiplicity matrix must be vertex_count x vertex_count")
        for u in range(n):
            if self.multiplicity[u][u] != 0:
                raise ValueError(f"loop at vertex {u}")
            for v in range(u + 1, n):
                m = self.multiplicity[u][v]
                if m < 0:
                    raise ValueError(f"negative multiplicity between {u} and {v}")
                if m != self.multiplicity[v][u]:
                    raise ValueError(f"asymmetric multiplicity between {u} and {v}")
        if self.sink is not None and not 0 <= self.sink < n:
            raise ValueError(f"sink {self.sink} out of range")

    @classmethod
    def from_edges(cls, n: int, edges, sink: int | None = None) -> "Multigraph":
        m = [[0] * n for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            m[u][v] += 1
            m[v][u] += 1
        return cls(n, tuple(map(tuple, m)), sink)

    @property
    def edge_count(self) -> int:
        n = self.vertex_count
        return sum(self.multiplicity[u][v] for u in range(n) for v in range(u + 1, n))

    def degree(self, u: int) -> int:
        return sum(self.multiplicity[u])

    def with_sink(self, sink: int | None) -> "Multigraph":
        return Multigraph(self.vertex_count, self.multiplicity, sink)

    def adjacency(self) -> IntMatrix:
        return IntMatrix.from_rows(self.multiplicity)


def _check_size(kind: str, n: int):
    lo = MIN_SIZE[kind]
    if n < lo:
        raise ValueError(f"{kind} needs n >= {lo}, got {n}")


def path(n: int) -> Multigraph:
    _check_size("path", n)
    return Multigraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Multigraph:
    _check_size("cycle", n)
    return Multigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Multigraph:
    _check_size("complete", n)
    return Multigraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cuv(kind_u: str, kind_v: str, coupling: str, m: int) -> Multigraph:
    """Two blocks u_1..u_m, v_1..v_m.

    A block of kind ``"M"`` is complete inside, kind ``"m"`` has no
    internal edges. ``coupling`` joins u_i to v_j for all pairs (``"K"``),
    for i != j (``"L"``), or for i == j (``"M"``).
    """
    if kind_u not in "mM" or kind_v not in "mM" or len(kind_u) != 1 or len(kind_v) != 1:
        raise ValueError(f"block kinds must be 'm' or 'M', got {kind_u!r}, {kind_v!r}")
    if coupling not in ("K", "L", "M"):
        raise ValueError(f"coupling must be K, L or M, got {coupling!r}")
    if m < 2:
        raise ValueError(f"two-block families need m >= 2, got {m}")
    edges = []
    for offset, kind in ((0, kind_u), (m, kind_v)):
        if kind == "M":
            edges += [(offset + i, offset + j) for i in range(m) for j in range(i + 1, m)]
    for i in range(m):
        for j in range(m):
            if coupling == "K" or (coupling == "L" and i != j) or (coupling == "M" and i == j):
                edges.append((i, m + j))
    return Multigraph.from_edges(2 * m, edges)


def duplicate(G: Multigraph, l: int) -> Multigraph:
    if l < 1:
        raise ValueError(f"duplication factor must be >= 1, got {l}")
    return Multigraph(
        G.vertex_count,
        tuple(tuple(l * x for x in row) for row in G.multiplicity),
        G.sink,
    )


def cone(G: Multigraph, k: int) -> Multigraph:
    """Append a sink joined to every old vertex by ``k`` parallel edges."""
    if k < 0:
        raise ValueError(f"cone multiplicity must be >= 0, got {k}")
    n = G.vertex_count
    rows = [tuple(row) + (k,) for row in G.multiplicity]
    rows.append((k,) * n + (0,))
    return Multigraph(n + 1, tuple(rows), n)


def laplacian(G: Multigraph) -> IntMatrix:
    n = G.vertex_count
    out = [[-x for x in row] for row in G.multiplicity]
    for u in range(n):
        out[u][u] = G.degree(u)
    return IntMatrix.from_rows(out)


def reduced_laplacian(G: Multigraph) -> IntMatrix:
    if G.sink is None:
        raise ValueError("reduced Laplacian needs a sink")
    if G.vertex_count < 2:
        raise ValueError("reduced Laplacian of a single vertex is empty")
    return laplacian(G).delete(G.sink)


def spanning_tree_count(G: Multigraph) -> int:
    """Matrix-tree count; 0 for a disconnected graph."""
    return det(reduced_laplacian(G))


def family(name: str, size: int, l: int = 1, cone_k: int | None = None) -> Multigraph:
    """Build ``name`` at ``size``, duplicate by ``l`` and optionally cone by ``cone_k``.

    Two-block names read coupling, u-kind, v-kind: ``"LmM"`` is
    ``cuv("m", "M", "L", size)``.
    """
    if name in ("path", "cycle", "complete"):
        G = {"path": path, "cycle": cycle, "complete": complete}[name](size)
    elif name in FAMILIES:
        G = cuv(name[1], name[2], name[0], size)
    else:
        raise ValueError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")
    G = duplicate(G, l)
    return G if cone_k is None else cone(G, cone_k)


# ---------------------------------------------------------------------------
# Graph documents


def dump_graph(G: Multigraph) -> str:
    doc = {
        "vertex_count": G.vertex_count,
        "multiplicity": [[str(x) for x in row] for row in G.multiplicity],
        "sink": G.sink,
    }
    return json.dumps(doc) + "\n"


def load_graph(text: str) -> Multigraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError("document", f"invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise MatrixFormatError("document", "expected an object")
    if "vertex_count" not in doc:
        raise MatrixFormatError("vertex_count", "missing")
    n = doc["vertex_count"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MatrixFormatError("vertex_count", f"expected a positive integer, got {n!r}")
    rows = doc.get("multiplicity")
    if not isinstance(rows, list) or len(rows) != n:
        raise MatrixFormatError("multiplicity", f"expected {n} rows")
    values = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"multiplicity[{i}]", f"expected {n} values")
        values.append(tuple(parse_decimal(x, f"multiplicity[{i}][{j}]") for j, x in enumerate(row)))
    sink = doc.get("sink")
    if sink is not None and (isinstance(sink, bool) or not isinstance(sink, int)):
        raise MatrixFormatError("sink", f"expected an integer or null, got {sink!r}")
    try:
        return Multigraph(n, tuple(values), sink)
    except ValueError as exc:
        raise MatrixFormatError("multiplicity" if sink is None or 0 <= sink < n else "sink", str(exc)) from None
