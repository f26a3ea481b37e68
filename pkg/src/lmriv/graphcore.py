"""Simple graphs on at most 32 vertices, graph6 / edge-list I/O, connected
graph enumeration and the degree-sequence aggregates used by the identities.

Adjacency is stored as a tuple of row bitmasks: bit ``j`` of ``adj[i]`` is set
iff ``ij`` is an edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

MAX_ORDER = 32
MAX_ENUM_ORDER = 8

_GRAPH6_HEADER = ">>graph6<<"


class GraphError(ValueError):
    """Invalid graph construction (bad edge, vertex out of range, ...)."""


class Graph6Error(ValueError):
    """Malformed graph6 input. ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_ORDER:
            raise GraphError(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency has wrong number of rows")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full or row >> i & 1:
                raise GraphError(f"row {i} has a self-loop or out-of-range bit")
            r = row
            while r:
                low = r & -r
                j = low.bit_length() - 1
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"adjacency not symmetric at ({i}, {j})")
                r ^= low

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(row.bit_count() for row in self.adj)

    @property
    def m(self) -> int:
        return sum(self.degrees) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        row = self.adj[v]
        return [j for j in range(self.n) if row >> j & 1]

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if self.adj[u] >> v & 1]

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> Graph:
        adj = list(self.adj)
        for u, v in pairs:
            _check_pair(self.n, u, v)
            if adj[u] >> v & 1:
                raise GraphError(f"({u}, {v}) is already an edge")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.n, tuple(adj))

    def to_graph6(self) -> str:
        return encode_graph6(self)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


def _check_pair(n, u, v):
    if not (0 <= u < n and 0 <= v < n):
        raise GraphError(f"vertex index out of range in ({u}, {v}) for n={n}")
    if u == v:
        raise GraphError(f"self-loop at vertex {u}")


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not 0 <= n <= MAX_ORDER:
        raise GraphError(f"order {n} outside 0..{MAX_ORDER}")
    adj = [0] * n
    for u, v in edges:
        _check_pair(n, u, v)
        if adj[u] >> v & 1:
            raise GraphError(f"duplicate edge ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


# -- graph6 ---------------------------------------------------------------

def encode_graph6(g: Graph) -> str:
    n = g.n
    out = [chr(63 + n)]
    acc = nbits = 0
    for j in range(1, n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def decode_graph6(text: str) -> Graph:
    """Parse one graph6 record (short form, optional ``>>graph6<<`` header)."""
    s = text.rstrip("\r\n")
    base = 0
    if s.startswith(_GRAPH6_HEADER):
        base = len(_GRAPH6_HEADER)
        s = s[base:]
    if not s:
        raise Graph6Error("empty graph6 record", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"character {ch!r} outside graph6 range", base + k)
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6Error("long-form order not supported (n > 62)", base)
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds {MAX_ORDER}", base)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[1:]
    if len(body) < need:
        raise Graph6Error(f"truncated record: expected {need} data bytes", base + len(s))
    if len(body) > need:
        raise Graph6Error("trailing data after graph6 record", base + 1 + need)
    adj = [0] * n
    pos = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(body[pos // 6]) - 63
            if byte >> (5 - pos % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            pos += 1
    if need:
        pad = 6 * need - nbits
        if (ord(body[-1]) - 63) & ((1 << pad) - 1):
            raise Graph6Error("nonzero padding bits", base + need)
    return Graph(n, tuple(adj))


def graph6_codec(value):
    """Decode a graph6 string, or encode a :class:`Graph`."""
    if isinstance(value, Graph):
        return encode_graph6(value)
    return decode_graph6(value)


def read_graph6_stream(lines: Iterable[str]) -> Iterator[Graph]:
    """Lazily decode a graph6 file, one record per line; blank lines skipped."""
    for line in lines:
        line = line.strip()
        if line:
            yield decode_graph6(line)


# -- edge-list text format ------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-based)."""
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with a line 'n m'")
    n, m = int(rows[0][0]), int(rows[0][1])
    if len(rows) - 1 != m:
        raise GraphError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise GraphError(f"bad edge line {' '.join(r)!r}")
        edges.append((int(r[0]), int(r[1])))
    return from_edge_list(n, edges)


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


# -- structure --------------------------------------------------------------

def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    seen = frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= g.adj[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def complement_edges(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u in range(g.n) for v in range(u + 1, g.n)
            if not g.adj[u] >> v & 1]


# -- degree statistics ------------------------------------------------------

@dataclass(frozen=True)
class DegreeStats:
    """Degree aggregates. ``A[r-1]`` holds the r-th degree power sum and
    ``E[r-1]`` the r-th elementary symmetric value, for r = 1..5."""

    m: int
    A: tuple[int, int, int, int, int]
    B: int
    C: int
    E: tuple[int, int, int, int, int]
    phi2: int


def elementary_symmetric(values: Iterable[int], top: int = 5) -> list[int]:
    """E_1..E_top of ``values`` via the truncated product of (1 + d t)."""
    e = [1] + [0] * top
    for d in values:
        for r in range(top, 0, -1):
            e[r] += d * e[r - 1]
    return e[1:]


def degree_stats(g: Graph) -> DegreeStats:
    deg = g.degrees
    m = g.m
    A = tuple(sum(d ** r for d in deg) for r in range(1, 6))
    B = C = 0
    for u, v in g.edges():
        a, b = deg[u], deg[v]
        B += a * b
        C += a * a * b + a * b * b
    E = tuple(elementary_symmetric(deg))
    phi2 = (m * m + m - A[1]) // 2
    return DegreeStats(m=m, A=A, B=B, C=C, E=E, phi2=phi2)


@dataclass(frozen=True)
class VertexNeighborSums:
    S: int
    T: int


def neighbor_sums(g: Graph, w: int) -> VertexNeighborSums:
    if not 0 <= w < g.n:
        raise GraphError(f"vertex {w} out of range for n={g.n}")
    deg = g.degrees
    nbrs = g.neighbors(w)
    return VertexNeighborSums(S=sum(deg[x] for x in nbrs),
                              T=sum(deg[x] ** 2 for x in nbrs))


# -- canonical form and enumeration ---------------------------------------

def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    # Equitable refinement: split cells by neighbour counts into every cell
    # until stable. Splitting order depends only on isomorphism-invariant data.
    while True:
        masks = [sum(1 << v for v in c) for c in cells]
        new: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            keyed: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                key = tuple((adj[v] & mk).bit_count() for mk in masks)
                keyed.setdefault(key, []).append(v)
            if len(keyed) > 1:
                changed = True
                new.extend(keyed[k] for k in sorted(keyed))
            else:
                new.append(cell)
        cells = new
        if not changed:
            return cells


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    # Upper-triangle bit string in graph6 order under relabelling v -> pos.
    n = len(order)
    code = 0
    for j in range(1, n):
        row = adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def canonical_code(g: Graph) -> tuple[int, list[int]]:
    """Canonical adjacency code and the vertex order realising it.

    The code is the minimum upper-triangle bit string over all leaves of an
    individualisation-refinement search, so isomorphic graphs get equal codes.
    """
    adj = g.adj
    n = g.n
    if n == 0:
        return 0, []
    best: list = [None, None]

    def search(cells):
        cells = _refine(adj, cells)
        if len(cells) == n:
            order = [c[0] for c in cells]
            c = _code(adj, order)
            if best[0] is None or c < best[0]:
                best[0], best[1] = c, order
            return
        k = next(i for i, c in enumerate(cells) if len(c) > 1)
        for v in cells[k]:
            rest = [w for w in cells[k] if w != v]
            search(cells[:k] + [[v], rest] + cells[k + 1:])

    deg = g.degrees
    by_deg: dict[int, list[int]] = {}
    for v in range(n):
        by_deg.setdefault(deg[v], []).append(v)
    search([by_deg[d] for d in sorted(by_deg)])
    return best[0], best[1]


def canonical_form(g: Graph) -> Graph:
    _, order = canonical_code(g)
    pos = {v: i for i, v in enumerate(order)}
    return from_edge_list(g.n, sorted(tuple(sorted((pos[u], pos[v]))) for u, v in g.edges()))


_ENUM_CACHE: dict[int, tuple[Graph, ...]] = {}


def enumerate_connected(n: int) -> Iterator[Graph]:
    """One canonical representative of every connected graph of order ``n``.

    Order is deterministic: by edge count, then canonical code. Orders above
    8 must come from an external graph6 stream (see ``read_graph6_stream``).
    """
    if not 1 <= n <= MAX_ENUM_ORDER:
        raise ValueError(
            f"internal enumeration supports 1 <= n <= {MAX_ENUM_ORDER}; "
            "for larger orders pipe a graph6 stream (e.g. from geng -c) instead")
    return iter(_connected(n))


def _connected(n: int) -> tuple[Graph, ...]:
    if n in _ENUM_CACHE:
        return _ENUM_CACHE[n]
    if n == 1:
        out = (empty_graph(1),)
    else:
        # every connected graph has a non-cut vertex, so it arises by joining a
        # new vertex to a nonempty subset of a connected graph one order lower
        found: dict[int, Graph] = {}
        for parent in _connected(n - 1):
            for subset in range(1, 1 << (n - 1)):
                adj = list(parent.adj) + [subset]
                for i in range(n - 1):
                    if subset >> i & 1:
                        adj[i] |= 1 << (n - 1)
                cand = Graph(n, tuple(adj))
                code, order = canonical_code(cand)
                if code not in found:
                    pos = {v: i for i, v in enumerate(order)}
                    found[code] = from_edge_list(
                        n, sorted(tuple(sorted((pos[u], pos[v]))) for u, v in cand.edges()))
        out = tuple(found[c] for c in sorted(found, key=lambda c: (c.bit_count(), c)))
    _ENUM_CACHE[n] = out
    return out


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on ``n`` vertices (2^(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield from_edge_list(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
