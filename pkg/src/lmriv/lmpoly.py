"""Matching counts, the Laplacian matching polynomial and power-sum identities.

The Laplacian matching polynomial of G is

    LM_G(x) = sum over matchings M of (-1)^|M| prod_{v not covered by M} (x - d_G(v))

with every vertex weight frozen at its degree in G itself. Two routes compute
it: an edge-deletion recursion (fast, memoised) and a literal enumeration of
all matchings (the oracle).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Sequence

from .graphcore import Graph, degree_stats, encode_graph6
from .polyalg import IntPolynomial

MEMO_CAP = 1 << 20
BRUTEFORCE_MAX_ORDER = 16


@dataclass(frozen=True)
class MatchingCounts:
    phi: tuple[int, ...]

    def total(self) -> int:
        return sum(self.phi)

    def matching_polynomial(self, n: int) -> IntPolynomial:
        """M_G(x) = sum_j (-1)^j phi_j x^(n-2j)."""
        c = [0] * (n + 1)
        for j, ph in enumerate(self.phi):
            c[n - 2 * j] = (-1) ** j * ph
        return IntPolynomial(c)


@dataclass(frozen=True)
class LMCoefficients:
    """b_1..b_5 with LM = x^n - b_1 x^(n-1) + b_2 x^(n-2) - ..."""

    b: tuple[int, int, int, int, int]


@dataclass(frozen=True)
class PowerSums:
    p: tuple[int, ...]


def _first_edge(adj: tuple[int, ...]) -> tuple[int, int] | None:
    for u, row in enumerate(adj):
        if row:
            return u, (row & -row).bit_length() - 1
    return None


def _delete_edge(adj, u, v):
    a = list(adj)
    a[u] &= ~(1 << v)
    a[v] &= ~(1 << u)
    return tuple(a)


def _delete_vertices(adj, u, v):
    keep = ~((1 << u) | (1 << v))
    a = [row & keep for row in adj]
    a[u] = a[v] = 0
    return tuple(a)


def matching_counts(g: Graph) -> MatchingCounts:
    """phi_j(G) via phi_j(G) = phi_j(G - e) + phi_{j-1}(G - u - v)."""
    memo: dict[tuple[int, ...], list[int]] = {}

    def rec(adj):
        e = _first_edge(adj)
        if e is None:
            return [1]
        hit = memo.get(adj)
        if hit is not None:
            return hit
        u, v = e
        keep = rec(_delete_edge(adj, u, v))
        take = rec(_delete_vertices(adj, u, v))
        out = list(keep) + [0] * max(0, len(take) + 1 - len(keep))
        for j, t in enumerate(take):
            out[j + 1] += t
        if len(memo) < MEMO_CAP:
            memo[adj] = out
        return out

    return MatchingCounts(tuple(rec(g.adj)))


def lm_polynomial(g: Graph) -> IntPolynomial:
    """LM_G by the frozen-weight recursion P(H) = P(H - e) - P(H - u - v).

    The branching edge is the first edge at the lowest-index vertex that still
    has one. Vertices left without edges contribute their weight directly, so
    the memo key is just the surviving edge set.
    """
    deg = g.degrees
    weights = [IntPolynomial.x_minus(d) for d in deg]
    memo: dict[tuple[int, ...], IntPolynomial] = {}
    one = IntPolynomial((1,))

    def covered(adj):
        mask = 0
        for v, row in enumerate(adj):
            if row:
                mask |= 1 << v
        return mask

    def rec(adj, alive):
        # product of weights over alive vertices with no remaining edge,
        # times the recursion on the part that still has edges
        busy = covered(adj)
        out = one
        free = alive & ~busy
        while free:
            low = free & -free
            out = out * weights[low.bit_length() - 1]
            free ^= low
        return out * core(adj) if busy else out

    def core(adj):
        hit = memo.get(adj)
        if hit is not None:
            return hit
        u, v = _first_edge(adj)
        alive = covered(adj)
        res = rec(_delete_edge(adj, u, v), alive) \
            - rec(_delete_vertices(adj, u, v), alive & ~((1 << u) | (1 << v)))
        if len(memo) < MEMO_CAP:
            memo[adj] = res
        return res

    return rec(g.adj, (1 << g.n) - 1)


def iter_matchings(g: Graph):
    """Yield every matching of ``g`` as a list of edges."""
    edges = g.edges()

    def rec(i, used, chosen):
        if i == len(edges):
            yield list(chosen)
            return
        yield from rec(i + 1, used, chosen)
        u, v = edges[i]
        if not (used >> u & 1 or used >> v & 1):
            chosen.append((u, v))
            yield from rec(i + 1, used | 1 << u | 1 << v, chosen)
            chosen.pop()

    yield from rec(0, 0, [])


def lm_polynomial_bruteforce(g: Graph) -> IntPolynomial:
    """LM_G expanded literally over every matching."""
    if g.n > BRUTEFORCE_MAX_ORDER:
        raise ValueError(f"brute-force expansion limited to n <= {BRUTEFORCE_MAX_ORDER}")
    deg = g.degrees
    total = IntPolynomial()
    for M in iter_matchings(g):
        covered = set()
        for u, v in M:
            covered.update((u, v))
        term = IntPolynomial((1,))
        for v in range(g.n):
            if v not in covered:
                term = term * IntPolynomial.x_minus(deg[v])
        total = total + term * (-1) ** len(M)
    return total


def closed_coefficients(g: Graph) -> LMCoefficients:
    """b_1..b_5 from degree aggregates alone (no matching enumeration).

    Positions beyond the order of the graph are reported as 0.
    """
    st = degree_stats(g)
    m, phi2 = st.m, st.phi2
    A1, A2, A3, A4, _ = st.A
    E1, E2, E3, E4, E5 = st.E
    B, C = st.B, st.C
    b = (
        E1,
        E2 - m,
        E3 - m * E1 + A2,
        E4 - m * E2 + E1 * A2 - A3 - B + phi2,
        E5 - m * E3 + E2 * A2 - E1 * (A3 + B) + A4 + C
        + E1 * phi2 - (m + 1) * A2 + A3 + 2 * B,
    )
    return LMCoefficients(tuple(x if j < g.n else 0 for j, x in enumerate(b)))


def closed_coefficients_raw(g: Graph) -> LMCoefficients:
    """The unsimplified per-edge sums, before substituting the A_r identities."""
    st = degree_stats(g)
    deg = g.degrees
    E1, E2, E3, E4, E5 = st.E
    edges = g.edges()
    b3 = E3 - sum(E1 - deg[x] - deg[y] for x, y in edges)
    b4 = E4 - sum(E2 - E1 * (deg[x] + deg[y]) + deg[x] ** 2 + deg[y] ** 2 + deg[x] * deg[y]
                  for x, y in edges) + st.phi2
    two_matchings = [(e, f) for i, e in enumerate(edges) for f in edges[i + 1:]
                     if len({*e, *f}) == 4]
    b5 = (E5
          - sum(E3 - E2 * (deg[x] + deg[y]) + E1 * (deg[x] ** 2 + deg[x] * deg[y] + deg[y] ** 2)
                for x, y in edges)
          + sum(deg[x] ** 3 + deg[x] ** 2 * deg[y] + deg[x] * deg[y] ** 2 + deg[y] ** 3
                for x, y in edges)
          + sum(E1 - sum(deg[z] for z in (*e, *f)) for e, f in two_matchings))
    b = (E1, E2 - st.m, b3, b4, b5)
    return LMCoefficients(tuple(x if j < g.n else 0 for j, x in enumerate(b)))


def coefficients_of(p: IntPolynomial, top: int = 5) -> tuple[int, ...]:
    """Read b_1..b_top off a monic polynomial, 0 past its degree."""
    if p.lc != 1:
        raise ValueError("expected a monic polynomial")
    n = p.degree
    return tuple((-1) ** j * p.coeffs[n - j] if j <= n else 0 for j in range(1, top + 1))


def power_sums_from_coeffs(p, r_max: int = 5) -> PowerSums:
    """p_1..p_r_max from b_1..b_5 by Newton's identities.

    ``p`` may be a monic IntPolynomial or an LMCoefficients record.
    """
    if not 1 <= r_max <= 5:
        raise ValueError("r_max must lie in 1..5")
    if isinstance(p, LMCoefficients):
        b1, b2, b3, b4, b5 = p.b
    else:
        b1, b2, b3, b4, b5 = coefficients_of(p)
    sums = (
        b1,
        b1 ** 2 - 2 * b2,
        b1 ** 3 - 3 * b1 * b2 + 3 * b3,
        b1 ** 4 - 4 * b1 ** 2 * b2 + 2 * b2 ** 2 + 4 * b1 * b3 - 4 * b4,
        b1 ** 5 - 5 * b1 ** 3 * b2 + 5 * b1 * b2 ** 2 + 5 * b1 ** 2 * b3
        - 5 * b2 * b3 - 5 * b1 * b4 + 5 * b5,
    )
    return PowerSums(sums[:r_max])


def p4_rhs(st) -> int:
    A1, A2, A3, A4, _ = st.A
    return A4 + 4 * A3 + 2 * A2 + 4 * st.B - 2 * st.m


def p5_rhs(st) -> int:
    _, A2, A3, A4, A5 = st.A
    return A5 + 5 * A4 + 5 * A3 - 5 * A2 + 5 * st.C + 10 * st.B


@dataclass
class IdentityReport:
    graph6: str
    n: int
    m: int
    p1: int
    p2: int
    p3: int
    p4: int
    p5: int
    p4_rhs: int
    p5_rhs: int
    phi2_formula: int
    phi2_enum: int
    b_closed: list[int]
    b_actual: list[int]
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        d = asdict(self)
        checks = d.pop("checks")
        d["checks"] = checks
        d["pass"] = self.passed
        return d


def identity_report(g: Graph, poly: IntPolynomial | None = None) -> IdentityReport:
    """Evaluate both sides of every coefficient and power-sum identity on ``g``."""
    if poly is None:
        poly = lm_polynomial(g)
    st = degree_stats(g)
    p = power_sums_from_coeffs(poly).p
    phi = matching_counts(g).phi
    phi2_enum = phi[2] if len(phi) > 2 else 0
    b_closed = list(closed_coefficients(g).b)
    b_actual = list(coefficients_of(poly))
    r4, r5 = p4_rhs(st), p5_rhs(st)
    checks = {
        "p1_eq_2m": p[0] == 2 * st.m,
        "p4_identity": p[3] == r4,
        "p5_identity": p[4] == r5,
        "phi2": st.phi2 == phi2_enum,
        "b_closed": b_closed == b_actual,
    }
    return IdentityReport(
        graph6=encode_graph6(g), n=g.n, m=st.m,
        p1=p[0], p2=p[1], p3=p[2], p4=p[3], p5=p[4],
        p4_rhs=r4, p5_rhs=r5,
        phi2_formula=st.phi2, phi2_enum=phi2_enum,
        b_closed=b_closed, b_actual=b_actual, checks=checks,
    )


def newton_power_sums(b: Sequence[int], r_max: int) -> list[int]:
    """General Newton recurrence p_r = sum_{i<r} (-1)^(i-1) b_i p_(r-i) + (-1)^(r-1) r b_r,
    for arbitrary r_max; used to cross-check the closed forms above."""
    b = list(b) + [0] * max(0, r_max - len(b))
    p: list[int] = []
    for r in range(1, r_max + 1):
        s = (-1) ** (r - 1) * r * b[r - 1]
        for i in range(1, r):
            s += (-1) ** (i - 1) * b[i - 1] * p[r - i - 1]
        p.append(s)
    return p
