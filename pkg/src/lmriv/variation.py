"""Laplacian matching roots under edge addition.

Everything here is decided exactly: roots live in dyadic isolating intervals,
and any claim that two roots coincide (possibly after an integer shift) is
certified by a gcd having a root in the overlap of both intervals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, permutations
from typing import Iterable, Sequence

import networkx as nx

from .graphcore import Graph, GraphError, degree_stats, encode_graph6, neighbor_sums
from .lmpoly import lm_polynomial, p4_rhs, p5_rhs, power_sums_from_coeffs
from .polyalg import (
    DEFAULT_MAX_WIDTH,
    IntPolynomial,
    IsolatedRoot,
    RationalInterval,
    RootIsolator,
    poly_gcd,
    taylor_shift,
)

DECISION_WIDTH = Fraction(1, 8)


class RealRootAnomaly(RuntimeError):
    """LM_G failed to have n real nonnegative roots."""

    def __init__(self, message: str, poly: IntPolynomial):
        super().__init__(f"{message}: {poly.pretty()}")
        self.poly = poly


@dataclass
class RootMultiset:
    """Distinct roots of ``poly`` in descending order, with multiplicities."""

    roots: list[IsolatedRoot]
    poly: IntPolynomial
    isolator: RootIsolator = field(repr=False, compare=False)

    @property
    def n(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def expanded(self) -> list[IsolatedRoot]:
        return [r for r in self.roots for _ in range(r.multiplicity)]

    def approx(self) -> list[float]:
        return [r.approx() for r in self.expanded()]

    def shrink(self, i: int) -> None:
        r = self.roots[i]
        if not r.exact:
            self.roots[i] = self.isolator.refine(r, r.interval.width / 2)

    def refine_all(self, max_width: Fraction) -> None:
        self.roots = [self.isolator.refine(r, max_width) for r in self.roots]


def roots_of(poly: IntPolynomial, max_width: Fraction = DEFAULT_MAX_WIDTH) -> RootMultiset:
    iso = RootIsolator(poly)
    roots = iso.isolate(max_width)
    total = sum(r.multiplicity for r in roots)
    if total != poly.degree:
        raise RealRootAnomaly(
            f"only {total} of {poly.degree} roots are real", poly)
    zero = Fraction(0)
    fixed = []
    for r in roots:
        iv = r.interval
        if iv.hi < 0 or (iv.lo == iv.hi and iv.lo < 0):
            raise RealRootAnomaly(f"negative root in {iv}", poly)
        if iv.lo < 0 < iv.hi:
            if iso.is_root(zero):
                iv = RationalInterval(zero, zero)
            elif iso.count(Fraction(iv.lo), zero):
                raise RealRootAnomaly(f"negative root in {iv}", poly)
            else:
                iv = RationalInterval(zero, iv.hi)
            r = IsolatedRoot(iv, r.multiplicity)
        fixed.append(r)
    fixed.reverse()
    return RootMultiset(fixed, poly, iso)


def lm_roots(g: Graph, max_width: Fraction = DEFAULT_MAX_WIDTH) -> RootMultiset:
    """Certified Laplacian matching roots of ``g``, largest first."""
    return roots_of(lm_polynomial(g), max_width)


# -- exact comparison ---------------------------------------------------------

class _CommonRoots:
    """Roots shared by two polynomials, via their gcd."""

    def __init__(self, p: IntPolynomial, q: IntPolynomial):
        self.gcd = poly_gcd(p, q)
        self.iso = RootIsolator(self.gcd) if self.gcd.degree > 0 else None

    def has_root_in(self, iv: RationalInterval) -> bool:
        return self.iso is not None and self.iso.count_closed(iv) > 0


def compare_roots(X: RootMultiset, i: int, Y: RootMultiset, j: int,
                  common: _CommonRoots) -> tuple[int, str]:
    """Sign of (root i of X) - (root j of Y), with the deciding method."""
    while True:
        a, b = X.roots[i].interval, Y.roots[j].interval
        if a.lo > b.hi:
            return 1, "separated"
        if a.hi < b.lo:
            return -1, "separated"
        overlap = a.intersect(b)
        if common.has_root_in(overlap):
            return 0, "gcd-equal"
        if a.lo == a.hi and b.lo == b.hi:
            raise AssertionError("distinct exact roots cannot overlap")
        X.shrink(i)
        Y.shrink(j)


def _validate_non_edges(g: Graph, F: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    out = []
    for u, v in F:
        if not (0 <= u < g.n and 0 <= v < g.n) or u == v:
            raise GraphError(f"invalid vertex pair ({u}, {v})")
        p = (min(u, v), max(u, v))
        if g.has_edge(*p):
            raise GraphError(f"({p[0]}, {p[1]}) is already an edge")
        if p in out:
            raise GraphError(f"pair ({p[0]}, {p[1]}) listed twice")
        out.append(p)
    if not out:
        raise GraphError("edge set F must be nonempty")
    return sorted(out)


@dataclass
class InterlacingResult:
    ok: bool
    comparisons: list[dict]


def check_interlacing(g: Graph, e: tuple[int, int],
                      g_roots: RootMultiset | None = None,
                      h_roots: RootMultiset | None = None) -> InterlacingResult:
    """Certify lambda_1(G+e) >= lambda_1(G) >= lambda_2(G+e) >= ... >= lambda_n(G).

    Roots start from coarse intervals and are refined only where a comparison
    is not yet decided.
    """
    (e,) = _validate_non_edges(g, [e])
    G = g_roots if g_roots is not None else lm_roots(g, DECISION_WIDTH)
    H = h_roots if h_roots is not None else lm_roots(g.add_edges([e]), DECISION_WIDTH)
    common = _CommonRoots(H.poly, G.poly)
    # expanded positions -> distinct-root index
    gi = [k for k, r in enumerate(G.roots) for _ in range(r.multiplicity)]
    hi = [k for k, r in enumerate(H.roots) for _ in range(r.multiplicity)]
    chain: list[tuple[str, int]] = []
    for t in range(g.n):
        chain.append(("H", t))
        chain.append(("G", t))
    src = {"H": (H, hi), "G": (G, gi)}
    comparisons = []
    ok = True
    for (xa, ta), (xb, tb) in zip(chain, chain[1:]):
        X, xi = src[xa]
        Y, yi = src[xb]
        sign, how = compare_roots(X, xi[ta], Y, yi[tb], common)
        comparisons.append({
            "left": f"lambda_{ta + 1}({'G+e' if xa == 'H' else 'G'})",
            "right": f"lambda_{tb + 1}({'G+e' if xb == 'H' else 'G'})",
            "relation": {1: ">", 0: "=", -1: "<"}[sign],
            "method": how,
        })
        ok &= sign >= 0
    return InterlacingResult(ok, comparisons)


# -- integral variation -------------------------------------------------------

@dataclass
class VariationResult:
    integral: bool
    shifts: tuple[int, ...] | None
    classification: str | None
    patterns: list[str]
    witness: dict | None
    certificate: list[dict]
    F: list[tuple[int, int]]

    @property
    def verdict(self) -> str:
        return "integral" if self.integral else "non-integral"


def classify_shifts(shifts: Sequence[int]) -> str:
    s = sorted(shifts, reverse=True)
    rest_zero = all(t == 0 for t in s[2:])
    if s[:1] == [2] and all(t == 0 for t in s[1:]):
        return "one-place"
    if s[:2] == [1, 1] and rest_zero:
        return "two-place"
    return "general"


def _pattern_feasible(G: RootMultiset, H: RootMultiset,
                      edges: dict[tuple[int, int], int], nonzero: Sequence[int]) -> bool:
    """Can G's roots be shifted by the multiset ``nonzero`` (rest by 0) to give H?"""
    targets = {(j, k): i for (i, j), k in edges.items()}
    gmult = [r.multiplicity for r in G.roots]
    hmult = [r.multiplicity for r in H.roots]
    values = sorted(nonzero)
    for picks in combinations_with_replacement(range(len(gmult)), len(values)):
        used = [0] * len(gmult)
        for j in picks:
            used[j] += 1
        if any(used[j] > gmult[j] for j in range(len(gmult))):
            continue
        # try every distinct way of attaching the values to the picked roots
        for perm in set(permutations(values)):
            got = [0] * len(hmult)
            fine = True
            for j, k in zip(picks, perm):
                i = targets.get((j, k))
                if i is None:
                    fine = False
                    break
                got[i] += 1
            if not fine:
                continue
            for j in range(len(gmult)):
                left = gmult[j] - used[j]
                if left:
                    i = targets.get((j, 0))
                    if i is None:
                        fine = False
                        break
                    got[i] += left
            if fine and got == hmult:
                return True
    return False


class VariationDecider:
    """Decides integral variation for many edge sets added to one graph,
    reusing the graph's roots and shifted polynomials."""

    def __init__(self, g: Graph, g_roots: RootMultiset | None = None):
        self.g = g
        self.G = g_roots if g_roots is not None else lm_roots(g, DECISION_WIDTH)
        self.G.refine_all(DECISION_WIDTH)
        self._shifted: dict[int, IntPolynomial] = {}

    def shifted(self, k: int) -> IntPolynomial:
        if k not in self._shifted:
            self._shifted[k] = taylor_shift(self.G.poly, k)
        return self._shifted[k]

    def decide(self, F: Iterable[tuple[int, int]],
               h_roots: RootMultiset | None = None) -> VariationResult:
        """``h_roots``, if given, must be the roots of G + F."""
        F = _validate_non_edges(self.g, F)
        H = h_roots if h_roots is not None else lm_roots(self.g.add_edges(F), DECISION_WIDTH)
        H.refine_all(DECISION_WIDTH)
        G = self.G
        kmax = 2 * len(F)
        commons: dict[int, _CommonRoots] = {}
        edges: dict[tuple[int, int], int] = {}
        certificate = []
        for i, hr in enumerate(H.roots):
            a = hr.interval
            for j, gr in enumerate(G.roots):
                b = gr.interval
                lo, hi = a.lo - b.hi, a.hi - b.lo
                k = -(-lo.numerator // lo.denominator)  # ceil(lo)
                if k > hi or k < 0 or k > kmax:
                    continue
                if k not in commons:
                    commons[k] = _CommonRoots(H.poly, self.shifted(k))
                cr = commons[k]
                overlap = a.intersect(RationalInterval(b.lo + k, b.hi + k))
                if overlap is None or not cr.has_root_in(overlap):
                    continue
                edges[(i, j)] = k
                certificate.append({
                    "h_root": str(a), "g_root": str(b), "shift": k,
                    "gcd_degree": cr.gcd.degree,
                })

        net = nx.DiGraph()
        for j, gr in enumerate(G.roots):
            net.add_edge("s", ("g", j), capacity=gr.multiplicity)
        for i, hr in enumerate(H.roots):
            net.add_edge(("h", i), "t", capacity=hr.multiplicity)
        for (i, j) in sorted(edges):
            net.add_edge(("g", j), ("h", i))
        n = G.n
        value, flow = nx.maximum_flow(net, "s", "t") if edges else (0, {})

        if value != n:
            inflow = [0] * len(H.roots)
            for (i, j) in edges:
                inflow[i] += flow[("g", j)].get(("h", i), 0)
            i = next(i for i, hr in enumerate(H.roots) if inflow[i] < hr.multiplicity)
            has_edge = any(ii == i for ii, _ in edges)
            witness = {
                "h_root": str(H.roots[i].interval),
                "approx": H.roots[i].approx(),
                "multiplicity": H.roots[i].multiplicity,
                "reason": ("multiplicities cannot be matched" if has_edge
                           else f"no root of G differs from it by an integer in [0, {kmax}]"),
            }
            return VariationResult(False, None, None, [], witness, certificate, F)

        shifts: list[int] = []
        for j in range(len(G.roots)):
            mine = []
            for (i, jj), k in edges.items():
                if jj == j:
                    mine += [k] * flow[("g", j)].get(("h", i), 0)
            shifts += sorted(mine, reverse=True)
        assert sum(shifts) == kmax, "shift total must equal 2|F|"
        cls = classify_shifts(shifts)
        patterns = []
        if kmax == 2:
            if _pattern_feasible(G, H, edges, [2]):
                patterns.append("one-place")
            if _pattern_feasible(G, H, edges, [1, 1]):
                patterns.append("two-place")
        else:
            patterns.append(cls)
        return VariationResult(True, tuple(shifts), cls, patterns, None, certificate, F)


def detect_integral_variation(g: Graph, F: Iterable[tuple[int, int]]) -> VariationResult:
    """Exactly decide whether the roots of G+F are those of G shifted by
    nonnegative integers."""
    return VariationDecider(g).decide(F)


# -- power-sum differences ----------------------------------------------------

def _delta_closed(a, b, Su, Sv, Tu, Tv):
    dA = [(a + 1) ** r - a ** r + (b + 1) ** r - b ** r for r in range(1, 6)]
    dB = Su + Sv + (a + 1) * (b + 1)
    dC = (2 * a + 1) * Su + Tu + (2 * b + 1) * Sv + Tv + (a + 1) * (b + 1) * (a + b + 2)
    return dA, dB, dC


def _dp(dA, dB, dC):
    dp4 = dA[3] + 4 * dA[2] + 2 * dA[1] + 4 * dB - 2
    dp5 = dA[4] + 5 * dA[3] + 5 * dA[2] - 5 * dA[1] + 5 * dC + 10 * dB
    return dp4, dp5


@dataclass
class DeltaReport:
    graph6: str
    edge: tuple[int, int]
    a: int
    b: int
    dp4: dict[str, int]
    dp5: dict[str, int]
    deltas: dict[str, dict[str, object]]

    @property
    def passed(self) -> bool:
        same = lambda d: len(set(map(str, d.values()))) == 1
        return same(self.dp4) and same(self.dp5) and all(same(v) for v in self.deltas.values())


def delta_power_sum_check(g: Graph, e: tuple[int, int],
                          g_poly: IntPolynomial | None = None,
                          h_poly: IntPolynomial | None = None) -> DeltaReport:
    """Compare the change in p4 and p5 on adding ``e`` along three routes:
    the polynomials themselves, full degree statistics of both graphs, and the
    incremental formulas in the endpoint degrees and neighbour sums."""
    (e,) = _validate_non_edges(g, [e])
    u, v = e
    h = g.add_edges([e])
    pg = power_sums_from_coeffs(g_poly if g_poly is not None else lm_polynomial(g)).p
    ph = power_sums_from_coeffs(h_poly if h_poly is not None else lm_polynomial(h)).p
    sg, sh = degree_stats(g), degree_stats(h)
    a, b = g.degrees[u], g.degrees[v]
    nu, nv = neighbor_sums(g, u), neighbor_sums(g, v)

    dA_full = [sh.A[r] - sg.A[r] for r in range(5)]
    dB_full = sh.B - sg.B
    dC_full = sh.C - sg.C
    dA_inc, dB_inc, dC_inc = _delta_closed(a, b, nu.S, nv.S, nu.T, nv.T)
    dp4_inc, dp5_inc = _dp(dA_inc, dB_inc, dC_inc)
    S, Su, Sv, Tu, Tv = nu.S + nv.S, nu.S, nv.S, nu.T, nv.T
    dp4_expanded = (4 * S + 4 * a ** 3 + 18 * a ** 2 + 4 * a * b + 24 * a
                    + 4 * b ** 3 + 18 * b ** 2 + 24 * b + 16)
    dp5_expanded = (10 * a * Su + 15 * Su + 10 * b * Sv + 15 * Sv + 5 * Tu + 5 * Tv
                    + 5 * a ** 4 + 30 * a ** 3 + 5 * a ** 2 * b + 60 * a ** 2 + 5 * a * b ** 2
                    + 30 * a * b + 55 * a + 5 * b ** 4 + 30 * b ** 3 + 60 * b ** 2 + 55 * b + 32)
    return DeltaReport(
        graph6=encode_graph6(g), edge=e, a=a, b=b,
        dp4={
            "roots": ph[3] - pg[3],
            "stats": p4_rhs(sh) - p4_rhs(sg),
            "incremental": dp4_inc,
            "expanded": dp4_expanded,
        },
        dp5={
            "roots": ph[4] - pg[4],
            "stats": p5_rhs(sh) - p5_rhs(sg),
            "incremental": dp5_inc,
            "expanded": dp5_expanded,
        },
        deltas={
            "A": {"stats": dA_full, "incremental": dA_inc},
            "B": {"stats": dB_full, "incremental": dB_inc},
            "C": {"stats": dC_full, "incremental": dC_inc},
        },
    )


# -- contradiction audit ------------------------------------------------------

def contradiction_slack(a: int, b: int, s_u) -> Fraction:
    """2ab + (a+b)/(ab) * (S_u - a(b+1))^2, defined for a, b >= 1."""
    if a < 1 or b < 1:
        raise ValueError("slack needs both endpoint degrees >= 1")
    s_u = Fraction(s_u)
    return 2 * a * b + Fraction(a + b, a * b) * (s_u - a * (b + 1)) ** 2


@dataclass
class ContradictionReport:
    a: int
    b: int
    relations: dict[str, dict]
    slack: Fraction | None
    refuted_by: str
    note: str

    def to_json(self) -> dict:
        return {
            "a": self.a, "b": self.b,
            "relations": {k: {kk: str(vv) if isinstance(vv, Fraction) else vv
                              for kk, vv in v.items()} for k, v in self.relations.items()},
            "slack": None if self.slack is None else str(self.slack),
            "refuted_by": self.refuted_by,
            "note": self.note,
        }


def audit_values(a: int, b: int, S_u, S_v, T_u, T_v,
                 lam_sum=None, lam_prod=None) -> ContradictionReport:
    """Run the two-place proof chain on raw numbers."""
    R = 3 * a * a * b + 3 * a * b * b + 8 * a * b + 2 * a * a + 2 * b * b + 4 * a + 4 * b
    rel: dict[str, dict] = {}

    def put(name, lhs, rhs, holds):
        rel[name] = {"lhs": lhs, "rhs": rhs, "holds": bool(holds)}

    if lam_sum is not None:
        put("lemma_sum", lam_sum, a + b + 1, lam_sum == a + b + 1)
    if lam_prod is not None:
        put("lemma_product", lam_prod, a * b, lam_prod == a * b)
    put("claim1", S_u + S_v, 2 * a * b + a + b, S_u + S_v == 2 * a * b + a + b)
    put("claim2", (2 * a + 3) * S_u + (2 * b + 3) * S_v + T_u + T_v, R,
        (2 * a + 3) * S_u + (2 * b + 3) * S_v + T_u + T_v == R)
    if a >= 1:
        put("cauchy_u", a * T_u, S_u * S_u, a * T_u >= S_u * S_u)
    if b >= 1:
        put("cauchy_v", b * T_v, S_v * S_v, b * T_v >= S_v * S_v)

    slack = contradiction_slack(a, b, S_u) if a >= 1 and b >= 1 else None
    failed = [k for k, v in rel.items() if not v["holds"]]
    if failed:
        refuted_by = failed[0]
        note = f"relation {failed[0]} fails on this instance"
    elif slack is not None:
        refuted_by = "final_inequality"
        note = f"all relations hold, yet R >= R + slack with slack = {slack} > 0"
    else:
        refuted_by = "none"
        note = ("an endpoint has degree 0, so the Cauchy step is unavailable and "
                "no contradiction arises: the connectivity hypothesis is needed")
    return ContradictionReport(a, b, rel, slack, refuted_by, note)


def audit_counterexample(g: Graph, e: tuple[int, int],
                         claimed: VariationResult | Sequence[int]) -> ContradictionReport:
    """Replay the impossibility argument on a claimed two-place instance."""
    shifts = claimed.shifts if isinstance(claimed, VariationResult) else claimed
    if shifts is None or classify_shifts(shifts) != "two-place":
        if not (isinstance(claimed, VariationResult) and "two-place" in claimed.patterns):
            raise ValueError("claim is not a two-place variation")
    (e,) = _validate_non_edges(g, [e])
    u, v = e
    h = g.add_edges([e])
    pg = power_sums_from_coeffs(lm_polynomial(g), 3).p
    ph = power_sums_from_coeffs(lm_polynomial(h), 3).p
    # with exactly two roots moving up by one:
    #   dp2 = 2 s + 2,  dp3 = 3 q + 3 s + 2,  s = l1 + lk,  q = l1^2 + lk^2
    s = Fraction(ph[1] - pg[1] - 2, 2)
    q = Fraction(ph[2] - pg[2] - 2 - 3 * s, 3)
    prod = (s * s - q) / 2
    nu, nv = neighbor_sums(g, u), neighbor_sums(g, v)
    return audit_values(g.degrees[u], g.degrees[v], nu.S, nv.S, nu.T, nv.T, s, prod)
