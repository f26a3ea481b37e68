import random
from fractions import Fraction

import pytest
import sympy

from lmriv.graphcore import (
    GraphError,
    complement_edges,
    empty_graph,
    enumerate_connected,
    from_edge_list,
)
from lmriv.polyalg import IntPolynomial as P
from lmriv.variation import (
    RealRootAnomaly,
    audit_counterexample,
    audit_values,
    check_interlacing,
    classify_shifts,
    contradiction_slack,
    delta_power_sum_check,
    detect_integral_variation,
    lm_roots,
    roots_of,
    _delta_closed,
    _dp,
)

from conftest import random_graph_with_non_edge

K2_K1 = from_edge_list(3, [(0, 1)])


def exact_values(rm):
    out = []
    for r in rm.expanded():
        assert r.exact
        out.append(r.interval.lo)
    return out


# -- roots -----------------------------------------------------------------

def test_lm_roots_examples(K13):
    assert exact_values(lm_roots(from_edge_list(2, [(0, 1)]))) == [2, 0]
    k13 = lm_roots(K13)
    assert exact_values(k13) == [4, 1, 1, 0]
    assert [r.multiplicity for r in k13.roots] == [1, 2, 1]
    assert exact_values(lm_roots(empty_graph(3))) == [0, 0, 0]


def test_lm_roots_irrational(K3):
    rm = lm_roots(K3, Fraction(1, 1 << 20))
    approx = rm.approx()
    s3 = 3 ** 0.5
    assert approx == pytest.approx([2 + s3, 2, 2 - s3], abs=1e-5)
    for r in rm.roots:
        assert r.exact or r.interval.width <= Fraction(1, 1 << 20)


def test_roots_of_flags_complex_roots():
    with pytest.raises(RealRootAnomaly) as exc:
        roots_of(P([1, 0, 1]))
    assert exc.value.poly == P([1, 0, 1])


def test_roots_of_flags_negative_root():
    with pytest.raises(RealRootAnomaly):
        roots_of(P([1, 1]))  # x + 1


def test_real_rooted_n6():
    for g in enumerate_connected(6):
        rm = lm_roots(g, Fraction(1, 8))
        assert rm.n == g.n
        assert all(r.interval.lo >= 0 for r in rm.roots)


# -- interlacing -------------------------------------------------------------

def test_interlacing_P3(P3):
    res = check_interlacing(P3, (0, 2))
    assert res.ok
    assert len(res.comparisons) == 5
    # 2+sqrt3 > 3 > 2 > 1 > 2-sqrt3 > 0: every comparison strict
    assert [c["relation"] for c in res.comparisons] == [">"] * 5


def test_interlacing_2K1():
    res = check_interlacing(empty_graph(2), (0, 1))
    assert res.ok
    assert [c["relation"] for c in res.comparisons] == [">", "=", "="]
    assert res.comparisons[1]["method"] == "gcd-equal"


def test_interlacing_K13_equalities(K13):
    res = check_interlacing(K13, (1, 2))
    assert res.ok
    assert any(c["relation"] == "=" for c in res.comparisons)


def test_interlacing_rejects_edges(P3):
    with pytest.raises(GraphError):
        check_interlacing(P3, (0, 1))
    with pytest.raises(GraphError):
        check_interlacing(P3, (0, 0))
    with pytest.raises(GraphError):
        check_interlacing(P3, (0, 5))


def test_interlacing_exhaustive_n5():
    for n in range(2, 6):
        for g in enumerate_connected(n):
            for e in complement_edges(g):
                assert check_interlacing(g, e).ok


# -- integral variation ------------------------------------------------------

def test_detect_2K1():
    res = detect_integral_variation(empty_graph(2), [(0, 1)])
    assert res.integral and res.verdict == "integral"
    assert res.shifts == (2, 0)
    assert res.classification == "one-place"
    assert "one-place" in res.patterns


def test_detect_K2_K1():
    res = detect_integral_variation(K2_K1, [(0, 2)])
    assert res.integral
    assert res.shifts == (1, 1, 0)
    assert res.classification == "two-place"
    assert res.patterns == ["two-place"]
    assert all(c["shift"] in (0, 1) for c in res.certificate if c["h_root"] != "[0, 0]")


def test_detect_P3_nonintegral(P3):
    res = detect_integral_variation(P3, [(0, 2)])
    assert not res.integral and res.verdict == "non-integral"
    assert res.shifts is None
    assert res.witness is not None
    assert res.witness["approx"] == pytest.approx(2 + 3 ** 0.5, abs=0.2)


def test_detect_multi_edge_positive_control():
    # 3K1 + two edges forming P3: roots {0,0,0} -> {3,1,0}, sum 4 = 2|F|
    res = detect_integral_variation(empty_graph(3), [(0, 1), (1, 2)])
    assert res.integral
    assert sorted(res.shifts, reverse=True) == [3, 1, 0]
    assert res.classification == "general"


def test_detect_validates_F(P3):
    with pytest.raises(GraphError):
        detect_integral_variation(P3, [])
    with pytest.raises(GraphError):
        detect_integral_variation(P3, [(0, 1)])
    with pytest.raises(GraphError):
        detect_integral_variation(P3, [(0, 2), (2, 0)])


def test_classify_shifts():
    assert classify_shifts([2, 0, 0]) == "one-place"
    assert classify_shifts([0, 1, 1]) == "two-place"
    assert classify_shifts([3, 1]) == "general"
    assert classify_shifts([2, 2, 0]) == "general"


def test_no_single_edge_variation_connected_n5():
    for n in range(2, 6):
        for g in enumerate_connected(n):
            for e in complement_edges(g):
                assert not detect_integral_variation(g, [e]).integral


# -- delta identities -------------------------------------------------------

def test_delta_P3(P3):
    rep = delta_power_sum_check(P3, (0, 2))
    assert rep.passed
    # p4(K3) = 2^4 + (2+sqrt3)^4 + (2-sqrt3)^4 = 16 + 194 = 210; p4(P3) = 82
    s = sympy.sqrt(3)
    assert sympy.expand(2 ** 4 + (2 + s) ** 4 + (2 - s) ** 4) == 210
    assert rep.dp4["roots"] == 210 - 82 == 128
    assert len(set(rep.dp4.values())) == 1


def test_delta_2K1():
    rep = delta_power_sum_check(empty_graph(2), (0, 1))
    assert rep.passed
    assert (rep.a, rep.b) == (0, 0)
    assert rep.dp4["roots"] == 16


def test_delta_K2_K1():
    rep = delta_power_sum_check(K2_K1, (0, 2))
    assert rep.passed
    assert rep.dp5["roots"] == 243 + 1 - 32 == 212


def test_delta_exhaustive_n5():
    for n in range(2, 6):
        for g in enumerate_connected(n):
            for e in complement_edges(g):
                assert delta_power_sum_check(g, e).passed


def test_delta_random():
    rng = random.Random(3)
    for _ in range(100):
        g, e = random_graph_with_non_edge(rng)
        assert delta_power_sum_check(g, e).passed


def test_delta_rejects_edge(P3):
    with pytest.raises(GraphError):
        delta_power_sum_check(P3, (1, 2))


def test_delta_expansions_symbolic():
    a, b, Su, Sv, Tu, Tv = sympy.symbols("a b S_u S_v T_u T_v")
    dA, dB, dC = _delta_closed(a, b, Su, Sv, Tu, Tv)
    dp4, dp5 = _dp(dA, dB, dC)
    want4 = (4 * (Su + Sv) + 4 * a ** 3 + 18 * a ** 2 + 4 * a * b + 24 * a
             + 4 * b ** 3 + 18 * b ** 2 + 24 * b + 16)
    want5 = (10 * a * Su + 15 * Su + 10 * b * Sv + 15 * Sv + 5 * Tu + 5 * Tv
             + 5 * a ** 4 + 30 * a ** 3 + 5 * a ** 2 * b + 60 * a ** 2 + 5 * a * b ** 2
             + 30 * a * b + 55 * a + 5 * b ** 4 + 30 * b ** 3 + 60 * b ** 2 + 55 * b + 32)
    assert sympy.expand(dp4 - want4) == 0
    assert sympy.expand(dp5 - want5) == 0


def test_root_side_expansions_symbolic():
    a, b, l1, lk = sympy.symbols("a b l1 lk")
    # eliminate lk with the sum relation, then reduce modulo the product relation
    sub = {lk: a + b + 1 - l1}
    prod = sympy.expand((l1 * lk - a * b).subs(sub))
    d4 = sympy.expand(((l1 + 1) ** 4 - l1 ** 4 + (lk + 1) ** 4 - lk ** 4).subs(sub))
    d5 = sympy.expand(((l1 + 1) ** 5 - l1 ** 5 + (lk + 1) ** 5 - lk ** 5).subs(sub))
    want4 = 4 * a ** 3 + 18 * a ** 2 + 12 * a * b + 28 * a + 4 * b ** 3 + 18 * b ** 2 + 28 * b + 16
    want5 = (5 * a ** 4 + 30 * a ** 3 + 20 * a ** 2 * b + 70 * a ** 2 + 20 * a * b ** 2
             + 70 * a * b + 75 * a + 5 * b ** 4 + 30 * b ** 3 + 70 * b ** 2 + 75 * b + 32)
    for d, want in ((d4, want4), (d5, want5)):
        assert sympy.rem(sympy.expand(d - want), prod, l1) == 0


def test_slack_identity_symbolic():
    a, b, x = sympy.symbols("a b x", positive=True)
    R = 3 * a ** 2 * b + 3 * a * b ** 2 + 8 * a * b + 2 * a ** 2 + 2 * b ** 2 + 4 * a + 4 * b
    sv = 2 * a * b + a + b - x
    lhs = x ** 2 / a + sv ** 2 / b + (2 * a + 3) * x + (2 * b + 3) * sv
    rhs = R + 2 * a * b + (a + b) / (a * b) * (x - a * (b + 1)) ** 2
    assert sympy.simplify(lhs - rhs) == 0


# -- contradiction audit -----------------------------------------------------

def test_slack_values():
    for su in range(0, 5):
        assert contradiction_slack(1, 1, su) == 2 + 2 * (su - 2) ** 2
    for su in range(0, 8):
        assert contradiction_slack(2, 1, su) == 4 + Fraction(3, 2) * (su - 4) ** 2
    with pytest.raises(ValueError):
        contradiction_slack(0, 1, 0)


def test_audit_a1_b1_claim2_fails():
    for su in range(0, 5):
        sv = 4 - su
        # tightest Cauchy choice T = S^2 / degree
        rep = audit_values(1, 1, su, sv, su * su, sv * sv)
        assert rep.relations["claim1"]["holds"]
        assert not rep.relations["claim2"]["holds"]
        assert rep.refuted_by == "claim2"
        assert rep.slack == 2 + 2 * (su - 2) ** 2 > 0


def test_audit_a2_b1_slack():
    rep = audit_values(2, 1, 4, 3, 8, 9)
    assert rep.relations["claim1"]["holds"]
    assert rep.slack == 4
    assert rep.refuted_by != "none"


def test_audit_claim2_forced_true_breaks_cauchy():
    # if Claim 1 and Claim 2 both hold, some Cauchy bound must fail
    a, b, su, sv = 1, 1, 2, 2
    R = 3 + 3 + 8 + 2 + 2 + 4 + 4
    tu = 0
    tv = R - 5 * su - 5 * sv - tu
    rep = audit_values(a, b, su, sv, tu, tv)
    assert rep.relations["claim2"]["holds"]
    assert rep.refuted_by.startswith("cauchy")


def test_audit_disconnected_instance():
    res = detect_integral_variation(K2_K1, [(0, 2)])
    rep = audit_counterexample(K2_K1, (0, 2), res)
    assert (rep.a, rep.b) == (1, 0)
    # the G-roots that move are 2 and 0
    assert rep.relations["lemma_sum"]["lhs"] == 2 == rep.relations["lemma_sum"]["rhs"]
    assert rep.relations["lemma_product"]["lhs"] == 0
    assert rep.slack is None
    assert rep.refuted_by == "none"
    assert "connectivity" in rep.note
    d = rep.to_json()
    assert d["slack"] is None and d["a"] == 1


def test_audit_rejects_non_two_place():
    res = detect_integral_variation(empty_graph(2), [(0, 1)])
    with pytest.raises(ValueError):
        audit_counterexample(empty_graph(2), (0, 1), res)
    with pytest.raises(ValueError):
        audit_counterexample(K2_K1, (0, 2), [2, 0, 0])
