"""Exhaustive sweeps over connected graphs with checkpoint/resume.

A work unit is one graph together with every added edge set F it is tested
against. Units are processed in a fixed order, optionally by a worker pool,
and reduced in that same order, so reports do not depend on ``jobs``.
"""

from __future__ import annotations

import hashlib
import json
import logging
import multiprocessing
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Iterator

from . import __version__
from .graphcore import (
    MAX_ENUM_ORDER,
    complement_edges,
    decode_graph6,
    encode_graph6,
    enumerate_connected,
    is_connected,
    read_graph6_stream,
)
from .lmpoly import identity_report, lm_polynomial
from .variation import (
    DECISION_WIDTH,
    RealRootAnomaly,
    VariationDecider,
    check_interlacing,
    delta_power_sum_check,
    roots_of,
)

log = logging.getLogger(__name__)

SUITES = ("identities", "interlacing", "delta", "variation")

COUNTER_KEYS = (
    "graphs", "skipped_disconnected", "pairs",
    "identity_pass", "identity_fail",
    "interlacing_pass", "interlacing_fail",
    "delta_pass", "delta_fail",
    "variation_checked", "integral_hits", "one_place", "two_place", "multi_edge_integral",
    "theorem_violations", "conjecture_violations", "anomalies",
)


class CheckpointMismatch(RuntimeError):
    pass


class SweepInterrupted(RuntimeError):
    """Raised when a sweep stops early on request (``stop_after``)."""


@dataclass(frozen=True)
class SweepConfig:
    min_n: int = 2
    max_n: int = 6
    max_f: int | None = 2
    suites: tuple[str, ...] = SUITES
    jobs: int = 1
    checkpoint_path: str | None = None
    input: str = "internal"
    verbose: bool = False
    checkpoint_every: int = 25

    def __post_init__(self):
        if not 1 <= self.min_n <= self.max_n:
            raise ValueError("need 1 <= min_n <= max_n")
        if self.max_f is not None and self.max_f < 1:
            raise ValueError("max_f must be >= 1 (or None for all)")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.checkpoint_every < 1:
            raise ValueError("checkpoint_every must be >= 1")
        bad = set(self.suites) - set(SUITES)
        if bad or not self.suites:
            raise ValueError(f"unknown suites {sorted(bad)}; choose from {SUITES}")
        if self.input == "internal" and self.max_n > MAX_ENUM_ORDER:
            raise ValueError(
                f"internal enumeration stops at n={MAX_ENUM_ORDER}; "
                "use --input with a graph6 stream for larger orders")

    def echo(self) -> dict:
        """The part of the config that determines results."""
        return {
            "min_n": self.min_n,
            "max_n": self.max_n,
            "max_f": "all" if self.max_f is None else self.max_f,
            "suites": [s for s in SUITES if s in self.suites],
            "input": self.input,
            "verbose": self.verbose,
        }

    def config_hash(self) -> str:
        blob = json.dumps(self.echo(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


@dataclass
class SweepReport:
    config: dict
    per_order: dict[int, dict[str, int]]
    records: list[dict]
    version: str = __version__
    wall_time: float = 0.0
    complete: bool = True

    def totals(self) -> dict[str, int]:
        out = dict.fromkeys(COUNTER_KEYS, 0)
        for c in self.per_order.values():
            for k in COUNTER_KEYS:
                out[k] += c[k]
        return out

    @property
    def failures(self) -> int:
        t = self.totals()
        return t["identity_fail"] + t["interlacing_fail"] + t["delta_fail"] + t["anomalies"]

    @property
    def violations(self) -> int:
        t = self.totals()
        return t["theorem_violations"] + t["conjecture_violations"]

    @property
    def exit_code(self) -> int:
        return 0 if self.failures == 0 and self.violations == 0 else 1

    def summary(self) -> dict:
        t = self.totals()
        return {
            "type": "summary",
            "version": self.version,
            "config": self.config,
            "per_order": {str(k): self.per_order[k] for k in sorted(self.per_order)},
            "totals": t,
            "graphs": t["graphs"],
            "pairs": t["pairs"],
            "failures": self.failures,
            "violations": self.violations,
            "status": "ok" if self.exit_code == 0 else "FAIL",
        }


def _repro_detect(g6: str, F) -> str:
    return f"lmriv detect -g '{g6}' --add {','.join(f'{u}-{v}' for u, v in F)}"


def _edge_sets(g, max_f):
    non = complement_edges(g)
    top = len(non) if max_f is None else min(max_f, len(non))
    for k in range(1, top + 1):
        yield from combinations(non, k)


def process_unit(echo: dict, order: int, index: int, g6: str) -> dict:
    """Run every configured suite on one graph. Pure: depends only on args."""
    g = decode_graph6(g6)
    suites = set(echo["suites"])
    max_f = None if echo["max_f"] == "all" else echo["max_f"]
    verbose = echo["verbose"]
    c = dict.fromkeys(COUNTER_KEYS, 0)
    records: list[dict] = []
    out = {"order": order, "index": index, "counters": c, "records": records}

    if not is_connected(g):
        c["skipped_disconnected"] = 1
        return out
    c["graphs"] = 1
    try:
        poly = lm_polynomial(g)
        g_roots = roots_of(poly, DECISION_WIDTH)
    except RealRootAnomaly as exc:
        c["anomalies"] += 1
        records.append({"type": "anomaly", "graph6": g6, "F": [], "status": "FAIL",
                        "detail": str(exc), "repro": f"lmriv roots -g '{g6}'"})
        return out

    if "identities" in suites:
        rep = identity_report(g, poly)
        if rep.passed:
            c["identity_pass"] += 1
        else:
            c["identity_fail"] += 1
        if verbose or not rep.passed:
            rec = {"type": "identities", "graph6": g6, "F": [],
                   "status": "pass" if rep.passed else "FAIL"}
            rec.update({k: v for k, v in rep.to_json().items() if k not in ("graph6", "pass")})
            rec["repro"] = f"lmriv check -g '{g6}'"
            records.append(rec)

    decider = VariationDecider(g, g_roots) if "variation" in suites else None
    for F in _edge_sets(g, max_f):
        c["pairs"] += 1
        F = list(F)
        rec = {"type": "pair", "graph6": g6, "F": [list(p) for p in F]}
        bad = False
        try:
            h_roots = None
            if decider is not None or (len(F) == 1 and "interlacing" in suites):
                h_roots = roots_of(lm_polynomial(g.add_edges(F)), DECISION_WIDTH)
            if len(F) == 1 and "interlacing" in suites:
                il = check_interlacing(g, F[0], g_roots, h_roots)
                c["interlacing_pass" if il.ok else "interlacing_fail"] += 1
                rec["interlacing"] = il.ok
                bad |= not il.ok
            if len(F) == 1 and "delta" in suites:
                dr = delta_power_sum_check(g, F[0], poly,
                                           h_roots.poly if h_roots is not None else None)
                c["delta_pass" if dr.passed else "delta_fail"] += 1
                rec["delta"] = dr.passed
                if not dr.passed:
                    rec["delta_detail"] = {"dp4": dr.dp4, "dp5": dr.dp5}
                bad |= not dr.passed
            if decider is not None:
                vr = decider.decide(F, h_roots)
                c["variation_checked"] += 1
                rec["verdict"] = vr.verdict
                if vr.integral:
                    c["integral_hits"] += 1
                    rec["shifts"] = list(vr.shifts)
                    rec["classification"] = vr.classification
                    rec["patterns"] = vr.patterns
                    rec["certificate"] = vr.certificate
                    if len(F) == 1:
                        c["one_place"] += "one-place" in vr.patterns
                        c["two_place"] += "two-place" in vr.patterns
                        c["theorem_violations"] += 1
                        rec["flag"] = "THEOREM-VIOLATION"
                    else:
                        c["multi_edge_integral"] += 1
                        c["conjecture_violations"] += 1
                        rec["flag"] = "CONJECTURE-VIOLATION"
                    bad = True
        except RealRootAnomaly as exc:
            c["anomalies"] += 1
            rec["detail"] = str(exc)
            bad = True
        if verbose or bad:
            rec["status"] = "FAIL" if bad else "pass"
            rec["repro"] = _repro_detect(g6, F)
            records.append(rec)
    return out


def _unit_task(args):
    return process_unit(*args)


def iter_units(cfg: SweepConfig) -> Iterator[tuple[int, int, str]]:
    """(order, index within order, graph6) in sweep order."""
    if cfg.input == "internal":
        for n in range(cfg.min_n, cfg.max_n + 1):
            for i, g in enumerate(enumerate_connected(n)):
                yield n, i, encode_graph6(g)
        return
    fh = sys.stdin if cfg.input == "-" else open(cfg.input)
    try:
        seen: dict[int, int] = {}
        for g in read_graph6_stream(fh):
            if cfg.min_n <= g.n <= cfg.max_n:
                i = seen.get(g.n, 0)
                seen[g.n] = i + 1
                yield g.n, i, encode_graph6(g)
    finally:
        if fh is not sys.stdin:
            fh.close()


class _State:
    def __init__(self, cfg: SweepConfig):
        self.per_order: dict[int, dict[str, int]] = {}
        self.records: list[dict] = []
        self.units_done = 0
        self.order = cfg.min_n
        self.graph_index = 0

    def absorb(self, res: dict):
        c = self.per_order.setdefault(res["order"], dict.fromkeys(COUNTER_KEYS, 0))
        for k, v in res["counters"].items():
            c[k] += v
        self.records.extend(res["records"])
        self.units_done += 1
        self.order = res["order"]
        self.graph_index = res["index"] + 1


def _write_checkpoint(path: str, cfg: SweepConfig, st: _State):
    data = {
        "config_hash": cfg.config_hash(),
        "order": st.order,
        "graph_index": st.graph_index,
        "f_index": 0,
        "units_done": st.units_done,
        "partial_counters": {str(k): st.per_order[k] for k in sorted(st.per_order)},
        "records": st.records,
    }
    tmp = path + ".tmp"
    with open(tmp, "w") as f:
        json.dump(data, f)
    os.replace(tmp, path)


def _load_checkpoint(path: str, cfg: SweepConfig, st: _State):
    with open(path) as f:
        data = json.load(f)
    if data.get("config_hash") != cfg.config_hash():
        raise CheckpointMismatch(f"checkpoint {path} was written for a different configuration")
    st.per_order = {int(k): v for k, v in data["partial_counters"].items()}
    st.records = data["records"]
    st.units_done = data["units_done"]
    st.order = data["order"]
    st.graph_index = data["graph_index"]


def run_sweep(cfg: SweepConfig, stop_after: int | None = None) -> SweepReport:
    """Sweep every configured graph; resume from ``cfg.checkpoint_path`` if it exists.

    ``stop_after`` simulates an interruption after that many new units: the
    checkpoint is written and SweepInterrupted raised.
    """
    t0 = time.perf_counter()
    st = _State(cfg)
    ck = cfg.checkpoint_path
    if ck and os.path.exists(ck):
        _load_checkpoint(ck, cfg, st)
        log.info("resuming after %d units (order %d, graph %d)",
                 st.units_done, st.order, st.graph_index)
    echo = cfg.echo()
    skip = st.units_done
    tasks = ((echo, n, i, g6) for k, (n, i, g6) in enumerate(iter_units(cfg)) if k >= skip)

    pool = None
    if cfg.jobs > 1:
        pool = multiprocessing.get_context("fork").Pool(cfg.jobs)
        results = pool.imap(_unit_task, tasks, chunksize=4)
    else:
        results = map(_unit_task, tasks)
    new = 0
    try:
        for res in results:
            st.absorb(res)
            new += 1
            if ck and st.units_done % cfg.checkpoint_every == 0:
                _write_checkpoint(ck, cfg, st)
            if stop_after is not None and new >= stop_after:
                if ck:
                    _write_checkpoint(ck, cfg, st)
                raise SweepInterrupted(f"stopped after {new} units")
    finally:
        if pool is not None:
            pool.terminate()
            pool.join()
    if ck:
        _write_checkpoint(ck, cfg, st)
    for n in range(cfg.min_n, cfg.max_n + 1):
        if cfg.input == "internal":
            st.per_order.setdefault(n, dict.fromkeys(COUNTER_KEYS, 0))
    return SweepReport(config=echo, per_order=st.per_order, records=st.records,
                       wall_time=time.perf_counter() - t0)


def report_lines(report: SweepReport) -> list[str]:
    lines = [json.dumps(r) for r in report.records]
    lines.append(json.dumps(report.summary()))
    return lines


def emit_report(report: SweepReport, path) -> None:
    """Write the JSONL report: failing (or, if verbose, all) records, then the summary."""
    text = "\n".join(report_lines(report)) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w") as f:
        f.write(text)
