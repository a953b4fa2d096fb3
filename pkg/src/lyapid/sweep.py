"""The enumeration sweep: classify every candidate graph and tally totals.

Graphs are classified independently with per-graph RNG seeds derived by
hashing the canonical edge set together with the global seed, so a parallel
run, a serial run, and a rerun all produce the same report (timing fields
aside).  Workers share nothing but the immutable configuration.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
import time
from dataclasses import dataclass, field

from .graphs import DiGraph, EnumPolicy, enumerate_candidates, necessary_criterion
from .identifiability import (
    Certificate,
    ClassifyConfig,
    IdentClass,
    IdentVerdict,
    RANK_DEFICIT_WITNESS,
    classify,
)
from .lyapunov import VolatilityMatrix

CSV_HEADER = "p,policy,total_nonsimple,non_identifiable,non_identifiable_eq9,wall_seconds"


def derive_graph_seed(global_seed: int, g: DiGraph) -> int:
    """Stable 64-bit per-graph seed from the canonical edge set."""
    payload = f"{global_seed}:{g.p}:{sorted(g.offdiag_edges)}".encode()
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big")


@dataclass(frozen=True)
class SweepRow:
    """Verdict for one canonical graph of the sweep."""

    p: int
    edges: tuple[tuple[int, int], ...]  # off-diagonal edges, sorted
    num_edges: int  # including self-loops
    classification: IdentClass
    certificate_kind: str
    satisfies_eq9: bool
    elapsed_ms: float
    witness_drift: tuple[tuple[str, ...], ...] | None = None
    witness_sigma: tuple[tuple[str, ...], ...] | None = None

    def graph(self) -> DiGraph:
        return DiGraph(self.p, frozenset(self.edges))

    def to_json(self, include_timing: bool = True) -> dict:
        out: dict = {
            "p": self.p,
            "edges": [list(e) for e in self.edges],
            "num_edges": self.num_edges,
            "class": self.classification.value,
            "certificate_kind": self.certificate_kind,
            "satisfies_eq9": self.satisfies_eq9,
        }
        if include_timing:
            out["elapsed_ms"] = self.elapsed_ms
        if self.witness_drift is not None:
            out["witness_drift"] = [list(r) for r in self.witness_drift]
            out["witness_sigma"] = [list(r) for r in self.witness_sigma]
        return out


@dataclass
class SweepReport:
    """All rows of a sweep plus the three headline totals."""

    p: int
    policy: EnumPolicy
    trials: int
    bound: int
    seed: int
    rows: list[SweepRow] = field(default_factory=list)
    wall_seconds: float = 0.0

    @property
    def totals(self) -> tuple[int, int, int]:
        """(total graphs, non-identifiable, non-identifiable satisfying eq. bound)."""
        total = len(self.rows)
        ni = sum(1 for r in self.rows if r.classification is IdentClass.NON_IDENTIFIABLE)
        ni_eq9 = sum(
            1
            for r in self.rows
            if r.classification is IdentClass.NON_IDENTIFIABLE and r.satisfies_eq9
        )
        return total, ni, ni_eq9

    def to_json(self, include_timing: bool = True) -> dict:
        total, ni, ni_eq9 = self.totals
        out = {
            "p": self.p,
            "policy": self.policy.to_json(),
            "trials": self.trials,
            "bound": self.bound,
            "seed": self.seed,
            "totals": {
                "total_nonsimple": total,
                "non_identifiable": ni,
                "non_identifiable_eq9": ni_eq9,
            },
            "rows": [r.to_json(include_timing) for r in self.rows],
        }
        if include_timing:
            out["wall_seconds"] = self.wall_seconds
        return out

    def canonical_bytes(self) -> bytes:
        """Byte-reproducible body of the report: everything except timings."""
        return json.dumps(self.to_json(include_timing=False), sort_keys=True).encode()

    def summary_csv(self) -> str:
        total, ni, ni_eq9 = self.totals
        policy = f"max_edges={self.policy.resolved_max_edges(self.p)};{self.policy.connectivity}"
        return (
            f"{CSV_HEADER}\n"
            f"{self.p},{policy},{total},{ni},{ni_eq9},{self.wall_seconds:.3f}"
        )


def _row_witness(verdict: IdentVerdict):
    cert: Certificate = verdict.certificate
    if cert.kind != RANK_DEFICIT_WITNESS or not cert.samples:
        return None, None
    sample = cert.samples[0]
    drift = tuple(tuple(str(x) for x in sample.drift.row(i)) for i in range(sample.drift.rows))
    sigma = tuple(tuple(str(x) for x in sample.sigma.row(i)) for i in range(sample.sigma.rows))
    return drift, sigma


def classify_one(task) -> SweepRow:
    """Classify a single (p, edges, trials, bound, seed) task; picklable."""
    p, edges, trials, bound, seed = task
    g = DiGraph(p, frozenset(edges))
    started = time.perf_counter()
    verdict = classify(
        g,
        VolatilityMatrix.identity(p),
        ClassifyConfig(trials=trials, bound=bound, seed=seed),
    )
    elapsed_ms = (time.perf_counter() - started) * 1e3
    drift, sigma = _row_witness(verdict)
    return SweepRow(
        p=p,
        edges=tuple(sorted(g.offdiag_edges)),
        num_edges=g.num_edges,
        classification=verdict.classification,
        certificate_kind=verdict.certificate.kind,
        satisfies_eq9=necessary_criterion(g),
        elapsed_ms=elapsed_ms,
        witness_drift=drift,
        witness_sigma=sigma,
    )


def run_sweep(
    p: int,
    policy: EnumPolicy | None = None,
    trials: int = 5,
    bound: int = 2**20,
    seed: int = 0,
    jobs: int = 1,
) -> SweepReport:
    """Enumerate candidates and classify them all, optionally in parallel.

    The sweep always uses the identity volatility matrix, which decides the
    class for every diagonal volatility matrix.
    """
    policy = policy or EnumPolicy()
    started = time.perf_counter()
    graphs = list(enumerate_candidates(p, policy))
    tasks = [
        (p, tuple(sorted(g.offdiag_edges)), trials, bound, derive_graph_seed(seed, g))
        for g in graphs
    ]
    if jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(processes=jobs) as pool:
            rows = pool.map(classify_one, tasks, chunksize=16)
    else:
        rows = [classify_one(t) for t in tasks]
    rows.sort(key=lambda r: (r.num_edges, r.edges))
    report = SweepReport(
        p=p, policy=policy, trials=trials, bound=bound, seed=seed, rows=rows
    )
    report.wall_seconds = time.perf_counter() - started
    return report
