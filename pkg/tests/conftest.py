"""Shared fixtures: deterministic random-matrix corpora and their one-pass
summaries, shared between the property suites and the acceptance gate so the
expensive scans run once per session."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
import pytest

import dncrit as dc
from dncrit.certify import k_of_n
from dncrit.exppoly import entry_exppoly, grid_entry_values, grid_sign_alternations
from dncrit.signchange import component_bound


def corpus_specs():
    """(n, rank, seed) for the 1000-matrix DN corpus: 200 per size 2..6,
    every fifth draw rank-deficient."""
    specs = []
    seed = 0
    for n in (2, 3, 4, 5, 6):
        for k in range(200):
            rank = max(1, n - 1) if k % 5 == 4 else n
            specs.append((n, rank, seed))
            seed += 1
    return specs


@dataclass
class CorpusSummary:
    """Aggregated facts from one pass over the 1000-matrix corpus."""

    num_matrices: int = 0
    w_violations: list = field(default_factory=list)          # (seed, violations)
    alternation_violations: list = field(default_factory=list)  # (seed, i, j, alts, w)
    interval_violations: list = field(default_factory=list)     # (seed, i, j, count, bound)
    num_interval_checked: int = 0
    tail_violations: list = field(default_factory=list)       # (seed, n, min_val, tol)
    tail3_violations: list = field(default_factory=list)      # n=5 extra window
    worst_tail_margin: float = np.inf                          # min over corpus of min_val/tol
    elapsed: float = 0.0


@pytest.fixture(scope="session")
def dn_corpus_summary() -> CorpusSummary:
    start = time.time()
    out = CorpusSummary()
    for n, rank, seed in corpus_specs():
        A = dc.random_dn(n, rank, seed)
        dec = dc.spectral_decompose(A)
        entry_tol = 1e-9 * A.max_abs()
        invertible = rank == n

        W = dc.sign_change_matrix(dec)
        val = dc.validate_sign_change_matrix(W)
        if not val.ok:
            out.w_violations.append((seed, val.violations))

        t_hi = k_of_n(n) + 2.0
        ts = 0.01 * np.arange(1, int(round(t_hi / 0.01)) + 1)
        vals = grid_entry_values(dec, ts)

        polys = {}
        for i in range(n):
            for j in range(i, n):
                f = entry_exppoly(dec, i, j)
                polys[i, j] = f
                alts = grid_sign_alternations(f, ts)
                if alts > W[i, j]:
                    out.alternation_violations.append((seed, i, j, alts, W[i, j]))

        if invertible:
            win = (ts >= 1.0 + 1e-12) & (ts <= k_of_n(n) + 1.0 + 1e-12)
            scan = dc.ScanConfig(t_min=1.0, t_max=k_of_n(n) + 1.0, step=0.01,
                                 entry_tol=entry_tol)
            for i in range(n):
                for j in range(i, n):
                    out.num_interval_checked += 1
                    if not (vals[i, j, win] < -entry_tol).any():
                        continue  # negative_intervals would return empty
                    count = len(dc.negative_intervals(polys[i, j], scan))
                    bound = component_bound(W[i, j])
                    if count > bound:
                        out.interval_violations.append((seed, i, j, count, bound))

        tail = ts >= dc.crude_bound(n) - 1e-12
        tail_min = float(vals[:, :, tail].min())
        out.worst_tail_margin = min(out.worst_tail_margin,
                                    tail_min / entry_tol if entry_tol else np.inf)
        if tail_min < -entry_tol:
            out.tail_violations.append((seed, n, tail_min, entry_tol))
        if n == 5:
            tail3 = ts >= 3.0 - 1e-12
            t3_min = float(vals[:, :, tail3].min())
            if t3_min < -entry_tol:
                out.tail3_violations.append((seed, n, t3_min, entry_tol))

        out.num_matrices += 1
    out.elapsed = time.time() - start
    return out


def generic_dn(n: int, seed: int) -> dc.SymMatrix:
    """Full-rank Gram DN draw, re-drawn (bounded) until the sign-change
    structure is generic: distinct eigenvalues, no near-zero eigenvector
    coordinates, invertible."""
    for attempt in range(20):
        A = dc.random_dn(n, n, seed + 1_000_000 * attempt)
        dec = dc.spectral_decompose(A)
        W = dc.sign_change_matrix(dec)
        if W.generic and dc.check_dn(A).is_invertible:
            return A
    raise RuntimeError(f"no generic draw found for n={n}, seed={seed}")


@pytest.fixture(scope="session")
def class_sets():
    """Canonical class sets for n = 3, 4, 5, shared across tests."""
    return {n: dc.enumerate_w_classes(n) for n in (3, 4, 5)}


# One line per acceptance criterion, echoed after the run so the PASS/FAIL
# verdicts survive output capture (see test_acceptance._report).
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
