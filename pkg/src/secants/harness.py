"""Search and sweep drivers for the mode-frequency question: how small can
the most common secant size's frequency be?

The exhaustive search settles it exactly for q <= 4 by scanning every
subset up to complement duality (the histogram of a complement is the
reversed histogram, so only sizes <= N/2 need visiting).  The local search
probes larger planes with seeded best-improvement hill descent on
single-point flips.  Sweeps evaluate a construction over a prime list and
emit rows whose CSV form is byte-stable across runs and thread counts.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from random import Random

import numpy as np

from .construct import build_construction
from .plane import ProjectivePlane, build_plane
from .spectrum import (PointSet, bounds_report, compute_spectrum,
                       cor_bound_ceiling, verify_counting_identities)

EXHAUSTIVE_MAX_Q = 4
_CHUNK_BITS = 16

SWEEP_SCHEMA = "secants-sweep-v1"
SWEEP_COLUMNS = ("q", "construction", "seed", "set_size", "mode_k", "mode_count",
                 "cor_bound", "prop_bound", "thm_lower", "thm_lower_clamped",
                 "ratio", "eq1", "eq2", "var_ok", "cor_ok", "error")

_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


@dataclass
class SearchResult:
    q: int
    best_mode_count: int
    witness: int             # point-index bitmap of a minimizing set
    subsets_examined: int
    method: str              # "exhaustive" | "local"

    def witness_set(self, plane: ProjectivePlane) -> PointSet:
        return PointSet(plane, self.witness, {"construction": self.method})


@dataclass
class SweepRow:
    q: int
    construction: str
    seed: int
    set_size: int
    mode_k: int
    mode_count: int
    cor_bound: float
    prop_bound: float
    thm_lower: float
    ratio: float
    eq1: bool
    eq2: bool
    var_ok: bool
    cor_ok: bool
    error: str = ""

    @property
    def checks_ok(self) -> bool:
        return self.eq1 and self.eq2 and self.var_ok and self.cor_ok and not self.error

    def csv_values(self):
        return (str(self.q), self.construction, str(self.seed), str(self.set_size),
                str(self.mode_k), str(self.mode_count),
                f"{self.cor_bound:.6f}", f"{self.prop_bound:.6f}",
                f"{self.thm_lower:.6f}", f"{max(self.thm_lower, 0.0):.6f}",
                f"{self.ratio:.6f}",
                str(int(self.eq1)), str(int(self.eq2)), str(int(self.var_ok)),
                str(int(self.cor_ok)), self.error)


def _popcount_u32(arr: np.ndarray) -> np.ndarray:
    out = _POP8[arr & 0xFF].astype(np.uint8)
    out += _POP8[(arr >> 8) & 0xFF]
    out += _POP8[(arr >> 16) & 0xFF]
    out += _POP8[(arr >> 24) & 0xFF]
    return out


def _mode_counts(secants: np.ndarray, q: int) -> np.ndarray:
    """Row-wise histogram maximum of an (M, N) matrix of secant sizes."""
    best = np.zeros(secants.shape[0], dtype=np.int32)
    for k in range(q + 2):
        np.maximum(best, (secants == k).sum(axis=1, dtype=np.int32), out=best)
    return best


def exhaustive_minmax(plane: ProjectivePlane, threads: int = 1) -> SearchResult:
    """Exact minimum over all subsets of the maximal secant-size frequency.

    Only bitmaps with at most N/2 bits set are enumerated (complement
    duality); the witness is the numerically smallest enumerated bitmap
    attaining the minimum, regardless of chunking or thread count.
    """
    q, N = plane.q, plane.N
    if q > EXHAUSTIVE_MAX_Q:
        raise ValueError("exhaustive limit")
    line_masks = np.array([plane.line_bitmap(i) for i in range(N)], dtype=np.uint32)
    half = N // 2

    def chunk_best(lo: int, hi: int):
        masks = np.arange(lo, hi, dtype=np.uint32)
        masks = masks[_popcount_u32(masks) <= half]
        if masks.size == 0:
            return None
        secants = _popcount_u32(masks[:, None] & line_masks[None, :])
        modes = _mode_counts(secants, q)
        i = int(modes.argmin())          # first occurrence = smallest bitmap
        return int(modes[i]), int(masks[i]), masks.size

    step = 1 << _CHUNK_BITS
    ranges = [(lo, min(lo + step, 1 << N)) for lo in range(0, 1 << N, step)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda r: chunk_best(*r), ranges))
    else:
        results = [chunk_best(*r) for r in ranges]

    best = (N + 1, 0)
    examined = 0
    for res in results:
        if res is None:
            continue
        mode, mask, count = res
        examined += count
        if (mode, mask) < best:
            best = (mode, mask)
    return SearchResult(q=q, best_mode_count=best[0], witness=best[1],
                        subsets_examined=examined, method="exhaustive")


def _tie_score(hist, N, q) -> int:
    """Cleared-denominator variance of the histogram counts (flatter is
    smaller); integer-exact so ties break identically everywhere."""
    return (q + 2) * sum(c * c for c in hist) - N * N


def local_search(plane: ProjectivePlane, iters: int = 200, seed: int = 0,
                 restarts: int = 5) -> SearchResult:
    """Seeded hill descent on single-point flips minimizing the mode count,
    ties broken by histogram variance; best over restarts.

    A small-plane probe: each step rescans all N flips, so it needs the
    plane's incidence cache (roughly q <= 149)."""
    q, N = plane.q, plane.N
    point_lines = plane.point_lines_matrix
    rng = Random(seed)
    best = None
    examined = 0

    for _ in range(max(1, restarts)):
        bitmap = rng.getrandbits(N) & ((1 << N) - 1)
        n_ell = [(plane.line_bitmap(i) & bitmap).bit_count() for i in range(N)]
        hist = [0] * (q + 2)
        for v in n_ell:
            hist[v] += 1
        cur = (max(hist), _tie_score(hist, N, q))

        for _ in range(iters):
            move = None
            for pt in range(N):
                sign = -1 if (bitmap >> pt) & 1 else 1
                trial = hist[:]
                for ell in point_lines[pt]:
                    v = n_ell[ell]
                    trial[v] -= 1
                    trial[v + sign] += 1
                score = (max(trial), _tie_score(trial, N, q))
                examined += 1
                if score < cur and (move is None or score < move[0]):
                    move = (score, pt)
            if move is None:
                break
            cur, pt = move
            sign = -1 if (bitmap >> pt) & 1 else 1
            bitmap ^= 1 << pt
            for ell in point_lines[pt]:
                hist[n_ell[ell]] -= 1
                n_ell[ell] += sign
                hist[n_ell[ell]] += 1

        cand = (cur[0], cur[1], bitmap)
        if best is None or cand < best:
            best = cand
    return SearchResult(q=q, best_mode_count=best[0], witness=best[2],
                        subsets_examined=examined, method="local")


def _sweep_cell(plane: ProjectivePlane, construction: str, seed: int) -> SweepRow:
    q = plane.q
    try:
        pset = build_construction(plane, construction, seed=seed)
        spec = compute_spectrum(plane, pset)
        ident = verify_counting_identities(spec)
        bounds = bounds_report(q, pset.size)
        return SweepRow(
            q=q, construction=construction, seed=seed, set_size=pset.size,
            mode_k=spec.mode_k, mode_count=spec.mode_count,
            cor_bound=bounds.cor_bound, prop_bound=bounds.prop_bound,
            thm_lower=bounds.thm_lower,
            ratio=spec.mode_count / q ** 1.5,
            eq1=ident.eq1, eq2=ident.eq2, var_ok=ident.var_ok,
            cor_ok=spec.mode_count >= cor_bound_ceiling(q))
    except Exception as exc:            # recorded per row, sweep continues
        return SweepRow(q=q, construction=construction, seed=seed, set_size=0,
                        mode_k=0, mode_count=0, cor_bound=0.0, prop_bound=0.0,
                        thm_lower=0.0, ratio=0.0, eq1=False, eq2=False,
                        var_ok=False, cor_ok=False, error=str(exc))


def run_sweep(primes, construction: str, seeds, threads: int = 1):
    """One row per (prime, seed) cell, in input order regardless of the
    worker count."""
    if isinstance(seeds, int):
        seeds = range(seeds)
    seeds = list(seeds)
    planes = {q: build_plane(q) for q in primes}
    for plane in planes.values():       # prime shared caches before dispatch
        if plane.line_bitmaps is None:
            plane.frame.coords_arrays()
    cells = [(q, s) for q in primes for s in seeds]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(
                lambda c: _sweep_cell(planes[c[0]], construction, c[1]), cells))
    else:
        rows = [_sweep_cell(planes[q], construction, s) for q, s in cells]
    return rows


def sweep_to_csv(rows) -> str:
    buf = io.StringIO()
    buf.write(f"# schema={SWEEP_SCHEMA}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_values())
    return buf.getvalue()
