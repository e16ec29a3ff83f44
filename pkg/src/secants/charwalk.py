"""Quadratic-character walks and projection profiles of the under-parabola
region.

The walk tracks prefix sums of the Legendre symbol along consecutive
integers; the moving sum does the same over a window of fixed length.
For the region under y = alpha*x^2 + beta*x + gamma, the profile of a
parallel class maps each intercept b to the secant size of y = dx + b.
Counting is always direct (each member point is binned by its intercept),
so the verified laws below are genuine checks, not restatements:

  L1  step law: pr_d(b+1) - pr_d(b) = chi((beta-d)^2 + 4*alpha*(b-gamma)),
      including the wrap at b = p-1 (this is the form that holds exactly
      under the strict integer-lift order; the sign-flipped d-free variant
      -chi((beta-1)^2 + 4*alpha*(b+1-gamma)) is evaluated alongside for
      comparison and reported, never asserted);
  L2  steps have absolute value <= 1 and the attained values form an
      integer interval;
  L3  every slope's profile is a cyclic shift of the slope-1 profile;
  L4  the number of non-vertical non-horizontal affine k-secants equals
      (p-1) * #{b : pr_1(b) = k};
  L5  the attained interval has length between sqrt(p)/(2*pi) and
      sqrt(p)*ln(p).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .construct import ConstructionError, ParabolaParams
from .field import is_prime, legendre_table
from .plane import ProjectivePlane


@dataclass
class Walk:
    """Prefix sums of the quadratic character starting at a."""

    p: int
    a: int
    values: list            # values[t] = sum_{j<=t} chi(a+j), t in [0, p-1]


@dataclass
class LevelStats:
    """Occupancy statistics of a walk: how often each level is visited."""

    p: int
    counts: dict            # level -> number of t with values[t] == level
    zero_count: int
    max_level_count: int
    range: int              # max - min of the visited levels
    range_within_sqrt_log: bool    # range <= sqrt(p) * ln(p)
    zeros_within_sqrt_log2: bool   # zero_count <= sqrt(p) * ln(p)^2


@dataclass
class ProjectionProfile:
    """Secant sizes of one parallel class of the under-parabola region,
    indexed by intercept."""

    p: int
    params: ParabolaParams
    d: int
    pr: np.ndarray          # pr[b] = |S ∩ {y = dx + b}|


@dataclass
class LawReport:
    p: int
    params: ParabolaParams
    l1_ok: bool = False
    l2_ok: bool = False
    l3_ok: bool = False
    l4_ok: bool = False
    l5_ok: bool = False
    l1_first_fail: tuple | None = None     # (d, b)
    l2_first_fail: int | None = None       # d
    l3_shifts: list = field(default_factory=list)
    l4_first_fail: int | None = None       # k
    step_law: str = ""
    d_free_variant: str = ""
    d_free_match_fraction: float = 0.0
    range_d1: int = 0
    range_lo: float = 0.0
    range_hi: float = 0.0

    @property
    def all_ok(self) -> bool:
        return self.l1_ok and self.l2_ok and self.l3_ok and self.l4_ok and self.l5_ok

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "params": {"alpha": self.params.alpha, "beta": self.params.beta,
                       "gamma": self.params.gamma},
            "laws": {"L1": self.l1_ok, "L2": self.l2_ok, "L3": self.l3_ok,
                     "L4": self.l4_ok, "L5": self.l5_ok},
            "l1_first_fail": self.l1_first_fail,
            "l2_first_fail": self.l2_first_fail,
            "l4_first_fail": self.l4_first_fail,
            "shifts": self.l3_shifts,
            "step_law": self.step_law,
            "d_free_variant": self.d_free_variant,
            "d_free_match_fraction": self.d_free_match_fraction,
            "range_d1": self.range_d1,
            "range_bounds": [self.range_lo, self.range_hi],
            "all_ok": self.all_ok,
        }


def _require_odd_prime(p: int):
    if p == 2 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def psi_walk(p: int, a: int) -> Walk:
    _require_odd_prime(p)
    chi = legendre_table(p)
    steps = chi[(a + np.arange(p, dtype=np.int64)) % p]
    return Walk(p=p, a=a % p, values=np.cumsum(steps, dtype=np.int64).tolist())


def phi_sum(p: int, u: int, a: int) -> int:
    """Moving character sum chi(u) + chi(u-1) + ... + chi(u-a+1)."""
    _require_odd_prime(p)
    if not 0 <= a <= p:
        raise ValueError(f"window length {a} out of range [0, {p}]")
    chi = legendre_table(p)
    return int(chi[(u - np.arange(a, dtype=np.int64)) % p].sum())


def level_stats(walk: Walk) -> LevelStats:
    counts = Counter(walk.values)
    lo, hi = min(walk.values), max(walk.values)
    span = hi - lo
    zeros = counts.get(0, 0)
    sq = math.sqrt(walk.p)
    ln = math.log(walk.p)
    return LevelStats(
        p=walk.p, counts=dict(sorted(counts.items())), zero_count=zeros,
        max_level_count=max(counts.values()), range=span,
        range_within_sqrt_log=span <= sq * ln,
        zeros_within_sqrt_log2=zeros <= sq * ln * ln)


def _profile_setup(plane: ProjectivePlane, params: ParabolaParams):
    F = plane.field
    if F.k != 1 or F.p <= 3:
        raise ConstructionError("projection profiles require a prime plane with p > 3")
    p = F.p
    params = params.reduced(p)
    x = np.arange(p, dtype=np.int64)
    f = (params.alpha * x * x + params.beta * x + params.gamma) % p
    return p, params, f


def projection_profile(plane: ProjectivePlane, params: ParabolaParams, d: int) -> ProjectionProfile:
    """Profile of the slope-d class by direct counting over x."""
    p, params, f = _profile_setup(plane, params)
    d %= p
    if d == 0:
        raise ValueError("horizontal slope excluded")
    x = np.arange(p, dtype=np.int64)
    b = np.arange(p, dtype=np.int64)
    y = (d * x[None, :] + b[:, None]) % p
    pr = (y > f[None, :]).sum(axis=1)
    return ProjectionProfile(p=p, params=params, d=d, pr=pr.astype(np.int64))


def profile_range_check(plane: ProjectivePlane, params: ParabolaParams, d: int = 1):
    """Length of the attained-value interval of one profile against the
    sqrt(p)/(2*pi) .. sqrt(p)*ln(p) window; returns (range, lo, hi, ok)."""
    prof = projection_profile(plane, params, d)
    span = int(prof.pr.max() - prof.pr.min())
    lo = math.sqrt(prof.p) / (2 * math.pi)
    hi = math.sqrt(prof.p) * math.log(prof.p)
    return span, lo, hi, lo <= span <= hi


def _all_profiles(p: int, f: np.ndarray) -> np.ndarray:
    """(p, p) matrix P with P[d, b] = direct secant count of y = dx + b."""
    y = np.arange(p, dtype=np.int64)
    member = y[None, :] > f[:, None]
    xs, ys = np.nonzero(member)
    P = np.empty((p, p), dtype=np.int64)
    for d in range(p):
        P[d] = np.bincount((ys - d * xs) % p, minlength=p)
    return P


def verify_projection_laws(plane: ProjectivePlane, params: ParabolaParams) -> LawReport:
    """Check laws L1-L4 exactly for every slope d != 0 and intercept, plus
    the L5 range window, all against directly counted profiles."""
    p, params, f = _profile_setup(plane, params)
    alpha, beta, gamma = params.alpha, params.beta, params.gamma
    chi = legendre_table(p)
    P = _all_profiles(p, f)
    report = LawReport(p=p, params=params)
    report.step_law = "pr_d(b+1) - pr_d(b) = chi((beta-d)^2 + 4*alpha*(b-gamma))"
    report.d_free_variant = "-chi((beta-1)^2 + 4*alpha*(b+1-gamma))"

    d_arr = np.arange(p, dtype=np.int64)
    b_arr = np.arange(p, dtype=np.int64)

    # L1: wrap-around first differences against the character of the
    # discriminant of f(x) = dx + b.
    delta = np.roll(P, -1, axis=1) - P
    disc = ((beta - d_arr[:, None]) ** 2 + 4 * alpha * (b_arr[None, :] - gamma)) % p
    expect = chi[disc].astype(np.int64)
    mism = delta[1:] != expect[1:]
    report.l1_ok = not mism.any()
    if not report.l1_ok:
        d0, b0 = np.argwhere(mism)[0]
        report.l1_first_fail = (int(d0) + 1, int(b0))

    # d-free variant, evaluated for comparison only
    alt = -chi[((beta - 1) ** 2 + 4 * alpha * (b_arr + 1 - gamma)) % p].astype(np.int64)
    report.d_free_match_fraction = float((delta[1:] == alt[None, :]).mean())

    # L2: unit steps and interval image
    report.l2_ok = True
    for d in range(1, p):
        row = P[d]
        span = int(row.max() - row.min())
        if np.abs(delta[d]).max() > 1 or len(np.unique(row)) != span + 1:
            report.l2_ok = False
            report.l2_first_fail = d
            break

    # L3: every class is a cyclic shift of the slope-1 class
    rolls = np.empty((p, p), dtype=np.int64)
    for s in range(p):
        rolls[s] = np.roll(P[1], -s)
    report.l3_ok = True
    shifts = []
    for d in range(1, p):
        match = np.nonzero((rolls == P[d][None, :]).all(axis=1))[0]
        if len(match) == 0:
            report.l3_ok = False
            shifts.append(None)
        else:
            shifts.append(int(match[0]))
    report.l3_shifts = shifts

    # L4: class-wise frequencies aggregate to (p-1) * histogram of pr_1
    hist_all = np.bincount(P[1:].ravel(), minlength=p + 2)
    hist_one = np.bincount(P[1], minlength=p + 2)
    l4 = hist_all == (p - 1) * hist_one
    report.l4_ok = bool(l4.all())
    if not report.l4_ok:
        report.l4_first_fail = int(np.nonzero(~l4)[0][0])

    # L5: range window on the slope-1 profile
    report.range_d1 = int(P[1].max() - P[1].min())
    report.range_lo = math.sqrt(p) / (2 * math.pi)
    report.range_hi = math.sqrt(p) * math.log(p)
    report.l5_ok = report.range_lo <= report.range_d1 <= report.range_hi
    return report


def occupancy_scaling(p: int, a: int = 0) -> dict:
    """Walk occupancy statistics scaled against sqrt(p) * log-power
    envelopes (exploratory output, nothing asserted)."""
    stats = level_stats(psi_walk(p, a))
    sq = math.sqrt(p)
    ln = math.log(p)
    return {
        "p": p, "a": a,
        "zero_count": stats.zero_count,
        "max_level_count": stats.max_level_count,
        "range": stats.range,
        "zero_over_sqrt": stats.zero_count / sq,
        "max_level_over_sqrt": stats.max_level_count / sq,
        "envelope_log1": ln,
        "envelope_log2": ln * ln,
    }
