import math

import pytest

from secants.construct import ec_region
from secants.ecurve import (CurveError, cubic_root_count, curve_count,
                            curve_count_bruteforce, ec_spectrum_scan,
                            line_curve_check)
from secants.plane import build_plane
from secants.spectrum import verify_counting_identities


def test_curve_count_examples():
    c = curve_count(5, 0, 1)
    assert (c.count, c.trace) == (6, 0)
    assert curve_count(5, -1, 0).count == 8
    with pytest.raises(CurveError, match="singular"):
        curve_count(5, 0, 0)
    with pytest.raises(CurveError, match="prime"):
        curve_count(9, 1, 1)
    with pytest.raises(CurveError, match="prime"):
        curve_count(3, 1, 1)


def test_cubic_root_count_examples():
    assert cubic_root_count(5, 1, 0) == 3       # x(x-1)(x+1)
    assert cubic_root_count(5, 0, 2) == 1       # cubing is a bijection mod 5
    # oracle check: enumerate directly
    for (p, m, b) in [(5, 1, 0), (5, 0, 2), (7, 0, 1), (7, 0, -1), (11, 3, 4)]:
        expect = sum((x ** 3 - m * x - b) % p == 0 for x in range(p))
        assert cubic_root_count(p, m, b) == expect


def test_root_counts_mod7_cube_roots_of_unity():
    # x^3 = 1 has the three roots {1, 2, 4} since 3 | 7 - 1
    assert cubic_root_count(7, 0, 1) == 3
    assert {x for x in range(7) if (x ** 3 - 1) % 7 == 0} == {1, 2, 4}


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_count_matches_bruteforce_oracle(p):
    for a in range(p):
        for b in range(p):
            if (4 * a ** 3 + 27 * b * b) % p == 0:
                continue
            assert curve_count(p, a, b).count == curve_count_bruteforce(p, a, b)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23])
def test_hasse_bound(p):
    for a in range(p):
        for b in range(p):
            if (4 * a ** 3 + 27 * b * b) % p == 0:
                continue
            c = curve_count(p, a, b)
            assert c.hasse_ok
            assert abs(c.trace) <= 2 * math.sqrt(p)


def test_line_curve_check_example():
    pl = build_plane(5)
    r = line_curve_check(pl, 1, 0)
    assert (r.n_ell, r.roots, r.curve_count) == (5, 3, 8)
    assert r.holds and r.skipped is None
    r2 = line_curve_check(pl, 0, 1)
    assert r2.holds
    assert r2.curve_count == curve_count(5, 0, -1).count


def test_line_curve_check_skips_singular():
    pl = build_plane(5)
    # -4*27 + 27*b^2 = 0 mod 5 at b in {2, 3} for m = 3
    r = line_curve_check(pl, 3, 2)
    assert r.skipped == "singular" and not r.holds


def test_line_curve_check_region_reuse():
    pl = build_plane(13)
    region = ec_region(pl)
    for m, b in [(1, 1), (4, 7), (12, 2)]:
        if (-4 * m ** 3 + 27 * b * b) % 13 == 0:
            continue
        r = line_curve_check(pl, m, b, region=region)
        assert r.holds
        assert r.curve_count == 2 * r.n_ell + 1 - r.roots


@pytest.mark.parametrize("p", [5, 7, 11, 13, 19, 29])
def test_scan_relation_and_identities(p):
    rep = ec_spectrum_scan(build_plane(p))
    assert rep.set_size == p * (p + 1) // 2
    assert rep.relation_violations == 0
    assert rep.skipped_vertical == p
    assert rep.checked_lines + rep.skipped_singular == p * p
    assert verify_counting_identities(rep.spectrum).ok
    assert rep.spectrum.mode_count >= rep.cor_ceiling
    d = rep.as_dict()
    assert d["skipped_lines"] == rep.skipped_vertical + rep.skipped_singular
    assert d["mode_ratio"] > 0


def test_scan_agrees_with_scalar_path():
    p = 11
    pl = build_plane(p)
    region = ec_region(pl)
    rep = ec_spectrum_scan(pl)
    checked = 0
    for m in range(p):
        for b in range(p):
            r = line_curve_check(pl, m, b, region=region)
            if r.skipped:
                continue
            checked += 1
            assert r.holds
    assert checked == rep.checked_lines


def test_trace_parity_under_b_negation():
    # x -> -x maps the chi-sum of (a, b) to chi(-1) times that of (a, -b),
    # so the trace flips sign exactly when p = 3 (mod 4)
    for p in (7, 11, 13, 17, 19):
        sign = 1 if p % 4 == 1 else -1
        for a in range(p):
            for b in range(1, p):
                if (4 * a ** 3 + 27 * b * b) % p == 0:
                    continue
                t1 = curve_count(p, a, b).trace
                t2 = curve_count(p, a, -b).trace
                assert t2 == sign * t1, (p, a, b)
