import itertools

import numpy as np
import pytest

from secants.plane import PlaneError, affine_embed, build_plane


@pytest.mark.parametrize("q,n_points,per_line", [(2, 7, 3), (3, 13, 4), (4, 21, 5)])
def test_build_plane_counts(q, n_points, per_line):
    pl = build_plane(q)
    assert pl.N == n_points
    assert len(pl.points) == n_points and len(pl.lines) == n_points
    for ell in range(pl.N):
        assert len(pl.line_point_indices(ell)) == per_line


def test_points_normalized_and_sorted():
    for q in (3, 4, 5, 9):
        pl = build_plane(q)
        pts = pl.points
        assert pts == sorted(pts)
        for t in pts:
            lead = next(c for c in t if c != 0)
            assert lead == 1
        # round trip through index_of, including unnormalized input
        F = pl.field
        for i, t in enumerate(pts):
            assert pl.index_of(t) == i
            s = 2 % q if q > 2 else 1
            if s > 1:
                scaled = tuple(F.mul(s, c) for c in t)
                assert pl.index_of(scaled) == i


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_plane_axioms_exhaustive(q):
    pl = build_plane(q)
    rows = [frozenset(pl.line_point_indices(ell)) for ell in range(pl.N)]
    # two points determine exactly one line, and line_through finds it
    for P, Q in itertools.combinations(range(pl.N), 2):
        joining = [ell for ell, r in enumerate(rows) if P in r and Q in r]
        assert len(joining) == 1
        assert pl.line_through(P, Q) == joining[0]
    # dually: two lines meet in exactly one point
    for L, M in itertools.combinations(range(pl.N), 2):
        assert len(rows[L] & rows[M]) == 1
        assert pl.lines_meet(L, M) in rows[L] & rows[M]


@pytest.mark.parametrize("q", [3, 5, 8, 9])
def test_incidence_matrices_are_mutual_transposes(q):
    pl = build_plane(q)
    lp = pl.line_points_matrix
    dual = pl.point_lines_matrix
    inc = np.zeros((pl.N, pl.N), dtype=bool)
    for ell in range(pl.N):
        inc[ell, lp[ell]] = True
    inc_T = np.zeros((pl.N, pl.N), dtype=bool)
    for pt in range(pl.N):
        inc_T[dual[pt], pt] = True
    assert (inc == inc_T).all()
    assert (inc.sum(axis=0) == q + 1).all() and (inc.sum(axis=1) == q + 1).all()


def test_line_through_examples(fano):
    i001 = fano.index_of((0, 0, 1))
    i010 = fano.index_of((0, 1, 0))
    i100 = fano.index_of((1, 0, 0))
    assert fano.triple(fano.line_through(i001, i010)) == (1, 0, 0)
    assert fano.triple(fano.line_through(i100, i010)) == (0, 0, 1)
    with pytest.raises(PlaneError, match="identical"):
        fano.line_through(3, 3)
    pl3 = build_plane(3)
    P, Q = pl3.index_of((1, 1, 1)), pl3.index_of((1, 2, 1))
    L = pl3.triple(pl3.line_through(P, Q))
    F = pl3.field
    for pt in ((1, 1, 1), (1, 2, 1)):
        acc = 0
        for a, x in zip(L, pt):
            acc = F.add(acc, F.mul(a, x))
        assert acc == 0


def test_affine_frame_q5():
    pl = build_plane(5)
    fr = affine_embed(pl)
    affine = {fr.affine_point(x, y) for x in range(5) for y in range(5)}
    assert len(affine) == 25
    infinite = set(pl.line_point_indices(fr.infinite_line))
    assert len(infinite) == 6 and not (affine & infinite)
    # y = x contains the diagonal plus one infinite point
    on = set(pl.line_point_indices(fr.affine_line(1, 0)))
    diag = {fr.affine_point(x, x) for x in range(5)}
    assert diag < on and (on - diag) == {fr.direction_point(1)}
    # every affine point (x, dx+b) sits on affine_line(d, b)
    for d in range(5):
        for b in range(5):
            row = set(pl.line_point_indices(fr.affine_line(d, b)))
            for x in range(5):
                assert fr.affine_point(x, (d * x + b) % 5) in row


def test_affine_frame_q7_vertical():
    pl = build_plane(7)
    fr = pl.frame
    v2 = set(pl.line_point_indices(fr.vertical_line(2)))
    assert {fr.affine_point(2, y) for y in range(7)} | {fr.vertical_direction} == v2


def test_parallel_classes_partition_affine_points():
    pl = build_plane(5)
    fr = pl.frame
    for d in range(5):
        seen = set()
        for b1, b2 in itertools.combinations(range(5), 2):
            s1 = set(pl.line_point_indices(fr.affine_line(d, b1)))
            s2 = set(pl.line_point_indices(fr.affine_line(d, b2)))
            assert s1 & s2 == {fr.direction_point(d)}
        for b in range(5):
            seen |= set(pl.line_point_indices(fr.affine_line(d, b)))
        assert len(seen) == 26  # 25 affine + the class direction


@pytest.mark.parametrize("q", [5, 7, 9, 11])
def test_frame_tables_match_scalar_maps(q):
    pl = build_plane(q)
    fr = pl.frame
    tbl = fr.point_index_table()
    for x in range(q):
        for y in range(q):
            assert tbl[x, y] == fr.affine_point(x, y)
    if pl.field.k == 1:
        ltbl = fr.line_index_table()
        for d in range(q):
            for b in range(q):
                assert ltbl[d, b] == fr.affine_line(d, b)
        ax, ay, slope = fr.coords_arrays()
        for i in range(pl.N):
            kind = fr.point_coords(i)
            if kind[0] == "affine":
                assert (ax[i], ay[i], slope[i]) == (kind[1], kind[2], -1)
            else:
                assert (ax[i], ay[i], slope[i]) == (-1, -1, kind[1])


def test_point_coords_round_trip():
    pl = build_plane(9)
    fr = pl.frame
    for i in range(pl.N):
        kind = fr.point_coords(i)
        if kind[0] == "affine":
            assert fr.affine_point(kind[1], kind[2]) == i
        elif kind[1] == pl.q:
            assert i == fr.vertical_direction
        else:
            assert i == fr.direction_point(kind[1])


def test_large_plane_stays_lazy():
    pl = build_plane(499)
    assert pl.line_bitmaps is None
    assert not pl.has_incidence_cache
    with pytest.raises(PlaneError, match="budget"):
        pl.line_points_matrix
    # on-demand line solving still works
    pts = pl.line_point_indices(12345)
    assert len(pts) == 500
    for pt in pts[:5]:
        assert pl.incident(pt, 12345)
