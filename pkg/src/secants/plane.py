"""The classical projective plane PG(2,q) as an indexed incidence structure.

Points and lines are normalized homogeneous triples over GF(q): the first
nonzero coordinate (scanning x, then y, then z) is scaled to 1, and both
families are listed in lexicographic order of their encoded triples.  That
order has a closed form, so planes are cheap to create at any q; the heavy
incidence caches (per-line point indices and point-index bitmaps) are only
materialized while they fit in a fixed memory budget.

The affine frame identifies F_q^2 with the points off the line z = 0:
(x, y) corresponds to (x : y : 1), the line y = dx + b to [d : -1 : b],
and the vertical x = c to [1 : 0 : -c].
"""

from __future__ import annotations

import numpy as np

from .field import Field, inverse_table, make_field

# Incidence caches (index matrix + bitmaps) are built only when the full
# N x N incidence fits in this many bytes as bitmaps.
INCIDENCE_BUDGET_BYTES = 64 * 1024 * 1024


class PlaneError(ValueError):
    pass


class ProjectivePlane:
    """Immutable PG(2,q); safe to share read-only across workers."""

    def __init__(self, field: Field):
        self.field = field
        self.q = field.q
        self.N = self.q * self.q + self.q + 1
        self._points = None
        self._lines = None
        self._line_points = None   # numpy (N, q+1) int32, small planes only
        self._point_lines = None
        self._bitmaps = None       # list of ints, small planes only
        self._frame = None

    def __repr__(self):
        return f"PG(2,{self.q})"

    # -- normalized triple enumeration (lexicographic closed form) -----------

    @property
    def points(self):
        if self._points is None:
            self._points = self._enumerate_triples()
        return self._points

    @property
    def lines(self):
        if self._lines is None:
            self._lines = self._enumerate_triples()
        return self._lines

    def _enumerate_triples(self):
        q = self.q
        out = [(0, 0, 1)]
        out.extend((0, 1, z) for z in range(q))
        out.extend((1, y, z) for y in range(q) for z in range(q))
        return out

    def triple(self, idx: int):
        """Normalized triple of the point (or line) with this index."""
        q = self.q
        if idx == 0:
            return (0, 0, 1)
        if idx <= q:
            return (0, 1, idx - 1)
        t = idx - q - 1
        return (1, t // q, t % q)

    def normalize(self, triple):
        F = self.field
        x, y, z = triple
        for lead in (x, y, z):
            if lead != 0:
                s = F.inv(lead)
                return (F.mul(x, s), F.mul(y, s), F.mul(z, s))
        raise PlaneError("zero triple has no projective class")

    def index_of(self, triple) -> int:
        """Index of a (not necessarily normalized) nonzero triple."""
        q = self.q
        x, y, z = self.normalize(triple)
        if x == 1:
            return q + 1 + y * q + z
        if y == 1:
            return 1 + z
        return 0

    # -- incidence ------------------------------------------------------------

    def incident(self, point_idx: int, line_idx: int) -> bool:
        F = self.field
        x, y, z = self.triple(point_idx)
        a, b, c = self.triple(line_idx)
        s = F.add(F.add(F.mul(a, x), F.mul(b, y)), F.mul(c, z))
        return s == 0

    def line_point_indices(self, line_idx: int):
        """Sorted indices of the q+1 points on a line, computed in O(q)."""
        if self._line_points is not None:
            return self._line_points[line_idx].tolist()
        return self._solve_line(*self.triple(line_idx))

    def _solve_line(self, a, b, c):
        F, q = self.field, self.q
        idxs = []
        if c != 0:
            cinv = F.inv(c)
            for y in range(q):
                z = F.mul(F.neg(F.add(a, F.mul(b, y))), cinv)
                idxs.append(q + 1 + y * q + z)
            idxs.append(1 + F.mul(F.neg(b), cinv))
        elif b != 0:
            y = F.mul(F.neg(a), F.inv(b))
            base = q + 1 + y * q
            idxs.extend(base + z for z in range(q))
            idxs.append(0)
        else:
            idxs.extend(1 + z for z in range(q))
            idxs.append(0)
        idxs.sort()
        return idxs

    def line_bitmap(self, line_idx: int) -> int:
        if self._bitmaps is not None:
            return self._bitmaps[line_idx]
        m = 0
        for i in self.line_point_indices(line_idx):
            m |= 1 << i
        return m

    @property
    def has_incidence_cache(self) -> bool:
        return self.N * self.N // 8 <= INCIDENCE_BUDGET_BYTES

    @property
    def line_points_matrix(self) -> np.ndarray:
        """(N, q+1) int32 matrix of point indices per line (small planes)."""
        self._require_cache()
        if self._line_points is None:
            self._build_incidence()
        return self._line_points

    @property
    def point_lines_matrix(self) -> np.ndarray:
        """(N, q+1) int32 matrix of line indices per point (small planes)."""
        self._require_cache()
        if self._point_lines is None:
            self._build_incidence()
        return self._point_lines

    @property
    def line_bitmaps(self):
        """Per-line point-index bitmaps, or None above the memory budget."""
        if not self.has_incidence_cache:
            return None
        if self._bitmaps is None:
            self._build_incidence()
        return self._bitmaps

    def _require_cache(self):
        if not self.has_incidence_cache:
            raise PlaneError(
                f"incidence cache for N={self.N} exceeds the memory budget")

    def _build_incidence(self):
        q, N = self.q, self.N
        lp = np.empty((N, q + 1), dtype=np.int32)
        for ell in range(N):
            lp[ell] = self._solve_line(*self.triple(ell))
        self._line_points = lp
        dual = np.empty((N, q + 1), dtype=np.int32)
        fill = np.zeros(N, dtype=np.int32)
        for ell in range(N):
            for pt in lp[ell]:
                dual[pt, fill[pt]] = ell
                fill[pt] += 1
        assert (fill == q + 1).all()
        self._point_lines = dual
        nbytes = (N + 7) // 8
        bitmaps = []
        row = np.zeros(nbytes * 8, dtype=np.uint8)
        for ell in range(N):
            row[:] = 0
            row[lp[ell]] = 1
            bitmaps.append(int.from_bytes(
                np.packbits(row, bitorder="little").tobytes(), "little"))
        self._bitmaps = bitmaps

    # -- axioms-level helpers ---------------------------------------------------

    def line_through(self, p_idx: int, q_idx: int) -> int:
        """The unique line through two distinct points (cross product)."""
        if p_idx == q_idx:
            raise PlaneError("identical points")
        F = self.field
        x1, y1, z1 = self.triple(p_idx)
        x2, y2, z2 = self.triple(q_idx)
        a = F.sub(F.mul(y1, z2), F.mul(z1, y2))
        b = F.sub(F.mul(z1, x2), F.mul(x1, z2))
        c = F.sub(F.mul(x1, y2), F.mul(y1, x2))
        return self.index_of((a, b, c))

    def lines_meet(self, l_idx: int, m_idx: int) -> int:
        """The unique common point of two distinct lines (duality)."""
        return self.line_through(l_idx, m_idx)

    # -- affine frame -----------------------------------------------------------

    @property
    def frame(self) -> "AffineFrame":
        if self._frame is None:
            self._frame = AffineFrame(self)
        return self._frame


class AffineFrame:
    """Coordinate maps between AG(2,q) and the plane's point/line indices."""

    def __init__(self, plane: ProjectivePlane):
        self.plane = plane
        self.q = plane.q
        self._coords = None
        self._index_table = None

    @property
    def infinite_line(self) -> int:
        return 0

    @property
    def vertical_direction(self) -> int:
        # (0 : 1 : 0), the common point of all vertical lines
        return 1

    def direction_point(self, d: int) -> int:
        """Index of (1 : d : 0), the infinite point of the slope-d class."""
        return self.q + 1 + d * self.q

    def affine_point(self, x: int, y: int) -> int:
        F, q = self.plane.field, self.q
        if x != 0:
            xinv = F.inv(x)
            return q + 1 + F.mul(y, xinv) * q + xinv
        if y != 0:
            return 1 + F.inv(y)
        return 0

    def affine_line(self, d: int, b: int) -> int:
        """Index of the line y = dx + b."""
        F, q = self.plane.field, self.q
        if d != 0:
            dinv = F.inv(d)
            return q + 1 + F.neg(dinv) * q + F.mul(b, dinv)
        return 1 + F.neg(b)

    def vertical_line(self, c: int) -> int:
        """Index of the line x = c."""
        return self.q + 1 + self.plane.field.neg(c)

    def point_coords(self, idx: int):
        """('affine', x, y) or ('infinite', d) with d = q meaning the
        vertical direction."""
        F, q = self.plane.field, self.q
        if idx == 0:
            return ("affine", 0, 0)
        if idx <= q:
            z = idx - 1
            if z == 0:
                return ("infinite", q)
            return ("affine", 0, F.inv(z))
        t = idx - q - 1
        y, z = divmod(t, q)
        if z == 0:
            return ("infinite", y)
        zinv = F.inv(z)
        return ("affine", zinv, F.mul(y, zinv))

    def point_index_table(self) -> np.ndarray:
        """(q, q) int32 table mapping affine (x, y) to point index."""
        if self._index_table is not None:
            return self._index_table
        F, q = self.plane.field, self.q
        if F.k == 1:
            p = F.p
            inv = inverse_table(p)
            tbl = np.empty((p, p), dtype=np.int32)
            y = np.arange(p, dtype=np.int64)
            tbl[0, 0] = 0
            tbl[0, 1:] = 1 + inv[y[1:]]
            for x in range(1, p):
                xinv = int(inv[x])
                tbl[x] = q + 1 + ((y * xinv) % p) * q + xinv
        else:
            tbl = np.empty((q, q), dtype=np.int32)
            for x in range(q):
                for y in range(q):
                    tbl[x, y] = self.affine_point(x, y)
        self._index_table = tbl
        return tbl

    def line_index_table(self) -> np.ndarray:
        """(q, q) int64 table mapping slope/intercept (d, b) to the index
        of the line y = dx + b (prime planes)."""
        F, q = self.plane.field, self.q
        if F.k != 1:
            raise PlaneError("vectorized line table requires a prime field")
        p = F.p
        inv = inverse_table(p)
        b = np.arange(p, dtype=np.int64)
        tbl = np.empty((p, p), dtype=np.int64)
        tbl[0] = 1 + (p - b) % p
        for d in range(1, p):
            di = int(inv[d])
            tbl[d] = q + 1 + (p - di) * q + (b * di) % p
        return tbl

    def coords_arrays(self):
        """Vectorized point classification for prime planes: int32 arrays
        (ax, ay, slope) of length N; affine points carry slope -1, the
        infinite point of slope d carries (-1, -1, d), the vertical
        direction carries slope q."""
        if self._coords is not None:
            return self._coords
        F, q, N = self.plane.field, self.q, self.plane.N
        if F.k != 1:
            raise PlaneError("vectorized coordinates require a prime field")
        p = F.p
        inv = inverse_table(p)
        ax = np.full(N, -1, dtype=np.int32)
        ay = np.full(N, -1, dtype=np.int32)
        slope = np.full(N, -1, dtype=np.int32)
        ax[0] = ay[0] = 0
        z = np.arange(1, q, dtype=np.int64)
        ax[1 + z] = 0
        ay[1 + z] = inv[z]
        slope[1] = q
        t = np.arange(q * q, dtype=np.int64)
        yy, zz = t // q, t % q
        idx = q + 1 + t
        aff = zz != 0
        ax[idx[aff]] = inv[zz[aff]]
        ay[idx[aff]] = (yy[aff] * inv[zz[aff]]) % p
        slope[idx[~aff]] = yy[~aff]
        self._coords = (ax, ay, slope)
        return self._coords


def build_plane(field_or_q) -> ProjectivePlane:
    """Canonical PG(2,q) from a Field or a prime-power order."""
    field = field_or_q if isinstance(field_or_q, Field) else make_field(field_or_q)
    return ProjectivePlane(field)


def affine_embed(plane: ProjectivePlane) -> AffineFrame:
    return plane.frame
