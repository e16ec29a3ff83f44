"""Point-set constructions over PG(2,p).

Three deterministic families live in the affine part of the plane: the
region strictly under a parabola in the integer-lift order, a stack of
vertically shifted parabolas, and the region where a depressed cubic in
the line coordinates is a square.  The fourth construction samples every
point of the plane (infinite line included) independently at a rational
density, using a counter-based generator so the decision for point i
depends only on (seed, i).

None of the deterministic constructions contains infinite points; the
infinite line simply shows up as a 0-secant in their spectra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .field import is_prime, legendre_table
from .plane import ProjectivePlane
from .spectrum import PointSet


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class ParabolaParams:
    """Coefficients of y = alpha*x^2 + beta*x + gamma over F_p, alpha != 0."""

    alpha: int
    beta: int
    gamma: int

    def reduced(self, p: int) -> "ParabolaParams":
        a, b, g = self.alpha % p, self.beta % p, self.gamma % p
        if a == 0:
            raise ConstructionError("parabola needs alpha != 0")
        return ParabolaParams(a, b, g)


@dataclass(frozen=True)
class FamilyParams:
    """Exact shift count c in (0,1); the stack height is a = floor(c*p)."""

    c: Fraction

    def __post_init__(self):
        c = Fraction(self.c)
        object.__setattr__(self, "c", c)
        if not 0 < c < 1:
            raise ConstructionError("family density c must lie in (0,1)")

    def height(self, p: int) -> int:
        a = (self.c.numerator * p) // self.c.denominator
        if not 1 <= a <= p - 1:
            raise ConstructionError(f"stack height a={a} out of range for p={p}")
        return a


def _require_prime_plane(plane: ProjectivePlane, min_p: int):
    F = plane.field
    if F.k != 1 or not is_prime(F.p) or F.p <= min_p:
        raise ConstructionError(f"construction requires a prime plane with p > {min_p}")
    return F.p


def _from_affine_grid(plane, xs, ys, meta) -> PointSet:
    tbl = plane.frame.point_index_table()
    idx = tbl[xs, ys]
    n_bytes = (plane.N + 7) // 8
    bits = np.zeros(n_bytes * 8, dtype=np.uint8)
    bits[idx] = 1
    bitmap = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    return PointSet(plane, bitmap, meta)


def random_set(plane: ProjectivePlane, density, seed: int) -> PointSet:
    """Bernoulli sample of all N plane points at an exact rational density.

    Point i is kept iff the i-th draw of a Philox stream keyed by the seed
    lands below density, so membership is reproducible point by point.
    """
    density = Fraction(density)
    if not 0 <= density <= 1:
        raise ConstructionError("density must lie in [0, 1]")
    num, den = density.numerator, density.denominator
    meta = {"construction": "random", "density": f"{num}/{den}",
            "generator": "philox4x64", "seed": int(seed)}
    if num == 0:
        return PointSet.empty(plane, meta)
    if num == den:
        return PointSet.full(plane, meta)
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    draws = rng.integers(0, den, size=plane.N, dtype=np.int64)
    keep = (draws < num).astype(np.uint8)
    n_bytes = (plane.N + 7) // 8
    bits = np.zeros(n_bytes * 8, dtype=np.uint8)
    bits[: plane.N] = keep
    bitmap = int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")
    return PointSet(plane, bitmap, meta)


def parabola_region(plane: ProjectivePlane, params: ParabolaParams) -> PointSet:
    """Affine points strictly under the parabola in the integer-lift order:
    S = {(x, y) : lift(alpha*x^2 + beta*x + gamma) < lift(y)}."""
    p = _require_prime_plane(plane, 3)
    params = params.reduced(p)
    x = np.arange(p, dtype=np.int64)
    f = (params.alpha * x * x + params.beta * x + params.gamma) % p
    mask = np.arange(p, dtype=np.int64)[None, :] > f[:, None]
    xs, ys = np.nonzero(mask)
    meta = {"construction": "parabola",
            "alpha": params.alpha, "beta": params.beta, "gamma": params.gamma}
    return _from_affine_grid(plane, xs, ys, meta)


def parabola_family(plane: ProjectivePlane, params: FamilyParams) -> PointSet:
    """Union of the first a vertical shifts of y = x^2:
    S = {(x, x^2 + t) : x in F_p, 0 <= t < a}, of size p*a."""
    p = _require_prime_plane(plane, 2)
    a = params.height(p)
    x = np.arange(p, dtype=np.int64)
    t = np.arange(a, dtype=np.int64)
    xs = np.repeat(x, a)
    ys = ((x * x)[:, None] + t[None, :]).ravel() % p
    meta = {"construction": "family", "c": str(params.c), "a": a}
    return _from_affine_grid(plane, xs, ys, meta)


def ec_region(plane: ProjectivePlane) -> PointSet:
    """Affine points (x, v) for which x^3 - v is a square (zero included);
    each row x contributes exactly (p+1)/2 points."""
    p = _require_prime_plane(plane, 3)
    chi = legendre_table(p)
    x = np.arange(p, dtype=np.int64)
    v = np.arange(p, dtype=np.int64)
    vals = (x[:, None] ** 3 - v[None, :]) % p
    mask = chi[vals] >= 0
    xs, vs = np.nonzero(mask)
    return _from_affine_grid(plane, xs, vs, {"construction": "ecregion"})


# -- set-file round trip -------------------------------------------------------

def pointset_to_json(pset: PointSet) -> dict:
    """JSON document {q, affine: [[x,y],...], projective: [[x,y,z],...]}."""
    plane = pset.plane
    frame = plane.frame
    affine, projective = [], []
    for i in map(int, pset.indices()):
        kind = frame.point_coords(i)
        if kind[0] == "affine":
            affine.append([kind[1], kind[2]])
        else:
            projective.append(list(plane.triple(i)))
    return {"q": plane.q, "affine": affine, "projective": projective}


def pointset_from_json(plane: ProjectivePlane, doc: dict) -> PointSet:
    if doc.get("q") != plane.q:
        raise ConstructionError(f"set file is for q={doc.get('q')}, plane has q={plane.q}")
    frame = plane.frame
    indices = [frame.affine_point(x, y) for x, y in doc.get("affine", [])]
    indices += [plane.index_of(tuple(t)) for t in doc.get("projective", [])]
    return PointSet.from_indices(plane, indices, {"construction": "set-file"})


# -- CLI construction specs ----------------------------------------------------

def rational_to_element(p: int, text: str) -> int:
    """Map a rational like '1/4' (or an integer) to its F_p element."""
    frac = Fraction(text)
    den = frac.denominator % p
    if den == 0:
        raise ConstructionError(f"denominator of {text} vanishes mod {p}")
    return (frac.numerator % p) * pow(den, p - 2, p) % p


def parse_construction(text: str):
    """Parse 'random:density=1/2,seed=3' style construction specifiers."""
    name, _, arg_str = text.partition(":")
    name = name.strip()
    args = {}
    if arg_str:
        for part in arg_str.split(","):
            key, _, val = part.partition("=")
            if not val:
                raise ConstructionError(f"malformed construction argument {part!r}")
            args[key.strip()] = val.strip()
    if name not in {"random", "parabola", "family", "ecregion"}:
        raise ConstructionError(f"unknown construction {name!r}")
    return name, args


def build_construction(plane: ProjectivePlane, text: str, seed=None) -> PointSet:
    """Instantiate a construction specifier on a plane.  A seed given here
    overrides one embedded in the specifier (used by sweep cells)."""
    name, args = parse_construction(text)
    if name == "random":
        density = Fraction(args.get("density", "1/2"))
        if seed is None:
            seed = int(args.get("seed", "0"))
        return random_set(plane, density, seed)
    p = plane.field.p
    if name == "parabola":
        params = ParabolaParams(
            rational_to_element(p, args.get("a", "1")),
            rational_to_element(p, args.get("b", "0")),
            rational_to_element(p, args.get("g", "0")))
        return parabola_region(plane, params)
    if name == "family":
        return parabola_family(plane, FamilyParams(Fraction(args.get("c", "1/2"))))
    return ec_region(plane)
