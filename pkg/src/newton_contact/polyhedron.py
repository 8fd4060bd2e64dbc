"""Exact Newton polyhedra ``conv(S) + R_{>=0}^n`` over the integers.

Facets come from the extreme rays of the cone of valid inequalities
``{(a, l) : a >= 0, <a, s> >= l for s in S}``, computed with the double
description method in integer arithmetic.  Faces are keyed by their vertex
set together with the coordinate directions of their recession cone.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import cached_property, reduce
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .gaussian import INF, ext_div

Point = Tuple[int, ...]


# ---------------------------------------------------------------------------
# small exact linear algebra


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence[int]) -> Tuple[int, ...]:
    g = reduce(math.gcd, (abs(x) for x in v), 0)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def rank(vectors: Iterable[Sequence]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][col]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col] / pv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _inverse(mat: List[List[int]]) -> List[List[Fraction]]:
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def _integral(v: Sequence[Fraction]) -> Tuple[int, ...]:
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (Fraction(x).denominator for x in v), 1)
    return primitive([int(Fraction(x) * den) for x in v])


def extreme_rays(rows: Sequence[Sequence[int]], d: int) -> List[Tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{x in R^d : row . x >= 0}``.

    Double description method with the combinatorial adjacency test.  The
    rows must have rank ``d``.
    """
    rows = list(dict.fromkeys(tuple(int(x) for x in r) for r in rows))
    basis: List[int] = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
            if len(basis) == d:
                break
    if len(basis) < d:
        raise ValueError("cone is not pointed (constraint rank too small)")
    inv = _inverse([list(rows[i]) for i in basis])
    rays: List[Tuple[int, ...]] = []
    zeros: List[int] = []
    full = 0
    for i in basis:
        full |= 1 << i
    for k in range(d):
        col = [inv[r][k] for r in range(d)]
        rays.append(_integral(col))
        zeros.append(full & ~(1 << basis[k]))
    done = set(basis)
    for h, row in enumerate(rows):
        if h in done:
            continue
        vals = [dot(row, r) for r in rays]
        plus = [k for k, v in enumerate(vals) if v > 0]
        minus = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        bit = 1 << h
        new_rays = [rays[k] for k in plus]
        new_zeros = [zeros[k] for k in plus]
        for k in zero:
            new_rays.append(rays[k])
            new_zeros.append(zeros[k] | bit)
        for p in plus:
            for m in minus:
                common = zeros[p] & zeros[m]
                if bin(common).count("1") < d - 2:
                    continue
                if any((zeros[k] & common) == common for k in range(len(rays)) if k != p and k != m):
                    continue
                vp, vm = vals[p], -vals[m]
                r = primitive([vp * x + vm * y for x, y in zip(rays[m], rays[p])])
                new_rays.append(r)
                new_zeros.append(common | bit)
        rays, zeros = new_rays, new_zeros
        done.add(h)
    return sorted(set(rays))


def pareto_minimal(points: Iterable[Point]) -> List[Point]:
    pts = sorted(set(points), key=lambda p: (sum(p), p))
    kept: List[Point] = []
    for p in pts:
        if not any(all(q[j] <= p[j] for j in range(len(p))) for q in kept):
            kept.append(p)
    return sorted(kept)


# ---------------------------------------------------------------------------


class FaceHandle:
    """A face of a Newton polyhedron: ``conv(vertices) + cone(e_k, k in recession)``."""

    def __init__(self, polyhedron: "LatticePolyhedron", vertices: Iterable[Point],
                 recession: Iterable[int], active: Iterable[int]):
        self.polyhedron = polyhedron
        self.vertices: Tuple[Point, ...] = tuple(sorted(set(vertices)))
        self.recession: Tuple[int, ...] = tuple(sorted(set(recession)))
        self.active: Tuple[int, ...] = tuple(sorted(set(active)))
        self.bounded = not self.recession

    @property
    def key(self):
        return (self.vertices, self.recession)

    def __eq__(self, other):
        if not isinstance(other, FaceHandle):
            return NotImplemented
        return self.key == other.key and self.polyhedron.dim == other.polyhedron.dim

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        kind = "face" if self.bounded else "unbounded face"
        return f"<{kind} conv{list(self.vertices)} dim={self.dim}>"

    @property
    def vertex_list(self):
        return self.vertices

    @cached_property
    def dim(self) -> int:
        n = self.polyhedron.dim
        v0 = self.vertices[0]
        vecs = [tuple(v[j] - v0[j] for j in range(n)) for v in self.vertices[1:]]
        vecs += [tuple(int(j == k) for j in range(n)) for k in self.recession]
        return rank(vecs)

    @property
    def normals(self) -> Tuple[Point, ...]:
        """Normals of the facets containing this face (generators of its normal cone)."""
        return tuple(self.polyhedron.facets[i][0] for i in self.active)

    @cached_property
    def a_determining(self) -> Tuple[int, ...]:
        """Lexicographically smallest primitive sum of active normals determining this face."""
        P = self.polyhedron
        if not self.bounded:
            raise ValueError("unbounded faces have no positive determining vector")
        active = list(self.active)
        if len(active) > 12:
            return primitive([sum(col) for col in zip(*self.normals)])
        best = None
        for r in range(1, len(active) + 1):
            for subset in itertools.combinations(active, r):
                a = primitive([sum(col) for col in zip(*(P.facets[i][0] for i in subset))])
                if best is not None and a >= best:
                    continue
                if self.determined_by(a):
                    best = a
        return best

    @property
    def level(self) -> int:
        return dot(self.a_determining, self.vertices[0])

    def determined_by(self, a: Sequence[int]) -> bool:
        """True iff the minimum of ``<a, .>`` on the polyhedron is attained exactly here."""
        if len(a) != self.polyhedron.dim:
            raise ValueError("direction has the wrong dimension")
        if any(x < 0 for x in a):
            return False
        zero = tuple(j for j, x in enumerate(a) if x == 0)
        if zero != self.recession:
            return False
        vals = [dot(a, v) for v in self.polyhedron.vertices]
        m = min(vals)
        arg = tuple(v for v, x in zip(self.polyhedron.vertices, vals) if x == m)
        return arg == self.vertices

    def contains(self, point: Sequence[int]) -> bool:
        """Membership of ``point`` in this face (polyhedron membership plus tightness)."""
        P = self.polyhedron
        if not P.contains(point):
            return False
        return all(dot(P.facets[i][0], point) == P.facets[i][1] for i in self.active)

    def is_regular(self, bound: int = 12) -> bool:
        return regular_face(self, bound)

    def to_json(self) -> dict:
        out = {"vertices": [list(v) for v in self.vertices], "dim": self.dim, "bounded": self.bounded}
        if self.bounded:
            out["normal"] = list(self.a_determining)
            out["level"] = self.level
        return out


class LatticePolyhedron:
    """Newton polyhedron of a finite support set.

    ``facets`` holds pairs ``(a, l)`` with ``a`` primitive and nonnegative;
    the polyhedron is the intersection of the half spaces ``<a, x> >= l``.
    """

    def __init__(self, support: Iterable[Sequence[int]], dim: Optional[int] = None):
        pts = [tuple(int(x) for x in p) for p in support]
        if dim is None:
            if not pts:
                raise ValueError("dimension needed for an empty support")
            dim = len(pts[0])
        if any(len(p) != dim for p in pts):
            raise ValueError("support points of mixed dimension")
        self.dim = dim
        self.support: FrozenSet[Point] = frozenset(pts)
        self.flat = not pts
        if self.flat:
            self.facets: Tuple[Tuple[Point, int], ...] = ()
            self.vertices: Tuple[Point, ...] = ()
            return
        minimal = pareto_minimal(pts)
        d = dim + 1
        rows = [tuple(int(j == k) for k in range(dim)) + (0,) for j in range(dim)]
        rows += [p + (-1,) for p in minimal]
        facets = set()
        for ray in extreme_rays(rows, d):
            a, l = ray[:dim], ray[dim]
            if not any(a):
                continue
            g = reduce(math.gcd, a, 0)
            if l % g:
                raise ArithmeticError("facet level is not integral")
            facets.add((tuple(x // g for x in a), l // g))
        self.facets = tuple(sorted(facets))
        verts = []
        for p in minimal:
            tight = [a for a, l in self.facets if dot(a, p) == l]
            if rank(tight) == dim:
                verts.append(p)
        self.vertices = tuple(sorted(verts))

    def __repr__(self):
        if self.flat:
            return f"<LatticePolyhedron dim={self.dim} flat>"
        return f"<LatticePolyhedron dim={self.dim} vertices={list(self.vertices)}>"

    def __eq__(self, other):
        if not isinstance(other, LatticePolyhedron):
            return NotImplemented
        return (self.dim, self.vertices, self.facets, self.flat) == (
            other.dim, other.vertices, other.facets, other.flat)

    def __hash__(self):
        return hash((self.dim, self.vertices, self.facets))

    # membership -------------------------------------------------------------
    def contains(self, point: Sequence[int]) -> bool:
        if self.flat:
            return False
        return all(dot(a, point) >= l for a, l in self.facets)

    def tight_facets(self, point: Sequence[int]) -> Tuple[int, ...]:
        return tuple(i for i, (a, l) in enumerate(self.facets) if dot(a, point) == l)

    def on_diagram(self, point: Sequence[int]) -> bool:
        """True iff ``point`` lies on some bounded face."""
        if not self.contains(point):
            return False
        tight = self.tight_facets(point)
        if not tight:
            return False
        total = [sum(self.facets[i][0][j] for i in tight) for j in range(self.dim)]
        return all(x > 0 for x in total)

    # faces --------------------------------------------------------------------
    def _face_from(self, verts: FrozenSet[Point], rec: FrozenSet[int]) -> FaceHandle:
        active = [i for i, (a, l) in enumerate(self.facets)
                  if all(dot(a, v) == l for v in verts) and all(a[k] == 0 for k in rec)]
        return FaceHandle(self, verts, rec, active)

    @cached_property
    def faces(self) -> Tuple[FaceHandle, ...]:
        """All nonempty proper faces, sorted by (dimension, vertices)."""
        if self.flat:
            return ()
        tight_sets = [frozenset(v for v in self.vertices if dot(a, v) == l) for a, l in self.facets]
        zero_sets = [frozenset(k for k in range(self.dim) if a[k] == 0) for a, _ in self.facets]
        seen: Dict[tuple, FaceHandle] = {}
        queue = []
        for i in range(len(self.facets)):
            key = (tight_sets[i], zero_sets[i])
            if key not in seen and tight_sets[i]:
                face = self._face_from(*key)
                seen[key] = face
                queue.append(face)
        while queue:
            face = queue.pop()
            V, Z = frozenset(face.vertices), frozenset(face.recession)
            act = set(face.active)
            for g in range(len(self.facets)):
                if g in act:
                    continue
                V2 = V & tight_sets[g]
                if not V2:
                    continue
                key = (V2, Z & zero_sets[g])
                if key in seen:
                    continue
                child = self._face_from(*key)
                key = (frozenset(child.vertices), frozenset(child.recession))
                if key in seen:
                    continue
                seen[key] = child
                queue.append(child)
        return tuple(sorted(seen.values(), key=lambda f: (f.dim, f.vertices, f.recession)))

    @cached_property
    def bounded_faces(self) -> Tuple[FaceHandle, ...]:
        if self.flat:
            raise ValueError("flat polyhedron has no faces")
        return tuple(f for f in self.faces if f.bounded)

    def bounded_facets(self) -> Tuple[FaceHandle, ...]:
        return tuple(f for f in self.bounded_faces if f.dim == self.dim - 1)

    def maximal_bounded_faces(self) -> Tuple[FaceHandle, ...]:
        bf = self.bounded_faces
        out = []
        for f in bf:
            vs = set(f.vertices)
            if not any(g is not f and vs < set(g.vertices) for g in bf):
                out.append(f)
        return tuple(out)

    def face_with_vertices(self, vertices: Iterable[Point]) -> FaceHandle:
        vs = tuple(sorted(set(tuple(v) for v in vertices)))
        for f in self.bounded_faces:
            if f.vertices == vs:
                return f
        raise KeyError(f"no bounded face with vertices {list(vs)}")

    def vertex_face(self, v: Point) -> FaceHandle:
        return self.face_with_vertices([v])

    # derived quantities ------------------------------------------------------
    @cached_property
    def rho(self) -> Tuple:
        """Axis intercepts ``rho_j``; ``INF`` when the axis is not met."""
        out = []
        for j in range(self.dim):
            best = INF
            for s in self.support:
                if all(s[k] == 0 for k in range(self.dim) if k != j):
                    best = min(best, s[j])
            out.append(best)
        return tuple(out)

    def convenient(self) -> bool:
        return not self.flat and all(r != INF for r in self.rho)

    def is_flat(self) -> bool:
        return self.flat

    def support_min(self, a: Sequence[int]):
        """``(l, face)`` with ``l = min <a, x>`` over the polyhedron and its argmin face."""
        if len(a) != self.dim:
            raise ValueError("direction has the wrong dimension")
        if any(x < 0 for x in a):
            raise ValueError("directions must be nonnegative")
        if self.flat:
            return INF, None
        vals = [dot(a, v) for v in self.vertices]
        m = min(vals)
        verts = frozenset(v for v, x in zip(self.vertices, vals) if x == m)
        rec = frozenset(j for j, x in enumerate(a) if x == 0)
        return m, self._lookup(verts, rec)

    def _lookup(self, verts, rec) -> FaceHandle:
        key = (tuple(sorted(verts)), tuple(sorted(rec)))
        for f in self.faces:
            if f.key == key:
                return f
        return self._face_from(frozenset(verts), frozenset(rec))

    def restrict(self, I: Iterable[int]) -> "LatticePolyhedron":
        """Newton polyhedron of the restriction to the coordinate plane of ``I``."""
        idx = sorted(set(I))
        pts = [tuple(s[j] for j in idx) for s in self.support
               if all(s[k] == 0 for k in range(self.dim) if k not in idx)]
        return LatticePolyhedron(pts, len(idx))

    def apex_vertex(self) -> FaceHandle:
        """Vertex on the axis with the largest intercept (lowest index on ties)."""
        if not self.convenient():
            raise ValueError("apex vertex needs a convenient polyhedron")
        j = max(range(self.dim), key=lambda k: (self.rho[k], -k))
        v = tuple(self.rho[j] if k == j else 0 for k in range(self.dim))
        return self.vertex_face(v)

    def to_json(self) -> dict:
        out = {"dim": self.dim, "flat": self.flat}
        if self.flat:
            return out
        out["vertices"] = [list(v) for v in self.vertices]
        out["facets"] = [{"normal": list(a), "level": l} for a, l in self.facets]
        out["rho"] = [r if r != INF else "inf" for r in self.rho]
        out["convenient"] = self.convenient()
        out["bounded_faces"] = [
            dict(f.to_json(), regular=regular_face(f)) for f in self.bounded_faces]
        return out


# ---------------------------------------------------------------------------
# module-level operations


def build(support: Iterable[Sequence[int]], dim: Optional[int] = None) -> LatticePolyhedron:
    return LatticePolyhedron(support, dim)


def of(F) -> LatticePolyhedron:
    """Newton polyhedron of a mixed polynomial."""
    return LatticePolyhedron(F.support(), F.nvars)


def bounded_faces(P: LatticePolyhedron) -> Tuple[FaceHandle, ...]:
    return P.bounded_faces


def rho(P: LatticePolyhedron):
    return P.rho


def convenient(P: LatticePolyhedron) -> bool:
    return P.convenient()


def flat(P: LatticePolyhedron) -> bool:
    return P.flat


def finite_part(a_hat: Sequence) -> Tuple[int, ...]:
    I = tuple(j for j, x in enumerate(a_hat) if x != INF)
    if not I:
        raise ValueError("direction has no finite component")
    for j in I:
        if int(a_hat[j]) != a_hat[j] or a_hat[j] < 1:
            raise ValueError("finite direction components must be positive integers")
    return I


def support_min(P: LatticePolyhedron, a_hat: Sequence):
    """Minimum of ``<a, .>`` for a direction that may contain ``INF`` entries.

    Returns ``(l, face, I)`` where ``I`` lists the finite coordinates and
    ``face`` lives in the restricted polyhedron (``None`` when it is flat).
    """
    if len(a_hat) != P.dim:
        raise ValueError("direction has the wrong dimension")
    I = finite_part(a_hat)
    Q = P if len(I) == P.dim else P.restrict(I)
    if Q.flat:
        return INF, None, I
    l, face = Q.support_min([int(a_hat[j]) for j in I])
    return l, face, I


def newton_distance(P: LatticePolyhedron, a_hat: Sequence):
    """``(d, rho_dir)`` for the direction ``a_hat``; entries are exact rationals or ``INF``."""
    l, _, I = support_min(P, a_hat)
    rho_dir = []
    for j in range(P.dim):
        if j not in I:
            rho_dir.append(0)
        else:
            rho_dir.append(ext_div(l, int(a_hat[j])))
    d = ext_div(l, min(int(a_hat[j]) for j in I))
    if d != max(rho_dir):
        raise ArithmeticError("distance does not match the largest directional intercept")
    return d, tuple(rho_dir)


def determines(face: FaceHandle, a: Sequence[int]) -> bool:
    return face.determined_by(a)


def regular_face(face: FaceHandle, bound: int = 12) -> bool:
    """Whether some determining vector of ``face`` has smallest component 1.

    Exact for facets; lower-dimensional faces are searched among integer
    vectors with components up to ``bound``.
    """
    if not face.bounded:
        raise ValueError("regularity is defined for bounded faces")
    n = face.polyhedron.dim
    if face.dim == n - 1:
        return min(face.a_determining) == 1
    if min(face.a_determining) == 1:
        return True
    return regular_direction(face, bound) is not None


def regular_direction(face: FaceHandle, bound: int = 12, unit_at: Optional[int] = None):
    """A determining vector with a unit component (at ``unit_at`` if given), or None."""
    n = face.polyhedron.dim
    positions = [unit_at] if unit_at is not None else range(n)
    for j in positions:
        others = [k for k in range(n) if k != j]
        for total in range(len(others), len(others) * bound + 1):
            for rest in _compositions(total, len(others), bound):
                a = [0] * n
                a[j] = 1
                for k, x in zip(others, rest):
                    a[k] = x
                if face.determined_by(a):
                    return tuple(a)
    return None


def _compositions(total: int, parts: int, bound: int):
    """Tuples of ``parts`` integers in ``[1, bound]`` summing to ``total`` (lex order)."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = max(1, total - bound * (parts - 1))
    hi = min(bound, total - (parts - 1))
    for first in range(lo, hi + 1):
        for rest in _compositions(total - first, parts - 1, bound):
            yield (first,) + rest


def apex_vertex(P: LatticePolyhedron) -> FaceHandle:
    return P.apex_vertex()
