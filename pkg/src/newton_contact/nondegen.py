"""Nondegeneracy of face parts, with certificates and exact witnesses.

For a bounded face ``kappa`` and a monomial curve ``(c_j t^{a_j})`` with
``a`` determining ``kappa``, the composition ``F_kappa o gamma`` is
``sum_k G_k(c) t^k conj(t)^(l-k)`` where ``G_k`` collects the terms with
``<a, alpha> = k``.  The face part is degenerate exactly when some such ``a``
and some ``c`` in the torus make every ``G_k`` vanish.

Certificates (each re-checkable from the face data alone):

``one-variable`` / ``isolated-term``
    some term can never share its group with another term, for any
    determining ``a``; its group is then a nonzero monomial.
``hermitian-gram``
    the group ``k = l/2`` is a sum of blocks in disjoint variables, each
    positive semidefinite as a Hermitian form in the monomials (or a
    positive multiple of a square in ``|z_j|^2``), one of them definite.
``rotation-psh``
    ``F`` has only terms with ``alpha = beta`` and the caller asserts it is
    plurisubharmonic.

Degenerate verdicts always carry a witness curve verified in exact
arithmetic; floating point only proposes candidates.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .curves import MonomialCurve, monomial_jet
from .gaussian import ONE, ZERO, GaussianRational
from .mixedpoly import MixedPolynomial, face_part, restrict, substitute_curve
from .polyhedron import FaceHandle, dot, of, primitive

Term = Tuple[Tuple[int, ...], Tuple[int, ...], GaussianRational]


class Status(str, enum.Enum):
    NONDEGENERATE = "Nondegenerate"
    DEGENERATE = "Degenerate"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Witness:
    face: Tuple[Tuple[int, ...], ...]
    curve: MonomialCurve

    def to_json(self) -> dict:
        out = {"face": [list(v) for v in self.face]}
        out.update(self.curve.to_json())
        return out


@dataclass(frozen=True)
class NondegeneracyVerdict:
    status: Status
    certificate: Optional[str] = None
    witness: Optional[Witness] = None
    face: Optional[Tuple[Tuple[int, ...], ...]] = None
    diagnostics: dict = field(default_factory=dict)
    faces: tuple = ()

    @property
    def is_degenerate(self):
        return self.status is Status.DEGENERATE

    @property
    def is_nondegenerate(self):
        return self.status is Status.NONDEGENERATE

    def to_json(self) -> dict:
        out = {"status": self.status.value, "certificate": self.certificate}
        if self.face is not None:
            out["face"] = [list(v) for v in self.face]
        out["witness"] = self.witness.to_json() if self.witness else None
        out["diagnostics"] = self.diagnostics
        if self.faces:
            out["faces"] = [
                {"vertices": [list(v) for v in fv], "status": st.value, "certificate": cert}
                for fv, st, cert in self.faces]
        return out


# ---------------------------------------------------------------------------
# search configuration

_PHASES_SMALL = [(1, 0), (-1, 0), (0, 1), (0, -1)] + [
    (Fraction(x, 5), Fraction(y, 5)) for x, y in itertools.product((3, -3, 4, -4), repeat=2)
    if abs(x) != abs(y)]
_PHASES_WIDE = _PHASES_SMALL + [
    (Fraction(x, m), Fraction(y, m))
    for m, p, q in ((13, 5, 12), (17, 8, 15))
    for x, y in itertools.product((p, -p, q, -q), repeat=2) if abs(x) != abs(y)]
_MODULI_SMALL = [Fraction(1), Fraction(1, 2), Fraction(2), Fraction(1, 3), Fraction(3)]
_MODULI_WIDE = _MODULI_SMALL + [Fraction(1, 4), Fraction(4), Fraction(2, 3), Fraction(3, 2),
                                Fraction(1, 5), Fraction(5)]


def grid_values(grid: str = "small") -> List[GaussianRational]:
    """Torus sample points: modulus times a rational point on the unit circle."""
    if grid == "small":
        moduli, phases = _MODULI_SMALL, _PHASES_SMALL
    elif grid == "wide":
        moduli, phases = _MODULI_WIDE, _PHASES_WIDE
    else:
        raise ValueError(f"unknown grid {grid!r}")
    return [GaussianRational(m * Fraction(x), m * Fraction(y)) for m in moduli for x, y in phases]


@dataclass(frozen=True)
class SearchOptions:
    max_exp: int = 12
    grid: str = "small"
    refine: bool = True
    assert_psh: bool = False
    max_points: int = 200_000
    workers: int = 1

    def to_json(self) -> dict:
        return {"max_exp": self.max_exp, "grid": self.grid, "refine": self.refine,
                "assert_psh": self.assert_psh, "max_points": self.max_points}


DEFAULT_OPTIONS = SearchOptions()


# ---------------------------------------------------------------------------
# exact helpers


def terms_of(P: MixedPolynomial) -> List[Term]:
    return [(a, b, c) for (a, b), c in P.sorted_terms()]


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def can_vanish(normals: Sequence[Sequence[int]], delta: Sequence[int]) -> bool:
    """Whether ``<a, delta> = 0`` for some ``a`` in the relative interior of the cone of ``normals``."""
    vals = [dot(g, delta) for g in normals]
    if all(v == 0 for v in vals):
        return True
    return any(v > 0 for v in vals) and any(v < 0 for v in vals)


def _isolated_term(terms: List[Term], normals) -> Optional[int]:
    for i, (ai, _, _) in enumerate(terms):
        if all(not can_vanish(normals, _sub(ai, aj)) for j, (aj, _, _) in enumerate(terms) if j != i):
            return i
    return None


def _det(mat: List[List[GaussianRational]]) -> GaussianRational:
    m = [row[:] for row in mat]
    n = len(m)
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        pv = m[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def hermitian_class(H: List[List[GaussianRational]]) -> str:
    """Exact definiteness class: ``pd``, ``psd``, ``nd``, ``nsd``, ``indef`` or ``unknown``."""
    n = len(H)
    if n == 0:
        return "unknown"
    for i in range(n):
        for j in range(n):
            if H[i][j] != H[j][i].conjugate():
                return "indef"
    if n > 10:
        return "unknown"
    leading = [_det([row[:k] for row in H[:k]]).re for k in range(1, n + 1)]
    if all(x > 0 for x in leading):
        return "pd"
    if all((x < 0 if k % 2 == 1 else x > 0) for k, x in enumerate(leading, start=1)):
        return "nd"
    minors = {}
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            minors[sub] = _det([[H[i][j] for j in sub] for i in sub]).re
    if all(v >= 0 for v in minors.values()):
        return "psd"
    if all((v <= 0 if len(s) % 2 else v >= 0) for s, v in minors.items()):
        return "nsd"
    return "indef"


def _perfect_square(poly: Dict[Tuple[int, ...], Fraction]) -> bool:
    """Whether ``poly`` equals ``lam * q^2`` with ``lam > 0`` and rational ``q``."""
    if not poly:
        return False
    lead = max(poly)
    lam = poly[lead]
    if lam <= 0 or any(e % 2 for e in lead):
        return False
    r = {k: v / lam for k, v in poly.items()}
    half = tuple(e // 2 for e in lead)
    q = {half: Fraction(1)}
    last = half
    for _ in range(len(poly) + 2):
        sq: Dict[Tuple[int, ...], Fraction] = {}
        for e1, c1 in q.items():
            for e2, c2 in q.items():
                k = tuple(x + y for x, y in zip(e1, e2))
                sq[k] = sq.get(k, Fraction(0)) + c1 * c2
        rem = {k: r.get(k, Fraction(0)) - sq.get(k, Fraction(0)) for k in set(r) | set(sq)}
        rem = {k: v for k, v in rem.items() if v}
        if not rem:
            return True
        top = max(rem)
        nu = tuple(x - y for x, y in zip(top, half))
        if min(nu) < 0 or nu >= last:
            return False
        q[nu] = rem[top] / 2
        last = nu
    return False


def _gram_certificate(terms: List[Term], normals) -> Optional[str]:
    """The ``hermitian-gram`` rule; returns a short description when it applies."""
    balanced = [t for t in terms if t[0] == t[1] or can_vanish(normals, _sub(t[0], t[1]))]
    if not balanced or not any(t[0] == t[1] for t in balanced):
        return None
    # blocks of terms in disjoint variable sets
    nvars = len(terms[0][0])
    parent = list(range(len(balanced)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner: Dict[int, int] = {}
    for i, (a, b, _) in enumerate(balanced):
        for j in range(nvars):
            if a[j] or b[j]:
                if j in owner:
                    parent[find(i)] = find(owner[j])
                else:
                    owner[j] = i
    blocks: Dict[int, List[Term]] = {}
    for i, t in enumerate(balanced):
        blocks.setdefault(find(i), []).append(t)
    for sign in (1, -1):
        classes = []
        for block in blocks.values():
            classes.append(_block_class(block, sign))
        if all(c in ("pos", "nonneg") for c in classes) and "pos" in classes:
            return "positive" if sign > 0 else "negative"
    return None


def _block_class(block: List[Term], sign: int) -> str:
    exps = sorted({t[0] for t in block} | {t[1] for t in block})
    pos = {e: k for k, e in enumerate(exps)}
    # connected components of the Gram graph
    parent = list(range(len(exps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in block:
        parent[find(pos[a])] = find(pos[b])
    comps: Dict[int, List[int]] = {}
    for k in range(len(exps)):
        comps.setdefault(find(k), []).append(k)
    entries = {(pos[a], pos[b]): c * sign for a, b, c in block}
    kinds = []
    for members in comps.values():
        H = [[entries.get((i, j), ZERO) for j in members] for i in members]
        kinds.append(hermitian_class(H))
    if all(k == "pd" for k in kinds):
        return "pos"
    if all(k in ("pd", "psd") for k in kinds):
        return "pos" if "pd" in kinds else "nonneg"
    if all(a == b for a, b, _ in block):
        poly = {a: (c * sign).re for a, _, c in block}
        if _perfect_square(poly):
            return "nonneg"
    return "fail"


# ---------------------------------------------------------------------------
# candidate directions and term partitions


def candidate_directions(face: FaceHandle, bound: int = 12) -> List[Tuple[int, ...]]:
    """Determining vectors of ``face`` covering the ways its terms can group."""
    n = face.polyhedron.dim
    if face.dim == n - 1:
        return [face.a_determining]
    gens = list(face.normals)
    cands = {face.a_determining}
    levels = (1, 2, 3) if 3 ** len(gens) <= 729 else (1, 2)
    if len(levels) ** len(gens) <= 4096:
        for lam in itertools.product(levels, repeat=len(gens)):
            cands.add(primitive([sum(l * g[j] for l, g in zip(lam, gens)) for j in range(n)]))
    if n <= 3:
        for a in itertools.product(range(1, bound + 1), repeat=n):
            if face.determined_by(a):
                cands.add(primitive(a))
    return sorted((a for a in cands if face.determined_by(a)), key=lambda a: (max(a), sum(a), a))


def balancing_directions(face: FaceHandle, terms: List[Term]) -> List[Tuple[int, ...]]:
    """For each pair of terms that can share a group, a determining vector merging them."""
    n = face.polyhedron.dim
    gens = list(face.normals)
    out = set()
    for (a1, _, _), (a2, _, _) in itertools.combinations(terms, 2):
        delta = _sub(a1, a2)
        vals = [dot(g, delta) for g in gens]
        if all(v == 0 for v in vals) or not (any(v > 0 for v in vals) and any(v < 0 for v in vals)):
            continue
        sp = sum(v for v in vals if v > 0)
        sn = -sum(v for v in vals if v < 0)
        lam = [sn if v > 0 else sp if v < 0 else 1 for v in vals]
        a = primitive([sum(l * g[j] for l, g in zip(lam, gens)) for j in range(n)])
        if face.determined_by(a):
            out.add(a)
    return sorted(out, key=lambda a: (max(a), sum(a), a))


def partition_of(terms: List[Term], a: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    groups: Dict[int, List[int]] = {}
    for i, (alpha, _, _) in enumerate(terms):
        groups.setdefault(dot(a, alpha), []).append(i)
    return tuple(sorted(tuple(g) for g in groups.values()))


# ---------------------------------------------------------------------------
# torus zero search


def _exact_value(term: Term, c: Sequence[GaussianRational]) -> GaussianRational:
    a, b, coef = term
    v = coef
    for j, cj in enumerate(c):
        if a[j]:
            v = v * cj ** a[j]
        if b[j]:
            v = v * cj.conjugate() ** b[j]
    return v


def _all_vanish(equations: List[List[Term]], c) -> bool:
    for eq in equations:
        total = ZERO
        for t in eq:
            total = total + _exact_value(t, c)
        if total:
            return False
    return True


def _rationalize(x: float, den: int) -> Fraction:
    return Fraction(x).limit_denominator(den)


def find_torus_zero(equations: List[List[Term]], nvars: int, used: Sequence[int],
                    options: SearchOptions = DEFAULT_OPTIONS) -> Optional[Tuple[GaussianRational, ...]]:
    """Exact common zero in the torus of quasi-homogeneous ``equations``, or None.

    The first used variable is fixed to 1, which loses nothing for
    quasi-homogeneous systems.  Grid points and least-squares refinements
    are only candidates; a point is returned only after exact verification.
    """
    used = list(used)
    if not used:
        c = tuple(ONE for _ in range(nvars))
        return c if _all_vanish(equations, c) else None
    free = used[1:]
    base = [ONE] * nvars

    def point(vals):
        c = list(base)
        for j, v in zip(free, vals):
            c[j] = v
        return tuple(c)

    if not free:
        c = point(())
        return c if _all_vanish(equations, c) else None
    values = grid_values(options.grid)
    cvals = np.array([complex(v) for v in values])
    g, f = len(values), len(free)
    total = g ** f
    if total <= options.max_points:
        idx = np.indices((g,) * f).reshape(f, -1).T
    else:
        rng = np.random.default_rng(0)
        idx = rng.integers(0, g, size=(options.max_points, f))
    samples = cvals[idx]  # shape (N, f)
    full = np.ones((samples.shape[0], nvars), dtype=complex)
    for k, j in enumerate(free):
        full[:, j] = samples[:, k]
    resid = _residuals(equations, full)
    order = np.argsort(resid, kind="stable")
    for pos in order[:64]:
        if resid[pos] > 1e-8:
            break
        c = point(tuple(values[i] for i in idx[pos]))
        if _all_vanish(equations, c):
            return c
    if not options.refine:
        return None
    return _refine(equations, nvars, free, full[order[:6]], point)


def _residuals(equations, full: np.ndarray) -> np.ndarray:
    conj = np.conj(full)
    worst = np.zeros(full.shape[0])
    for eq in equations:
        val = np.zeros(full.shape[0], dtype=complex)
        scale = np.zeros(full.shape[0])
        for a, b, coef in eq:
            mono = complex(coef) * np.ones(full.shape[0], dtype=complex)
            for j in range(full.shape[1]):
                if a[j]:
                    mono = mono * full[:, j] ** a[j]
                if b[j]:
                    mono = mono * conj[:, j] ** b[j]
            val += mono
            scale += np.abs(mono)
        worst = np.maximum(worst, np.abs(val) / np.maximum(scale, 1e-300))
    return worst


def _refine(equations, nvars, free, starts, point):
    from scipy.optimize import least_squares

    def unpack(x):
        row = np.ones(nvars, dtype=complex)
        for k, j in enumerate(free):
            row[j] = complex(x[2 * k], x[2 * k + 1])
        return row

    def fun(x):
        row = unpack(x)
        out = []
        for eq in equations:
            val, scale = 0j, 0.0
            for a, b, coef in eq:
                m = complex(coef)
                for j in range(nvars):
                    if a[j]:
                        m *= row[j] ** a[j]
                    if b[j]:
                        m *= np.conj(row[j]) ** b[j]
                val += m
                scale += abs(m)
            val /= max(scale, 1e-12)
            out.extend((val.real, val.imag))
        return np.array(out)

    for start in starts:
        x0 = []
        for j in free:
            x0.extend((start[j].real, start[j].imag))
        try:
            sol = least_squares(fun, np.array(x0), xtol=1e-14, ftol=1e-14, gtol=1e-14, max_nfev=400)
        except Exception:  # numerical failure only loses a candidate
            continue
        if np.max(np.abs(sol.fun)) > 1e-6:
            continue
        x = sol.x
        for den in (1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 25, 50, 100, 1000):
            vals = tuple(GaussianRational(_rationalize(x[2 * k], den), _rationalize(x[2 * k + 1], den))
                         for k in range(len(free)))
            if any(not v for v in vals):
                continue
            c = point(vals)
            if _all_vanish(equations, c):
                return c
    return None


# ---------------------------------------------------------------------------
# face checks


def _unknown(face, diag) -> NondegeneracyVerdict:
    return NondegeneracyVerdict(Status.UNKNOWN, None, None, face.vertices, diag)


def certify_face(F: MixedPolynomial, face: FaceHandle, assert_psh: bool = False,
                 part: Optional[MixedPolynomial] = None) -> Optional[str]:
    """The first sound nondegeneracy rule that applies to ``F_kappa``, or None."""
    if part is None:
        part = face_part(F, face)
    if part.is_zero():
        return None
    terms = terms_of(part)
    normals = face.normals
    if len(part.variables_used()) == 1:
        return "one-variable"
    if _isolated_term(terms, normals) is not None:
        return "isolated-term"
    if part.is_real() and _gram_certificate(terms, normals):
        return "hermitian-gram"
    if assert_psh and F and all(a == b for a, b in F.terms):
        return "rotation-psh"
    return None


def witness_search(part: MixedPolynomial, face: FaceHandle,
                   options: SearchOptions = DEFAULT_OPTIONS,
                   directions: Optional[Sequence[Sequence[int]]] = None):
    """Exact witness ``(c, a)`` killing ``part`` along ``c t^a``, or None.

    Returns ``(curve, stats)``.
    """
    terms = terms_of(part)
    n = part.nvars
    if directions is None:
        directions = candidate_directions(face, options.max_exp)
        directions = directions + [a for a in balancing_directions(face, terms) if a not in directions]
    seen = {}
    for a in directions:
        key = partition_of(terms, a)
        if key not in seen:
            seen[key] = tuple(a)
    stats = {"directions": len(directions), "partitions": len(seen), "searched": 0}
    used = part.variables_used()
    for key, a in seen.items():
        if any(len(g) == 1 for g in key):
            continue  # a lone term is a nonzero monomial on the torus
        stats["searched"] += 1
        equations = [[terms[i] for i in g] for g in key]
        c = find_torus_zero(equations, n, used, options)
        if c is not None:
            curve = MonomialCurve(c, a)
            if substitute_curve(part, curve.jet()).is_zero():
                return curve, stats
    return None, stats


def check_face(F: MixedPolynomial, face: FaceHandle,
               options: SearchOptions = DEFAULT_OPTIONS) -> NondegeneracyVerdict:
    if not face.bounded:
        raise ValueError("nondegeneracy is checked on bounded faces")
    part = face_part(F, face)
    diag = {"terms": len(part)}
    if part.is_zero():
        curve = MonomialCurve((ONE,) * F.nvars, face.a_determining)
        return NondegeneracyVerdict(Status.DEGENERATE, "vanishing-part", Witness(face.vertices, curve),
                                    face.vertices, diag)
    cert = certify_face(F, face, options.assert_psh, part)
    if cert is not None:
        return NondegeneracyVerdict(Status.NONDEGENERATE, cert, None, face.vertices, diag)
    curve, stats = witness_search(part, face, options)
    diag.update(stats)
    if curve is not None:
        tag = "pluriharmonic" if part.is_pluriharmonic() else "witness"
        return NondegeneracyVerdict(Status.DEGENERATE, tag, Witness(face.vertices, curve),
                                    face.vertices, diag)
    if part.is_pluriharmonic() and part.is_real() and face.dim >= 1:
        diag["note"] = ("pluriharmonic part on a face with several vertices is degenerate, "
                        "but no Gaussian-rational witness was found")
    return _unknown(face, diag)


def _check_face_job(job) -> NondegeneracyVerdict:
    F, vertices, options = job
    return check_face(F, of(F).face_with_vertices(vertices), options)


def check_all(F: MixedPolynomial, options: SearchOptions = DEFAULT_OPTIONS) -> NondegeneracyVerdict:
    """Nondegeneracy of every bounded face part; the first degenerate face wins."""
    if F.is_zero():
        raise ValueError("the zero polynomial is flat")
    P = of(F)
    summary = []
    unknown_face = None
    faces = P.bounded_faces
    if options.workers > 1 and len(faces) > 1:
        # every face is checked; the ordered scan below keeps the sequential result
        with ProcessPoolExecutor(max_workers=options.workers) as pool:
            verdicts = list(pool.map(_check_face_job, [(F, f.vertices, options) for f in faces]))
    else:
        verdicts = None
    for k, face in enumerate(faces):
        v = verdicts[k] if verdicts is not None else check_face(F, face, options)
        summary.append((face.vertices, v.status, v.certificate))
        if v.status is Status.DEGENERATE:
            return NondegeneracyVerdict(Status.DEGENERATE, v.certificate, v.witness, face.vertices,
                                        v.diagnostics, tuple(summary))
        if v.status is Status.UNKNOWN and unknown_face is None:
            unknown_face = v
    if unknown_face is not None:
        return NondegeneracyVerdict(Status.UNKNOWN, None, None, unknown_face.face,
                                    unknown_face.diagnostics, tuple(summary))
    return NondegeneracyVerdict(Status.NONDEGENERATE, "all-faces", None, None,
                                {"faces": len(summary)}, tuple(summary))


def verify_verdict(F: MixedPolynomial, verdict: NondegeneracyVerdict, assert_psh: bool = False) -> bool:
    """Re-check a verdict exactly: the witness kills the face part, or every certificate re-applies."""
    P = of(F)
    if verdict.status is Status.DEGENERATE:
        face = P.face_with_vertices(verdict.witness.face)
        return substitute_curve(face_part(F, face), verdict.witness.curve.jet()).is_zero() and \
            face.determined_by(verdict.witness.curve.a)
    if verdict.status is Status.NONDEGENERATE:
        entries = verdict.faces or ((verdict.face, Status.NONDEGENERATE, verdict.certificate),)
        for fv, st, cert in entries:
            face = P.face_with_vertices(fv)
            if st is not Status.NONDEGENERATE or certify_face(F, face, assert_psh) != cert:
                return False
        return True
    return True


# ---------------------------------------------------------------------------
# holomorphic comparison and coordinate-plane restriction


def _derivative(P: MixedPolynomial, j: int) -> MixedPolynomial:
    out = {}
    for (a, b), c in P.terms.items():
        if a[j]:
            a2 = tuple(x - (k == j) for k, x in enumerate(a))
            out[(a2, b)] = c * a[j]
    return MixedPolynomial(P.nvars, out, P.names)


def kouchnirenko_check(F: MixedPolynomial, options: SearchOptions = DEFAULT_OPTIONS):
    """Per bounded face of a holomorphic ``F``: does the gradient of ``F_kappa`` vanish on the torus?

    Returns a list of ``(face, status, witness_point)``; ``Degenerate`` findings
    come with an exact common zero, ``Nondegenerate`` ones from a partial
    derivative that is a single monomial.
    """
    if not F.is_holomorphic():
        raise ValueError("the comparison test needs a holomorphic polynomial")
    if F.is_zero():
        raise ValueError("the zero polynomial is flat")
    P = of(F)
    out = []
    for face in P.bounded_faces:
        part = face_part(F, face)
        used = part.variables_used()
        grads = [_derivative(part, j) for j in used]
        if len(part) == 1 or any(len(g) == 1 for g in grads):
            out.append((face, Status.NONDEGENERATE, None))
            continue
        equations = [terms_of(g) for g in grads if g]
        c = find_torus_zero(equations, F.nvars, used, options)
        if c is not None:
            out.append((face, Status.DEGENERATE, c))
        else:
            out.append((face, Status.UNKNOWN, None))
    return out


@dataclass(frozen=True)
class RestrictionComparison:
    I: Tuple[int, ...]
    full: NondegeneracyVerdict
    restricted: NondegeneracyVerdict

    @property
    def agree(self) -> Optional[bool]:
        if Status.UNKNOWN in (self.full.status, self.restricted.status):
            return None
        return self.full.status == self.restricted.status


def coordinate_support(face: FaceHandle) -> Tuple[int, ...]:
    n = face.polyhedron.dim
    return tuple(j for j in range(n) if any(v[j] for v in face.vertices))


def restricted_equivalence(F: MixedPolynomial, face: FaceHandle,
                           options: SearchOptions = DEFAULT_OPTIONS) -> RestrictionComparison:
    """Check ``F_kappa`` and its restriction to the coordinate plane of ``kappa`` side by side."""
    I = coordinate_support(face) or tuple(range(F.nvars))
    full = check_face(F, face, options)
    if len(I) == F.nvars:
        return RestrictionComparison(I, full, full)
    FI = restrict(F, I)
    PI = of(FI)
    faceI = PI.face_with_vertices([tuple(v[j] for j in I) for v in face.vertices])
    return RestrictionComparison(I, full, check_face(FI, faceI, options))


def witness_curve_in(n: int, I: Sequence[int], curve: MonomialCurve):
    """Embed a witness on the ``I`` variables into ``n`` variables (zero elsewhere)."""
    return monomial_jet(curve.c, curve.a, n, I)
