"""Recognizers for special shapes of ``F``: single simplex facet, rotation
invariance, necessary vertex conditions for positivity along curves, and the
normal form of surfaces whose regular type is 4."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .gaussian import ONE, ZERO, GaussianRational, ext_to_json
from .hypersurface import HypothesisError, ModelHypersurface, check_pure_free
from .mixedpoly import MixedPolynomial, filter_terms, principal_part
from .nondegen import DEFAULT_OPTIONS, SearchOptions, Status, check_all
from .polyhedron import of

Surface = Union[MixedPolynomial, ModelHypersurface]


def _F(M: Surface) -> MixedPolynomial:
    return M.F if isinstance(M, ModelHypersurface) else M


def _simplex_vertices(P) -> Optional[Tuple[int, ...]]:
    """Axis intercepts when the diagram is the single facet through them, else None."""
    if not P.convenient():
        return None
    facets = P.bounded_facets()
    if len(facets) != 1:
        return None
    n = P.dim
    axis = {tuple(P.rho[j] if k == j else 0 for k in range(n)) for j in range(n)}
    if set(facets[0].vertices) != axis:
        return None
    return tuple(P.rho)


@dataclass(frozen=True)
class SemiregularResult:
    ok: bool
    m: Optional[Tuple[int, ...]]
    reason: str

    def to_json(self) -> dict:
        return {"ok": self.ok, "m": list(self.m) if self.m else None, "reason": self.reason}


def semiregular_model_check(M: Surface, options: SearchOptions = DEFAULT_OPTIONS) -> SemiregularResult:
    """Whether the diagram is one simplex facet ``conv{m_j e_j}`` with ``F`` nondegenerate."""
    F = _F(M)
    if F.is_zero():
        return SemiregularResult(False, None, "F is flat")
    P = of(F)
    if not P.convenient():
        return SemiregularResult(False, None, "F is not convenient")
    m = _simplex_vertices(P)
    if m is None:
        return SemiregularResult(False, None, f"diagram has {len(P.bounded_facets())} bounded facets "
                                               "or is not the axis simplex")
    verdict = check_all(F, options)
    if verdict.status is not Status.NONDEGENERATE:
        return SemiregularResult(False, m, f"F is {verdict.status.value}")
    return SemiregularResult(True, m, "single simplex facet, nondegenerate")


def rotation_invariance_check(F: Surface) -> bool:
    """Invariance under ``z_j -> e^{i theta_j} z_j`` for all angles: every term has ``alpha = beta``."""
    F = _F(F)
    return all(a == b for a, b in F.terms)


@dataclass(frozen=True)
class VertexCheck:
    vertex: Tuple[int, ...]
    even: bool
    diagonal: Optional[GaussianRational]  # coefficient of |z^(v/2)|^2
    ok: bool

    def to_json(self) -> dict:
        return {"vertex": list(self.vertex), "even": self.even,
                "diagonal": self.diagonal.to_text() if self.diagonal is not None else None, "ok": self.ok}


@dataclass(frozen=True)
class PSResult:
    ok: bool
    vertices: Tuple[VertexCheck, ...]

    def to_json(self) -> dict:
        return {"ok": self.ok, "necessary_only": True, "vertices": [v.to_json() for v in self.vertices]}


def ps_vertex_conditions(F: Surface) -> PSResult:
    """Necessary vertex conditions for positivity of ``F`` along curves.

    Every vertex must have even components and carry the term
    ``c |z^(v/2)|^2`` with ``c > 0``.  Passing does not prove the property.
    """
    F = _F(F)
    if F.is_zero():
        raise HypothesisError("F is flat")
    check_pure_free(F)
    checks = []
    for v in of(F).vertices:
        even = all(x % 2 == 0 for x in v)
        coef = None
        ok = False
        if even:
            half = tuple(x // 2 for x in v)
            coef = F.coefficient(half, half)
            ok = bool(coef) and coef.is_real() and coef.re > 0
        checks.append(VertexCheck(v, even, coef if even else None, ok))
    return PSResult(all(c.ok for c in checks), tuple(checks))


# ---------------------------------------------------------------------------
# regular type 4


@dataclass(frozen=True)
class Type4Result:
    """Outcome of the type-4 recognizer.

    ``status`` is one of ``normal-form``, ``cross-terms``, ``not-of-form``,
    ``precondition-failed`` or ``unknown``.
    """

    status: str
    m: Optional[int] = None
    P: Optional[MixedPolynomial] = None
    F: Optional[MixedPolynomial] = None  # F in the new coordinates
    substitution: Tuple[str, ...] = ()
    permutation: Tuple[int, ...] = ()
    diagonal: Tuple[GaussianRational, ...] = ()
    cross_terms: Optional[MixedPolynomial] = None
    reason: str = ""

    @property
    def form(self) -> Optional[Tuple[int, int]]:
        if self.status in ("normal-form", "cross-terms") and self.m is not None and self.F is not None:
            return (self.m, self.F.nvars)
        return None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "form": list(self.form) if self.form else None,
            "m": self.m,
            "P": self.P.to_text() if self.P is not None else None,
            "F": self.F.to_text() if self.F is not None else None,
            "substitution": list(self.substitution),
            "permutation": list(self.permutation),
            "diagonal": [d.to_text() for d in self.diagonal],
            "cross_terms": self.cross_terms.to_text() if self.cross_terms is not None else None,
            "reason": self.reason,
        }


def _hermitian_quadratic(F: MixedPolynomial) -> List[List[GaussianRational]]:
    """Matrix ``H`` with ``sum H[j][k] z_j conj(z_k)`` the degree-(1,1) part of ``F``."""
    n = F.nvars
    H = [[ZERO] * n for _ in range(n)]
    for (a, b), c in F.terms.items():
        if sum(a) == 1 and sum(b) == 1:
            H[a.index(1)][b.index(1)] = c
    return H


def _congruence(H, order: Sequence[int]):
    """Exact ``H = U^* D U`` with ``U`` unit upper triangular in the pivot order.

    Returns ``(D, U)`` (``U`` in the original indexing) or None when a zero
    pivot meets a nonzero row, which makes ``H`` indefinite.
    """
    n = len(H)
    A = [[H[order[i]][order[j]] for j in range(n)] for i in range(n)]
    U = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    D = [ZERO] * n
    for k in range(n):
        piv = A[k][k]
        if not piv:
            if any(A[k][j] for j in range(k + 1, n)):
                return None
            continue
        D[k] = piv
        for j in range(k + 1, n):
            U[k][j] = A[k][j] / piv
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = A[i][j] - A[i][k] * A[k][j] / piv
    # back to the original indexing: row k of U is the new coordinate order[k]
    Uo = [[ZERO] * n for _ in range(n)]
    Do = [ZERO] * n
    for i in range(n):
        Do[order[i]] = D[i]
        for j in range(n):
            Uo[order[i]][order[j]] = U[i][j]
    return Do, Uo


def _invert_unit_triangular(U, order):
    """Inverse of a matrix that is unit upper triangular after permuting by ``order``."""
    n = len(U)
    A = [[U[order[i]][order[j]] for j in range(n)] for i in range(n)]
    X = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            s = ZERO
            for k in range(i + 1, j + 1):
                s = s + A[i][k] * X[k][j]
            X[i][j] = -s
    Xo = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            Xo[order[i]][order[j]] = X[i][j]
    return Xo


def _attempt(F: MixedPolynomial, order) -> Type4Result:
    n = F.nvars
    H = _hermitian_quadratic(F)
    res = _congruence(H, order)
    if res is None:
        return Type4Result("unknown", reason="the degree-(1,1) form is indefinite", permutation=tuple(order))
    D, U = res
    if any(d and not (d.is_real() and d.re > 0) for d in D):
        return Type4Result("unknown", reason="the degree-(1,1) form is not positive semidefinite",
                           permutation=tuple(order))
    # new coordinates u = U z, so z = U^{-1} u
    Uinv = _invert_unit_triangular(U, order)
    names = F.names
    maps = []
    for i in range(n):
        m = MixedPolynomial.zero(n, names)
        for j in range(n):
            if Uinv[i][j]:
                m = m + MixedPolynomial.variable(n, j, names).scale(Uinv[i][j])
        maps.append(m)
    G = F.compose(maps) if any(Uinv[i][j] for i in range(n) for j in range(n) if i != j) else F
    subs = tuple(f"{names[i]} = {maps[i].to_text()}" for i in range(n))
    P = of(G)
    rho = P.rho
    m = _simplex_vertices(P)
    if m is None or any(x not in (2, 4) for x in rho):
        return Type4Result("not-of-form", F=G, substitution=subs, permutation=tuple(order), diagonal=tuple(D),
                           reason="diagram is not conv{4e_j, 2e_k}")
    four = [j for j in range(n) if rho[j] == 4]
    two = [j for j in range(n) if rho[j] == 2]
    G0 = principal_part(G)
    P_part = filter_terms(G0, lambda s: all(s[j] == 0 for j in two))
    quad = MixedPolynomial(n, {((tuple(int(k == j) for k in range(n)),) * 2): G0.coefficient(
        tuple(int(k == j) for k in range(n)), tuple(int(k == j) for k in range(n))) for j in two}, names)
    cross = G0 - P_part - quad
    status = "normal-form" if cross.is_zero() else "cross-terms"
    return Type4Result(status, len(four), P_part, G, subs, tuple(order), tuple(D),
                       None if cross.is_zero() else cross,
                       "principal part is P(z') plus a diagonal Hermitian form" if cross.is_zero()
                       else "principal part has terms mixing both variable groups")


def type4_structure(M: Surface, max_permutations: int = 720) -> Type4Result:
    """Exact normal form for ``rho_1 = 4`` with the vertex conditions satisfied.

    The degree-(1,1) Hermitian form is diagonalized by an exact triangular
    congruence (a linear change of the ``z`` variables); pivot orders are
    tried in lexicographic order until the diagram takes the form
    ``conv{4e_1..4e_m, 2e_{m+1}..2e_n}``.
    """
    F = _F(M)
    if F.is_zero():
        return Type4Result("precondition-failed", reason="F is flat")
    rho1 = max(of(F).rho)
    if rho1 != 4:
        return Type4Result("precondition-failed", reason=f"rho1 is {ext_to_json(rho1)}, not 4")
    try:
        ps = ps_vertex_conditions(F)
    except HypothesisError as e:
        return Type4Result("precondition-failed", reason=str(e))
    if not ps.ok:
        return Type4Result("precondition-failed", reason="vertex conditions fail")
    first = None
    for k, order in enumerate(itertools.permutations(range(F.nvars))):
        if k >= max_permutations:
            break
        res = _attempt(F, order)
        if res.status == "normal-form":
            return res
        if first is None or (first.status not in ("cross-terms",) and res.status == "cross-terms"):
            first = res
    return first


# ---------------------------------------------------------------------------
# summary


@dataclass
class ClassReport:
    semiregular_model: bool
    rotation_invariant: bool
    type4_form: Optional[Tuple[int, int]]
    ps_vertex_ok: Optional[bool]
    bounded_facets: int
    verdict: str
    details: Dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "flags": {
                "semiregular_model": self.semiregular_model,
                "rotation_invariant": self.rotation_invariant,
                "type4_form": list(self.type4_form) if self.type4_form else None,
                "ps_vertex_ok": self.ps_vertex_ok,
            },
            "bounded_facets": self.bounded_facets,
            "verdict": self.verdict,
            "details": self.details,
        }


def classify(M: Surface, options: SearchOptions = DEFAULT_OPTIONS) -> ClassReport:
    """Run every recognizer on ``F``; ``options.assert_psh`` is passed to the verdict."""
    F = _F(M)
    if F.is_zero():
        raise ValueError("the zero polynomial is flat")
    P = of(F)
    verdict = check_all(F, options)
    semi = semiregular_model_check(F, options)
    details = {"semiregular": semi.to_json(), "verdict": verdict.to_json()}
    try:
        ps = ps_vertex_conditions(F)
        ps_ok = ps.ok
        details["ps_vertices"] = ps.to_json()
    except HypothesisError as e:
        ps_ok = None
        details["ps_vertices"] = {"ok": None, "reason": str(e)}
    t4 = type4_structure(F)
    details["type4"] = t4.to_json()
    return ClassReport(semi.ok, rotation_invariance_check(F), t4.form, ps_ok,
                       len(P.bounded_facets()), verdict.status.value, details)


__all__ = [
    "SemiregularResult", "semiregular_model_check", "rotation_invariance_check", "VertexCheck", "PSResult",
    "ps_vertex_conditions", "Type4Result", "type4_structure", "ClassReport", "classify",
]
