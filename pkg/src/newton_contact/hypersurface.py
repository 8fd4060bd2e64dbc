"""Model real hypersurfaces ``Re(w) + F(z, conj z) = 0`` and their types.

A surface is entered as a real polynomial ``r`` in ``(z, w)``.  It is
normalized by rescaling ``w`` so the linear part is ``Re(w)`` and then
absorbing the pure terms ``h + conj(h)`` of ``F`` into ``w`` through
``w -> w + 2h(z)``.  The Newton data of ``r`` is that of ``F`` plus the
point ``e_w``, so ``rho_w = 1`` and ``rho_1`` is the largest intercept of
``F``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .curves import MonomialCurve
from .gaussian import INF, GaussianRational, ext_to_json
from .mixedpoly import MixedPolynomial, TermClass, face_part, holomorphic_part, principal_part, term_class
from .nondegen import (DEFAULT_OPTIONS, NondegeneracyVerdict, SearchOptions, Status, Witness,
                       candidate_directions, check_all, check_face, witness_search)
from .polyhedron import FaceHandle, _compositions, of, regular_face

DEFAULT_IMPROVE_CAP = 16


class HypothesisError(ValueError):
    """The input violates a precondition of the computation."""


@dataclass(frozen=True)
class ModelHypersurface:
    F: MixedPolynomial
    expression: str = ""
    change: str = ""  # the substitution applied by normalize, in the expression grammar

    def __post_init__(self):
        if not self.F.is_real():
            raise ValueError("F must be real-valued")

    @property
    def n(self) -> int:
        return self.F.nvars

    def names(self) -> Tuple[str, ...]:
        return tuple(self.F.names) + ("w",)

    def defining_polynomial(self) -> MixedPolynomial:
        """``Re(w) + F`` with ``w`` as the last variable."""
        n = self.F.nvars
        names = self.names()
        terms = {(a + (0,), b + (0,)): c for (a, b), c in self.F.terms.items()}
        half = GaussianRational(1, 0) / 2
        ew, zero = (0,) * n + (1,), (0,) * (n + 1)
        terms[(ew, zero)] = half
        terms[(zero, ew)] = half
        return MixedPolynomial(n + 1, terms, names)

    def to_json(self) -> dict:
        return {"F": self.F.to_text(), "variables": list(self.names()), "change": self.change,
                "expression": self.expression}


def _w_index(r: MixedPolynomial, w_index: Optional[int]) -> int:
    if w_index is not None:
        if not 0 <= w_index < r.nvars:
            raise ValueError("w_index out of range")
        return w_index
    if "w" in r.names:
        return r.names.index("w")
    return r.nvars - 1


def normalize(r: MixedPolynomial, w_index: Optional[int] = None, expression: str = "") -> ModelHypersurface:
    """Bring ``r`` to the form ``Re(w) + F`` with no pure terms in ``F``.

    ``w`` is the variable named ``w`` or else the last one.  Only model
    surfaces are accepted: ``w`` may enter ``r`` only through its linear part.
    """
    if not r.is_real():
        raise ValueError("the defining polynomial must be real-valued")
    if r.nvars < 2:
        raise ValueError("a hypersurface needs at least one z variable and w")
    k = _w_index(r, w_index)
    n = r.nvars - 1
    ew = tuple(int(j == k) for j in range(r.nvars))
    zero = (0,) * r.nvars
    c = r.coefficient(ew, zero)
    if not c:
        raise HypothesisError("the linear part has no w component; rotate coordinates first")
    if r.coefficient(zero, zero):
        raise HypothesisError("the defining polynomial must vanish at the origin")
    others = [j for j in range(r.nvars) if j != k]
    F_terms = {}
    for (a, b), coef in r.terms.items():
        if (a, b) in ((ew, zero), (zero, ew)):
            continue
        if a[k] or b[k]:
            raise HypothesisError("w appears beyond the linear part; only model surfaces are supported")
        F_terms[(tuple(a[j] for j in others), tuple(b[j] for j in others))] = coef
    names = tuple(r.names[j] for j in others)
    F = MixedPolynomial(n, F_terms, names)
    # c w + conj(c w) = Re(2c w): the new w is 2c w
    steps = []
    if c != GaussianRational(1, 0) / 2:
        steps.append(f"w -> {(c * 2).to_text()}*w")
    h = holomorphic_part(F)
    if not h.is_zero():
        F = F - h - h.conj()
        steps.append(f"w -> w + 2*({h.to_text()})")
    lin = [key for key in F.terms if sum(key[0]) + sum(key[1]) < 2]
    if lin:
        raise HypothesisError("F has terms of degree below 2 after normalization")
    return ModelHypersurface(F, expression, "; ".join(steps))


def rho1_on_coordinate(M: ModelHypersurface):
    """``(rho_1, rho, permutation)`` of ``Re(w) + F``.

    ``rho`` lists the intercepts of the ``z`` axes followed by 1 for ``w``;
    the permutation sorts the ``z`` variables by nonincreasing intercept.
    """
    if M.F.is_zero():
        rho_z = (INF,) * M.n
    else:
        rho_z = of(M.F).rho
    perm = tuple(sorted(range(M.n), key=lambda j: (-rho_z[j] if rho_z[j] != INF else -1e300, j)))
    return max(rho_z), tuple(rho_z) + (1,), perm


@dataclass
class TypeReport:
    rho1: object
    rho: Tuple
    permutation: Tuple[int, ...]
    verdict: NondegeneracyVerdict
    delta1: Optional[object] = None
    delta1_lb: object = 0
    delta1_reg_lb: object = 0
    upper_candidate: object = None
    infinite_certified: bool = False
    best_curve: Optional[str] = None
    best_reg_curve: Optional[str] = None
    zero_curve: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "rho1": ext_to_json(self.rho1),
            "rho": [ext_to_json(x) for x in self.rho],
            "permutation": list(self.permutation),
            "verdict": self.verdict.to_json(),
            "delta1": ext_to_json(self.delta1),
            "delta1_lb": ext_to_json(self.delta1_lb),
            "delta1_reg_lb": ext_to_json(self.delta1_reg_lb),
            "upper_candidate": ext_to_json(self.upper_candidate),
            "infinite_certified": self.infinite_certified,
            "best_curve": self.best_curve,
            "best_reg_curve": self.best_reg_curve,
            "zero_curve": self.zero_curve,
            "notes": list(self.notes),
        }


def check_pure_free(F: MixedPolynomial):
    """Refuse a principal part with pure terms."""
    if F.is_zero():
        return
    P0 = principal_part(F)
    if any(term_class(a, b) is TermClass.PURE for a, b in P0.terms):
        raise HypothesisError("the principal part has pure terms; run normalize first")


def _axis_curve_text(n: int, j: int) -> str:
    comps = ["t" if k == j else "0" for k in range(n + 1)]
    return "(" + ", ".join(comps) + ")"


def compute_type(M: ModelHypersurface, options: SearchOptions = DEFAULT_OPTIONS,
                 oracle_cfg=None, use_oracle: Optional[bool] = None) -> TypeReport:
    """Type data of ``M`` from its Newton polyhedron.

    A nondegenerate ``F`` gives the singular and regular types exactly as
    ``rho_1``.  Otherwise lower bounds come from axis curves and, by default
    on degenerate input, from the curve oracle.
    """
    from .oracle import DEFAULT_CONFIG, sup_contact_lower_bound

    check_pure_free(M.F)
    rho1, rho, perm = rho1_on_coordinate(M)
    notes = []
    if M.F.is_zero():
        verdict = NondegeneracyVerdict(Status.UNKNOWN, None, None, None, {"note": "F is flat"})
        report = TypeReport(rho1, rho, perm, verdict, None, INF, INF, INF, True,
                            zero_curve=_axis_curve_text(M.n, 0))
        report.notes.append("F vanishes identically: every z axis lies in the surface")
        return report
    verdict = check_all(M.F, options)
    report = TypeReport(rho1, rho, perm, verdict, upper_candidate=rho1)
    # an axis curve meets r exactly in the axis terms of F, which cannot cancel
    finite = [j for j in range(M.n) if rho[j] != INF]
    if finite:
        j = max(finite, key=lambda k: (rho[k], -k))
        report.delta1_lb = report.delta1_reg_lb = rho[j]
        report.best_curve = report.best_reg_curve = _axis_curve_text(M.n, j)
    if rho1 == INF:
        j = next(j for j in range(M.n) if rho[j] == INF)
        report.delta1_lb = report.delta1_reg_lb = INF
        report.infinite_certified = True
        report.zero_curve = report.best_curve = report.best_reg_curve = _axis_curve_text(M.n, j)
        notes.append(f"F is not convenient: r vanishes identically along the z{j + 1} axis")

    if verdict.status is Status.NONDEGENERATE:
        report.delta1 = rho1
        notes.append("nondegenerate: singular and regular types equal rho1")
    else:
        if verdict.status is Status.DEGENERATE:
            notes.append("degenerate: rho1 is only a candidate upper bound for the types")
        else:
            notes.append("nondegeneracy undecided: only bounds are reported")
        run = use_oracle if use_oracle is not None else rho1 != INF
        if run:
            cfg = oracle_cfg or DEFAULT_CONFIG
            r = M.defining_polynomial()
            full = sup_contact_lower_bound(r, cfg.with_(reg_only=False))
            reg = sup_contact_lower_bound(r, cfg.with_(reg_only=True))
            # on ties prefer the oracle's curve, which uses the most variables
            if full.best >= report.delta1_lb:
                report.delta1_lb, report.best_curve = full.best, full.curve.to_text()
            if reg.best >= report.delta1_reg_lb:
                report.delta1_reg_lb, report.best_reg_curve = reg.best, reg.curve.to_text()
            if full.infinite_flag:
                report.infinite_certified = True
                report.zero_curve = full.zero_curve.to_text()
                notes.append(f"r vanishes identically along {report.zero_curve}: singular type is infinite")
            if report.delta1_reg_lb == rho1 and not report.infinite_certified and report.delta1_lb == rho1:
                notes.append(f"oracle lower bound meets the candidate: lb = {ext_to_json(rho1)}")
                notes.append("degenerate yet lb = candidate: the types are attained without a "
                             "coordinate on which F is nondegenerate, which may not exist here")
            elif report.delta1_reg_lb > rho1:
                notes.append("a regular curve beats rho1: this coordinate is not adapted")
    report.notes.extend(notes)
    return report


# ---------------------------------------------------------------------------
# coordinate improvement


@dataclass(frozen=True)
class ImprovementStep:
    pivot: int
    face: Tuple[Tuple[int, ...], ...]
    witness: MonomialCurve
    maps: Tuple[MixedPolynomial, ...]  # z_j as polynomials in the new coordinates
    rho1_before: object
    rho1_after: object
    result: ModelHypersurface

    def to_json(self) -> dict:
        return {
            "pivot": self.pivot,
            "face": [list(v) for v in self.face],
            "witness": self.witness.to_json(),
            "substitution": [m.to_text() for m in self.maps],
            "rho1_before": ext_to_json(self.rho1_before),
            "rho1_after": ext_to_json(self.rho1_after),
            "F": self.result.F.to_text(),
        }


def _pivot_directions(face: FaceHandle, p: int, bound: int, limit: int = 20000):
    n = face.polyhedron.dim
    out = [a for a in candidate_directions(face, bound) if a[p] == 1]
    others = [k for k in range(n) if k != p]
    count = 0
    for total in range(len(others), len(others) * bound + 1):
        for rest in _compositions(total, len(others), bound):
            count += 1
            if count > limit:
                return out
            a = [0] * n
            a[p] = 1
            for k, x in zip(others, rest):
                a[k] = x
            a = tuple(a)
            if a not in out and face.determined_by(a):
                out.append(a)
    return out


def _new_names(n: int) -> Tuple[str, ...]:
    return tuple(f"w{j + 1}" for j in range(n))


def _shear(F: MixedPolynomial, p: int, witness: MonomialCurve) -> Tuple[MixedPolynomial, Tuple[MixedPolynomial, ...]]:
    n = F.nvars
    names = _new_names(n)
    wp = MixedPolynomial.variable(n, p, names)
    cp = witness.c[p]
    maps = []
    for j in range(n):
        wj = MixedPolynomial.variable(n, j, names)
        if j == p:
            maps.append(wj)
        else:
            coef = witness.c[j] / cp ** witness.a[j]
            maps.append(wj + (wp ** witness.a[j]).scale(coef))
    return F.compose(maps), tuple(maps)


def improve_coordinate(M: ModelHypersurface, options: SearchOptions = DEFAULT_OPTIONS) -> Optional[ImprovementStep]:
    """One ascent step: a triangular change that raises ``rho_1``, or None.

    Looks for a degenerate face through a top axis vertex with a witness
    whose exponent at that axis is 1, then shears the other coordinates
    along the witness.
    """
    F = M.F
    if F.is_zero():
        return None
    P = of(F)
    if not P.convenient():
        return None
    rho = P.rho
    rho1 = max(rho)
    candidates = []
    for p in range(F.nvars):
        if rho[p] != rho1:
            continue
        apex = tuple(rho1 if k == p else 0 for k in range(F.nvars))
        for face in P.bounded_faces:
            if apex not in face.vertices or face.dim == 0:
                continue
            part = face_part(F, face)
            dirs = _pivot_directions(face, p, options.max_exp)
            if not dirs:
                continue
            curve, _ = witness_search(part, face, options, dirs)
            if curve is None:
                continue
            G, maps = _shear(F, p, curve)
            newP = of(G)
            new_rho1 = max(newP.rho)
            if new_rho1 <= rho1:
                continue
            candidates.append(((-_ext_key(new_rho1), len(G), p, face.vertices), p, face, curve, G, maps, new_rho1))
    if not candidates:
        return None
    candidates.sort(key=lambda c: c[0])
    _, p, face, curve, G, maps, new_rho1 = candidates[0]
    M2 = normalize_F(G, M.expression)
    return ImprovementStep(p, face.vertices, curve, maps, rho1, new_rho1, M2)


def _ext_key(x):
    return float("inf") if x == INF else x


def normalize_F(F: MixedPolynomial, expression: str = "") -> ModelHypersurface:
    """Normalize ``Re(w) + F`` given ``F`` alone."""
    h = holomorphic_part(F)
    change = ""
    if not h.is_zero():
        F = F - h - h.conj()
        change = f"w -> w + 2*({h.to_text()})"
    return ModelHypersurface(F, expression, change)


@dataclass
class AscentReport:
    steps: List[ImprovementStep]
    final: ModelHypersurface
    report: TypeReport
    terminated: bool
    reason: str

    def to_json(self) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "final": self.final.to_json(),
            "type": self.report.to_json(),
            "terminated": self.terminated,
            "reason": self.reason,
        }


def iterate_improvement(M: ModelHypersurface, options: SearchOptions = DEFAULT_OPTIONS,
                        cap: int = DEFAULT_IMPROVE_CAP, oracle_cfg=None) -> AscentReport:
    """Apply improvement steps until ``F`` is nondegenerate, no step applies, or ``cap`` is hit."""
    steps = []
    current = M
    for _ in range(cap):
        verdict = check_all(current.F, options) if not current.F.is_zero() else None
        if verdict is not None and verdict.status is Status.NONDEGENERATE:
            return AscentReport(steps, current, compute_type(current, options, oracle_cfg), True, "nondegenerate")
        step = improve_coordinate(current, options)
        if step is None:
            return AscentReport(steps, current, compute_type(current, options, oracle_cfg), False,
                                "no qualifying witness through a top axis vertex")
        steps.append(step)
        current = step.result
    report = compute_type(current, options, oracle_cfg)
    done = report.verdict.status is Status.NONDEGENERATE
    return AscentReport(steps, current, report, done, "nondegenerate" if done else f"iteration cap {cap} reached")


# ---------------------------------------------------------------------------
# audit of regular faces


@dataclass
class AuditEntry:
    face: Tuple[Tuple[int, ...], ...]
    top_vertices: Tuple[Tuple[int, ...], ...]
    status: Status
    certificate: Optional[str]
    witness: Optional[Witness]

    def to_json(self) -> dict:
        return {"face": [list(v) for v in self.face], "top_vertices": [list(v) for v in self.top_vertices],
                "status": self.status.value, "certificate": self.certificate,
                "witness": self.witness.to_json() if self.witness else None}


@dataclass
class AuditReport:
    top_vertices: Tuple[Tuple[int, ...], ...]
    entries: List[AuditEntry]

    @property
    def not_adapted(self) -> bool:
        """A degenerate regular face through a top vertex shows the coordinate is not adapted."""
        return any(e.status is Status.DEGENERATE for e in self.entries)

    def to_json(self) -> dict:
        return {"top_vertices": [list(v) for v in self.top_vertices],
                "entries": [e.to_json() for e in self.entries],
                "not_adapted": self.not_adapted}


def regular_face_audit(M: ModelHypersurface, options: SearchOptions = DEFAULT_OPTIONS) -> AuditReport:
    """Verdicts of the regular faces that contain a vertex ``rho_1 e_j``."""
    F = M.F
    P = of(F)
    if not P.convenient():
        raise HypothesisError("the audit needs a convenient F")
    rho1 = max(P.rho)
    top = tuple(tuple(rho1 if k == j else 0 for k in range(F.nvars))
                for j in range(F.nvars) if P.rho[j] == rho1)
    entries = []
    for face in P.bounded_faces:
        meet = tuple(v for v in top if v in face.vertices)
        if not meet or not regular_face(face):
            continue
        v = check_face(F, face, options)
        entries.append(AuditEntry(face.vertices, meet, v.status, v.certificate, v.witness))
    return AuditReport(top, entries)


__all__ = [
    "HypothesisError", "ModelHypersurface", "normalize", "normalize_F", "rho1_on_coordinate", "TypeReport",
    "compute_type", "check_pure_free", "ImprovementStep", "improve_coordinate", "iterate_improvement",
    "AscentReport", "AuditEntry", "AuditReport", "regular_face_audit", "DEFAULT_IMPROVE_CAP",
]
