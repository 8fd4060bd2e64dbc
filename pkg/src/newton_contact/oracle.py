"""Brute-force lower bounds on contact orders over a finite family of curves.

The family is every monomial curve ``(c_j t^{a_j})_{j in I}`` with primitive
exponents up to ``max_exponent``, first coefficient 1 and the rest from a
palette, plus two-term jets ``c t^a + c' t^{a'}`` in one component.  Jets
only extend curves whose leading composition cancels: otherwise the order
of ``F o gamma`` is fixed by the leading monomials and higher terms cannot
raise it.  Likewise an extra term of too high a degree cannot reach the
first surviving coefficient, so those jets are skipped.

Monomial compositions are evaluated group by group; floating point only
screens groups that are clearly nonzero, anything close to zero is
recomputed exactly.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .curves import JetCurve
from .gaussian import INF, ONE, ZERO, GaussianRational, ext_div, ext_to_json
from .mixedpoly import MixedPolynomial, restrict, substitute_curve
from .polyhedron import newton_distance, of, support_min

THREADS_ENV = "NEWTON_CONTACT_THREADS"

DEFAULT_PALETTE = (
    GaussianRational(1), GaussianRational(-1), GaussianRational(0, 1), GaussianRational(0, -1),
    GaussianRational(Fraction(1, 2)), GaussianRational(Fraction(-1, 2)),
    GaussianRational(2), GaussianRational(-2),
)


def env_workers() -> int:
    value = os.environ.get(THREADS_ENV, "").strip()
    try:
        return max(1, int(value)) if value else 1
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {value!r}") from None


@dataclass(frozen=True)
class SearchConfig:
    max_exponent: int = 6
    palette: Tuple[GaussianRational, ...] = DEFAULT_PALETTE
    jet_degree: int = 12
    max_curves: int = 10 ** 6
    reg_only: bool = False
    max_jet_bases: int = 64  # per direction; bounds the two-term extensions
    workers: int = 0  # 0 reads NEWTON_CONTACT_THREADS

    def __post_init__(self):
        pal = []
        for c in self.palette:
            c = GaussianRational.coerce(c)
            if not c:
                raise ValueError("the coefficient palette must not contain 0")
            if c not in pal:
                pal.append(c)
        if not pal:
            raise ValueError("the coefficient palette is empty")
        object.__setattr__(self, "palette", tuple(pal))
        if self.max_exponent < 1:
            raise ValueError("max_exponent must be at least 1")
        if self.jet_degree < self.max_exponent:
            raise ValueError("jet_degree must be at least max_exponent")
        if self.max_curves < 1:
            raise ValueError("max_curves must be positive")

    def resolved_workers(self) -> int:
        return self.workers if self.workers > 0 else env_workers()

    def with_(self, **changes) -> "SearchConfig":
        return replace(self, **changes)

    def to_json(self) -> dict:
        return {
            "max_exponent": self.max_exponent,
            "palette": [c.to_text() for c in self.palette],
            "jet_degree": self.jet_degree,
            "max_curves": self.max_curves,
            "reg_only": self.reg_only,
            "max_jet_bases": self.max_jet_bases,
        }


DEFAULT_CONFIG = SearchConfig()


# ---------------------------------------------------------------------------
# curve descriptions and their canonical order


@dataclass(frozen=True)
class CurveSpec:
    """A curve of the family: monomial data on ``I`` plus an optional extra term."""

    nvars: int
    I: Tuple[int, ...]
    a: Tuple[int, ...]
    c: Tuple[GaussianRational, ...]
    extra: Optional[Tuple[int, int, GaussianRational]] = None  # (position in I, degree, coefficient)

    def jet(self) -> JetCurve:
        comps = [{} for _ in range(self.nvars)]
        for pos, (j, aj, cj) in enumerate(zip(self.I, self.a, self.c)):
            comps[j] = {aj: cj}
            if self.extra is not None and self.extra[0] == pos:
                comps[j][self.extra[1]] = self.extra[2]
        return JetCurve(comps)

    @property
    def ord(self) -> int:
        return min(self.a)

    def key(self):
        extra = () if self.extra is None else (self.extra[0], self.extra[1], _coef_key(self.extra[2]))
        return (self.extra is not None, -len(self.I), self.a, self.I,
                tuple(_coef_key(x) for x in self.c), extra)


def _coef_key(c: GaussianRational):
    # 1 first, then smaller modulus, then positive real and imaginary parts
    return (c != ONE, c.norm(), -c.re, -c.im)


def _better(contact, spec, best, best_spec) -> bool:
    if best_spec is None or contact > best:
        return True
    return contact == best and spec.key() < best_spec.key()


@dataclass
class PartialResult:
    """Result over some of the directions; partials merge associatively."""

    best: object = 0
    best_spec: Optional[CurveSpec] = None
    zero_spec: Optional[CurveSpec] = None
    examined: int = 0
    jets: int = 0

    def offer(self, contact, spec: CurveSpec):
        if _better(contact, spec, self.best, self.best_spec):
            self.best, self.best_spec = contact, spec
        if contact == INF and (self.zero_spec is None or spec.key() < self.zero_spec.key()):
            self.zero_spec = spec

    def merge(self, other: "PartialResult") -> "PartialResult":
        out = PartialResult(self.best, self.best_spec, self.zero_spec,
                            self.examined + other.examined, self.jets + other.jets)
        if other.best_spec is not None:
            out.offer(other.best, other.best_spec)
        if other.zero_spec is not None:
            out.offer(INF, other.zero_spec)
        return out


@dataclass(frozen=True)
class OracleResult:
    best: object
    curve: Optional[JetCurve]
    infinite_flag: bool
    zero_curve: Optional[JetCurve]
    examined: int
    jets: int
    truncated: bool
    config: SearchConfig

    def to_json(self) -> dict:
        return {
            "best": ext_to_json(self.best),
            "curve": self.curve.to_text() if self.curve is not None else None,
            "infinite_flag": self.infinite_flag,
            "zero_curve": self.zero_curve.to_text() if self.zero_curve is not None else None,
            "curves_examined": self.examined,
            "jets_examined": self.jets,
            "truncated": self.truncated,
            "config": self.config.to_json(),
        }


# ---------------------------------------------------------------------------
# enumeration


def enumerate_directions(n: int, cfg: SearchConfig) -> Tuple[List[Tuple[Tuple[int, ...], Tuple[int, ...]]], bool]:
    """Directions ``(I, a)`` in a fixed order, cut off at ``max_curves`` monomial curves."""
    out, total = [], 0
    per = len(cfg.palette)
    for m in range(1, cfg.max_exponent + 1):
        for k in range(1, n + 1):
            for I in itertools.combinations(range(n), k):
                for a in itertools.product(range(1, m + 1), repeat=k):
                    if max(a) != m or math.gcd(*a) != 1:
                        continue
                    if cfg.reg_only and min(a) != 1:
                        continue
                    size = per ** (k - 1)
                    if total + size > cfg.max_curves:
                        return out, True
                    total += size
                    out.append((I, a))
    return out, False


class _Evaluator:
    """Exact orders of ``F`` along monomial curves of one direction at a time."""

    def __init__(self, F: MixedPolynomial, cfg: SearchConfig):
        self.F = F
        self.cfg = cfg
        self.n = F.nvars
        self.terms = [(a, b, c) for (a, b), c in F.sorted_terms()]
        self.palette = cfg.palette
        self.pal_c = np.array([complex(c) for c in cfg.palette])
        self._pow: Dict[Tuple[int, int, bool], GaussianRational] = {}

    def _power(self, idx: int, k: int, conj: bool) -> GaussianRational:
        key = (idx, k, conj)
        v = self._pow.get(key)
        if v is None:
            base = ONE if idx < 0 else self.palette[idx]
            v = (base.conjugate() if conj else base) ** k
            self._pow[key] = v
        return v

    def direction(self, I, a, result: PartialResult, record=None):
        """Evaluate all palette curves along ``(I, a)`` into ``result``.

        ``record(spec, ord)`` is called per curve when given.
        """
        k = len(I)
        inside = set(I)
        local = []
        for alpha, beta, coef in self.terms:
            if all(j in inside for j in range(self.n) if alpha[j] or beta[j]):
                local.append((tuple(alpha[j] for j in I), tuple(beta[j] for j in I), coef))
        groups: Dict[Tuple[int, int], List[int]] = {}
        for t, (al, be, _) in enumerate(local):
            p = sum(x * y for x, y in zip(a, al))
            q = sum(x * y for x, y in zip(a, be))
            groups.setdefault((p, q), []).append(t)
        order = sorted(groups, key=lambda pq: (pq[0] + pq[1], pq))
        degs = [p + q for p, q in order]
        level = degs[0] if degs else INF
        ocurve = min(a)

        P = len(self.palette)
        if k > 1:
            idx = np.indices((P,) * (k - 1)).reshape(k - 1, -1).T
        else:
            idx = np.zeros((1, 0), dtype=int)
        m = idx.shape[0]
        result.examined += m
        C = np.ones((m, k), dtype=complex)
        if k > 1:
            C[:, 1:] = self.pal_c[idx]

        if local:
            V = np.empty((m, len(local)), dtype=complex)
            for t, (al, be, coef) in enumerate(local):
                col = np.full(m, complex(coef))
                for j in range(k):
                    if al[j]:
                        col = col * C[:, j] ** al[j]
                    if be[j]:
                        col = col * np.conj(C[:, j]) ** be[j]
                V[:, t] = col
            member = np.zeros((len(local), len(order)))
            for g, pq in enumerate(order):
                member[groups[pq], g] = 1.0
            with np.errstate(all="ignore"):
                S = V @ member
                R = np.abs(V) @ member
                clear = np.isfinite(S) & np.isfinite(R) & (np.abs(S) > 1e-9 * R)
        else:
            clear = np.zeros((m, 0), dtype=bool)

        degenerate_bases = []
        for r in range(m):
            row = idx[r]
            cvals = (ONE,) + tuple(self.palette[x] for x in row)
            ordv = INF
            for g in range(len(order)):
                if clear[r, g] or self._group_exact(local, groups[order[g]], row):
                    ordv = degs[g]
                    break
            spec = CurveSpec(self.n, tuple(I), tuple(a), cvals)
            contact = ext_div(ordv, ocurve)
            result.offer(contact, spec)
            if record is not None:
                record(spec, ordv)
            if ordv != INF and ordv > level and len(degenerate_bases) < self.cfg.max_jet_bases:
                degenerate_bases.append((spec, ordv))

        for base, ordv in degenerate_bases:
            self._extend(base, ordv - level, result, record)

    def _group_exact(self, local, members, row) -> bool:
        """Whether the exact group sum is nonzero."""
        total = ZERO
        for t in members:
            al, be, coef = local[t]
            v = coef
            for j in range(len(al)):
                pidx = -1 if j == 0 else int(row[j - 1])
                if al[j]:
                    v = v * self._power(pidx, al[j], False)
                if be[j]:
                    v = v * self._power(pidx, be[j], True)
            total = total + v
        return bool(total)

    def _extend(self, base: CurveSpec, gap: int, result: PartialResult, record):
        # an extra term of degree a_j + s only touches coefficients of degree
        # >= level + s, so for s > gap the order of the base curve stands
        for pos in range(len(base.I)):
            top = min(self.cfg.jet_degree, base.a[pos] + gap)
            for deg in range(base.a[pos] + 1, top + 1):
                for c2 in self.palette:
                    spec = CurveSpec(base.nvars, base.I, base.a, base.c, (pos, deg, c2))
                    ordv = substitute_curve(self.F, spec.jet()).ord()
                    result.jets += 1
                    result.offer(ext_div(ordv, base.ord), spec)
                    if record is not None:
                        record(spec, ordv)


def _run_chunk(payload) -> PartialResult:
    F_json, chunk, cfg = payload
    F = MixedPolynomial.from_json(F_json)
    ev = _Evaluator(F, cfg)
    res = PartialResult()
    for I, a in chunk:
        ev.direction(I, a, res)
    return res


def evaluate_directions(F: MixedPolynomial, directions, cfg: SearchConfig = DEFAULT_CONFIG) -> PartialResult:
    """Evaluate a subset of the family; any partition merges to the same result."""
    ev = _Evaluator(F, cfg)
    res = PartialResult()
    for I, a in directions:
        ev.direction(I, a, res)
    return res


def merge_results(parts: Iterable[PartialResult]) -> PartialResult:
    out = PartialResult()
    for p in parts:
        out = out.merge(p)
    return out


def _finish(res: PartialResult, truncated: bool, cfg: SearchConfig) -> OracleResult:
    if res.zero_spec is not None:
        best, spec = INF, res.zero_spec
    else:
        best, spec = res.best, res.best_spec
    return OracleResult(
        best, spec.jet() if spec is not None else None, res.zero_spec is not None,
        res.zero_spec.jet() if res.zero_spec is not None else None,
        res.examined, res.jets, truncated, cfg)


def sup_contact_lower_bound(F: MixedPolynomial, cfg: SearchConfig = DEFAULT_CONFIG) -> OracleResult:
    """Largest order of contact over the enumerated family.

    ``infinite_flag`` is set when some curve makes ``F o gamma`` vanish
    identically; that curve is returned as ``zero_curve``.
    """
    if F.nvars == 0:
        raise ValueError("need at least one variable")
    directions, truncated = enumerate_directions(F.nvars, cfg)
    workers = cfg.resolved_workers()
    if workers <= 1 or len(directions) < 2 * workers:
        return _finish(evaluate_directions(F, directions, cfg), truncated, cfg)
    chunks = [directions[i::workers] for i in range(workers)]
    payloads = [(F.to_json(), chunk, cfg) for chunk in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_chunk, payloads))
    return _finish(merge_results(parts), truncated, cfg)


# ---------------------------------------------------------------------------
# cross-check of the Newton bounds


@dataclass
class CrossCheckReport:
    curves: int = 0
    inequality_failures: List[str] = field(default_factory=list)
    equality_failures: List[str] = field(default_factory=list)
    strict: List[Tuple[str, object, object]] = field(default_factory=list)  # (curve, ord, level)
    certified_curves: int = 0
    unknown_faces: int = 0

    @property
    def ok(self) -> bool:
        return not self.inequality_failures and not self.equality_failures

    def to_json(self, limit: int = 20) -> dict:
        return {
            "ok": self.ok,
            "curves": self.curves,
            "certified_curves": self.certified_curves,
            "unknown_faces": self.unknown_faces,
            "inequality_failures": self.inequality_failures[:limit],
            "equality_failures": self.equality_failures[:limit],
            "strict": [{"curve": c, "ord": ext_to_json(o), "level": ext_to_json(l)}
                       for c, o, l in self.strict[:limit]],
            "strict_total": len(self.strict),
        }


def formula_crosscheck(F: MixedPolynomial, cfg: SearchConfig = DEFAULT_CONFIG, options=None) -> CrossCheckReport:
    """Check ``ord >= l`` and ``O >= d`` on every enumerated curve, with equality on certified faces."""
    from .nondegen import DEFAULT_OPTIONS, Status, check_face

    options = options or DEFAULT_OPTIONS
    if F.is_zero():
        raise ValueError("the zero polynomial is flat")
    P = of(F)
    directions, _ = enumerate_directions(F.nvars, cfg)
    ev = _Evaluator(F, cfg)
    report = CrossCheckReport()
    verdicts: Dict = {}

    for I, a in directions:
        a_hat = [INF] * F.nvars
        for j, x in zip(I, a):
            a_hat[j] = x
        l, face, _ = support_min(P, a_hat)
        d, _ = newton_distance(P, a_hat)
        status = None
        if face is not None:
            vkey = (I, face.key)
            if vkey not in verdicts:
                FI = restrict(F, I) if len(I) < F.nvars else F
                verdicts[vkey] = check_face(FI, face, options).status
                if verdicts[vkey] is Status.UNKNOWN:
                    report.unknown_faces += 1
            status = verdicts[vkey]
        ocurve = min(a)

        def record(spec, ordv, l=l, d=d, status=status, ocurve=ocurve):
            report.curves += 1
            contact = ext_div(ordv, ocurve)
            text = spec.jet().to_text()
            if ordv < l or contact < d:
                report.inequality_failures.append(text)
            if status is Status.NONDEGENERATE:
                report.certified_curves += 1
                if ordv != l or contact != d:
                    report.equality_failures.append(text)
            elif ordv > l:
                report.strict.append((text, ordv, l))

        ev.direction(I, a, PartialResult(), record)
    return report


__all__ = [
    "SearchConfig", "DEFAULT_CONFIG", "DEFAULT_PALETTE", "CurveSpec", "PartialResult", "OracleResult",
    "enumerate_directions", "evaluate_directions", "merge_results", "sup_contact_lower_bound",
    "CrossCheckReport", "formula_crosscheck", "env_workers", "THREADS_ENV",
]
