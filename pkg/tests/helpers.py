"""Random generators and brute-force references shared by the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st
from scipy.optimize import linprog

from newton_contact.curves import JetCurve
from newton_contact.gaussian import GaussianRational
from newton_contact.mixedpoly import MixedPolynomial

# ---------------------------------------------------------------------------
# hypothesis strategies


def exps(n, hi=4):
    return st.tuples(*[st.integers(0, hi)] * n)


@st.composite
def supports(draw, n=None, hi=6, max_size=8):
    n = n or draw(st.integers(1, 4))
    pts = draw(st.lists(exps(n, hi), min_size=1, max_size=max_size))
    pts = [p for p in pts if any(p)] or [tuple(1 if j == 0 else 0 for j in range(n))]
    return n, pts


gauss = st.builds(GaussianRational, st.integers(-3, 3), st.integers(-3, 3))


@st.composite
def mixed_polys(draw, n=None, hi=3, max_terms=6, real=False):
    n = n or draw(st.integers(1, 3))
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        a, b = draw(exps(n, hi)), draw(exps(n, hi))
        if not any(a) and not any(b):
            continue
        terms[(a, b)] = draw(gauss)
    F = MixedPolynomial(n, terms)
    if real:
        F = F + F.conj()
    return F


@st.composite
def jets(draw, n, max_deg=5):
    comps = []
    for _ in range(n):
        k = draw(st.integers(0, 2))
        comp = {}
        for _ in range(k):
            comp[draw(st.integers(1, max_deg))] = draw(gauss)
        comps.append({d: c for d, c in comp.items() if c})
    if not any(comps):
        comps[0] = {1: GaussianRational(1)}
    return JetCurve(comps)


# ---------------------------------------------------------------------------
# seeded generators for counted suites


def rand_gauss(rng: random.Random, lo=-3, hi=3, nonzero=False):
    while True:
        c = GaussianRational(rng.randint(lo, hi), rng.randint(lo, hi))
        if c or not nonzero:
            return c


def rand_jet(rng: random.Random, n: int, max_deg=5, max_terms=2) -> JetCurve:
    comps = []
    for _ in range(n):
        comp = {}
        if rng.random() < 0.8:
            for _ in range(rng.randint(1, max_terms)):
                comp[rng.randint(1, max_deg)] = rand_gauss(rng, nonzero=True)
        comps.append(comp)
    if not any(comps):
        comps[rng.randrange(n)] = {rng.randint(1, max_deg): GaussianRational(1)}
    return JetCurve(comps)


def rand_support(rng: random.Random, n: int, k: int, hi=6):
    pts = set()
    k = min(k, (hi + 1) ** n - 1)
    while len(pts) < k:
        p = tuple(rng.randint(0, hi) for _ in range(n))
        if any(p):
            pts.add(p)
    return sorted(pts)


def modulus_sum(n: int, vs, coeffs=None) -> MixedPolynomial:
    """``sum c_v |z^v|^2`` with positive ``c_v``."""
    terms = {}
    for i, v in enumerate(vs):
        c = coeffs[i] if coeffs else 1
        terms[(tuple(v), tuple(v))] = terms.get((tuple(v), tuple(v)), 0) + c
    return MixedPolynomial(n, terms)


def rand_mixed(rng: random.Random, n: int, k: int, hi=3, real=True) -> MixedPolynomial:
    terms = {}
    for _ in range(k):
        a = tuple(rng.randint(0, hi) for _ in range(n))
        b = tuple(rng.randint(0, hi) for _ in range(n))
        if any(a) or any(b):
            terms[(a, b)] = rand_gauss(rng, nonzero=True)
    F = MixedPolynomial(n, terms or {((1,) + (0,) * (n - 1), (0,) * n): 1})
    return F + F.conj() if real else F


# ---------------------------------------------------------------------------
# brute-force references


def in_polyhedron_lp(point, pts) -> bool:
    """LP test for ``point in conv(pts) + R_{>=0}^n``."""
    pts = np.array(pts, dtype=float)
    m, n = pts.shape
    # point = sum l_i p_i + s, l >= 0, sum l = 1, s >= 0
    A_eq = np.hstack([pts.T, np.eye(n)])
    A_eq = np.vstack([A_eq, np.concatenate([np.ones(m), np.zeros(n)])])
    b_eq = np.concatenate([np.array(point, dtype=float), [1.0]])
    res = linprog(np.zeros(m + n), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.status == 0


def brute_vertices(pts):
    """Points not in the polyhedron spanned by the others (exact LP screening)."""
    pts = sorted(set(map(tuple, pts)))
    out = []
    for p in pts:
        others = [q for q in pts if q != p]
        if not others or not in_polyhedron_lp(p, others):
            out.append(p)
    return out


def brute_min(pts, a):
    return min(sum(x * y for x, y in zip(a, p)) for p in pts)


def brute_rho(pts, n):
    """Axis intercepts by LP: smallest ``t`` with ``t e_j`` in the polyhedron."""
    P = np.array(pts, dtype=float)
    m = len(pts)
    out = []
    for j in range(n):
        # minimize t subject to t e_j >= sum l_i p_i componentwise, sum l = 1
        c = np.zeros(m + 1)
        c[-1] = 1
        A_ub, b_ub = [], []
        for k in range(n):
            row = np.concatenate([P[:, k], [-1.0 if k == j else 0.0]])
            A_ub.append(row)
            b_ub.append(0.0)
        A_eq = [np.concatenate([np.ones(m), [0.0]])]
        res = linprog(c, A_ub=np.array(A_ub), b_ub=b_ub, A_eq=np.array(A_eq), b_eq=[1.0],
                      bounds=[(0, None)] * (m + 1), method="highs")
        out.append(round(res.x[-1], 9) if res.status == 0 else float("inf"))
    return out


_UNIT_DIRECTIONS = [GaussianRational(1), GaussianRational(Fraction(3, 5), Fraction(4, 5)),
                    GaussianRational(Fraction(5, 13), Fraction(-12, 13)),
                    GaussianRational(Fraction(-8, 17), Fraction(15, 17))]


def brute_ord_along(F: MixedPolynomial, curve: JetCurve):
    """Order of vanishing of ``F o curve`` from exact point evaluations.

    Along ``t = s * u`` with ``|u| = 1`` and real ``s`` the composition is a
    polynomial in ``s``; its lowest coefficient is read off an exact
    Vandermonde solve and the minimum over a few directions ``u`` is returned.
    """
    D = max(max(c) if c else 0 for c in curve.components) * max(1, F.degree())
    ss = [Fraction(k + 1, 7) for k in range(D + 1)]
    best = float("inf")
    for u in _UNIT_DIRECTIONS:
        vals = []
        for s in ss:
            t = u * GaussianRational(s)
            pt = [sum((t ** d * c for d, c in comp.items()), GaussianRational(0))
                  for comp in curve.components]
            vals.append(F.evaluate(pt))
        coeffs = _solve_vandermonde(ss, vals)
        for k, c in enumerate(coeffs):
            if c:
                best = min(best, k)
                break
    return best


def _solve_vandermonde(ts, vals):
    n = len(ts)
    A = [[GaussianRational(t ** k) for k in range(n)] + [v] for t, v in zip(ts, vals)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col])
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col].inverse()
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def all_positive_directions(n, bound):
    return [a for a in itertools.product(range(1, bound + 1), repeat=n)]
