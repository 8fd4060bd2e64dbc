"""Sparse mixed polynomials in ``z_1..z_n`` and their conjugates.

A term ``C z^alpha conj(z)^beta`` is stored as ``(alpha, beta) -> C`` with
``C`` a nonzero :class:`GaussianRational`.  Variable indices are 0-based in
the Python API.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .gaussian import ONE, ZERO, GaussianRational

Exp = Tuple[int, ...]
Key = Tuple[Exp, Exp]


class TermClass(enum.Enum):
    PURE = "pure"
    MIXED = "mixed"


def term_class(alpha: Exp, beta: Exp) -> TermClass:
    if not any(alpha) or not any(beta):
        return TermClass.PURE
    return TermClass.MIXED


def default_names(n: int) -> Tuple[str, ...]:
    return tuple(f"z{j + 1}" for j in range(n))


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class MixedPolynomial:
    """An immutable finite sum of terms ``C z^alpha conj(z)^beta``."""

    __slots__ = ("nvars", "terms", "names", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Key, object] | None = None,
                 names: Sequence[str] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: Dict[Key, GaussianRational] = {}
        for (alpha, beta), c in (terms or {}).items():
            alpha, beta = tuple(int(x) for x in alpha), tuple(int(x) for x in beta)
            if len(alpha) != nvars or len(beta) != nvars:
                raise ValueError("exponent length does not match nvars")
            if min(alpha + beta, default=0) < 0:
                raise ValueError("negative exponent")
            c = GaussianRational.coerce(c)
            if c:
                clean[(alpha, beta)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "names", tuple(names) if names else default_names(nvars))
        object.__setattr__(self, "_hash", None)
        if len(self.names) != nvars:
            raise ValueError("wrong number of variable names")

    def __reduce__(self):
        return (MixedPolynomial, (self.nvars, dict(self.terms), self.names))

    def __setattr__(self, name, value):
        raise AttributeError("MixedPolynomial is immutable")

    # constructors ---------------------------------------------------------
    @classmethod
    def _raw(cls, nvars, terms, names):
        """Build without re-validating terms (internal fast path)."""
        obj = cls.__new__(cls)
        object.__setattr__(obj, "nvars", nvars)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "names", names)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls, nvars: int, names=None) -> "MixedPolynomial":
        return cls(nvars, {}, names)

    @classmethod
    def constant(cls, nvars: int, c, names=None) -> "MixedPolynomial":
        z = (0,) * nvars
        return cls(nvars, {(z, z): c}, names)

    @classmethod
    def monomial(cls, nvars: int, alpha: Exp, beta: Exp, c=1, names=None):
        return cls(nvars, {(tuple(alpha), tuple(beta)): c}, names)

    @classmethod
    def variable(cls, nvars: int, j: int, names=None) -> "MixedPolynomial":
        e = tuple(1 if k == j else 0 for k in range(nvars))
        return cls.monomial(nvars, e, (0,) * nvars, 1, names)

    # basic queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, frozenset(self.terms.items()))))
        return self._hash

    def sorted_terms(self):
        """Terms in deterministic order: total degree, then alpha, then beta."""
        return sorted(self.terms.items(),
                      key=lambda kv: (sum(kv[0][0]) + sum(kv[0][1]), kv[0][0], kv[0][1]))

    def coefficient(self, alpha: Exp, beta: Exp) -> GaussianRational:
        return self.terms.get((tuple(alpha), tuple(beta)), ZERO)

    def support(self) -> frozenset:
        return frozenset(_add_exp(a, b) for a, b in self.terms)

    def degree(self) -> int:
        return max((sum(a) + sum(b) for a, b in self.terms), default=-1)

    def ord(self):
        """Lowest total degree of a term; ``inf`` for the zero polynomial."""
        from .gaussian import INF
        return min((sum(a) + sum(b) for a, b in self.terms), default=INF)

    def is_real(self) -> bool:
        for (a, b), c in self.terms.items():
            if self.terms.get((b, a), ZERO) != c.conjugate():
                return False
        return True

    def is_holomorphic(self) -> bool:
        return all(not any(b) for _, b in self.terms)

    def is_pluriharmonic(self) -> bool:
        return all(term_class(a, b) is TermClass.PURE for a, b in self.terms)

    def variables_used(self) -> Tuple[int, ...]:
        used = set()
        for a, b in self.terms:
            used.update(j for j in range(self.nvars) if a[j] or b[j])
        return tuple(sorted(used))

    def with_names(self, names: Sequence[str]) -> "MixedPolynomial":
        return MixedPolynomial._raw(self.nvars, self.terms, tuple(names))

    # arithmetic -------------------------------------------------------------
    def _check(self, other: "MixedPolynomial"):
        if other.nvars != self.nvars:
            raise ValueError("polynomials live in different numbers of variables")

    def _lift(self, other):
        if isinstance(other, MixedPolynomial):
            self._check(other)
            return other
        return MixedPolynomial.constant(self.nvars, GaussianRational.coerce(other), self.names)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return MixedPolynomial._raw(self.nvars, out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return MixedPolynomial._raw(self.nvars, {k: -c for k, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MixedPolynomial":
        c = GaussianRational.coerce(c)
        if not c:
            return MixedPolynomial.zero(self.nvars, self.names)
        return MixedPolynomial._raw(self.nvars, {k: v * c for k, v in self.terms.items()}, self.names)

    def __mul__(self, other):
        if not isinstance(other, MixedPolynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: Dict[Key, GaussianRational] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (_add_exp(a1, a2), _add_exp(b1, b2))
                out[k] = out.get(k, ZERO) + c1 * c2
        return MixedPolynomial._raw(self.nvars, {k: v for k, v in out.items() if v}, self.names)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        c = GaussianRational.coerce(other)
        return self.scale(c.inverse())

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = MixedPolynomial.constant(self.nvars, 1, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "MixedPolynomial":
        return MixedPolynomial._raw(
            self.nvars, {(b, a): c.conjugate() for (a, b), c in self.terms.items()}, self.names)

    def real_part(self) -> "MixedPolynomial":
        return (self + self.conj()).scale(Fraction(1, 2))

    def imag_part(self) -> "MixedPolynomial":
        return (self - self.conj()).scale(GaussianRational(0, Fraction(-1, 2)))

    # evaluation and composition -------------------------------------------
    def evaluate(self, point: Sequence) -> GaussianRational:
        """Exact value at ``z = point`` (conj(z) is the conjugate point)."""
        pts = [GaussianRational.coerce(p) for p in point]
        if len(pts) != self.nvars:
            raise ValueError("point has the wrong dimension")
        conj = [p.conjugate() for p in pts]
        total = ZERO
        for (a, b), c in self.terms.items():
            v = c
            for j in range(self.nvars):
                if a[j]:
                    v = v * pts[j] ** a[j]
                if b[j]:
                    v = v * conj[j] ** b[j]
            total = total + v
        return total

    def compose(self, maps: Sequence["MixedPolynomial"]) -> "MixedPolynomial":
        """Substitute ``z_j = maps[j]`` (holomorphic) and ``conj(z_j) = conj(maps[j])``."""
        if len(maps) != self.nvars:
            raise ValueError("need one map per variable")
        if not maps:
            return self
        m = maps[0].nvars
        names = maps[0].names
        for p in maps:
            if p.nvars != m:
                raise ValueError("maps must share a variable set")
            if not p.is_holomorphic():
                raise ValueError("coordinate maps must be holomorphic")
        conj_maps = [p.conj() for p in maps]
        hol_cache: Dict[Tuple[int, int], MixedPolynomial] = {}
        anti_cache: Dict[Tuple[int, int], MixedPolynomial] = {}

        def power(cache, base, j, k):
            key = (j, k)
            if key not in cache:
                cache[key] = base[j] ** k
            return cache[key]

        one = MixedPolynomial.constant(m, 1, names)
        result = MixedPolynomial.zero(m, names)
        for (a, b), c in self.sorted_terms():
            term = one.scale(c)
            for j in range(self.nvars):
                if a[j]:
                    term = term * power(hol_cache, maps, j, a[j])
                if b[j]:
                    term = term * power(anti_cache, conj_maps, j, b[j])
            result = result + term
        return result

    # text and JSON ----------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (a, b), c in self.sorted_terms():
            mono = _monomial_text(a, b, self.names)
            if c.is_real():
                neg = c.re < 0
                mag = GaussianRational(abs(c.re))
                if not mono:
                    body = mag.to_text()
                elif mag == ONE:
                    body = mono
                else:
                    body = f"{mag.to_text()}*{mono}"
            else:
                neg = False
                body = c.to_text() if not mono else f"{c.to_text()}*{mono}"
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MixedPolynomial({self.nvars}, {self.to_text()!r})"

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "variables": list(self.names),
            "terms": [
                {"alpha": list(a), "beta": list(b), "coef": c.to_json()}
                for (a, b), c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "MixedPolynomial":
        n = int(obj["nvars"])
        terms: Dict[Key, GaussianRational] = {}
        for t in obj.get("terms", []):
            k = (tuple(t["alpha"]), tuple(t["beta"]))
            terms[k] = terms.get(k, ZERO) + GaussianRational.from_json(t["coef"])
        return cls(n, terms, obj.get("variables"))


def _monomial_text(a: Exp, b: Exp, names: Sequence[str]) -> str:
    parts = []
    for j, e in enumerate(a):
        if e:
            parts.append(names[j] if e == 1 else f"{names[j]}^{e}")
    for j, e in enumerate(b):
        if e:
            parts.append(f"conj({names[j]})" if e == 1 else f"conj({names[j]})^{e}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# module-level operations


def support(F: MixedPolynomial) -> frozenset:
    return F.support()


def restrict(F: MixedPolynomial, I: Iterable[int]) -> MixedPolynomial:
    """Set ``z_j = 0`` for ``j`` outside ``I`` and re-index onto ``I`` (sorted)."""
    idx = sorted(set(I))
    if not idx:
        raise ValueError("restriction needs a nonempty index set")
    if idx[0] < 0 or idx[-1] >= F.nvars:
        raise ValueError("restriction index out of range")
    keep = set(idx)
    out = {}
    for (a, b), c in F.terms.items():
        if any((a[j] or b[j]) for j in range(F.nvars) if j not in keep):
            continue
        out[(tuple(a[j] for j in idx), tuple(b[j] for j in idx))] = c
    return MixedPolynomial._raw(len(idx), out, tuple(F.names[j] for j in idx))


def embed(F: MixedPolynomial, I: Sequence[int], n: int, names=None) -> MixedPolynomial:
    """Inverse of :func:`restrict` on polynomials in the ``I`` variables."""
    idx = sorted(I)
    out = {}
    for (a, b), c in F.terms.items():
        A, B = [0] * n, [0] * n
        for pos, j in enumerate(idx):
            A[j], B[j] = a[pos], b[pos]
        out[(tuple(A), tuple(B))] = c
    return MixedPolynomial._raw(n, out, tuple(names) if names else default_names(n))


def jet(F: MixedPolynomial, N: int) -> MixedPolynomial:
    return MixedPolynomial._raw(
        F.nvars, {k: c for k, c in F.terms.items() if sum(k[0]) + sum(k[1]) <= N}, F.names)


def pure_mixed_split(F: MixedPolynomial):
    pure, mixed = {}, {}
    for k, c in F.terms.items():
        (pure if term_class(*k) is TermClass.PURE else mixed)[k] = c
    return (MixedPolynomial._raw(F.nvars, pure, F.names),
            MixedPolynomial._raw(F.nvars, mixed, F.names))


def holomorphic_part(F: MixedPolynomial) -> MixedPolynomial:
    """Terms with ``beta = 0`` and ``alpha != 0``."""
    return MixedPolynomial._raw(
        F.nvars, {k: c for k, c in F.terms.items() if not any(k[1]) and any(k[0])}, F.names)


def filter_terms(F: MixedPolynomial, keep) -> MixedPolynomial:
    """Terms whose ``alpha + beta`` satisfies ``keep``."""
    return MixedPolynomial._raw(
        F.nvars, {k: c for k, c in F.terms.items() if keep(_add_exp(*k))}, F.names)


def face_part(F: MixedPolynomial, face) -> MixedPolynomial:
    """Terms of ``F`` whose exponent sum lies on the bounded face ``face``."""
    if not face.bounded:
        raise ValueError("face parts are defined for bounded faces only")
    if face.polyhedron is not None and face.polyhedron.dim != F.nvars:
        raise ValueError("face lives in a different dimension")
    return filter_terms(F, face.contains)


def principal_part(F: MixedPolynomial) -> MixedPolynomial:
    """Terms whose exponent sum lies on the Newton diagram."""
    from .polyhedron import build
    if F.is_zero():
        return F
    P = build(F.support())
    return filter_terms(F, P.on_diagram)


# ---------------------------------------------------------------------------
# one-variable polynomials and curve substitution

Poly1 = Dict[int, GaussianRational]


def poly1_mul(A: Poly1, B: Poly1) -> Poly1:
    out: Poly1 = {}
    for i, a in A.items():
        for j, b in B.items():
            out[i + j] = out.get(i + j, ZERO) + a * b
    return {k: v for k, v in out.items() if v}


def poly1_pow(A: Poly1, k: int) -> Poly1:
    result: Poly1 = {0: ONE}
    base = A
    while k:
        if k & 1:
            result = poly1_mul(result, base)
        base = poly1_mul(base, base)
        k >>= 1
    return result


T_NAMES = ("t",)


def substitute_curve(F: MixedPolynomial, curve) -> MixedPolynomial:
    """Exact composition ``F(gamma(t), conj(gamma(t)))`` as a polynomial in ``t``.

    ``curve`` is a :class:`~newton_contact.curves.JetCurve` or any sequence of
    ``{degree: coefficient}`` dictionaries.  The result has one variable ``t``;
    the term ``t^p conj(t)^q`` is stored under ``((p,), (q,))``.
    """
    comps = getattr(curve, "components", curve)
    if len(comps) != F.nvars:
        raise ValueError(f"curve has {len(comps)} components, polynomial has {F.nvars} variables")
    pow_cache: Dict[Tuple[int, int], Poly1] = {}

    def cpow(j, k):
        key = (j, k)
        p = pow_cache.get(key)
        if p is None:
            p = poly1_pow(comps[j], k) if k else {0: ONE}
            pow_cache[key] = p
        return p

    mono_cache: Dict[Exp, Poly1] = {}

    def mono(e: Exp) -> Poly1:
        p = mono_cache.get(e)
        if p is None:
            p = {0: ONE}
            for j, k in enumerate(e):
                if k:
                    p = poly1_mul(p, cpow(j, k))
                    if not p:
                        break
            mono_cache[e] = p
        return p

    out: Dict[Tuple[int, int], GaussianRational] = {}
    for (a, b), c in F.terms.items():
        A = mono(a)
        if not A:
            continue
        B = mono(b)
        if not B:
            continue
        for p, ca in A.items():
            cca = c * ca
            for q, cb in B.items():
                key = (p, q)
                out[key] = out.get(key, ZERO) + cca * cb.conjugate()
    return MixedPolynomial._raw(1, {((p,), (q,)): v for (p, q), v in out.items() if v}, T_NAMES)
