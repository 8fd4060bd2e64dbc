"""Holomorphic curve jets through the origin and their monomial shadows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from .gaussian import INF, GaussianRational
from .mixedpoly import MixedPolynomial
from .parser import ParseError, parse, split_top_level
from .polyhedron import FaceHandle

Poly1 = Dict[int, GaussianRational]


def _clean(p) -> Poly1:
    out = {}
    for k, c in dict(p).items():
        c = GaussianRational.coerce(c)
        if c:
            if int(k) < 1:
                raise ValueError("curve components must vanish at t = 0")
            out[int(k)] = c
    return out


class JetCurve:
    """A polynomial curve ``t -> (gamma_1(t), ..., gamma_n(t))`` with ``gamma(0) = 0``."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence):
        comps = tuple(_clean(c) for c in components)
        if not comps:
            raise ValueError("a curve needs at least one component")
        if not any(comps):
            raise ValueError("the zero curve is not allowed")
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("JetCurve is immutable")

    def __reduce__(self):
        return (JetCurve, (self.components,))

    @property
    def n(self) -> int:
        return len(self.components)

    def __len__(self):
        return len(self.components)

    def __eq__(self, other):
        return isinstance(other, JetCurve) and self.components == other.components

    def __hash__(self):
        return hash(tuple(tuple(sorted(c.items())) for c in self.components))

    def ord(self) -> int:
        return min(min(c) for c in self.components if c)

    def component_orders(self) -> Tuple:
        return tuple(min(c) if c else INF for c in self.components)

    def to_text(self) -> str:
        return "(" + ", ".join(_poly1_text(c) for c in self.components) + ")"

    def __repr__(self):
        return f"JetCurve{self.to_text()}"

    __str__ = to_text

    def to_json(self) -> str:
        return self.to_text()


def _poly1_text(p: Poly1) -> str:
    if not p:
        return "0"
    F = MixedPolynomial(1, {((k,), (0,)): c for k, c in p.items()}, ("t",))
    return F.to_text()


@dataclass(frozen=True)
class MonomialCurve:
    """``t -> (c_1 t^{a_1}, ..., c_n t^{a_n})`` with nonzero ``c`` and positive ``a``."""

    c: Tuple[GaussianRational, ...]
    a: Tuple[int, ...]

    def __post_init__(self):
        c = tuple(GaussianRational.coerce(x) for x in self.c)
        a = tuple(int(x) for x in self.a)
        if len(c) != len(a):
            raise ValueError("c and a have different lengths")
        if any(not x for x in c):
            raise ValueError("monomial curve coefficients must be nonzero")
        if any(x < 1 for x in a):
            raise ValueError("monomial curve exponents must be positive")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "a", a)

    def jet(self) -> JetCurve:
        return JetCurve([{a: c} for c, a in zip(self.c, self.a)])

    @property
    def components(self):
        return self.jet().components

    def scaled(self, m: int) -> "MonomialCurve":
        return MonomialCurve(self.c, tuple(m * x for x in self.a))

    def to_text(self) -> str:
        return self.jet().to_text()

    def to_json(self) -> dict:
        return {"curve": self.to_text(), "c": [x.to_json() for x in self.c], "a": list(self.a)}


@dataclass(frozen=True)
class DirectionProfile:
    a_hat: Tuple
    I: Tuple[int, ...]


def profile(gamma: JetCurve) -> DirectionProfile:
    a_hat = gamma.component_orders()
    return DirectionProfile(a_hat, tuple(j for j, x in enumerate(a_hat) if x != INF))


def leading_truncation(gamma: JetCurve) -> Tuple[MonomialCurve, Tuple[int, ...]]:
    """Lowest-degree monomial of each nonzero component, over ``I(gamma)``."""
    I = profile(gamma).I
    c, a = [], []
    for j in I:
        k = min(gamma.components[j])
        c.append(gamma.components[j][k])
        a.append(k)
    return MonomialCurve(tuple(c), tuple(a)), I


def embedded_truncation(gamma: JetCurve) -> JetCurve:
    """The truncation placed back in all ``n`` slots (zero outside ``I``)."""
    comps = []
    for comp in gamma.components:
        if comp:
            k = min(comp)
            comps.append({k: comp[k]})
        else:
            comps.append({})
    return JetCurve(comps)


def determines(face: FaceHandle, a: Sequence[int]) -> bool:
    return face.determined_by(a)


def parse_curve(text: str) -> JetCurve:
    """Parse a curve literal such as ``"(t^2, t^3 + t^4, 0)"``."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ParseError("curve literal must be a parenthesized tuple", 0, text)
    offset = text.index("(")
    end = text.rindex(")")
    comps = []
    for lo, hi in split_top_level(text, offset + 1, end):
        piece = text[lo:hi]
        if not piece.strip():
            raise ParseError("empty curve component", lo, text)
        try:
            p = parse(piece, names=("t",))
        except ParseError as e:
            raise ParseError(e.message, lo + e.position, text) from None
        if not p.is_holomorphic():
            raise ParseError("curve components must be holomorphic in t", lo, text)
        if p.coefficient((0,), (0,)):
            raise ParseError("curve components must vanish at t = 0", lo, text)
        comps.append({k[0][0]: c for k, c in p.terms.items()})
    if not any(comps):
        raise ParseError("the zero curve is not allowed", offset, text)
    return JetCurve(comps)


def monomial_jet(c: Sequence, a: Sequence, n: int = None, I: Sequence[int] = None) -> JetCurve:
    """Jet with ``c_j t^{a_j}`` at the slots ``I`` (default all) of an ``n``-tuple."""
    if I is None:
        return MonomialCurve(tuple(c), tuple(a)).jet()
    comps = [{} for _ in range(n)]
    for j, cj, aj in zip(I, c, a):
        comps[j] = {int(aj): GaussianRational.coerce(cj)}
    return JetCurve(comps)


__all__ = [
    "JetCurve", "MonomialCurve", "DirectionProfile", "profile", "leading_truncation",
    "embedded_truncation", "determines", "parse_curve", "monomial_jet",
]
