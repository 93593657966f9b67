"""Monomial maps Q(2, 2p+1) -> Q(N(p), 2p+1) built from f_{2p,2}.

Starting from f_{2p,2}(x, y), which is 1 on x + y = 1 and has only even
powers of x, the substitutions x -> -(X_1 + ... + X_{2p+1}) and
y -> Y_1 + Y_2 give a polynomial W that is 1 on -sum X + sum Y = 1 and has
exactly 2p+1 negative terms.  Putting X_j = |z_j|^2, Y_k = |z_{2p+1+k}|^2
turns every term c X^a Y^b into a component sqrt(|c|) z^(a,b).

Variable layout: z_1..z_{2p+1} are the X (negative side of the source
hyperquadric), z_{2p+2}, z_{2p+3} the Y (positive side).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CycNum
from .errors import BadParameters, NotDiagonalSupport, OddPowerPresent, VerificationFailed
from .fpq import fp2_recurrence
from .hermpoly import (
    HermPoly,
    HolPoly,
    MomentPoly,
    binomial_expansion,
    grlex_key,
    hp_reduce_quadric,
    hp_to_moment,
)
from .signature import Component, QuadMap

__all__ = [
    "SplitPoly",
    "build_W",
    "build_gp",
    "verify_quadmap",
    "QuadMapReport",
    "quadric_signs",
]


@dataclass
class SplitPoly:
    """W(X_1..X_{2p+1}, Y_1, Y_2) with its term counts."""

    p: int
    poly: MomentPoly
    n_positive: int
    n_negative: int

    @property
    def n_x(self) -> int:
        return 2 * self.p + 1

    @property
    def names(self) -> list[str]:
        return [f"X{j + 1}" for j in range(self.n_x)] + ["Y1", "Y2"]

    @property
    def plane(self) -> MomentPoly:
        """-sum X + sum Y - 1."""
        return MomentPoly.linear([-1] * self.n_x + [1, 1], -1)

    def on_plane(self, point: Sequence) -> Fraction:
        return self.poly.eval([Fraction(v) for v in point])

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "variables": self.names,
            "n_positive": self.n_positive,
            "n_negative": self.n_negative,
            "terms": self.poly.to_json()["terms"],
        }

    def __str__(self):
        return self.poly.format(self.names)


def build_W(p: int) -> SplitPoly:
    if not isinstance(p, int) or p < 1:
        raise BadParameters(f"need p >= 1, got {p}")
    f = fp2_recurrence(2 * p)
    odd = [k for k in f.terms if k[0] % 2]
    if odd:
        raise OddPowerPresent(f"f_{{{2 * p},2}} has odd powers of x: {sorted(odd)}")
    flipped = f.compose([MomentPoly.linear([-1, 0]), MomentPoly.variable(2, 1)])
    nx = 2 * p + 1
    dim = nx + 2
    # x -> X_1 + ... + X_nx and y -> Y_1 + Y_2; distinct (i, j) give disjoint
    # supports, so the multinomial expansions are just concatenated
    terms = {}
    for (i, j), c in flipped.terms.items():
        for kx, cx in binomial_expansion(nx, i).terms.items():
            for ky, cy in binomial_expansion(2, j).terms.items():
                terms[kx + ky] = c * cx * cy
    W = MomentPoly(dim, terms)
    plane = MomentPoly.linear([-1] * nx + [1, 1], -1)
    if not (W - 1).reduce_linear(plane, var=nx).is_zero():
        raise VerificationFailed("W - 1 does not vanish on -sum X + sum Y = 1")
    neg = len(W.negative_terms())
    if neg != nx:
        raise VerificationFailed(f"W has {neg} negative terms, expected {nx}")
    return SplitPoly(p, W, len(W.positive_terms()), neg)


def quadric_signs(a: int, b: int, layout: str = "positive-first") -> list[int]:
    """Signs of |z_j|^2 in the defining equation of Q(a, b)."""
    if layout == "positive-first":
        return [1] * a + [-1] * b
    if layout == "negative-first":
        return [-1] * b + [1] * a
    raise BadParameters(f"unknown layout {layout!r}")


def build_gp(p: int, W: SplitPoly | None = None) -> QuadMap:
    """The monomial map with sum |F|^2 - sum |G|^2 = W(|z_1|^2, ..., |z_{2p+3}|^2)."""
    if W is None:
        W = build_W(p)
    elif W.p != p:
        raise BadParameters(f"W was built for p={W.p}, not {p}")
    plus, minus = [], []
    for exp, c in W.poly.terms.items():
        comp = Component(HolPoly.monomial(exp), CycNum.rational(abs(c)))
        (plus if c > 0 else minus).append(comp)
    plus.sort(key=lambda comp: grlex_key(comp.monomial))
    minus.sort(key=lambda comp: grlex_key(comp.monomial))
    source = {
        "signature": [2, 2 * p + 1],
        "layout": "negative-first",
        "negative_variables": list(range(1, 2 * p + 2)),
        "positive_variables": [2 * p + 2, 2 * p + 3],
        "N": W.n_positive,
    }
    return QuadMap(2 * p + 3, plus, minus, True, source)


@dataclass
class QuadMapReport:
    source_signature: tuple[int, int]
    target_signature: tuple[int, int]
    layout: str
    remainder: HermPoly
    degree: int

    @property
    def ok(self) -> bool:
        return self.remainder.is_zero()

    def remainder_moment(self) -> MomentPoly | None:
        try:
            return hp_to_moment(self.remainder)
        except NotDiagonalSupport:
            return None

    def to_json(self) -> dict:
        rem = self.remainder_moment()
        a, b = self.source_signature
        return {
            "source": f"Q({a},{b})",
            "target": "Q({},{})".format(*self.target_signature),
            "layout": self.layout,
            "degree": self.degree,
            "verified": self.ok,
            "remainder": rem.to_json() if rem is not None else self.remainder.to_json(),
        }


def _moment_form(g: QuadMap) -> MomentPoly | None:
    terms: dict = {}
    for sign, comp in g.components():
        if not comp.is_monomial():
            return None
        (alpha, c), = comp.poly.terms.items()
        w = CycNum.coerce(comp.weight) * c.abs2()
        if not w.is_rational():
            return None
        terms[alpha] = terms.get(alpha, 0) + sign * w.to_fraction()
    return MomentPoly(g.dim, terms)


def verify_quadmap(g: QuadMap, source_signature: tuple[int, int], layout: str | None = None) -> QuadMapReport:
    """Reduce ||F||^2 - ||G||^2 - 1 modulo the defining equation of the source.

    ``layout`` says where the positive variables sit: "positive-first" (the
    usual sum_{j<=a} |z_j|^2 - sum_{j>a} |z_j|^2 = 1) or "negative-first".
    By default the layout recorded on the map is used, else positive-first.
    A zero remainder means the map sends the source hyperquadric into the
    target one.
    """
    a, b = source_signature
    if a + b != g.dim:
        raise BadParameters(f"Q({a},{b}) lives in C^{a + b}, the map has {g.dim} variables")
    if layout is None:
        layout = g.source.get("layout", "positive-first") if g.source else "positive-first"
    signs = quadric_signs(a, b, layout)
    moment = _moment_form(g)
    if moment is not None:
        # every |z^a|^2 is a monomial in x_j = |z_j|^2: reduce over Q instead
        pivot = signs.index(1)
        rem = (moment - 1).reduce_linear(MomentPoly.linear(signs, -1), var=pivot).to_hermpoly()
    else:
        form = g.hermitian_form() - HermPoly.constant(g.dim, 1, "diagonal")
        rem = hp_reduce_quadric(form, signs)
    return QuadMapReport((a, b), g.signature, layout, rem, g.degree())
