"""The canonical invariant polynomial of a finite unitary group.

``phi_gamma`` expands 1 - prod_{g in G} (1 - <g z, w>) directly.  Two
independent routes cover the structured cases: the metacyclic factorization
over cosets of the rotation subgroup, and the dihedral formula assembled from
f_{p,p-1}.  For diagonal groups ``phi_diagonal_moment`` never touches
cyclotomic numbers: it builds the power sums of the linear forms with
character sums and converts them with Newton's identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .cyclotomic import CycNum, root_of_unity
from .errors import BadParameters, NonIntegerCoefficient
from .groups import (
    UnitaryGroup,
    UnitaryMatrix,
    make_cyclic,
    metacyclic_enumeration,
    _rotation,
)
from .hermpoly import HermPoly, HolPoly, MomentPoly, hp_group_substitute, hp_reduce_sphere

__all__ = [
    "phi_gamma",
    "phi_metacyclic",
    "phi_dihedral",
    "phi_diagonal_moment",
    "noether_basis",
    "reynolds_average",
    "example_3_3_formula",
    "verify_invariant",
    "InvariantReport",
]


def phi_gamma(G: UnitaryGroup) -> HermPoly:
    """1 - prod over the group of (1 - <g z, w>), expanded exactly."""
    if G.order == 0:
        raise BadParameters("empty group")
    P = HermPoly.constant(G.dim, 1)
    for g in G:
        P = P * (1 - HermPoly.inner_product(g))
    return 1 - P


def phi_metacyclic(p: int, q: int, B: UnitaryMatrix) -> HermPoly:
    """Invariant polynomial of <A, B>, A = diag(zeta_p, zeta_p^-1), via the coset product.

    Uses <B^j A^k z, w> = <A^k z, B^-j w>, so the group product splits into q
    copies of the rotation subgroup's polynomial with w moved by B^-j.
    """
    metacyclic_enumeration(p, q, B)
    phi_c = phi_gamma(make_cyclic(_rotation(p)))
    Binv = B.conj_transpose()
    P = HermPoly.constant(2, 1)
    shift = UnitaryMatrix.identity(2)
    for _ in range(q):
        P = P * (1 - hp_group_substitute(phi_c, shift, side="w"))
        shift = shift @ Binv
    return 1 - P


def phi_dihedral(p: int) -> HermPoly:
    """D_p invariant from f = f_{p,p-1}: f(x, y) + f(s, t) - f(x, y) f(s, t).

    x = |z1|^2, y = |z2|^2, s = z2 zb1, t = z1 zb2.  Returned in diagonal form.
    """
    if p < 2:
        raise BadParameters(f"need p >= 2, got {p}")
    from .groups import make_gamma_pq

    f = phi_diagonal_moment(make_gamma_pq(p, p - 1))
    x = HermPoly(2, {(1, 0, 1, 0): 1}, "diagonal")
    y = HermPoly(2, {(0, 1, 0, 1): 1}, "diagonal")
    s = HermPoly(2, {(0, 1, 1, 0): 1}, "diagonal")
    t = HermPoly(2, {(1, 0, 0, 1): 1}, "diagonal")
    f_xy = _moment_at(f, [x, y])
    f_st = _moment_at(f, [s, t])
    return f_xy + f_st - f_xy * f_st


def _moment_at(f: MomentPoly, images: list[HermPoly]) -> HermPoly:
    dim = images[0].dim
    out = HermPoly.zero(dim, "diagonal")
    for key, c in f.terms.items():
        term = HermPoly.constant(dim, CycNum.rational(c), "diagonal")
        for img, e in zip(images, key):
            if e:
                term = term * img**e
        out = out + term
    return out


# -- diagonal groups ---------------------------------------------------------


def _diagonal_exponents(G: UnitaryGroup) -> tuple[int, list[tuple[int, ...]]]:
    """Conductor M and, per element, the exponents e with diagonal zeta_M^e."""
    if not G.is_diagonal():
        raise BadParameters("group is not diagonal")
    M = G.conductor
    lookup = {}
    for e in range(M):
        r = root_of_unity(M, e)
        lookup[(r.nums, r.den)] = e
    exps = []
    for g in G:
        row = []
        for j in range(G.dim):
            x = g.entries[j][j].lift(M)
            key = (x.nums, x.den)
            if key not in lookup:
                raise BadParameters(f"diagonal entry {x} is not a root of unity")
            row.append(lookup[key])
        exps.append(tuple(row))
    return M, exps


def _compositions(m: int, n: int):
    if n == 1:
        yield (m,)
        return
    for a in range(m, -1, -1):
        for rest in _compositions(m - a, n - 1):
            yield (a,) + rest


def phi_diagonal_moment(G: UnitaryGroup) -> MomentPoly:
    """Invariant polynomial of a diagonal group in the variables x_j = |z_j|^2.

    With L_g = sum_j lambda_j(g) x_j, the power sums sum_g L_g^m only keep the
    monomials x^a whose character g -> lambda(g)^a is trivial, each with
    weight |G| times the multinomial coefficient.  Newton's identities turn
    the power sums into the elementary symmetric functions e_i of the L_g,
    and the invariant is sum_{i>=1} (-1)^(i+1) e_i.  All arithmetic is in Z.
    """
    M, exps = _diagonal_exponents(G)
    n = G.dim
    order = G.order

    def trivial(alpha) -> bool:
        return all(sum(a * e for a, e in zip(alpha, ex)) % M == 0 for ex in exps)

    power_sums = [None]
    for m in range(1, order + 1):
        pm = {}
        for alpha in _compositions(m, n):
            if trivial(alpha):
                mult = factorial(m)
                for a in alpha:
                    mult //= factorial(a)
                pm[alpha] = order * mult
        power_sums.append(pm)

    elem = [{(0,) * n: 1}]
    for i in range(1, order + 1):
        acc: dict = {}
        for m in range(1, i + 1):
            pm = power_sums[m]
            if not pm:
                continue
            sign = 1 if m % 2 == 1 else -1
            for ka, ca in elem[i - m].items():
                for kb, cb in pm.items():
                    key = tuple(a + b for a, b in zip(ka, kb))
                    acc[key] = acc.get(key, 0) + sign * ca * cb
        ei = {}
        for key, c in acc.items():
            if c % i:
                raise NonIntegerCoefficient(f"Newton step {i} left a remainder at {key}")
            if c:
                ei[key] = c // i
        elem.append(ei)

    out: dict = {}
    for i in range(1, order + 1):
        sign = 1 if i % 2 == 1 else -1
        for key, c in elem[i].items():
            out[key] = out.get(key, 0) + sign * c
    return MomentPoly(n, {k: c for k, c in out.items() if c})


# -- Reynolds averaging ------------------------------------------------------


def reynolds_average(G: UnitaryGroup, f: HolPoly) -> HolPoly:
    """(1/|G|) sum_g f(g z)."""
    total = HolPoly(G.dim)
    for g in G:
        total = total + f.compose(g)
    return total.scale(CycNum.rational(1) / G.order)


def noether_basis(G: UnitaryGroup, max_degree: int | None = None) -> list[HolPoly]:
    """Nonzero Reynolds averages of the monomials of degree <= |G|.

    Each result is scaled so its graded-lex leading coefficient is 1, and
    scalar multiples are dropped; monomials are visited in graded-lex order
    from degree 0 upward.
    """
    if max_degree is None:
        max_degree = G.order
    seen = set()
    basis = []
    for deg in range(max_degree + 1):
        for alpha in _compositions(deg, G.dim):
            avg = reynolds_average(G, HolPoly.monomial(alpha))
            if avg.is_zero():
                continue
            norm = avg.normalized()
            if norm not in seen:
                seen.add(norm)
                basis.append(norm)
    return basis


# -- worked example ----------------------------------------------------------


def example_3_3_formula() -> HermPoly:
    """(x+y)^3 + (eta s + etab t)^3 - (x+y)^3 (eta s + etab t)^3 in diagonal form."""
    eta = root_of_unity(3, 1)
    x = HermPoly(2, {(1, 0, 1, 0): 1}, "diagonal")
    y = HermPoly(2, {(0, 1, 0, 1): 1}, "diagonal")
    s = HermPoly(2, {(0, 1, 1, 0): 1}, "diagonal")
    t = HermPoly(2, {(1, 0, 0, 1): 1}, "diagonal")
    u = (x + y) ** 3
    v = (s.scale(eta) + t.scale(eta.conj())) ** 3
    return u + v - u * v


# -- Theorem 1.1 checks ------------------------------------------------------


@dataclass
class InvariantReport:
    order: int
    constant_term_zero: bool
    degree_z: int
    degree_matches_order: bool
    sphere_remainder_zero: bool
    invariant: bool
    hermitian: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.constant_term_zero
            and self.degree_matches_order
            and self.sphere_remainder_zero
            and self.invariant
            and self.hermitian
        )

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "property_1_constant_term_zero": self.constant_term_zero,
            "property_2_degree_equals_order": self.degree_matches_order,
            "degree_z": self.degree_z,
            "property_3_sphere_value_one": self.sphere_remainder_zero,
            "property_4_group_invariant": self.invariant,
            "hermitian_symmetric": self.hermitian,
            "ok": self.ok,
        }


def verify_invariant(G: UnitaryGroup, phi: HermPoly | None = None) -> InvariantReport:
    """Check the four defining properties of the invariant polynomial exactly."""
    if phi is None:
        phi = phi_gamma(G)
    failures = []
    invariant = True
    for idx, g in enumerate(G):
        if hp_group_substitute(phi, g, side="z") != phi:
            invariant = False
            failures.append(idx)
    deg = phi.degree_z()
    rem = hp_reduce_sphere(phi.diagonal() - 1)
    return InvariantReport(
        order=G.order,
        constant_term_zero=phi.constant_term().is_zero(),
        degree_z=deg,
        degree_matches_order=deg == G.order,
        sphere_remainder_zero=rem.is_zero(),
        invariant=invariant,
        hermitian=phi.is_hermitian(),
        failures=failures,
    )
