"""Coefficient matrices, inertia, and the decomposition ||F||^2 - ||G||^2.

Inertia is computed by exact Hermitian congruence: symmetric elimination over
the cyclotomic field, with a 1x1 pivot whenever a nonzero diagonal entry is
left and a 2x2 pivot [[0, b], [conj(b), 0]] otherwise.  Each pivot produces
one or two components h with real weights, so the input form equals
sum_k weight_k |h_k|^2 exactly.  By Sylvester's law the inertia is the sign
pattern of the weights; only those signs need the numeric embedding, and
each is certified by interval arithmetic at increasing precision.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from mpmath import mp, mpf, mpc

from .cyclotomic import DEFAULT_PRECISION, MAX_PRECISION, CycNum
from .errors import BadParameters, NotHermitian, PrecisionExhausted
from .groups import UnitaryGroup, make_dihedral, make_gamma_pq, make_scalar_cyclic
from .hermpoly import HermPoly, HolPoly, grlex_key, hp_eval
from .intervals import ComplexInterval, center, ivprec, upper

__all__ = [
    "CoeffMatrix",
    "Inertia",
    "Component",
    "QuadMap",
    "coeff_matrix",
    "congruence_components",
    "inertia",
    "decompose",
    "signature_ratio",
    "SignatureRow",
    "signature_csv",
    "FAMILIES",
]

_HALF = CycNum.rational(Fraction(1, 2))


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def rank(self) -> int:
        return self.n_plus + self.n_minus

    def __iter__(self):
        return iter((self.n_plus, self.n_minus, self.n_zero))

    def to_json(self) -> dict:
        return {"n_plus": self.n_plus, "n_minus": self.n_minus, "n_zero": self.n_zero}


class CoeffMatrix:
    """Hermitian matrix of a form sum c_ab z^a zb^b, indexed by holomorphic monomials.

    Stored sparsely: ``rows[i][j]`` is the coefficient of z^basis[i] zb^basis[j].
    """

    def __init__(self, dim: int, basis: Sequence[tuple[int, ...]], rows: dict[int, dict[int, CycNum]]):
        self.dim = dim
        self.basis = list(basis)
        self.rows = rows

    @property
    def size(self) -> int:
        return len(self.basis)

    def __getitem__(self, ij) -> CycNum:
        i, j = ij
        return self.rows.get(i, {}).get(j, CycNum.rational(0))

    def is_diagonal(self) -> bool:
        return all(j == i for i, row in self.rows.items() for j in row)

    def dense(self) -> list[list[CycNum]]:
        return [[self[i, j] for j in range(self.size)] for i in range(self.size)]

    def is_hermitian(self) -> bool:
        for i, row in self.rows.items():
            for j, c in row.items():
                if self[j, i] != c.conj():
                    return False
        return True

    def congruent(self, S: Sequence[Sequence]) -> "CoeffMatrix":
        """S^H M S for a square matrix S given as rows of CycNum (used for congruence checks)."""
        k = self.size
        S = [[CycNum.coerce(x) for x in row] for row in S]
        MS = [[sum((self[i, m] * S[m][j] for m in range(k)), CycNum.rational(0)) for j in range(k)] for i in range(k)]
        out: dict = {}
        for i in range(k):
            for j in range(k):
                v = sum((S[m][i].conj() * MS[m][j] for m in range(k)), CycNum.rational(0))
                if not v.is_zero():
                    out.setdefault(i, {})[j] = v
        return CoeffMatrix(self.dim, self.basis, out)

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence], dim: int = 1, basis=None) -> "CoeffMatrix":
        k = len(entries)
        rows: dict = {}
        for i in range(k):
            for j in range(k):
                v = CycNum.coerce(entries[i][j])
                if not v.is_zero():
                    rows.setdefault(i, {})[j] = v
        if basis is None:
            basis = [(i,) for i in range(k)]
        return cls(dim, basis, rows)

    def __repr__(self):
        return f"CoeffMatrix(size={self.size}, nonzeros={sum(len(r) for r in self.rows.values())})"


def coeff_matrix(P: HermPoly) -> CoeffMatrix:
    """Coefficient matrix of a form in (z, z-bar); raises NotHermitian on asymmetry."""
    d = P.dim
    monos = set()
    for key in P.terms:
        monos.add(key[:d])
        monos.add(key[d:])
    basis = sorted(monos, key=grlex_key)
    index = {m: i for i, m in enumerate(basis)}
    rows: dict = {}
    for key, c in P.terms.items():
        rows.setdefault(index[key[:d]], {})[index[key[d:]]] = c
    M = CoeffMatrix(d, basis, rows)
    if not M.is_hermitian():
        raise NotHermitian("coefficient matrix is not Hermitian")
    return M


@dataclass
class Component:
    """One term weight * |poly|^2 of a decomposition; ``weight`` is > 0.

    For exact components ``weight`` is a real CycNum (the squared scalar of
    the component, never square-rooted).  Numeric components carry mpf
    weights and mpc coefficients in ``numeric_terms``.
    """

    poly: HolPoly | None
    weight: object
    numeric_terms: dict | None = None

    @property
    def exact(self) -> bool:
        return self.poly is not None

    def is_monomial(self) -> bool:
        return self.exact and len(self.poly.terms) == 1

    @property
    def monomial(self) -> tuple[int, ...]:
        if not self.is_monomial():
            raise ValueError("component is not a monomial")
        return next(iter(self.poly.terms))

    @property
    def coeff_sq(self) -> Fraction:
        """Squared coefficient of a monomial component with rational weight."""
        return CycNum.coerce(self.weight).to_fraction()

    def degree(self) -> int:
        if self.exact:
            return self.poly.degree()
        return max(sum(a) for a in self.numeric_terms)

    def to_json(self) -> dict:
        if self.is_monomial() and CycNum.coerce(self.weight).is_rational():
            w = self.coeff_sq
            c = next(iter(self.poly.terms.values()))
            if c == 1:
                return {"monomial": list(self.monomial), "coeff_sq": [w.numerator, w.denominator]}
        if self.exact:
            return {"poly": self.poly.to_json(), "weight": CycNum.coerce(self.weight).to_json()}
        return {
            "numeric_terms": [
                {"alpha": list(a), "re": str(c.real), "im": str(c.imag)} for a, c in sorted(self.numeric_terms.items(), key=lambda t: grlex_key(t[0]))
            ],
            "weight": str(self.weight),
        }

    def format(self) -> str:
        if not self.exact:
            return f"sqrt({mp.nstr(self.weight, 8)})*({len(self.numeric_terms)} numeric terms)"
        w = CycNum.coerce(self.weight)
        if w.is_rational():
            wf = w.to_fraction()
            root = _sqrt_text(wf)
        else:
            root = f"sqrt({w})"
        body = str(self.poly)
        if len(self.poly.terms) > 1:
            body = f"({body})"
        return body if root == "1" else f"{root}*{body}"


def _sqrt_text(w: Fraction) -> str:
    from math import isqrt

    n, d = w.numerator, w.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return str(Fraction(rn, rd))
    return f"sqrt({w})"


@dataclass
class QuadMap:
    """Holomorphic map z -> (F, G) with ||F||^2 - ||G||^2 equal to a given form."""

    dim: int
    plus: list[Component]
    minus: list[Component]
    exact: bool = True
    source: dict = field(default_factory=dict)

    @property
    def signature(self) -> tuple[int, int]:
        return len(self.plus), len(self.minus)

    def degree(self) -> int:
        return max((c.degree() for c in self.plus + self.minus), default=0)

    def components(self) -> list[tuple[int, Component]]:
        return [(1, c) for c in self.plus] + [(-1, c) for c in self.minus]

    def hermitian_form(self) -> HermPoly:
        """sum |F_j|^2 - sum |G_j|^2 as an exact polynomial in (z, z-bar)."""
        if not self.exact:
            raise ValueError("numeric decomposition has no exact form")
        out = HermPoly.zero(self.dim, "diagonal")
        for sign, comp in self.components():
            w = CycNum.coerce(comp.weight)
            out = out + comp.poly.norm_squared().scale(w if sign > 0 else -w)
        return out

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "exact": self.exact,
            "signature": list(self.signature),
            "plus": [c.to_json() for c in self.plus],
            "minus": [c.to_json() for c in self.minus],
            **({"source": self.source} if self.source else {}),
        }

    @classmethod
    def from_json(cls, data) -> "QuadMap":
        dim = int(data["dim"])

        def comp(d) -> Component:
            if "monomial" in d:
                return Component(HolPoly.monomial(d["monomial"]), CycNum.rational(Fraction(*d["coeff_sq"])))
            if "poly" in d:
                poly = HolPoly(
                    int(d["poly"]["dim"]),
                    {tuple(t["alpha"]): CycNum.from_json(t["coeff"]) for t in d["poly"]["terms"]},
                )
                return Component(poly, CycNum.from_json(d["weight"]))
            raise ValueError("numeric components cannot be read back exactly")

        return cls(dim, [comp(c) for c in data["plus"]], [comp(c) for c in data["minus"]], True, data.get("source", {}))

    def format(self) -> str:
        f = ", ".join(c.format() for c in self.plus)
        g = ", ".join(c.format() for c in self.minus)
        return f"({f}; {g})"


# -- congruence diagonalization ----------------------------------------------


def congruence_components(M: CoeffMatrix) -> list[tuple[CycNum, HolPoly]]:
    """Exact list of (weight, h) with sum weight |h|^2 equal to the form of M.

    Each h is scaled to have graded-lex leading coefficient 1.  The number of
    components is the exact rank of M.
    """
    A = {i: dict(row) for i, row in M.rows.items() if row}
    basis = M.basis
    dim = M.dim
    out: list[tuple[CycNum, HolPoly]] = []

    def column(i: int) -> dict:
        return {r: v.conj() for r, v in A.get(i, {}).items()}

    def subtract_outer(u: dict, v: dict, scale: CycNum) -> None:
        # A -= scale * u v^H
        for r, ur in u.items():
            row = A.setdefault(r, {})
            f = ur * scale
            for s, vs in v.items():
                new = row.get(s, CycNum.rational(0)) - f * vs.conj()
                if new.is_zero():
                    row.pop(s, None)
                else:
                    row[s] = new
            if not row:
                del A[r]

    def to_poly(vec: dict) -> HolPoly:
        return HolPoly(dim, {basis[r]: c for r, c in vec.items() if not c.is_zero()})

    def emit(weight: CycNum, vec: dict) -> None:
        h = to_poly(vec)
        _, lead = h.leading()
        out.append((weight * lead.abs2(), h.scale(lead.inverse())))

    while A:
        piv = min((i for i in A if i in A[i]), default=None)
        if piv is not None:
            d = A[piv][piv]
            u = column(piv)
            dinv = d.inverse()
            subtract_outer(u, u, dinv)
            emit(dinv, u)
            continue
        i = min(A)
        j = min(A[i])
        b = A[i][j]
        u = column(i)
        v = column(j)
        binv = b.inverse()
        w = {r: c * binv for r, c in v.items()}
        # A -= u w^H + w u^H
        subtract_outer(u, w, CycNum.rational(1))
        subtract_outer(w, u, CycNum.rational(1))
        plus = dict(u)
        minus = dict(u)
        for r, c in w.items():
            plus[r] = plus.get(r, CycNum.rational(0)) + c
            minus[r] = minus.get(r, CycNum.rational(0)) - c
        emit(_HALF, plus)
        emit(-_HALF, minus)
    return out


def inertia(M: CoeffMatrix, precision_bits: int = DEFAULT_PRECISION, max_bits: int = MAX_PRECISION) -> Inertia:
    """(N+, N-, N0) of a Hermitian coefficient matrix.

    N0 is the exact corank; the signs of the pivots are certified with
    interval embeddings, doubling precision up to ``max_bits`` before giving
    up with PrecisionExhausted.
    """
    if not M.is_hermitian():
        raise NotHermitian("coefficient matrix is not Hermitian")
    if M.is_diagonal():
        weights = [M.rows[i][i] for i in sorted(M.rows)]
    else:
        weights = [w for w, _ in congruence_components(M)]
    plus = minus = 0
    for w in weights:
        s = w.sign(precision_bits, max_bits)
        if s > 0:
            plus += 1
        elif s < 0:
            minus += 1
        else:
            raise ArithmeticError("zero pivot weight")
    return Inertia(plus, minus, M.size - len(weights))


# -- decomposition -----------------------------------------------------------


def decompose(
    P: HermPoly,
    precision_bits: int = DEFAULT_PRECISION,
    method: str = "exact",
    max_bits: int = MAX_PRECISION,
    samples: int = 8,
) -> QuadMap:
    """Write P(z, zb) as ||F(z)||^2 - ||G(z)||^2.

    ``method="exact"`` uses the congruence components: monomial components
    for diagonal coefficient matrices, exact cyclotomic polynomials
    otherwise.  ``method="eigen"`` uses a numeric Hermitian eigendecomposition
    and certifies the reconstruction at fixed random sphere points to within
    2^(-precision_bits/2), raising PrecisionExhausted if that fails.
    """
    M = coeff_matrix(P)
    if method == "exact":
        plus, minus = [], []
        for w, h in congruence_components(M):
            s = w.sign(precision_bits, max_bits)
            if s > 0:
                plus.append(Component(h, w))
            else:
                minus.append(Component(h, -w))
        plus.sort(key=lambda c: grlex_key(c.poly.leading()[0]))
        minus.sort(key=lambda c: grlex_key(c.poly.leading()[0]))
        return QuadMap(P.dim, plus, minus, True)
    if method == "eigen":
        return _decompose_eigen(P, M, precision_bits, max_bits, samples)
    raise ValueError(f"unknown method {method!r}")


def _sphere_samples(dim: int, count: int, seed: int = 20240101) -> list[list[complex]]:
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        v = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(dim)]
        norm = sum(abs(x) ** 2 for x in v) ** 0.5
        pts.append([x / norm for x in v])
    return pts


def _decompose_eigen(P, M, precision_bits, max_bits, samples) -> QuadMap:
    rank = len(congruence_components(M))
    k = M.size
    bits = precision_bits
    points = _sphere_samples(P.dim, samples)
    while bits <= max_bits:
        with mp.workprec(bits):
            A = mp.matrix(k, k)
            for i, row in M.rows.items():
                for j, c in row.items():
                    A[i, j] = mpc(*_mid(c, bits))
            E, Q = mp.eighe(A)
            order = sorted(range(k), key=lambda t: -abs(E[t]))[:rank]
            plus, minus = [], []
            for t in sorted(order):
                lam = E[t]
                terms = {M.basis[r]: Q[r, t] for r in range(k) if Q[r, t] != 0}
                comp = Component(None, abs(lam), terms)
                (plus if lam > 0 else minus).append(comp)
        qm = QuadMap(P.dim, plus, minus, False)
        if _residual_ok(P, qm, points, bits):
            return qm
        bits *= 2
    raise PrecisionExhausted(f"eigen decomposition residual not certified at {max_bits} bits")


def _mid(c: CycNum, bits: int) -> tuple:
    z = c.embed(bits)
    with ivprec(bits):
        return center(z.re), center(z.im)


def _residual_ok(P: HermPoly, qm: QuadMap, points, bits: int) -> bool:
    tol = mpf(2) ** (-(bits // 2))
    for z in points:
        with ivprec(bits + 20):
            target = hp_eval(P, z, None, bits + 20)
            zs = [ComplexInterval.coerce(x) for x in z]
            total = ComplexInterval(0, 0)
            for sign, comp in qm.components():
                val = ComplexInterval(0, 0)
                for alpha, c in comp.numeric_terms.items():
                    t = ComplexInterval(_iv_of(c.real), _iv_of(c.imag))
                    for zj, e in zip(zs, alpha):
                        if e:
                            t = t * zj**e
                    val = val + t
                w = _iv_of(comp.weight)
                term = ComplexInterval(val.abs2() * w, 0)
                total = total + term if sign > 0 else total - term
            diff = total - target
            if max(upper(abs(diff.re)), upper(abs(diff.im))) >= tol:
                return False
    return True


def _iv_of(x):
    from mpmath import iv

    return iv.mpf(x)


# -- sweeps ------------------------------------------------------------------


@dataclass(frozen=True)
class SignatureRow:
    p: int
    order: int
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.n_plus, self.n_plus + self.n_minus)

    def as_tuple(self) -> tuple:
        return (self.p, self.n_plus, self.n_minus, self.ratio)


FAMILIES: dict[str, Callable[[int], UnitaryGroup]] = {
    "gamma-p-1": lambda p: make_gamma_pq(p, 1),
    "gamma-p-2": lambda p: make_gamma_pq(p, 2),
    "gamma-p-pm1": lambda p: make_gamma_pq(p, p - 1),
    "scalar": lambda p: make_scalar_cyclic(p, 2),
    "dihedral": make_dihedral,
}


def _family(name_or_fn) -> Callable[[int], UnitaryGroup]:
    if callable(name_or_fn):
        return name_or_fn
    if name_or_fn in FAMILIES:
        return FAMILIES[name_or_fn]
    if name_or_fn.startswith("gamma-p-q:"):
        q = int(name_or_fn.split(":", 1)[1])
        return lambda p: make_gamma_pq(p, q)
    raise BadParameters(f"unknown family {name_or_fn!r}")


def group_inertia(G: UnitaryGroup, precision_bits: int = DEFAULT_PRECISION) -> Inertia:
    """Inertia of the invariant polynomial's coefficient matrix."""
    from .invariant import phi_diagonal_moment, phi_gamma

    if G.is_diagonal():
        f = phi_diagonal_moment(G)
        plus = sum(1 for c in f.terms.values() if c > 0)
        return Inertia(plus, len(f.terms) - plus, 0)
    return inertia(coeff_matrix(phi_gamma(G).diagonal()), precision_bits)


def signature_ratio(family, p_range: Iterable[int], precision_bits: int = DEFAULT_PRECISION) -> list[SignatureRow]:
    """Per-p inertia of a group family and the ratio N+/(N+ + N-)."""
    make = _family(family)
    rows = []
    for p in p_range:
        G = make(p)
        ine = group_inertia(G, precision_bits)
        rows.append(SignatureRow(p, G.order, ine.n_plus, ine.n_minus, ine.n_zero))
    return rows


def signature_csv(rows: Sequence[SignatureRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "order", "n_plus", "n_minus", "n_zero", "ratio", "ratio_num", "ratio_den"])
    for r in rows:
        writer.writerow([r.p, r.order, r.n_plus, r.n_minus, r.n_zero, f"{float(r.ratio):.12f}", r.ratio.numerator, r.ratio.denominator])
    return buf.getvalue()
