"""Sparse exact polynomials in (z, w-bar), holomorphic polynomials, and
real polynomials in the moment variables x_j = |z_j|^2.

A ``HermPoly`` term is keyed by the flat exponent tuple ``alpha + beta``: the
first ``dim`` entries are exponents of z, the last ``dim`` of w-bar (or z-bar
once the polynomial is read on the diagonal w = z).  Zero coefficients are
never stored.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from mpmath import iv

from .cyclotomic import DEFAULT_PRECISION, CycNum
from .errors import DimensionMismatch, NonRationalCoefficient, NotDiagonalSupport
from .intervals import ComplexInterval, ivprec, real_interval

__all__ = [
    "BiMonomial",
    "HermPoly",
    "HolPoly",
    "MomentPoly",
    "hp_arith",
    "hp_group_substitute",
    "hp_diagonal",
    "hp_to_moment",
    "hp_reduce_sphere",
    "hp_reduce_quadric",
    "binomial_expansion",
    "hp_eval",
    "grlex_key",
]

_ZERO = CycNum.rational(0)
_ONE = CycNum.rational(1)


class BiMonomial(NamedTuple):
    alpha: tuple[int, ...]
    beta: tuple[int, ...]


def grlex_key(exp: Sequence[int]) -> tuple:
    """Sort key for graded lexicographic order, largest first when sorted ascending."""
    return (-sum(exp), tuple(-e for e in exp))


def _add_into(terms: dict, key, coeff: CycNum) -> None:
    old = terms.get(key)
    if old is None:
        terms[key] = coeff
    else:
        new = old + coeff
        if new.is_zero():
            del terms[key]
        else:
            terms[key] = new


def _interval_point(value) -> ComplexInterval:
    if isinstance(value, CycNum):
        return value.embed(iv.prec)
    return ComplexInterval.coerce(value)


class HermPoly:
    """Polynomial in z and w-bar with cyclotomic coefficients.

    ``form`` records whether the polynomial is read in polarized variables
    (z, w-bar) or on the diagonal (z, z-bar); the term layout is identical.
    """

    __slots__ = ("dim", "terms", "form")

    def __init__(self, dim: int, terms: Mapping | Iterable = (), form: str = "polarized"):
        self.dim = dim
        self.form = form
        clean: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            if isinstance(key, BiMonomial) or (len(key) == 2 and isinstance(key[0], tuple)):
                key = tuple(key[0]) + tuple(key[1])
            key = tuple(int(e) for e in key)
            if len(key) != 2 * dim or min(key, default=0) < 0:
                raise DimensionMismatch(f"bad exponent {key} for dim {dim}")
            c = CycNum.coerce(c)
            if not c.is_zero():
                _add_into(clean, key, c)
        self.terms = clean

    @classmethod
    def _wrap(cls, dim: int, terms: dict, form: str = "polarized") -> "HermPoly":
        obj = object.__new__(cls)
        obj.dim = dim
        obj.terms = terms
        obj.form = form
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int, form: str = "polarized") -> "HermPoly":
        return cls._wrap(dim, {}, form)

    @classmethod
    def constant(cls, dim: int, value=1, form: str = "polarized") -> "HermPoly":
        value = CycNum.coerce(value)
        return cls._wrap(dim, {} if value.is_zero() else {(0,) * (2 * dim): value}, form)

    @classmethod
    def monomial(cls, alpha: Sequence[int], beta: Sequence[int], coeff=1, form: str = "polarized") -> "HermPoly":
        return cls(len(alpha), {tuple(alpha) + tuple(beta): coeff}, form)

    @classmethod
    def inner_product(cls, gamma=None, dim: int | None = None) -> "HermPoly":
        """<gamma z, w> = sum_{i,j} gamma_ij z_j w-bar_i (gamma defaults to the identity)."""
        if gamma is None:
            terms = {}
            for j in range(dim):
                e = [0] * (2 * dim)
                e[j] = 1
                e[dim + j] = 1
                terms[tuple(e)] = _ONE
            return cls._wrap(dim, terms)
        d = gamma.dim
        terms: dict = {}
        for i in range(d):
            for j in range(d):
                c = gamma.entries[i][j]
                if not c.is_zero():
                    e = [0] * (2 * d)
                    e[j] = 1
                    e[d + i] = 1
                    terms[tuple(e)] = c
        return cls._wrap(d, terms)

    # -- access ------------------------------------------------------------

    def items(self) -> Iterator[tuple[BiMonomial, CycNum]]:
        d = self.dim
        for key in sorted(self.terms, key=grlex_key):
            yield BiMonomial(key[:d], key[d:]), self.terms[key]

    def coeff(self, alpha: Sequence[int], beta: Sequence[int]) -> CycNum:
        return self.terms.get(tuple(alpha) + tuple(beta), _ZERO)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree_z(self) -> int:
        d = self.dim
        return max((sum(k[:d]) for k in self.terms), default=0)

    def degree_w(self) -> int:
        d = self.dim
        return max((sum(k[d:]) for k in self.terms), default=0)

    def constant_term(self) -> CycNum:
        return self.terms.get((0,) * (2 * self.dim), _ZERO)

    @property
    def hermitian_flag(self) -> bool:
        return self.is_hermitian()

    def is_hermitian(self) -> bool:
        """coeff(alpha, beta) == conj(coeff(beta, alpha)) for every term."""
        d = self.dim
        for key, c in self.terms.items():
            mirror = key[d:] + key[:d]
            other = self.terms.get(mirror)
            if other is None or other != c.conj():
                return False
        return True

    def is_diagonal_support(self) -> bool:
        d = self.dim
        return all(k[:d] == k[d:] for k in self.terms)

    def conductor(self) -> int:
        from math import gcd

        n = 1
        for c in self.terms.values():
            n = n * c.n // gcd(n, c.n)
        return n

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "HermPoly") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")

    def __add__(self, other):
        if not isinstance(other, HermPoly):
            other = HermPoly.constant(self.dim, other, self.form)
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return HermPoly._wrap(self.dim, out, self.form)

    __radd__ = __add__

    def __neg__(self):
        return HermPoly._wrap(self.dim, {k: -c for k, c in self.terms.items()}, self.form)

    def __sub__(self, other):
        if not isinstance(other, HermPoly):
            other = HermPoly.constant(self.dim, other, self.form)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "HermPoly":
        s = CycNum.coerce(s)
        if s.is_zero():
            return HermPoly.zero(self.dim, self.form)
        return HermPoly._wrap(self.dim, {k: c * s for k, c in self.terms.items()}, self.form)

    def __mul__(self, other):
        if not isinstance(other, HermPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        get = out.get
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                prod = ca * cb
                old = get(key)
                if old is None:
                    out[key] = prod
                else:
                    out[key] = old + prod
        out = {k: c for k, c in out.items() if not c.is_zero()}
        return HermPoly._wrap(self.dim, out, self.form)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "HermPoly":
        result = HermPoly.constant(self.dim, 1, self.form)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, HermPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    # -- transformations ---------------------------------------------------

    def substitute(self, gamma, side: str = "z") -> "HermPoly":
        return hp_group_substitute(self, gamma, side)

    def diagonal(self) -> "HermPoly":
        return hp_diagonal(self)

    def to_moment(self) -> "MomentPoly":
        return hp_to_moment(self)

    def reduce_sphere(self) -> "HermPoly":
        return hp_reduce_sphere(self)

    def eval(self, z, w=None, precision_bits: int = DEFAULT_PRECISION) -> ComplexInterval:
        return hp_eval(self, z, w, precision_bits)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [
                {"alpha": list(m.alpha), "beta": list(m.beta), "coeff": c.to_json()} for m, c in self.items()
            ],
        }

    @classmethod
    def from_json(cls, data, form: str = "polarized") -> "HermPoly":
        if isinstance(data, str):
            data = json.loads(data)
        dim = int(data["dim"])
        terms = [((tuple(t["alpha"]), tuple(t["beta"])), CycNum.from_json(t["coeff"])) for t in data["terms"]]
        return cls(dim, terms, form)

    def __str__(self):
        if not self.terms:
            return "0"
        wname = "zb" if self.form == "diagonal" else "wb"
        parts = []
        for m, c in self.items():
            factors = []
            for j, e in enumerate(m.alpha):
                if e:
                    factors.append(f"z{j + 1}" + (f"^{e}" if e > 1 else ""))
            for j, e in enumerate(m.beta):
                if e:
                    factors.append(f"{wname}{j + 1}" + (f"^{e}" if e > 1 else ""))
            mono = "*".join(factors)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)

    def __repr__(self):
        return f"HermPoly(dim={self.dim}, terms={len(self.terms)}, form={self.form!r})"


class HolPoly:
    """Holomorphic polynomial in z with cyclotomic coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping | Iterable = ()):
        self.dim = dim
        clean: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            key = tuple(int(e) for e in key)
            if len(key) != dim:
                raise DimensionMismatch(f"bad exponent {key} for dim {dim}")
            c = CycNum.coerce(c)
            if not c.is_zero():
                _add_into(clean, key, c)
        self.terms = clean

    @classmethod
    def monomial(cls, alpha: Sequence[int], coeff=1) -> "HolPoly":
        return cls(len(alpha), {tuple(alpha): coeff})

    @classmethod
    def variable(cls, dim: int, j: int) -> "HolPoly":
        e = [0] * dim
        e[j] = 1
        return cls(dim, {tuple(e): 1})

    def items(self):
        for key in sorted(self.terms, key=grlex_key):
            yield key, self.terms[key]

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def leading(self) -> tuple[tuple[int, ...], CycNum]:
        """Largest term in graded lex order."""
        key = min(self.terms, key=grlex_key)
        return key, self.terms[key]

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return HolPoly(self.dim, out)

    def __neg__(self):
        return HolPoly(self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "HolPoly":
        s = CycNum.coerce(s)
        return HolPoly(self.dim, {k: c * s for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, HolPoly):
            return self.scale(other)
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                _add_into(out, tuple(x + y for x, y in zip(ka, kb)), ca * cb)
        return HolPoly(self.dim, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "HolPoly":
        result = HolPoly(self.dim, {(0,) * self.dim: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, HolPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def compose(self, gamma) -> "HolPoly":
        """The polynomial z -> self(gamma z)."""
        forms = _linear_forms(gamma)
        out = HolPoly(self.dim)
        cache: dict = {}
        for alpha, c in self.terms.items():
            term = HolPoly(self.dim, {(0,) * self.dim: c})
            for j, e in enumerate(alpha):
                if e:
                    if (j, e) not in cache:
                        cache[(j, e)] = HolPoly(self.dim, forms[j]) ** e
                    term = term * cache[(j, e)]
            out = out + term
        return out

    def norm_squared(self) -> HermPoly:
        """|h(z)|^2 as a polynomial in (z, z-bar)."""
        return self.outer(self)

    def outer(self, other: "HolPoly") -> HermPoly:
        """self(z) * conj(other(w)) as a HermPoly."""
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                _add_into(out, ka + kb, ca * cb.conj())
        return HermPoly._wrap(self.dim, out, "diagonal")

    def normalized(self) -> "HolPoly":
        """Scalar multiple whose graded-lex leading coefficient is 1."""
        _, lead = self.leading()
        return self.scale(lead.inverse())

    def eval(self, z, precision_bits: int = DEFAULT_PRECISION) -> ComplexInterval:
        with ivprec(precision_bits):
            zs = [_interval_point(v) for v in z]
            acc = ComplexInterval(0, 0)
            for alpha, c in self.terms.items():
                t = c.embed(precision_bits)
                for zj, e in zip(zs, alpha):
                    if e:
                        t = t * zj**e
                acc = acc + t
            return acc

    def to_json(self) -> dict:
        return {"dim": self.dim, "terms": [{"alpha": list(a), "coeff": c.to_json()} for a, c in self.items()]}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for alpha, c in self.items():
            mono = "*".join(f"z{j + 1}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(alpha) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"HolPoly({self})"


def _linear_forms(gamma) -> list[dict]:
    """(gamma z)_j as exponent->coeff maps."""
    d = gamma.dim
    forms = []
    for j in range(d):
        f = {}
        for k in range(d):
            c = gamma.entries[j][k]
            if not c.is_zero():
                e = [0] * d
                e[k] = 1
                f[tuple(e)] = c
        forms.append(f)
    return forms


class MomentPoly:
    """Real polynomial in x_j = |z_j|^2 with exact rational coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping | Iterable = ()):
        self.dim = dim
        clean: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            key = tuple(int(e) for e in key)
            if len(key) != dim:
                raise DimensionMismatch(f"bad exponent {key} for dim {dim}")
            c = Fraction(c)
            if c:
                v = clean.get(key, 0) + c
                if v:
                    clean[key] = v
                else:
                    clean.pop(key, None)
        self.terms = clean

    @classmethod
    def _wrap(cls, dim: int, terms: dict) -> "MomentPoly":
        obj = object.__new__(cls)
        obj.dim = dim
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, dim: int, value=1) -> "MomentPoly":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def variable(cls, dim: int, j: int, coeff=1) -> "MomentPoly":
        e = [0] * dim
        e[j] = 1
        return cls(dim, {tuple(e): coeff})

    @classmethod
    def linear(cls, coeffs: Sequence, constant=0) -> "MomentPoly":
        dim = len(coeffs)
        terms = {(0,) * dim: constant}
        for j, a in enumerate(coeffs):
            e = [0] * dim
            e[j] = 1
            terms[tuple(e)] = a
        return cls(dim, terms)

    def items(self):
        for key in sorted(self.terms, key=grlex_key):
            yield key, self.terms[key]

    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def positive_terms(self) -> dict:
        return {k: c for k, c in self.terms.items() if c > 0}

    def negative_terms(self) -> dict:
        return {k: c for k, c in self.terms.items() if c < 0}

    def __add__(self, other):
        if not isinstance(other, MomentPoly):
            other = MomentPoly.constant(self.dim, other)
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MomentPoly._wrap(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return MomentPoly._wrap(self.dim, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MomentPoly):
            other = MomentPoly.constant(self.dim, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MomentPoly):
            s = Fraction(other)
            if not s:
                return MomentPoly._wrap(self.dim, {})
            return MomentPoly._wrap(self.dim, {k: c * s for k, c in self.terms.items()})
        if other.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        out: dict = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ka, kb))
                out[key] = out.get(key, 0) + ca * cb
        return MomentPoly._wrap(self.dim, {k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MomentPoly":
        result = MomentPoly.constant(self.dim, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MomentPoly):
            return self.dim == other.dim and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MomentPoly.constant(self.dim, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def compose(self, images: Sequence["MomentPoly"]) -> "MomentPoly":
        """Substitute x_j -> images[j]; all images share one target dimension."""
        if len(images) != self.dim:
            raise DimensionMismatch(f"need {self.dim} images, got {len(images)}")
        target = images[0].dim
        cache: dict = {}
        out = MomentPoly._wrap(target, {})
        for key, c in self.terms.items():
            term = MomentPoly.constant(target, c)
            for j, e in enumerate(key):
                if e:
                    if (j, e) not in cache:
                        cache[(j, e)] = images[j] ** e
                    term = term * cache[(j, e)]
            out = out + term
        return out

    def reduce_linear(self, relation: "MomentPoly", var: int | None = None) -> "MomentPoly":
        """Remainder modulo a degree-one relation.

        The relation is solved for ``var`` (default: the first variable with a
        nonzero coefficient) and substituted; the result is the unique
        representative free of that variable.  The substitution runs as a
        Horner scheme in ``var``, so each step multiplies by a linear form.
        """
        if relation.degree() != 1:
            raise ValueError("relation must have degree one")
        if relation.dim != self.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {relation.dim} differ")
        unit = [tuple(1 if i == j else 0 for i in range(self.dim)) for j in range(self.dim)]
        lin = [relation.coeff(unit[j]) for j in range(self.dim)]
        if var is None:
            var = next(j for j, a in enumerate(lin) if a)
        a = lin[var]
        if not a:
            raise ValueError(f"variable {var} does not occur in the relation")
        # x_var = -(relation - a x_var) / a
        image = (relation - MomentPoly.variable(self.dim, var, a)) * (-1 / a)
        slices: dict = {}
        for key, c in self.terms.items():
            e = key[var]
            rest = key[:var] + (0,) + key[var + 1 :]
            slices.setdefault(e, {})[rest] = c
        if not slices:
            return MomentPoly._wrap(self.dim, {})
        top = max(slices)
        out = MomentPoly._wrap(self.dim, dict(slices.get(top, {})))
        for e in range(top - 1, -1, -1):
            out = out * image + MomentPoly._wrap(self.dim, dict(slices.get(e, {})))
        return out

    def eval(self, point: Sequence):
        """Exact value at a rational point, or interval value for interval input."""
        total = 0
        for key, c in self.terms.items():
            t = c
            for v, e in zip(point, key):
                if e:
                    t = t * v**e
            total = total + t
        return total

    def eval_interval(self, point: Sequence, precision_bits: int = DEFAULT_PRECISION):
        with ivprec(precision_bits):
            pts = [real_interval(Fraction(v)) if not isinstance(v, iv.mpf) else v for v in point]
            total = iv.mpf(0)
            for key, c in self.terms.items():
                t = real_interval(c)
                for v, e in zip(pts, key):
                    if e:
                        t = t * v**e
                total = total + t
            return total

    def to_hermpoly(self) -> HermPoly:
        return HermPoly._wrap(
            self.dim, {k + k: CycNum.rational(c) for k, c in self.terms.items()}, "diagonal"
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [{"exp": list(k), "coeff": [c.numerator, c.denominator]} for k, c in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "MomentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["dim"]), [(tuple(t["exp"]), Fraction(*t["coeff"])) for t in data["terms"]])

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = ["x", "y"] if self.dim == 2 else [f"x{j + 1}" for j in range(self.dim)]
        parts = []
        for key, c in self.items():
            mono = "*".join(n + (f"^{e}" if e > 1 else "") for n, e in zip(names, key) if e)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MomentPoly({self})"


# -- module-level operations ---------------------------------------------


def hp_arith(P: HermPoly, Q, op: str) -> HermPoly:
    """Exact sparse arithmetic by name: add, sub, mul or scale."""
    if op == "add":
        return P + Q
    if op == "sub":
        return P - Q
    if op == "mul":
        return P * Q
    if op == "scale":
        return P.scale(Q)
    raise ValueError(f"unknown operation {op!r}")


def hp_group_substitute(P: HermPoly, gamma, side: str = "z") -> HermPoly:
    """Substitute z -> gamma z (side "z") or w -> gamma w (side "w") and expand."""
    if gamma.dim != P.dim:
        raise DimensionMismatch(f"matrix of size {gamma.dim} for polynomial of dim {P.dim}")
    if side not in ("z", "w"):
        raise ValueError("side must be 'z' or 'w'")
    d = P.dim
    forms = _linear_forms(gamma)
    if side == "w":
        forms = [{k: c.conj() for k, c in f.items()} for f in forms]
    powers: dict = {}

    def power(j: int, e: int) -> dict:
        if (j, e) not in powers:
            if e == 1:
                powers[(j, e)] = forms[j]
            else:
                a, b = power(j, e - 1), forms[j]
                out: dict = {}
                for ka, ca in a.items():
                    for kb, cb in b.items():
                        _add_into(out, tuple(x + y for x, y in zip(ka, kb)), ca * cb)
                powers[(j, e)] = out
        return powers[(j, e)]

    out: dict = {}
    for key, c in P.terms.items():
        moving = key[:d] if side == "z" else key[d:]
        fixed = key[d:] if side == "z" else key[:d]
        partial = {(0,) * d: c}
        for j, e in enumerate(moving):
            if e:
                nxt: dict = {}
                for ka, ca in partial.items():
                    for kb, cb in power(j, e).items():
                        _add_into(nxt, tuple(x + y for x, y in zip(ka, kb)), ca * cb)
                partial = nxt
        for k, v in partial.items():
            full = k + fixed if side == "z" else fixed + k
            _add_into(out, full, v)
    return HermPoly._wrap(d, out, P.form)


def hp_diagonal(P: HermPoly) -> HermPoly:
    """Restrict to w = z: the term z^a w-bar^b becomes z^a z-bar^b."""
    return HermPoly._wrap(P.dim, dict(P.terms), "diagonal")


def hp_to_moment(P: HermPoly) -> MomentPoly:
    """Rewrite a diagonally supported polynomial in x_j = |z_j|^2."""
    d = P.dim
    out = {}
    for key, c in P.terms.items():
        if key[:d] != key[d:]:
            raise NotDiagonalSupport(f"term with alpha={key[:d]} beta={key[d:]}")
        if not c.is_rational():
            raise NonRationalCoefficient(f"coefficient {c} of {key[:d]} is not rational")
        out[key[:d]] = c.to_fraction()
    return MomentPoly._wrap(d, out)


def _complement(dim: int, signs: Sequence[int], pivot: int) -> HermPoly:
    # 1 - sum_{j != pivot} s_j z_j zb_j, with s_pivot = +1
    rest = HermPoly.constant(dim, 1, "diagonal")
    for j in range(dim):
        if j == pivot or not signs[j]:
            continue
        e = [0] * (2 * dim)
        e[j] = e[dim + j] = 1
        rest = rest - HermPoly.monomial(e[:dim], e[dim:], signs[j], "diagonal")
    return rest


def hp_reduce_quadric(P: HermPoly, signs: Sequence[int], pivot: int | None = None) -> HermPoly:
    """Normal form modulo sum_j signs[j] z_j zb_j - 1.

    ``pivot`` (default: the first index with sign +1) names the variable
    whose product z_k zb_k is eliminated: every (z_k zb_k)^m becomes
    (1 - sum_{j != k} s_j z_j zb_j)^m.  The remainder has no term divisible
    by z_k zb_k and is zero exactly when P lies in the ideal.
    """
    d = P.dim
    if len(signs) != d:
        raise DimensionMismatch(f"need {d} signs, got {len(signs)}")
    if pivot is None:
        pivot = next((j for j, s in enumerate(signs) if s > 0), None)
        if pivot is None:
            raise ValueError("the quadric needs at least one positive variable")
    if signs[pivot] != 1:
        raise ValueError("pivot variable must carry sign +1")
    rest = _complement(d, signs, pivot)
    slices: dict = {}
    for key, c in P.terms.items():
        m = min(key[pivot], key[d + pivot])
        base = list(key)
        base[pivot] -= m
        base[d + pivot] -= m
        slices.setdefault(m, {})[tuple(base)] = c
    if not slices:
        return HermPoly._wrap(d, {}, "diagonal")
    # Horner in t = z_k zb_k, with t replaced by ``rest``
    top = max(slices)
    out = HermPoly._wrap(d, dict(slices[top]), "diagonal")
    for m in range(top - 1, -1, -1):
        out = out * rest + HermPoly._wrap(d, dict(slices.get(m, {})), "diagonal")
    return out


def hp_reduce_sphere(P: HermPoly) -> HermPoly:
    """Normal form modulo sum_j z_j zb_j - 1.

    Graded lex with variables ordered z1 > zb1 > z2 > zb2 > ... makes
    z1*zb1 the leading term of the divisor, so the remainder is the unique
    representative in which no term is divisible by z1*zb1.  It is obtained
    by replacing every (z1*zb1)^m with (1 - sum_{j>=2} z_j zb_j)^m.
    """
    return hp_reduce_quadric(P, [1] * P.dim, 0)


def hp_eval(P: HermPoly, z: Sequence, w: Sequence | None = None, precision_bits: int = DEFAULT_PRECISION) -> ComplexInterval:
    """Certified interval value of P(z, w-bar); ``w`` defaults to ``z``.

    Points may be complex numbers, rationals, CycNums or ComplexIntervals.
    """
    if w is None:
        w = z
    if len(z) != P.dim or len(w) != P.dim:
        raise DimensionMismatch("point has the wrong length")
    d = P.dim
    with ivprec(precision_bits):
        zs = [_interval_point(v) for v in z]
        wbs = [_interval_point(v).conjugate() for v in w]
        zpow: dict = {}
        wpow: dict = {}
        acc = ComplexInterval(0, 0)
        for key, c in P.terms.items():
            t = c.embed(precision_bits)
            for j in range(d):
                a, b = key[j], key[d + j]
                if a:
                    if (j, a) not in zpow:
                        zpow[(j, a)] = zs[j] ** a
                    t = t * zpow[(j, a)]
                if b:
                    if (j, b) not in wpow:
                        wpow[(j, b)] = wbs[j] ** b
                    t = t * wpow[(j, b)]
            acc = acc + t
        return acc


def binomial_expansion(dim: int, p: int) -> MomentPoly:
    """(x_1 + ... + x_dim)^p, used as a reference value in several places."""
    out = {}

    def rec(j: int, left: int, exp: list[int], coeff: int):
        if j == dim - 1:
            out[tuple(exp + [left])] = coeff
            return
        for e in range(left + 1):
            rec(j + 1, left - e, exp + [e], coeff * comb(left, e))

    rec(0, p, [], 1)
    return MomentPoly(dim, out)
