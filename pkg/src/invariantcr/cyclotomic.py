"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored in the power basis 1, zeta, ..., zeta^(phi(n)-1) reduced
modulo the n-th cyclotomic polynomial, as a tuple of integer numerators over a
single positive common denominator.  Keeping one denominator (instead of a
tuple of Fractions) keeps the hot multiply loop on machine-sized Python ints
for the integral coefficients that dominate group products.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from mpmath import iv

from .errors import PrecisionExhausted
from .intervals import ComplexInterval, ivprec

__all__ = [
    "CycNum",
    "cyclotomic_polynomial",
    "totient",
    "root_of_unity",
    "cyc_root_of_unity",
    "cyc_arith",
    "cyc_embed",
    "DEFAULT_PRECISION",
    "MAX_PRECISION",
]

DEFAULT_PRECISION = 128
MAX_PRECISION = 4096


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # both low-to-high, den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class _Field:
    """Read-only reduction data for Q(zeta_n)."""

    __slots__ = ("n", "phi", "table")

    def __init__(self, n: int):
        self.n = n
        self.phi = phi = totient(n)
        poly = cyclotomic_polynomial(n)
        size = max(n, 2 * phi - 1)
        table = []
        row = [0] * phi
        row[0] = 1
        for _ in range(size):
            table.append(tuple(row))
            # multiply by zeta, reduce with the monic relation
            top = row[-1]
            row = [0] + row[:-1]
            if top:
                for j in range(phi):
                    row[j] -= top * poly[j]
        self.table = tuple(table)

    def power(self, k: int) -> tuple[int, ...]:
        return self.table[k % self.n]


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


@lru_cache(maxsize=4096)
def _lift_rows(m: int, big: int) -> tuple[tuple[int, ...], ...]:
    """Images of 1, zeta_m, ... in the power basis of Q(zeta_big)."""
    step = big // m
    fb = _field(big)
    return tuple(fb.power(i * step) for i in range(totient(m)))


def _normalize(nums: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        nums = [-x for x in nums]
        den = -den
    if den != 1:
        g = den
        for x in nums:
            if x:
                g = math.gcd(g, x)
                if g == 1:
                    break
        if g != 1:
            nums = [x // g for x in nums]
            den //= g
    if not any(nums):
        den = 1
    return tuple(nums), den


def _solve_rational(columns: list[tuple[int, ...]], target: tuple[int, ...]) -> list[Fraction] | None:
    """Solve sum_i x_i * columns[i] = target over Q; None if inconsistent."""
    rows = len(target)
    k = len(columns)
    mat = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if mat[i][k] != 0:
            return None
    x = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        x[c] = mat[i][k]
    return x


class CycNum:
    """An exact element of Q(zeta_n).

    ``CycNum(n, coeffs)`` accepts any sequence of rationals; entry ``i`` is the
    coefficient of ``zeta_n**i`` and sequences longer than phi(n) are reduced.
    Values are immutable.
    """

    __slots__ = ("n", "nums", "den", "_hash")

    def __init__(self, n: int, coeffs=(0,)):
        if n < 1:
            raise ValueError("conductor must be positive")
        fld = _field(n)
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        acc = [0] * fld.phi
        for i, f in enumerate(fracs):
            if f:
                v = f.numerator * (den // f.denominator)
                for j, r in enumerate(fld.power(i)):
                    if r:
                        acc[j] += v * r
        self.n = n
        self.nums, self.den = _normalize(acc, den)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, nums, den: int) -> "CycNum":
        obj = object.__new__(cls)
        obj.n = n
        obj.nums, obj.den = _normalize(list(nums), den)
        obj._hash = None
        return obj

    @classmethod
    def rational(cls, value) -> "CycNum":
        f = Fraction(value)
        return cls._raw(1, (f.numerator,), f.denominator)

    @classmethod
    def coerce(cls, value) -> "CycNum":
        if isinstance(value, CycNum):
            return value
        if isinstance(value, (int, Rational)):
            return cls.rational(value)
        raise TypeError(f"cannot convert {type(value).__name__} to CycNum")

    # -- structure ---------------------------------------------------------

    @property
    def phi(self) -> int:
        return len(self.nums)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def is_real(self) -> bool:
        return self.conj() == self

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.nums[0], self.den)

    def lift(self, big: int) -> "CycNum":
        """Re-express in Q(zeta_big); ``big`` must be a multiple of ``n``."""
        if big == self.n:
            return self
        if big % self.n:
            raise ValueError(f"{big} is not a multiple of {self.n}")
        rows = _lift_rows(self.n, big)
        acc = [0] * totient(big)
        for x, row in zip(self.nums, rows):
            if x:
                for j, r in enumerate(row):
                    if r:
                        acc[j] += x * r
        return CycNum._raw(big, acc, self.den)

    def compress(self) -> "CycNum":
        """Same value expressed over the smallest conductor that contains it."""
        if self.is_rational():
            return CycNum._raw(1, self.nums[:1], self.den)
        for m in _divisors(self.n)[:-1]:
            if m % 4 == 2:
                continue
            sol = _solve_rational(list(_lift_rows(m, self.n)), self.nums)
            if sol is not None:
                return CycNum(m, [x / self.den for x in sol])
        return self

    # -- arithmetic --------------------------------------------------------

    def _common(self, other) -> tuple["CycNum", "CycNum"]:
        other = CycNum.coerce(other)
        if self.n == other.n:
            return self, other
        if other.n == 1:
            return self, other.lift(self.n)
        if self.n == 1:
            return self.lift(other.n), other
        big = self.n * other.n // math.gcd(self.n, other.n)
        return self.lift(big), other.lift(big)

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        if a.den == b.den:
            return CycNum._raw(a.n, [x + y for x, y in zip(a.nums, b.nums)], a.den)
        return CycNum._raw(a.n, [x * b.den + y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum._raw(self.n, [-x for x in self.nums], self.den)

    def __sub__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        if a.den == b.den:
            return CycNum._raw(a.n, [x - y for x, y in zip(a.nums, b.nums)], a.den)
        return CycNum._raw(a.n, [x * b.den - y * a.den for x, y in zip(a.nums, b.nums)], a.den * b.den)

    def __rsub__(self, other):
        return CycNum.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum._raw(self.n, [x * other for x in self.nums], self.den)
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycNum._raw(a.n, _mul_vec(a.nums, b.nums, a.n), a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            return CycNum._raw(self.n, [self.den] + [0] * (self.phi - 1), self.nums[0])
        # columns: self * zeta^j
        fld = _field(self.n)
        cols = [_mul_vec(self.nums, fld.power(j), self.n) for j in range(self.phi)]
        target = (self.den,) + (0,) * (self.phi - 1)
        sol = _solve_rational(cols, target)
        return CycNum(self.n, sol)

    def __truediv__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum._raw(self.n, [1] + [0] * (self.phi - 1), 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycNum":
        """Complex conjugation, zeta -> zeta^(n-1)."""
        return self.galois(-1)

    def galois(self, k: int) -> "CycNum":
        """The automorphism zeta -> zeta^k (k coprime to n)."""
        if math.gcd(k, self.n) != 1:
            raise ValueError(f"{k} is not a unit mod {self.n}")
        fld = _field(self.n)
        acc = [0] * self.phi
        for i, x in enumerate(self.nums):
            if x:
                for j, r in enumerate(fld.power(i * k)):
                    if r:
                        acc[j] += x * r
        return CycNum._raw(self.n, acc, self.den)

    def abs2(self) -> "CycNum":
        return self * self.conj()

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, CycNum):
            if self.n == other.n:
                return self.den == other.den and self.nums == other.nums
        elif isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        else:
            return NotImplemented
        a, b = self._common(other)
        return a.den == b.den and a.nums == b.nums

    def __hash__(self):
        if self._hash is None:
            c = self.compress()
            if c.n == 1:
                self._hash = hash(Fraction(c.nums[0], c.den))
            else:
                self._hash = hash((c.n, c.nums, c.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    # -- numerics ----------------------------------------------------------

    def embed(self, precision_bits: int = DEFAULT_PRECISION) -> ComplexInterval:
        """Certified enclosure of the image under zeta_n -> exp(2 pi i / n)."""
        return cyc_embed(self, precision_bits)

    def __complex__(self):
        z = 0j
        for i, x in enumerate(self.nums):
            if x:
                t = 2 * math.pi * i / self.n
                z += x * complex(math.cos(t), math.sin(t))
        return z / self.den

    def sign(self, precision_bits: int = DEFAULT_PRECISION, max_bits: int = MAX_PRECISION) -> int:
        """Sign of a real element, refining precision until certified."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.nums[0] > 0 else -1
        if not self.is_real():
            raise ValueError(f"{self!r} is not real")
        bits = max(53, precision_bits)
        while bits <= max_bits:
            re = self.embed(bits).re
            if re.a > 0:
                return 1
            if re.b < 0:
                return -1
            bits *= 2
        raise PrecisionExhausted(f"sign of {self!r} undecided at {max_bits} bits")

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "c": [[c.numerator, c.denominator] for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "CycNum":
        if isinstance(data, (int, list)) and not isinstance(data, dict):
            if isinstance(data, int):
                return cls.rational(data)
            return cls.rational(Fraction(data[0], data[1]))
        return cls(int(data["n"]), [Fraction(int(a), int(b)) for a, b in data["c"]])

    def __repr__(self):
        return f"CycNum({self.n}, {list(map(str, self.coeffs))})"

    def __str__(self):
        if self.is_rational():
            return str(Fraction(self.nums[0], self.den))
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            z = "" if i == 0 else (f"zeta{self.n}" if i == 1 else f"zeta{self.n}^{i}")
            if not z:
                parts.append(str(c))
            elif c == 1:
                parts.append(z)
            elif c == -1:
                parts.append("-" + z)
            else:
                parts.append(f"{c}*{z}")
        return "(" + " + ".join(parts).replace("+ -", "- ") + ")"


def _mul_vec(a, b, n: int) -> list[int]:
    fld = _field(n)
    phi = fld.phi
    if phi == 1:
        return [a[0] * b[0]]
    conv = [0] * (2 * phi - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
    res = conv[:phi]
    table = fld.table
    for k in range(phi, 2 * phi - 1):
        ck = conv[k]
        if ck:
            for j, r in enumerate(table[k]):
                if r:
                    res[j] += ck * r
    return res


def root_of_unity(n: int, k: int = 1) -> CycNum:
    """zeta_n ** k in canonical reduced form."""
    if n < 1:
        raise ValueError("n must be positive")
    return CycNum._raw(n, _field(n).power(k), 1)


cyc_root_of_unity = root_of_unity


def cyc_arith(a: CycNum, b: CycNum, op: str) -> CycNum:
    """Field operation by name: add, sub, mul or div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


@lru_cache(maxsize=256)
def _root_intervals(n: int, bits: int):
    with ivprec(bits + 10):
        out = []
        for i in range(totient(n)):
            if i == 0:
                out.append((iv.mpf(1), iv.mpf(0)))
                continue
            t = 2 * iv.pi * i / n
            out.append((iv.cos(t), iv.sin(t)))
        return tuple(out)


def cyc_embed(a: CycNum, precision_bits: int = DEFAULT_PRECISION) -> ComplexInterval:
    """Enclose ``a`` in a complex interval, computing at ``precision_bits``."""
    if precision_bits < 53:
        raise ValueError("precision_bits must be at least 53")
    a = CycNum.coerce(a)
    roots = _root_intervals(a.n, precision_bits)
    with ivprec(precision_bits + 10):
        re = iv.mpf(0)
        im = iv.mpf(0)
        for x, (c, s) in zip(a.nums, roots):
            if x:
                re += x * c
                im += x * s
        if a.den != 1:
            re /= a.den
            im /= a.den
        return ComplexInterval(re, im)
