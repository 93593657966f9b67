"""The two-variable polynomials f_{p,q}(x, y) of the groups Gamma(p, q).

f_{p,q} is the invariant polynomial of diag(zeta_p, zeta_p^q) written in
x = |z1|^2, y = |z2|^2.  It always has integer coefficients and satisfies
f(x, 1 - x) = 1.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from mpmath import iv, mp

from .cyclotomic import DEFAULT_PRECISION
from .errors import BadParameters, DomainViolation, NonIntegerCoefficient, StructureViolation
from .groups import make_gamma_pq
from .hermpoly import MomentPoly
from .intervals import center, ivprec, lower, real_interval, upper
from .invariant import phi_diagonal_moment

__all__ = [
    "fpq_compute",
    "fp2_recurrence",
    "prime_test",
    "PrimeVerdict",
    "golden_ratio_scalar",
    "GoldenScalar",
    "fp_pm1_structure",
    "PM1Structure",
    "proposition41_check",
    "LimitReport",
    "fpq_sweep",
    "fpq_csv",
]

_X = MomentPoly.variable(2, 0)
_Y = MomentPoly.variable(2, 1)
_SPHERE = _X + _Y - 1


def _check_pq(p: int, q: int) -> None:
    if not isinstance(p, int) or not isinstance(q, int):
        raise BadParameters("p and q must be integers")
    if p < 2:
        raise BadParameters(f"need p >= 2, got p={p}")
    if not 1 <= q <= p - 1:
        raise BadParameters(f"need 1 <= q <= p-1, got q={q} for p={p}")


def fpq_compute(p: int, q: int) -> MomentPoly:
    """f_{p,q} with verified integer coefficients and f(x, 1-x) = 1."""
    _check_pq(p, q)
    f = phi_diagonal_moment(make_gamma_pq(p, q))
    if not f.is_integral():
        raise NonIntegerCoefficient(f"f_{{{p},{q}}} has a non-integer coefficient")
    if not (f - 1).reduce_linear(_SPHERE, var=1).is_zero():
        raise NonIntegerCoefficient(f"f_{{{p},{q}}} is not 1 on x + y = 1")
    return f


def fp2_recurrence(p: int) -> MomentPoly:
    """f_{p,2} = r+^p + r-^p + (-1)^(p+1) y^p, where r+- are the roots of t^2 - x t - y.

    The power sums a_k = r+^k + r-^k obey a_k = x a_{k-1} + y a_{k-2}.
    """
    if not isinstance(p, int) or p < 2:
        raise BadParameters(f"need p >= 2, got {p}")
    prev, cur = MomentPoly.constant(2, 2), _X
    for _ in range(p - 1):
        prev, cur = cur, _X * cur + _Y * prev
    return cur + MomentPoly(2, {(0, p): (-1) ** (p + 1)})


@dataclass(frozen=True)
class PrimeVerdict:
    p: int
    q: int
    prime: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.prime

    def to_json(self) -> dict:
        out = {"p": self.p, "q": self.q, "verdict": "prime" if self.prime else "composite"}
        if self.witness is not None:
            exp, c = self.witness
            out["witness"] = {"exp": list(exp), "coeff": int(c)}
        return out


def prime_test(p: int, q: int) -> PrimeVerdict:
    """Is every coefficient of f_{p,q} - x^p - y^p divisible by p?

    The answer is yes exactly when p is prime.  A "no" comes with the first
    offending term, lowest degree first.
    """
    f = fpq_compute(p, q)
    rest = f - MomentPoly(2, {(p, 0): 1, (0, p): 1})
    for exp, c in reversed(list(rest.items())):
        if c.numerator % p:
            return PrimeVerdict(p, q, False, (exp, c.numerator))
    return PrimeVerdict(p, q, True)


@dataclass(frozen=True)
class GoldenScalar:
    p: int
    value: int
    root: object  # iv.mpf enclosing value ** (1/p)

    def to_json(self) -> dict:
        return {"p": self.p, "S_p": str(self.value), "root": [_dec(lower(self.root)), _dec(upper(self.root))]}


def _dec(v) -> str:
    return mp.nstr(v, 30)


def _root_interval(value, p: int, bits: int):
    with ivprec(bits):
        return iv.exp(iv.log(real_interval(value)) / p)


def golden_ratio_scalar(p: int, precision_bits: int = DEFAULT_PRECISION) -> GoldenScalar:
    """S_p = f_{p,2}(1, 1) and an enclosure of S_p^(1/p); the root tends to the golden ratio."""
    if p < 3:
        raise BadParameters(f"need p >= 3, got {p}")
    s = fp2_recurrence(p).eval([1, 1])
    return GoldenScalar(p, int(s), _root_interval(s, p, precision_bits))


@dataclass
class PM1Structure:
    p: int
    n: dict[int, int]
    counts: tuple[int, int]
    expected_counts: tuple[int, int]
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": {str(j): v for j, v in sorted(self.n.items())},
            "counts": list(self.counts),
            "expected_counts": list(self.expected_counts),
            "ok": self.ok,
        }


def expected_pm1_counts(p: int) -> tuple[int, int]:
    """(positive, negative) coefficient counts of f_{p,p-1} predicted from p mod 4."""
    k, r = divmod(p, 4)
    return (k + 2, k) if r in (0, 1) else (k + 3, k)


def fp_pm1_structure(p: int, strict: bool = True) -> PM1Structure:
    """Check f_{p,p-1} = x^p + y^p + sum_j n_j (xy)^j against its sign pattern.

    Raises StructureViolation when ``strict`` and any check fails.
    """
    if p < 3:
        raise BadParameters(f"need p >= 3, got {p}")
    f = fpq_compute(p, p - 1)
    violations = []
    n = {}
    for (a, b), c in f.terms.items():
        if (a, b) in ((p, 0), (0, p)):
            if c != 1:
                violations.append(f"coefficient of the pure power is {c}")
            continue
        if a != b:
            violations.append(f"unexpected term x^{a} y^{b}")
            continue
        n[a] = int(c)
    for j, c in n.items():
        if 2 * j > p:
            violations.append(f"n_{j} = {c} is nonzero with 2j > p")
        elif j % 2 == 1 and c <= 0:
            violations.append(f"n_{j} = {c} should be positive")
        elif j % 2 == 0 and c >= 0:
            violations.append(f"n_{j} = {c} should be negative")
    pos = sum(1 for c in f.terms.values() if c > 0)
    counts = (pos, len(f.terms) - pos)
    expected = expected_pm1_counts(p)
    if counts != expected:
        violations.append(f"counts {counts} differ from {expected}")
    report = PM1Structure(p, n, counts, expected, violations)
    if strict and violations:
        raise StructureViolation(f"f_{{{p},{p - 1}}}: " + "; ".join(violations))
    return report


@dataclass
class LimitReport:
    p: int
    point: tuple
    value: object  # f_{p,2}(x,y)^(1/p)
    target: object  # (x + sqrt(x^2 + 4y)) / 2
    gap: object  # |value - target|
    h: object  # f / target^p - 1

    def to_json(self) -> dict:
        def pair(v):
            return [_dec(lower(v)), _dec(upper(v))]

        return {
            "p": self.p,
            "point": [str(Fraction(c)) for c in self.point],
            "value": pair(self.value),
            "target": pair(self.target),
            "gap": pair(self.gap),
            "h_p": pair(self.h),
        }


def _in_domain(x: Fraction, y: Fraction) -> bool:
    if x < 0 or y < 0:
        return False
    # x + sqrt(x^2 + 4y) > 2y
    d = 2 * y - x
    return d < 0 or x * x + 4 * y > d * d


def proposition41_check(
    p: int, sample_points: Sequence[Sequence], precision_bits: int = DEFAULT_PRECISION
) -> list[LimitReport]:
    """Enclosures of f_{p,2}(x, y)^(1/p), its limit (x + sqrt(x^2 + 4y))/2 and the gap.

    Points are exact rationals; the domain condition is checked exactly.
    """
    f = fp2_recurrence(p)
    reports = []
    for pt in sample_points:
        x, y = (Fraction(c) for c in pt)
        if not _in_domain(x, y):
            raise DomainViolation(f"({x}, {y}) is outside x + sqrt(x^2+4y) > 2y, x, y >= 0")
        val = f.eval([x, y])
        if val <= 0:
            raise DomainViolation(f"f_{{{p},2}}({x}, {y}) = {val} is not positive")
        with ivprec(precision_bits):
            xi, yi = real_interval(x), real_interval(y)
            target = (xi + iv.sqrt(xi * xi + 4 * yi)) / 2
            root = _root_interval(val, p, precision_bits)
            h = real_interval(val) / target**p - 1
            gap = abs(root - target)
        reports.append(LimitReport(p, (x, y), root, target, gap, h))
    return reports


# -- sweeps ------------------------------------------------------------------


def fpq_sweep(pairs: Iterable[tuple[int, int]], precision_bits: int = DEFAULT_PRECISION) -> list[dict]:
    """One row per (p, q): coefficients, S = f(1, 1), S^(1/p), prime verdict."""
    rows = []
    for p, q in pairs:
        f = fp2_recurrence(p) if q == 2 and p >= 3 else fpq_compute(p, q)
        s = f.eval([1, 1])
        root = _root_interval(s, p, precision_bits) if s > 0 else None
        rows.append(
            {
                "p": p,
                "q": q,
                "coefficients": [[list(k), int(c)] for k, c in f.items()],
                "S": int(s),
                "S_root": root,
                "prime": prime_test(p, q).prime,
            }
        )
    return rows


def fpq_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "q", "coefficients", "S_p", "S_p_root", "prime"])
    for r in rows:
        root = r["S_root"]
        mid = "" if root is None else mp.nstr(center(root), 15)
        w.writerow([r["p"], r["q"], json.dumps(r["coefficients"], separators=(",", ":")), r["S"], mid, int(r["prime"])])
    return buf.getvalue()
