"""Finite subgroups of U(n) given by explicit matrices over cyclotomic fields."""

from __future__ import annotations

import json
import math
from collections import deque
from typing import Iterable, Sequence

from .cyclotomic import CycNum, root_of_unity
from .errors import BadParameters, DimensionMismatch, EnumerationInvalid, NotUnitary, OrderExceeded

__all__ = [
    "UnitaryMatrix",
    "UnitaryGroup",
    "close_group",
    "make_cyclic",
    "make_gamma_pq",
    "make_scalar_cyclic",
    "make_dihedral",
    "make_metacyclic",
    "metacyclic_enumeration",
    "make_example_3_3",
    "swap_matrix",
    "generators_from_json",
    "group_from_spec",
    "all_small_groups",
    "DEFAULT_MAX_ORDER",
]

DEFAULT_MAX_ORDER = 10_000

_ZERO = CycNum.rational(0)
_ONE = CycNum.rational(1)


class UnitaryMatrix:
    """Square matrix with CycNum entries.  Immutable."""

    __slots__ = ("dim", "entries", "_conductor")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(CycNum.coerce(x) for x in row) for row in entries)
        dim = len(rows)
        if dim == 0 or any(len(r) != dim for r in rows):
            raise DimensionMismatch("matrix must be square and nonempty")
        self.dim = dim
        self.entries = rows
        self._conductor = None

    @classmethod
    def identity(cls, dim: int) -> "UnitaryMatrix":
        return cls([[_ONE if i == j else _ZERO for j in range(dim)] for i in range(dim)])

    @classmethod
    def diagonal(cls, values: Sequence) -> "UnitaryMatrix":
        d = len(values)
        return cls([[values[i] if i == j else _ZERO for j in range(d)] for i in range(d)])

    @property
    def conductor(self) -> int:
        if self._conductor is None:
            n = 1
            for row in self.entries:
                for x in row:
                    n = n * x.n // math.gcd(n, x.n)
            self._conductor = n
        return self._conductor

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "UnitaryMatrix") -> "UnitaryMatrix":
        if self.dim != other.dim:
            raise DimensionMismatch(f"{self.dim} vs {other.dim}")
        d = self.dim
        out = []
        for i in range(d):
            row = []
            for j in range(d):
                acc = _ZERO
                for k in range(d):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return UnitaryMatrix(out)

    def __pow__(self, k: int) -> "UnitaryMatrix":
        if k < 0:
            return self.conj_transpose() ** (-k)
        result = UnitaryMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def conj_transpose(self) -> "UnitaryMatrix":
        d = self.dim
        return UnitaryMatrix([[self.entries[j][i].conj() for j in range(d)] for i in range(d)])

    def is_unitary(self) -> bool:
        return self @ self.conj_transpose() == UnitaryMatrix.identity(self.dim)

    def is_identity(self) -> bool:
        return self == UnitaryMatrix.identity(self.dim)

    def is_diagonal(self) -> bool:
        return all(self.entries[i][j].is_zero() for i in range(self.dim) for j in range(self.dim) if i != j)

    def is_monomial(self) -> bool:
        """Exactly one nonzero entry in every row (a permutation times a diagonal)."""
        return all(sum(1 for x in row if not x.is_zero()) == 1 for row in self.entries)

    def key(self, conductor: int | None = None) -> tuple:
        """Canonical hashable form with all entries lifted to ``conductor``."""
        n = conductor or self.conductor
        return tuple((x.lift(n).nums, x.lift(n).den) for row in self.entries for x in row)

    def __eq__(self, other):
        if not isinstance(other, UnitaryMatrix):
            return NotImplemented
        return self.dim == other.dim and all(
            a == b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(tuple(x for row in self.entries for x in row))

    def to_json(self) -> list:
        return [[x.to_json() for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, data) -> "UnitaryMatrix":
        return cls([[CycNum.from_json(x) for x in row] for row in data])

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"UnitaryMatrix([{body}])"


def swap_matrix() -> UnitaryMatrix:
    return UnitaryMatrix([[0, 1], [1, 0]])


class UnitaryGroup:
    """A finite group of unitary matrices, stored as an explicit element list."""

    def __init__(self, elements: Sequence[UnitaryMatrix], labels: dict | None = None, generators=None):
        if not elements:
            raise BadParameters("a group needs at least one element")
        self.dim = elements[0].dim
        self.elements = tuple(elements)
        self.labels = dict(labels or {})
        self.generators = tuple(generators) if generators is not None else None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def conductor(self) -> int:
        n = 1
        for g in self.elements:
            n = n * g.conductor // math.gcd(n, g.conductor)
        return n

    def is_diagonal(self) -> bool:
        return all(g.is_diagonal() for g in self.elements)

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.elements)

    def __contains__(self, g: UnitaryMatrix) -> bool:
        return any(g == h for h in self.elements)

    def element_set(self) -> frozenset:
        n = self.conductor
        return frozenset(g.key(n) for g in self.elements)

    def is_closed(self) -> bool:
        keys = self.element_set()
        n = self.conductor
        return all((a @ b).key(n) in keys for a in self.elements for b in self.elements)

    def to_json(self) -> dict:
        return {"dim": self.dim, "elements": [g.to_json() for g in self.elements], "labels": self.labels}

    @classmethod
    def from_json(cls, data) -> "UnitaryGroup":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([UnitaryMatrix.from_json(e) for e in data["elements"]], data.get("labels", {}))

    def __repr__(self):
        return f"UnitaryGroup(dim={self.dim}, order={self.order}, labels={self.labels})"


def _check_generators(generators: Sequence[UnitaryMatrix]) -> int:
    if not generators:
        raise BadParameters("at least one generator is required")
    dim = generators[0].dim
    for g in generators:
        if g.dim != dim:
            raise DimensionMismatch("generators have different dimensions")
        if not g.is_unitary():
            raise NotUnitary(f"{g!r} is not unitary")
    return dim


def close_group(
    generators: Sequence[UnitaryMatrix],
    max_order: int = DEFAULT_MAX_ORDER,
    labels: dict | None = None,
) -> UnitaryGroup:
    """Enumerate the group generated by ``generators`` breadth first.

    Elements are returned sorted by their canonical key so the result does not
    depend on the order of the generators.
    """
    if max_order < 1:
        raise BadParameters("max_order must be at least 1")
    generators = list(generators)
    dim = _check_generators(generators)
    n = 1
    for g in generators:
        n = n * g.conductor // math.gcd(n, g.conductor)
    ident = UnitaryMatrix.identity(dim)
    seen = {ident.key(n): ident}
    frontier = deque([ident])
    while frontier:
        h = frontier.popleft()
        for g in generators:
            prod = g @ h
            k = prod.key(n)
            if k not in seen:
                seen[k] = prod
                if len(seen) > max_order:
                    raise OrderExceeded(f"group order exceeds {max_order}")
                frontier.append(prod)
    elements = [seen[k] for k in sorted(seen)]
    return UnitaryGroup(elements, labels or {"constructor": "generators"}, generators)


def make_cyclic(A: UnitaryMatrix, max_order: int = DEFAULT_MAX_ORDER, labels: dict | None = None) -> UnitaryGroup:
    """Cyclic group I, A, A^2, ... listed in power order."""
    _check_generators([A])
    ident = UnitaryMatrix.identity(A.dim)
    elements = [ident]
    cur = A
    while not cur.is_identity():
        elements.append(cur)
        if len(elements) > max_order:
            raise OrderExceeded(f"order of generator exceeds {max_order}")
        cur = cur @ A
    return UnitaryGroup(elements, labels or {"constructor": "cyclic"}, [A])


def make_gamma_pq(p: int, q: int) -> UnitaryGroup:
    """Cyclic group generated by diag(zeta_p, zeta_p^q)."""
    if p < 2 or not 1 <= q <= p - 1:
        raise BadParameters(f"need p >= 2 and 1 <= q <= p-1, got p={p}, q={q}")
    A = UnitaryMatrix.diagonal([root_of_unity(p, 1), root_of_unity(p, q)])
    return make_cyclic(A, labels={"constructor": "gamma_pq", "p": p, "q": q})


def make_scalar_cyclic(p: int, n: int) -> UnitaryGroup:
    """Cyclic group generated by zeta_p times the n-by-n identity."""
    if p < 1 or n < 1:
        raise BadParameters(f"need p >= 1 and n >= 1, got p={p}, n={n}")
    A = UnitaryMatrix.diagonal([root_of_unity(p, 1)] * n)
    return make_cyclic(A, labels={"constructor": "scalar", "p": p, "n": n})


def _rotation(p: int) -> UnitaryMatrix:
    return UnitaryMatrix.diagonal([root_of_unity(p, 1), root_of_unity(p, -1)])


def make_dihedral(p: int) -> UnitaryGroup:
    """D_p in U(2): A = diag(zeta_p, zeta_p^-1) and the coordinate swap."""
    if p < 2:
        raise BadParameters(f"need p >= 2, got {p}")
    group = make_metacyclic(p, 2, swap_matrix())
    group.labels = {"constructor": "dihedral", "p": p}
    return group


def metacyclic_enumeration(p: int, q: int, B: UnitaryMatrix) -> list[UnitaryMatrix]:
    """The list B^j A^k (j < q outer, k < p inner) with A = diag(zeta_p, zeta_p^-1).

    Raises EnumerationInvalid if two products coincide or the list is not
    closed under multiplication.
    """
    if p < 1 or q < 1:
        raise BadParameters("p and q must be positive")
    if B.dim != 2:
        raise DimensionMismatch("B must be 2-by-2")
    if not B.is_unitary():
        raise NotUnitary(f"{B!r} is not unitary")
    A = _rotation(p)
    powers_a = [A**k for k in range(p)]
    elements = []
    Bj = UnitaryMatrix.identity(2)
    for _ in range(q):
        for Ak in powers_a:
            elements.append(Bj @ Ak)
        Bj = Bj @ B
    n = 1
    for g in elements:
        n = n * g.conductor // math.gcd(n, g.conductor)
    keys = [g.key(n) for g in elements]
    if len(set(keys)) != len(keys):
        raise EnumerationInvalid("B^j A^k products are not distinct")
    keyset = set(keys)
    for g in elements:
        for gen in (A, B):
            if (gen @ g).key(n) not in keyset:
                raise EnumerationInvalid("B^j A^k products do not form a group")
    return elements


def make_metacyclic(p: int, q: int, B: UnitaryMatrix, max_order: int = DEFAULT_MAX_ORDER) -> UnitaryGroup:
    """Group generated by A = diag(zeta_p, zeta_p^-1) and B with B^q = I."""
    if p < 1 or q < 1:
        raise BadParameters("p and q must be positive")
    if not B.is_unitary():
        raise NotUnitary(f"{B!r} is not unitary")
    if not (B**q).is_identity():
        raise BadParameters(f"B^{q} is not the identity")
    labels = {"constructor": "metacyclic", "p": p, "q": q, "B": B.to_json()}
    try:
        elements = metacyclic_enumeration(p, q, B)
    except EnumerationInvalid:
        group = close_group([_rotation(p), B], max_order=max_order, labels=labels)
        group.labels["enumeration"] = "closure"
        return group
    labels["enumeration"] = "B^j A^k"
    return UnitaryGroup(elements, labels, [_rotation(p), B])


def make_example_3_3() -> UnitaryGroup:
    """Order-6 cyclic group generated by [[0, 1], [eta, 0]], eta a primitive cube root of 1."""
    A = UnitaryMatrix([[0, 1], [root_of_unity(3, 1), 0]])
    return make_cyclic(A, labels={"constructor": "example-3-3"})


def generators_from_json(data) -> list[UnitaryMatrix]:
    """Read generator matrices from the group JSON layout (``elements`` holds generators)."""
    if isinstance(data, str):
        data = json.loads(data)
    return [UnitaryMatrix.from_json(e) for e in data["elements"]]


def group_from_spec(kind: str, *params, max_order: int = DEFAULT_MAX_ORDER) -> UnitaryGroup:
    """Dispatch on a constructor name as used by the command line."""
    if kind == "gamma-pq":
        return make_gamma_pq(*params)
    if kind == "scalar":
        return make_scalar_cyclic(*params)
    if kind == "dihedral":
        return make_dihedral(*params)
    if kind == "example-3-3":
        return make_example_3_3()
    if kind == "metacyclic":
        p, q, B = params
        return make_metacyclic(p, q, B, max_order=max_order)
    if kind == "generators":
        (gens,) = params
        return close_group(gens, max_order=max_order, labels={"constructor": "generators"})
    raise BadParameters(f"unknown group constructor {kind!r}")


def all_small_groups(max_order: int = 24) -> Iterable[UnitaryGroup]:
    """Every group the named constructors produce with order at most ``max_order``."""
    for p in range(2, max_order + 1):
        for q in range(1, p):
            yield make_gamma_pq(p, q)
    for p in range(1, max_order + 1):
        for n in (1, 2, 3):
            yield make_scalar_cyclic(p, n)
    for p in range(2, max_order // 2 + 1):
        yield make_dihedral(p)
    yield make_example_3_3()
    i = root_of_unity(4, 1)
    for p in range(3, max_order // 4 + 1, 2):
        yield make_metacyclic(p, 4, UnitaryMatrix.diagonal([i, i]))
        yield make_metacyclic(p, 4, UnitaryMatrix([[0, i], [i, 0]]))
