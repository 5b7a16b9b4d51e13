"""Lotka-Volterra algebras over Q.

The algebra attached to an antisymmetric matrix A has basis e_1..e_n and
commutative product e_i e_j = (1/2 + a_ij) e_i + (1/2 + a_ji) e_j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import HALF, ONE, ZERO, format_rational, format_vector, parse_rational, rational
from .skew import SkewMatrix, Support, minor

WEIGHT_UNIQUE_MAX_COMPONENTS = 20


@dataclass(frozen=True)
class Element:
    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, values: Iterable) -> "Element":
        return cls(tuple(rational(v) for v in values))

    @classmethod
    def basis(cls, n: int, i: int) -> "Element":
        """e_i, 1-based."""
        return cls(tuple(ONE if k == i - 1 else ZERO for k in range(n)))

    @classmethod
    def zero(cls, n: int) -> "Element":
        return cls((ZERO,) * n)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def weight(self) -> Fraction:
        return sum(self.coords, ZERO)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, x in enumerate(self.coords) if x != 0)

    def __add__(self, other: "Element") -> "Element":
        _same_dim(self, other)
        return Element(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        _same_dim(self, other)
        return Element(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(tuple(-a for a in self.coords))

    def __rmul__(self, c) -> "Element":
        c = rational(c)
        return Element(tuple(c * a for a in self.coords))

    def __str__(self) -> str:
        return format_vector(self.coords)

    def to_json(self) -> list[str]:
        return [format_rational(x) for x in self.coords]


def _same_dim(x: Element, y: Element) -> None:
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")


def parse_element(text: str) -> Element:
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    return Element(tuple(parse_rational(t) for t in s.split(",")))


def element_from_json(obj: Sequence[str]) -> Element:
    return Element(tuple(parse_rational(t) if isinstance(t, str) else rational(t) for t in obj))


def weight(x: Element) -> Fraction:
    return x.weight


@dataclass(frozen=True)
class LVAlgebra:
    matrix: SkewMatrix

    @property
    def n(self) -> int:
        return self.matrix.n

    def e(self, i: int) -> Element:
        return Element.basis(self.n, i)

    def basis(self) -> list[Element]:
        return [self.e(i) for i in range(1, self.n + 1)]

    def element(self, values: Iterable) -> Element:
        x = Element.of(values)
        _check_dim(self, x)
        return x

    def restrict(self, support: Sequence[int]) -> "LVAlgebra":
        return LVAlgebra(minor(self.matrix, Support(tuple(support))))


def _check_dim(alg: LVAlgebra, *xs: Element) -> None:
    for x in xs:
        if x.dim != alg.n:
            raise ValueError(f"element of dimension {x.dim} in a {alg.n}-dimensional algebra")


def omega_i(alg: LVAlgebra, i: int, x: Element) -> Fraction:
    """omega_i(x) = sum_j a_ij x_j, with i 1-based."""
    _check_dim(alg, x)
    if not 1 <= i <= alg.n:
        raise IndexError(f"index {i} out of range 1..{alg.n}")
    row = alg.matrix.entries[i - 1]
    return sum((a * l for a, l in zip(row, x.coords) if a and l), ZERO)


def _omegas(alg: LVAlgebra, x: Element) -> list[Fraction]:
    return [sum((a * l for a, l in zip(row, x.coords) if a and l), ZERO) for row in alg.matrix.entries]


def multiply(alg: LVAlgebra, x: Element, y: Element) -> Element:
    """xy = 1/2 (w(y) x + w(x) y) + sum_i (x_i w_i(y) + y_i w_i(x)) e_i."""
    _check_dim(alg, x, y)
    wx, wy = x.weight, y.weight
    ox, oy = _omegas(alg, x), _omegas(alg, y)
    return Element(
        tuple(
            HALF * (wy * xi + wx * yi) + xi * oyi + yi * oxi
            for xi, yi, oxi, oyi in zip(x.coords, y.coords, ox, oy)
        )
    )


def square(alg: LVAlgebra, x: Element) -> Element:
    """x^2 = w(x) x + 2 sum_i x_i w_i(x) e_i."""
    _check_dim(alg, x)
    w = x.weight
    return Element(tuple(w * xi + 2 * xi * oi for xi, oi in zip(x.coords, _omegas(alg, x))))


def basis_product(alg: LVAlgebra, i: int, j: int) -> Element:
    """e_i e_j straight from the defining relation (no bilinear expansion)."""
    n = alg.n
    coords = [ZERO] * n
    a = alg.matrix.a(i, j)
    coords[i - 1] += HALF + a
    coords[j - 1] += HALF - a
    return Element(tuple(coords))


def is_idempotent(alg: LVAlgebra, x: Element) -> bool:
    return square(alg, x) == x


# -- weight uniqueness --------------------------------------------------------


@dataclass(frozen=True)
class WeightUniqueness:
    """``unique`` is None when the search exceeded the configured bound."""

    unique: bool | None
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None = None

    def __bool__(self) -> bool:
        return bool(self.unique)


def _components(A: SkewMatrix) -> list[list[int]]:
    """Classes of indices forced onto the same side (pairs with a_ij not in {+-1/2})."""
    n = A.n
    parent = list(range(n))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for i in range(n):
        for j in range(i + 1, n):
            if abs(A.entries[i][j]) != HALF:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[int]] = {}
    for k in range(n):
        groups.setdefault(find(k), []).append(k + 1)
    return sorted(groups.values())


def _is_witness(A: SkewMatrix, I: Sequence[int], J: Sequence[int]) -> bool:
    return all(A.a(i, j) == HALF for i in I for j in J)


def is_weight_unique(alg: LVAlgebra, max_components: int = WEIGHT_UNIQUE_MAX_COMPONENTS) -> WeightUniqueness:
    """Decide whether omega is the only weight homomorphism.

    A second one exists iff the basis splits as I | J (both nonempty) with
    e_i e_j = e_i, i.e. a_ij = 1/2, for all i in I, j in J.  Indices joined
    by an entry other than +-1/2 must lie on the same side, so only unions of
    those components are tried, in increasing bitmask order.
    """
    A = alg.matrix
    if A.n < 2:
        return WeightUniqueness(True)
    comps = _components(A)
    c = len(comps)
    if c > max_components:
        return WeightUniqueness(None)
    for mask in range(1, 2**c - 1):
        I = sorted(k for b in range(c) if mask >> b & 1 for k in comps[b])
        J = sorted(k for b in range(c) if not mask >> b & 1 for k in comps[b])
        if _is_witness(A, I, J):
            return WeightUniqueness(False, (tuple(I), tuple(J)))
    return WeightUniqueness(True)


def witness_weight(alg: LVAlgebra, witness: tuple[Sequence[int], Sequence[int]]) -> tuple[Fraction, ...]:
    """The second weight chi: chi(e_i) = 0 on I and 1 on J, checked on all basis pairs."""
    I, J = witness
    chi = [ZERO] * alg.n
    for j in J:
        chi[j - 1] = ONE

    def ev(x: Element) -> Fraction:
        return sum((c * v for c, v in zip(chi, x.coords)), ZERO)

    for i, j in itertools.combinations_with_replacement(range(1, alg.n + 1), 2):
        if ev(basis_product(alg, i, j)) != chi[i - 1] * chi[j - 1]:
            raise ValueError(f"chi is not multiplicative on e_{i} e_{j}")
    return tuple(chi)
