"""Antisymmetric matrices, their minors, Pfaffians and the S_n action.

All indices in the public interface are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import ZERO, RatMatrix, determinant, format_rational, parse_rational, rational


@dataclass(frozen=True)
class SkewMatrix:
    n: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise ValueError("entries do not form an n x n grid")
        for i in range(self.n):
            if self.entries[i][i] != 0:
                raise ValueError(f"diagonal entry ({i + 1},{i + 1}) is nonzero")
            for j in range(i + 1, self.n):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError(f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) are not opposite")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SkewMatrix":
        return cls(len(rows), tuple(tuple(rational(x) for x in r) for r in rows))

    @classmethod
    def from_upper(cls, n: int, upper: dict[tuple[int, int], object]) -> "SkewMatrix":
        """Build from ``{(i, j): value}`` with ``1 <= i < j <= n``; missing pairs are zero."""
        grid = [[ZERO] * n for _ in range(n)]
        for (i, j), v in upper.items():
            if not (1 <= i < j <= n):
                raise ValueError(f"upper-triangle index ({i},{j}) invalid for n={n}")
            v = rational(v)
            grid[i - 1][j - 1] = v
            grid[j - 1][i - 1] = -v
        return cls(n, tuple(tuple(r) for r in grid))

    @classmethod
    def zero(cls, n: int) -> "SkewMatrix":
        return cls.from_upper(n, {})

    def a(self, i: int, j: int) -> Fraction:
        """Entry a_ij (1-based)."""
        return self.entries[i - 1][j - 1]

    def upper(self) -> list[tuple[int, int, Fraction]]:
        return [(i + 1, j + 1, self.entries[i][j]) for i in range(self.n) for j in range(i + 1, self.n)]

    def as_ratmatrix(self) -> RatMatrix:
        return RatMatrix(self.n, self.n, self.entries)

    def __neg__(self) -> "SkewMatrix":
        return SkewMatrix(self.n, tuple(tuple(-x for x in r) for r in self.entries))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)


def skew3(a, b, c) -> SkewMatrix:
    """Skew(a, b, c): upper entries a_12 = a, a_13 = b, a_23 = c."""
    return SkewMatrix.from_upper(3, {(1, 2): a, (1, 3): b, (2, 3): c})


def constant_skew(n: int, a) -> SkewMatrix:
    """The matrix with a_ij = a for every i < j."""
    return SkewMatrix.from_upper(n, {(i, j): a for i in range(1, n + 1) for j in range(i + 1, n + 1)})


def skew3_params(A: SkewMatrix) -> tuple[Fraction, Fraction, Fraction]:
    if A.n != 3:
        raise ValueError("Skew(a,b,c) parameters need a 3 x 3 matrix")
    return A.a(1, 2), A.a(1, 3), A.a(2, 3)


# -- minors -------------------------------------------------------------------


@dataclass(frozen=True)
class Support:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class DeleteRowCol:
    i: int
    j: int


@dataclass(frozen=True)
class Principal:
    i: int


@dataclass(frozen=True)
class DeleteBoth:
    i: int
    j: int


MinorSpec = Support | DeleteRowCol | Principal | DeleteBoth


def _check(n: int, *idx: int) -> None:
    for k in idx:
        if not 1 <= k <= n:
            raise IndexError(f"index {k} out of range 1..{n}")


def _principal(A: SkewMatrix, keep: Sequence[int]) -> SkewMatrix:
    return SkewMatrix(len(keep), tuple(tuple(A.entries[i][j] for j in keep) for i in keep))


def minor(A: SkewMatrix, spec: MinorSpec) -> SkewMatrix | RatMatrix:
    """A_I, A_ij, A_i or A_{î,ĵ} depending on ``spec``.

    ``DeleteRowCol`` is the only kind that is not again antisymmetric and the
    only one returned as a plain :class:`RatMatrix`.
    """
    n = A.n
    if isinstance(spec, Support):
        idx = tuple(spec.indices)
        if not idx or any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("support must be nonempty and strictly increasing")
        _check(n, *idx)
        return _principal(A, [k - 1 for k in idx])
    if isinstance(spec, DeleteRowCol):
        _check(n, spec.i, spec.j)
        rows = [k for k in range(n) if k != spec.i - 1]
        cols = [k for k in range(n) if k != spec.j - 1]
        return A.as_ratmatrix().submatrix(rows, cols)
    if isinstance(spec, Principal):
        _check(n, spec.i)
        return _principal(A, [k for k in range(n) if k != spec.i - 1])
    if isinstance(spec, DeleteBoth):
        _check(n, spec.i, spec.j)
        if spec.i == spec.j:
            raise ValueError("DeleteBoth needs two distinct indices")
        return _principal(A, [k for k in range(n) if k not in (spec.i - 1, spec.j - 1)])
    raise TypeError(f"unknown minor spec {spec!r}")


# -- Pfaffian -----------------------------------------------------------------


def heaviside(x: int) -> int:
    return 1 if x > 0 else 0


def pfaffian(A: SkewMatrix, row: int = 1) -> Fraction:
    """Pfaffian by recursive expansion along ``row`` (1-based).

    pf(A) = sum_j (-1)^(i+j+theta(j-i)) a_ij pf(A_{î,ĵ}); sub-Pfaffians are
    expanded along their first row and memoized on the surviving index set.
    """
    n = A.n
    if n % 2:
        return ZERO
    if n == 0:
        return Fraction(1)
    _check(n, row)
    memo: dict[tuple[int, ...], Fraction] = {(): Fraction(1)}
    E = A.entries

    def pf(idx: tuple[int, ...]) -> Fraction:
        got = memo.get(idx)
        if got is not None:
            return got
        first = idx[0]
        total = ZERO
        for q in range(1, len(idx)):
            a = E[first][idx[q]]
            if a:
                rest = idx[1:q] + idx[q + 1 :]
                # position 1 vs position q+1: sign (-1)^(1+(q+1)+1) = (-1)^(q+1)
                term = a * pf(rest)
                total += -term if q % 2 == 0 else term
        memo[idx] = total
        return total

    full = tuple(range(n))
    i = row
    total = ZERO
    for j in range(1, n + 1):
        if j == i:
            continue
        a = E[i - 1][j - 1]
        if a:
            rest = tuple(k for k in full if k not in (i - 1, j - 1))
            sign = (-1) ** (i + j + heaviside(j - i))
            total += sign * a * pf(rest)
    return total


def lemma3_sides(A: SkewMatrix, i: int, j: int) -> tuple[Fraction, Fraction]:
    """(det(A_ij), (-1)^theta(j-i) pf(A) pf(A_{î,ĵ})) for even n > 2, i != j."""
    if A.n % 2 or A.n <= 2:
        raise ValueError("needs even n > 2")
    if i == j:
        raise ValueError("needs i != j")
    _check(A.n, i, j)
    lhs = determinant(minor(A, DeleteRowCol(i, j)))
    rhs = (-1) ** heaviside(j - i) * pfaffian(A) * pfaffian(minor(A, DeleteBoth(i, j)))
    return lhs, rhs


def lemma4_sides(A: SkewMatrix, i: int, j: int) -> tuple[Fraction, Fraction]:
    """(det(A_ij), pf(A_i) pf(A_j)) for odd n."""
    if A.n % 2 == 0:
        raise ValueError("needs odd n")
    _check(A.n, i, j)
    lhs = determinant(minor(A, DeleteRowCol(i, j)))
    rhs = pfaffian(minor(A, Principal(i))) * pfaffian(minor(A, Principal(j)))
    return lhs, rhs


# -- permutations -------------------------------------------------------------

Permutation = tuple[int, ...]
"""One-line notation: ``tau[k - 1]`` is the image of k."""


def check_permutation(tau: Sequence[int], n: int) -> Permutation:
    tau = tuple(tau)
    if sorted(tau) != list(range(1, n + 1)):
        raise ValueError(f"{tau} is not a permutation of 1..{n}")
    return tau


def from_cycles(n: int, *cycles: Sequence[int]) -> Permutation:
    """Standard cycle notation: (1 2 3) sends 1 -> 2 -> 3 -> 1."""
    img = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
            img[a - 1] = b
    return check_permutation(img, n)


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """(sigma tau)(i) = sigma(tau(i))."""
    return tuple(sigma[t - 1] for t in tau)


def inverse_permutation(tau: Permutation) -> Permutation:
    inv = [0] * len(tau)
    for i, t in enumerate(tau, start=1):
        inv[t - 1] = i
    return tuple(inv)


def apply_permutation(A: SkewMatrix, tau: Sequence[int]) -> SkewMatrix:
    """A_tau with entries a_{tau(i), tau(j)}."""
    tau = check_permutation(tau, A.n)
    return SkewMatrix(A.n, tuple(tuple(A.entries[ti - 1][tj - 1] for tj in tau) for ti in tau))


# -- JSON ---------------------------------------------------------------------


def skew_to_json(A: SkewMatrix) -> dict:
    return {"n": A.n, "upper": [[i, j, format_rational(v)] for i, j, v in A.upper() if v != 0]}


def skew_from_json(obj) -> SkewMatrix:
    if not isinstance(obj, dict) or "n" not in obj:
        raise ValueError('skew matrix JSON needs an object with "n" and "upper"')
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ValueError(f'"n" must be a nonnegative integer, got {n!r}')
    upper: dict[tuple[int, int], Fraction] = {}
    for item in obj.get("upper", []):
        if not (isinstance(item, list) and len(item) == 3):
            raise ValueError(f"upper entry {item!r} is not [i, j, value]")
        i, j, v = item
        if not (isinstance(i, int) and isinstance(j, int)):
            raise ValueError(f"upper entry {item!r} has non-integer indices")
        if i == j:
            raise ValueError(f"diagonal entry ({i},{j}) is not allowed")
        if not (1 <= i < j <= n):
            raise ValueError(f"upper entry ({i},{j}) must satisfy 1 <= i < j <= {n}")
        if (i, j) in upper:
            raise ValueError(f"duplicate entry ({i},{j})")
        upper[(i, j)] = parse_rational(v) if isinstance(v, str) else rational(v)
    return SkewMatrix.from_upper(n, upper)


def load_skew(path) -> SkewMatrix:
    with open(path) as fh:
        return skew_from_json(json.load(fh))


def dump_skew(A: SkewMatrix, path) -> None:
    with open(path, "w") as fh:
        json.dump(skew_to_json(A), fh, indent=1)
        fh.write("\n")
