"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`, which already keeps numerator and
denominator in lowest terms with a positive denominator after every
operation.  Everything here is exact; floats never enter this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


def rational(x) -> Fraction:
    """Coerce ints, Fractions and rational strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        # Exact binary value; callers that want decimal semantics pass strings.
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``, accepting an ASCII or Unicode minus."""
    s = text.strip().replace("−", "-")
    if not s or any(ch.isspace() for ch in s):
        raise ValueError(f"malformed rational {text!r}")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if sep and not den.lstrip("+").isdigit():
        raise ValueError(f"malformed rational {text!r}")
    if q == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_vector(v: Iterable[Fraction]) -> str:
    return "(" + ", ".join(format_rational(x) for x in v) + ")"


@dataclass(frozen=True)
class RatMatrix:
    """Dense row-major rational matrix."""

    nrows: int
    ncols: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.nrows or any(len(r) != self.ncols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "RatMatrix":
        rows = tuple(tuple(rational(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "RatMatrix":
        return cls.from_rows(list(zip(*cols)), ncols=len(cols)) if cols else cls(0, 0, ())

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "RatMatrix":
        return cls.from_rows([[ZERO] * n for _ in range(m)], ncols=n)

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.ncols, self.nrows, tuple(zip(*self.entries)) if self.entries else ())

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in matrix product")
            cols = other.columns()
            return RatMatrix(
                self.nrows,
                other.ncols,
                tuple(tuple(_dot(r, c) for c in cols) for r in self.entries),
            )
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(_dot(r, v) for r in self.entries)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix.from_rows(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], ncols=self.ncols
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix.from_rows(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], ncols=self.ncols
        )

    def scale(self, c) -> "RatMatrix":
        c = rational(c)
        return RatMatrix.from_rows([[c * a for a in r] for r in self.entries], ncols=self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix.from_rows([[self.entries[i][j] for j in cols] for i in rows], ncols=len(cols))

    def rank(self) -> int:
        return len(rref(self)[1])

    def inverse(self) -> "RatMatrix":
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = RatMatrix.from_rows(
            [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.entries)],
            ncols=2 * n,
        )
        red, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def to_strings(self) -> list[list[str]]:
        return [[format_rational(x) for x in r] for r in self.entries]


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def rref(M: RatMatrix) -> tuple[RatMatrix, list[int]]:
    """Reduced row echelon form and the pivot columns.

    Pivot choice is the first nonzero entry in column order.
    """
    rows = [list(r) for r in M.entries]
    pivots: list[int] = []
    r = 0
    for c in range(M.ncols):
        if r == M.nrows:
            break
        p = next((i for i in range(r, M.nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(M.nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return RatMatrix(M.nrows, M.ncols, tuple(tuple(x) for x in rows)), pivots


@dataclass(frozen=True)
class AffineSolutionSet:
    """Solution set of a linear system: empty, or particular + span(basis)."""

    status: str  # "empty" | "affine"
    particular: tuple[Fraction, ...] | None = None
    nullspace_basis: tuple[tuple[Fraction, ...], ...] = field(default_factory=tuple)

    @property
    def is_empty(self) -> bool:
        return self.status == "empty"

    @property
    def dimension(self) -> int:
        return -1 if self.is_empty else len(self.nullspace_basis)

    def member(self, params: Sequence) -> tuple[Fraction, ...]:
        if self.is_empty:
            raise ValueError("empty solution set has no members")
        if len(params) != len(self.nullspace_basis):
            raise ValueError("wrong number of parameters")
        x = list(self.particular)
        for t, b in zip(params, self.nullspace_basis):
            t = rational(t)
            x = [xi + t * bi for xi, bi in zip(x, b)]
        return tuple(x)


EMPTY = AffineSolutionSet("empty")


def solve_affine(M: RatMatrix, b: Sequence) -> AffineSolutionSet:
    """All exact solutions of ``M x = b``."""
    b = [rational(x) for x in b]
    if len(b) != M.nrows:
        raise ValueError(f"system has {M.nrows} rows but right-hand side has {len(b)} entries")
    n = M.ncols
    aug = RatMatrix.from_rows([list(r) + [bi] for r, bi in zip(M.entries, b)], ncols=n + 1)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        return EMPTY
    particular = [ZERO] * n
    for r, c in enumerate(pivots):
        particular[c] = red[r, n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -red[r, f]
        basis.append(tuple(v))
    return AffineSolutionSet("affine", tuple(particular), tuple(basis))


def determinant(M: RatMatrix) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    if not M.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    rows = [list(r) for r in M.entries]
    det = ONE
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            det = -det
        piv = rows[c][c]
        det *= piv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / piv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def canonical_affine(particular: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]):
    """Canonical description of ``particular + span(basis)``.

    Returns ``(reduced_particular, rref_basis, pivots)``: the basis in reduced
    echelon form and the particular point with its pivot coordinates cleared.
    Two affine sets are equal iff their canonical descriptions are.
    """
    n = len(particular)
    if not basis:
        return tuple(particular), (), []
    red, pivots = rref(RatMatrix.from_rows(basis, ncols=n))
    rb = [red.row(i) for i in range(len(pivots))]
    p = list(particular)
    for r, c in zip(rb, pivots):
        if p[c]:
            f = p[c]
            p = [a - f * b for a, b in zip(p, r)]
    return tuple(p), tuple(rb), pivots
