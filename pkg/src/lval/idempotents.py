"""Idempotent elements, organised by support.

An idempotent x with support I and weight 0 satisfies omega_i(x) = 1/2 for
every i in I; one of weight 1 satisfies omega_i(x) = 0 on I.  Together with
the weight equation these are linear systems on the restricted matrix A_I,
which :func:`idempotents_with_support` solves exactly.  The closed forms
(dimension 3 and 4 blocks, full-support Pfaffian formulas) are implemented
separately and checked against that solver.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .algebra import Element, LVAlgebra, is_idempotent
from .linalg import (
    HALF,
    ONE,
    ZERO,
    RatMatrix,
    canonical_affine,
    format_rational,
    rational,
    solve_affine,
)
from .skew import (
    DeleteBoth,
    Principal,
    SkewMatrix,
    Support,
    apply_permutation,
    heaviside,
    minor,
    pfaffian,
)

ENUMERATE_MAX_N = 12


class TheoremInapplicable(ValueError):
    """The hypotheses of a closed-form statement do not hold for this input."""


# -- solution sets ------------------------------------------------------------


@dataclass(frozen=True)
class Exclusion:
    """The open condition ``constant + coeffs . t != 0`` on family parameters t."""

    constant: Fraction
    coeffs: tuple[Fraction, ...]

    def holds(self, params: Sequence[Fraction]) -> bool:
        return self.constant + sum((c * t for c, t in zip(self.coeffs, params)), ZERO) != 0

    def normalized(self) -> "Exclusion | bool":
        """Scaled so the leading coefficient is 1; a bool for constant conditions."""
        lead = next((c for c in self.coeffs if c != 0), None)
        if lead is None:
            return self.constant != 0
        return Exclusion(self.constant / lead, tuple(c / lead for c in self.coeffs))

    def to_json(self) -> dict:
        return {"constant": format_rational(self.constant), "coeffs": [format_rational(c) for c in self.coeffs]}


@dataclass(frozen=True)
class Family:
    """``particular + sum_k t_k basis[k]`` subject to every exclusion holding.

    Vectors are full n-dimensional coordinate tuples.
    """

    particular: tuple[Fraction, ...]
    basis: tuple[tuple[Fraction, ...], ...]
    exclusions: tuple[Exclusion, ...]

    @property
    def arity(self) -> int:
        return len(self.basis)

    def allows(self, params: Sequence) -> bool:
        params = [rational(t) for t in params]
        return all(e.holds(params) for e in self.exclusions)

    def member(self, params: Sequence) -> Element:
        if len(params) != self.arity:
            raise ValueError(f"family takes {self.arity} parameters, got {len(params)}")
        params = [rational(t) for t in params]
        if not self.allows(params):
            raise ValueError("parameters fall on an excluded locus")
        x = list(self.particular)
        for t, b in zip(params, self.basis):
            x = [xi + t * bi for xi, bi in zip(x, b)]
        return Element(tuple(x))

    def sample_params(self, rng: random.Random, count: int) -> list[tuple[Fraction, ...]]:
        out = []
        while len(out) < count:
            t = tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 9)) for _ in range(self.arity))
            if self.allows(t):
                out.append(t)
        return out

    def sample(self, rng: random.Random, count: int) -> list[Element]:
        return [self.member(t) for t in self.sample_params(rng, count)]

    def canonical(self):
        """(particular, rref basis, exclusions) in the parameters s = x[pivots]."""
        p, rb, pivots = canonical_affine(self.particular, self.basis)
        k = self.arity
        # x[pivots] = particular[pivots] + T t, so t = T^{-1} (s - particular[pivots])
        T = RatMatrix.from_rows([[self.basis[m][c] for m in range(k)] for c in pivots], ncols=k)
        Tinv = T.inverse()
        p_piv = [self.particular[c] for c in pivots]
        excl = set()
        for e in self.exclusions:
            new = [sum((e.coeffs[m] * Tinv[m, r] for m in range(k)), ZERO) for r in range(k)]
            const = e.constant - sum((c * v for c, v in zip(new, p_piv)), ZERO)
            norm = Exclusion(const, tuple(new)).normalized()
            if norm is True:
                continue
            excl.add(norm)
        return p, rb, frozenset(excl)


@dataclass(frozen=True)
class SupportSolution:
    support: tuple[int, ...]
    weight_class: int
    status: str  # "empty" | "point" | "family"
    point: Element | None = None
    family: Family | None = None

    @property
    def is_empty(self) -> bool:
        return self.status == "empty"

    def key(self):
        """Hashable canonical description used for equality between solvers."""
        if self.status == "point":
            return ("point", self.point.coords)
        if self.status == "family":
            return ("family",) + self.family.canonical()
        return ("empty",)

    def same_as(self, other: "SupportSolution") -> bool:
        return (
            self.support == other.support
            and self.weight_class == other.weight_class
            and self.key() == other.key()
        )

    def to_json(self) -> dict:
        if self.status == "point":
            return {"status": "point", "point": self.point.to_json()}
        if self.status == "family":
            f = self.family
            return {
                "status": "family",
                "particular": [format_rational(x) for x in f.particular],
                "basis": [[format_rational(x) for x in b] for b in f.basis],
                "exclusions": [e.to_json() for e in f.exclusions],
            }
        return {"status": "empty"}

    def describe(self) -> str:
        if self.status == "point":
            return f"point {self.point}"
        if self.status == "family":
            f = self.family
            return f"family of dimension {f.arity}: {Element(f.particular)} + span{{" + ", ".join(
                str(Element(b)) for b in f.basis
            ) + f"}}, {len(f.exclusions)} excluded loci"
        return "empty"


def _empty(support, w) -> SupportSolution:
    return SupportSolution(tuple(support), w, "empty")


def _finish(support, w, particular, basis, exclusions) -> SupportSolution:
    """Turn an affine parametrization into Empty / Point / Family.

    Constant exclusions are dropped when nonzero and make the set empty when
    zero; a zero-dimensional set is a point only if no exclusion fails.
    """
    support = tuple(support)
    particular = tuple(particular)
    basis = tuple(tuple(b) for b in basis)
    if not basis:
        if all(e.constant != 0 for e in exclusions):
            return SupportSolution(support, w, "point", point=Element(particular))
        return _empty(support, w)
    kept = []
    for e in exclusions:
        norm = e.normalized()
        if norm is False:
            return _empty(support, w)
        if norm is True:
            continue
        if norm not in kept:
            kept.append(norm)
    return SupportSolution(support, w, "family", family=Family(particular, basis, tuple(kept)))


def _coordinate_exclusions(support, particular, basis) -> list[Exclusion]:
    return [Exclusion(particular[i - 1], tuple(b[i - 1] for b in basis)) for i in support]


def _check_support(n: int, support: Sequence[int]) -> tuple[int, ...]:
    I = tuple(sorted(set(support)))
    if not I:
        raise ValueError("support must be nonempty")
    if len(I) != len(support):
        raise ValueError("support has repeated indices")
    if I[0] < 1 or I[-1] > n:
        raise IndexError(f"support {I} out of range 1..{n}")
    return I


# -- the linear-system solver (oracle) ----------------------------------------


def idempotents_with_support(alg: LVAlgebra, support: Sequence[int]) -> tuple[SupportSolution, SupportSolution]:
    """(weight 0, weight 1) idempotents with support exactly ``support``."""
    n = alg.n
    I = _check_support(n, support)
    AI = minor(alg.matrix, Support(I))
    k = len(I)
    M = RatMatrix.from_rows([[ONE] * k] + [list(r) for r in AI.entries], ncols=k)
    out = []
    for w, rhs in ((0, [ZERO] + [HALF] * k), (1, [ONE] + [ZERO] * k)):
        sol = solve_affine(M, rhs)
        if sol.is_empty:
            out.append(_empty(I, w))
            continue
        particular = _lift(sol.particular, I, n)
        basis = [_lift(b, I, n) for b in sol.nullspace_basis]
        out.append(_finish(I, w, particular, basis, _coordinate_exclusions(I, particular, basis)))
    return out[0], out[1]


def _lift(local: Sequence[Fraction], support: Sequence[int], n: int) -> tuple[Fraction, ...]:
    x = [ZERO] * n
    for v, i in zip(local, support):
        x[i - 1] = v
    return tuple(x)


def _affine_family(fn: Callable[..., Sequence[Fraction]], arity: int):
    """Particular point and direction vectors of an affine map params -> coords."""
    zero = [ZERO] * arity
    p = tuple(fn(*zero))
    basis = []
    for k in range(arity):
        t = list(zero)
        t[k] = ONE
        q = fn(*t)
        basis.append(tuple(a - b for a, b in zip(q, p)))
    return p, basis


# -- closed forms -------------------------------------------------------------


def dim3_closed_form(AI: SkewMatrix) -> tuple[SupportSolution, SupportSolution]:
    """Idempotents with support {1,2,3} of the block Skew(a, b, c), a != 0.

    Weight 1: exactly (c e_1 - b e_2 + a e_3)/(a + c - b) when b != a + c and
    abc != 0.  Weight 0: when b = a + c, the line
    ((2c t - 1)/2a, (1 - 2b t)/2a, t) with t, 2ct - 1, 2bt - 1 nonzero.
    """
    if AI.n != 3:
        raise ValueError("dim3_closed_form needs a 3 x 3 block")
    a, b, c = AI.a(1, 2), AI.a(1, 3), AI.a(2, 3)
    if a == 0:
        raise TheoremInapplicable("entry a_12 must be nonzero (renumber first)")
    I = (1, 2, 3)
    if b != a + c and a * b * c != 0:
        s = a + c - b
        w1 = SupportSolution(I, 1, "point", point=Element((c / s, -b / s, a / s)))
    else:
        w1 = _empty(I, 1)
    if b == a + c:
        p, basis = _affine_family(lambda t: ((2 * c * t - 1) / (2 * a), (1 - 2 * b * t) / (2 * a), t), 1)
        excl = [Exclusion(ZERO, (ONE,)), Exclusion(-ONE, (2 * c,)), Exclusion(-ONE, (2 * b,))]
        w0 = _finish(I, 0, p, basis, excl)
    else:
        w0 = _empty(I, 0)
    return w0, w1


@dataclass(frozen=True)
class Dim4Invariants:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    b1: Fraction
    b2: Fraction
    c1: Fraction
    delta: Fraction
    delta1: Fraction
    delta2: Fraction
    delta3: Fraction
    delta4: Fraction

    @classmethod
    def of(cls, AI: SkewMatrix) -> "Dim4Invariants":
        if AI.n != 4:
            raise ValueError("needs a 4 x 4 block")
        a1, b1, c1 = AI.a(1, 2), AI.a(1, 3), AI.a(1, 4)
        a2, b2 = AI.a(2, 3), AI.a(2, 4)
        a3 = AI.a(3, 4)
        return cls(
            a1, a2, a3, b1, b2, c1,
            delta=a1 * a3 + a2 * c1 - b1 * b2,
            delta1=a2 + a3 - b2,
            delta2=a3 + b1 - c1,
            delta3=a1 + b2 - c1,
            delta4=a1 + a2 - b1,
        )

    @property
    def deltas(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.delta1, self.delta2, self.delta3, self.delta4


def dim4_closed_form(AI: SkewMatrix) -> tuple[SupportSolution, SupportSolution]:
    """Idempotents with support {1,2,3,4} of a nonzero 4 x 4 block with a_12 != 0."""
    inv = Dim4Invariants.of(AI)
    a1, b1, c1 = inv.a1, inv.b1, inv.c1
    D, d3, d4 = inv.delta, inv.delta3, inv.delta4
    if a1 == 0:
        raise TheoremInapplicable("entry a_12 must be nonzero (renumber first)")
    I = (1, 2, 3, 4)
    if D != 0:
        if all(inv.deltas):
            coords = tuple((-1) ** l * dl / (2 * D) for l, dl in enumerate(inv.deltas, start=1))
            return SupportSolution(I, 0, "point", point=Element(coords)), _empty(I, 1)
        return _empty(I, 0), _empty(I, 1)

    def weight1(l3, l4):
        l2 = -(b1 * l3 + c1 * l4) / a1
        return (1 - l2 - l3 - l4, l2, l3, l4)

    if d4 != 0:
        p, basis = _affine_family(lambda l4: weight1((a1 - d3 * l4) / d4, l4), 1)
    elif d3 != 0:
        p, basis = _affine_family(lambda l3: weight1(l3, a1 / d3), 1)
    else:

        def weight0(l3, l4):
            l2 = (HALF - b1 * l3 - c1 * l4) / a1
            return (-l2 - l3 - l4, l2, l3, l4)

        p, basis = _affine_family(weight0, 2)
        return _finish(I, 0, p, basis, _coordinate_exclusions(I, p, basis)), _empty(I, 1)
    return _empty(I, 0), _finish(I, 1, p, basis, _coordinate_exclusions(I, p, basis))


def _bernstein_block(k: int) -> tuple[SupportSolution, SupportSolution]:
    """Zero block: every weight-1 element is idempotent, no weight-0 ones."""
    I = tuple(range(1, k + 1))
    p, basis = _affine_family(lambda *t: (1 - sum(t, ZERO),) + tuple(t), k - 1)
    return _empty(I, 0), _finish(I, 1, p, basis, _coordinate_exclusions(I, p, basis))


def _block_closed_form(AI: SkewMatrix) -> tuple[SupportSolution, SupportSolution]:
    k = AI.n
    I = tuple(range(1, k + 1))
    if k == 1:
        return _empty(I, 0), SupportSolution(I, 1, "point", point=Element((ONE,)))
    if AI.is_zero():
        return _bernstein_block(k)
    if k == 2:
        a = AI.a(1, 2)
        return SupportSolution(I, 0, "point", point=Element((-1 / (2 * a), 1 / (2 * a)))), _empty(I, 1)
    if k not in (3, 4):
        raise TheoremInapplicable("closed forms cover supports of size at most 4")
    solver = dim3_closed_form if k == 3 else dim4_closed_form
    for tau in itertools.permutations(range(1, k + 1)):
        B = apply_permutation(AI, tau)
        if B.a(1, 2) != 0:
            break
    # B is the matrix in the basis e'_i = e_tau(i): x_tau(i) = x'_i
    return tuple(_pull_back(s, tau) for s in solver(B))


def _pull_back(sol: SupportSolution, tau: Sequence[int]) -> SupportSolution:
    def move(v):
        x = [ZERO] * len(v)
        for i, t in enumerate(tau):
            x[t - 1] = v[i]
        return tuple(x)

    if sol.status == "point":
        return SupportSolution(sol.support, sol.weight_class, "point", point=Element(move(sol.point.coords)))
    if sol.status == "family":
        f = sol.family
        return SupportSolution(
            sol.support,
            sol.weight_class,
            "family",
            family=Family(move(f.particular), tuple(move(b) for b in f.basis), f.exclusions),
        )
    return sol


def closed_form_for_support(alg: LVAlgebra, support: Sequence[int]) -> tuple[SupportSolution, SupportSolution]:
    """Closed-form (weight 0, weight 1) answer for a support of size <= 4.

    Blocks whose a_12 vanishes are renumbered through the S_k action before
    the dimension 3 / 4 formulas are applied, then pulled back.
    """
    n = alg.n
    I = _check_support(n, support)
    AI = minor(alg.matrix, Support(I))
    local = _block_closed_form(AI)
    return tuple(_lift_solution(s, I, n) for s in local)


def _lift_solution(sol: SupportSolution, I: tuple[int, ...], n: int) -> SupportSolution:
    if sol.status == "point":
        return SupportSolution(I, sol.weight_class, "point", point=Element(_lift(sol.point.coords, I, n)))
    if sol.status == "family":
        f = sol.family
        return SupportSolution(
            I,
            sol.weight_class,
            "family",
            family=Family(_lift(f.particular, I, n), tuple(_lift(b, I, n) for b in f.basis), f.exclusions),
        )
    return _empty(I, sol.weight_class)


def full_support_coordinates(A: SkewMatrix) -> tuple[int, tuple[Fraction, ...]]:
    """Candidate (weight, coordinates) of the full-support idempotent from Pfaffians.

    Even n needs pf(A) != 0:
        x_j = 1/(2 pf A) sum_{i != j} (-1)^(i+j+theta(j-i)) pf(A_{î,ĵ}).
    Odd n needs d = sum_i (-1)^i pf(A_i) != 0:
        x_j = (-1)^j pf(A_j) / d.
    """
    n = A.n
    if n == 0:
        raise TheoremInapplicable("empty matrix")
    if n % 2 == 0:
        pf = pfaffian(A)
        if pf == 0:
            raise TheoremInapplicable("det(A) = 0 for even n")
        coords = []
        for j in range(1, n + 1):
            s = ZERO
            for i in range(1, n + 1):
                if i != j:
                    s += (-1) ** (i + j + heaviside(j - i)) * pfaffian(minor(A, DeleteBoth(i, j)))
            coords.append(s / (2 * pf))
        return 0, tuple(coords)
    pfs = [pfaffian(minor(A, Principal(j))) for j in range(1, n + 1)]
    d = sum(((-1) ** i * p for i, p in enumerate(pfs, start=1)), ZERO)
    if d == 0:
        raise TheoremInapplicable("sum_i (-1)^i pf(A_i) = 0 for odd n")
    return 1, tuple((-1) ** j * p / d for j, p in enumerate(pfs, start=1))


def theorem1_full_support(alg: LVAlgebra) -> tuple[SupportSolution, SupportSolution]:
    """(weight 0, weight 1) full-support idempotents from the Pfaffian formulas.

    Raises :class:`TheoremInapplicable` when the hypotheses fail.
    """
    n = alg.n
    I = tuple(range(1, n + 1))
    w, coords = full_support_coordinates(alg.matrix)
    if all(x != 0 for x in coords):
        found = SupportSolution(I, w, "point", point=Element(coords))
    else:
        found = _empty(I, w)
    other = _empty(I, 1 - w)
    return (found, other) if w == 0 else (other, found)


# -- enumeration --------------------------------------------------------------


def all_supports(n: int, max_size: int | None = None) -> Iterator[tuple[int, ...]]:
    top = n if max_size is None else min(n, max_size)
    for k in range(1, top + 1):
        yield from itertools.combinations(range(1, n + 1), k)


@dataclass(frozen=True)
class Enumeration:
    n: int
    entries: tuple[tuple[SupportSolution, SupportSolution], ...]

    def solutions(self) -> Iterator[SupportSolution]:
        for pair in self.entries:
            yield from pair

    def points(self) -> list[Element]:
        return [s.point for s in self.solutions() if s.status == "point"]

    @property
    def has_family(self) -> bool:
        return any(s.status == "family" for s in self.solutions())

    @property
    def finite(self) -> bool:
        return not self.has_family

    @property
    def nonzero_point_count(self) -> int:
        return len(self.points())

    @property
    def total_with_zero(self) -> int:
        return self.nonzero_point_count + 1

    def summary(self) -> dict:
        return {
            "n": self.n,
            "nonzero_point_idempotents": self.nonzero_point_count,
            "point_idempotents_including_zero": self.total_with_zero,
            "has_family": self.has_family,
            "finite": self.finite,
        }

    def to_json(self) -> dict:
        return {
            "supports": [
                {"support": list(w0.support), "weight0": w0.to_json(), "weight1": w1.to_json()}
                for w0, w1 in self.entries
            ],
            "summary": self.summary(),
        }


def enumerate_all(alg: LVAlgebra, max_n: int = ENUMERATE_MAX_N) -> Enumeration:
    """Solve every nonempty support, in size-then-lexicographic order."""
    if alg.n > max_n:
        raise ValueError(f"dimension {alg.n} exceeds the enumeration bound {max_n}")
    return Enumeration(alg.n, tuple(idempotents_with_support(alg, I) for I in all_supports(alg.n)))


# -- invariant checks ---------------------------------------------------------


def check_solution(alg: LVAlgebra, sol: SupportSolution, rng: random.Random | None = None, samples: int = 10) -> None:
    """Raise AssertionError unless every produced idempotent is genuine.

    Points are checked literally; families on ``samples`` random members.
    """
    if sol.status == "empty":
        return
    if sol.status == "point":
        members = [sol.point]
    else:
        members = sol.family.sample(rng or random.Random(0), samples)
    for e in members:
        if not is_idempotent(alg, e):
            raise AssertionError(f"{e} is not idempotent")
        if e.support != sol.support:
            raise AssertionError(f"{e} has support {e.support}, expected {sol.support}")
        if e.weight != sol.weight_class:
            raise AssertionError(f"{e} has weight {e.weight}, expected {sol.weight_class}")


# -- Question 1 ---------------------------------------------------------------


@dataclass
class Question1Report:
    max_support_size: int
    supports_checked: int = 0
    counterexamples: list[tuple[tuple[int, ...], SupportSolution, SupportSolution]] = field(default_factory=list)

    @property
    def confirmed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "max_support_size": self.max_support_size,
            "supports_checked": self.supports_checked,
            "counterexamples": [
                {"support": list(I), "weight0": w0.to_json(), "weight1": w1.to_json()}
                for I, w0, w1 in self.counterexamples
            ],
        }


def question1_check(alg: LVAlgebra, max_support_size: int = 4) -> Question1Report:
    """Look for supports carrying idempotents of both weights.

    A weight-1 idempotent with support I together with a weight-0 one on the
    same I would answer the question negatively.
    """
    report = Question1Report(max_support_size)
    for I in all_supports(alg.n, max_support_size):
        w0, w1 = idempotents_with_support(alg, I)
        report.supports_checked += 1
        if not w0.is_empty and not w1.is_empty:
            report.counterexamples.append((I, w0, w1))
    return report
