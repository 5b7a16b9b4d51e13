"""Automorphisms of Lotka-Volterra algebras.

A linear map is stored by its matrix whose k-th column is the image of e_k.
Finite automorphism groups are found by brute force over the idempotents
(every automorphism permutes them, and in the finite case they span).  The
dimension-3 classifier normalises the matrix through the S_3 action and
reads the group off the known families.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import Element, LVAlgebra, basis_product, is_weight_unique, multiply
from .idempotents import enumerate_all
from .linalg import HALF, ONE, ZERO, RatMatrix, determinant, format_rational, rational
from .skew import Permutation, SkewMatrix, apply_permutation, skew3_params

BRUTE_FORCE_MAX_IDEMPOTENTS = 16


class NotApplicable(ValueError):
    """The requested procedure does not apply to this algebra."""


@dataclass(frozen=True)
class LinearMap:
    matrix: RatMatrix
    name: str = field(default="", compare=False)

    @classmethod
    def from_images(cls, images: Sequence, name: str = "") -> "LinearMap":
        cols = [im.coords if isinstance(im, Element) else tuple(rational(x) for x in im) for im in images]
        return cls(RatMatrix.from_columns(cols), name)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(RatMatrix.identity(n), "Id")

    @property
    def n(self) -> int:
        return self.matrix.ncols

    def __call__(self, x: Element) -> Element:
        return Element(self.matrix @ x.coords)

    def image(self, i: int) -> Element:
        return Element(self.matrix.column(i - 1))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """Composition: (self @ other)(x) = self(other(x))."""
        name = f"{self.name}{other.name}" if self.name and other.name else ""
        return LinearMap(self.matrix @ other.matrix, name)

    def inverse(self) -> "LinearMap":
        return LinearMap(self.matrix.inverse())

    def conjugate(self, P: RatMatrix) -> "LinearMap":
        """P F P^{-1}."""
        return LinearMap(P @ self.matrix @ P.inverse(), self.name)

    def key(self) -> tuple[Fraction, ...]:
        return tuple(x for r in self.matrix.entries for x in r)

    def column_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(c, ZERO) for c in self.matrix.columns())

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"LinearMap({label}{self.matrix.to_strings()})"


def is_automorphism(alg: LVAlgebra, f: LinearMap) -> bool:
    """Invertible and f(e_i) f(e_j) = f(e_i e_j) for all i <= j."""
    if f.n != alg.n or determinant(f.matrix) == 0:
        return False
    images = [f.image(i) for i in range(1, alg.n + 1)]
    for i in range(1, alg.n + 1):
        for j in range(i, alg.n + 1):
            if multiply(alg, images[i - 1], images[j - 1]) != f(basis_product(alg, i, j)):
                return False
    return True


def check_H_preservation(alg: LVAlgebra, f: LinearMap) -> bool:
    """Whether omega o f = omega, i.e. every column of f sums to 1."""
    if not is_automorphism(alg, f):
        raise ValueError("check_H_preservation needs an automorphism")
    return all(s == 1 for s in f.column_sums())


# -- elementary automorphisms -------------------------------------------------


def constant_value(A: SkewMatrix) -> Fraction | None:
    """a if a_ij = a for every i < j, else None."""
    vals = {v for _, _, v in A.upper()}
    if len(vals) > 1:
        return None
    return vals.pop() if vals else ZERO


def elementary_sigma(alg: LVAlgebra, k: int) -> LinearMap:
    """sigma_k: e_k -> e_{k-1} - e_k + e_{k+1}, other basis vectors fixed."""
    n = alg.n
    if not 2 <= k <= n - 1:
        raise ValueError(f"k must lie in 2..{n - 1}")
    if constant_value(alg.matrix) is None:
        raise ValueError("sigma_k is defined for constant matrices only")
    images = [alg.e(i) for i in range(1, n + 1)]
    images[k - 1] = alg.e(k - 1) - alg.e(k) + alg.e(k + 1)
    f = LinearMap.from_images(images, f"s{k}")
    assert is_automorphism(alg, f)
    return f


def close_group(gens: Sequence[LinearMap], cap: int = 10_000) -> list[LinearMap]:
    """All products of ``gens`` (assumed invertible of finite order)."""
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].n
    seen = {LinearMap.identity(n).key(): LinearMap.identity(n)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = g @ h
                if p.key() not in seen:
                    seen[p.key()] = p
                    nxt.append(p)
                    if len(seen) > cap:
                        raise NotApplicable(f"group exceeds {cap} elements")
        frontier = nxt
    return sorted(seen.values(), key=LinearMap.key)


def elementary_group(alg: LVAlgebra) -> list[LinearMap]:
    """Ele(A): the group generated by sigma_2..sigma_{n-1}."""
    if alg.n < 3:
        return [LinearMap.identity(alg.n)]
    return close_group([elementary_sigma(alg, k) for k in range(2, alg.n)])


# -- descriptions -------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    arity: int
    description: str = ""


@dataclass(frozen=True)
class AutDescription:
    kind: str  # "trivial" | "finite" | "family"
    maps: tuple[LinearMap, ...] = ()
    table: tuple[tuple[int, ...], ...] = ()
    iso_tag: str | None = None
    families: tuple[FamilySpec, ...] = ()
    idempotent_count: int | None = None

    @property
    def order(self) -> int | None:
        return None if self.kind == "family" else max(len(self.maps), 1)

    def generators(self) -> list[LinearMap]:
        """A small generating set, chosen greedily in sorted order."""
        gens: list[LinearMap] = []
        if len(self.maps) <= 1:
            return gens
        span = {LinearMap.identity(self.maps[0].n).key()}
        for m in self.maps:
            if m.key() not in span:
                gens.append(m)
                span = {g.key() for g in close_group(gens)}
        return gens

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "order": "infinite" if self.order is None else self.order,
            "iso_tag": self.iso_tag,
            "generators": [g.matrix.to_strings() for g in self.generators()],
            "families": [{"tag": f.tag, "arity": f.arity} for f in self.families],
        }
        if self.maps:
            out["elements"] = [m.matrix.to_strings() for m in self.maps]
        return out


def group_table(maps: Sequence[LinearMap]) -> tuple[tuple[int, ...], ...]:
    """Composition table; raises if the list is not a group."""
    index = {m.key(): k for k, m in enumerate(maps)}
    n = maps[0].n
    if LinearMap.identity(n).key() not in index:
        raise AssertionError("identity missing")
    table = []
    for f in maps:
        row = []
        for g in maps:
            k = index.get((f @ g).key())
            if k is None:
                raise AssertionError("not closed under composition")
            row.append(k)
        table.append(tuple(row))
    ident = index[LinearMap.identity(n).key()]
    for k, row in enumerate(table):
        if ident not in row:
            raise AssertionError(f"element {k} has no inverse")
    return tuple(table)


def recognize_group(table: Sequence[Sequence[int]]) -> str | None:
    """Name a small group from its table by order, abelianness and element orders."""
    m = len(table)
    if m == 1:
        return "C1"
    ident = next(k for k in range(m) if all(table[k][j] == j for j in range(m)))

    def order_of(k):
        x, r = k, 1
        while x != ident:
            x = table[x][k]
            r += 1
        return r

    orders = [order_of(k) for k in range(m)]
    abelian = all(table[a][b] == table[b][a] for a in range(m) for b in range(m))
    if m in orders:
        return f"C{m}"
    if abelian:
        if m == 4:
            return "C2xC2"
        if m == 8:
            return "C4xC2" if 4 in orders else "C2^3"
        return None
    if m == 6:
        return "S3"
    if m == 8:
        return "D4" if orders.count(2) == 5 else "Q8"
    return None


def _finite_description(maps: Sequence[LinearMap], idempotent_count: int | None = None) -> AutDescription:
    maps = tuple(sorted(maps, key=LinearMap.key))
    table = group_table(maps)
    kind = "trivial" if len(maps) == 1 else "finite"
    return AutDescription(kind, maps, table, recognize_group(table), idempotent_count=idempotent_count)


# -- brute force --------------------------------------------------------------


def automorphism_bound(n: int) -> int:
    """binomial(2^n - 1, n): informational bound for generic algebras."""
    return math.comb(2**n - 1, n)


def _spanning_subset(ids: Sequence[Element], n: int) -> list[Element]:
    ordered = [e for e in ids if e.weight == 1] + [e for e in ids if e.weight != 1]
    chosen: list[Element] = []
    for e in ordered:
        trial = chosen + [e]
        if RatMatrix.from_rows([x.coords for x in trial], ncols=n).rank() == len(trial):
            chosen = trial
            if len(chosen) == n:
                break
    return chosen


def brute_force_automorphisms(alg: LVAlgebra, max_idempotents: int = BRUTE_FORCE_MAX_IDEMPOTENTS) -> AutDescription:
    """Every automorphism, found by mapping a basis of idempotents into Id(A).

    A basis B of idempotents is chosen (weight 1 first).  Each injective
    assignment B -> Id(A) determines a unique linear map; it is kept iff it
    is an automorphism.  Products b_k b_l expanded in B are checked as soon
    as every image they involve is assigned, which prunes most branches.
    When omega is the only weight, images must keep their weight.
    """
    n = alg.n
    enum = enumerate_all(alg)
    if not enum.finite:
        raise NotApplicable("Id(A) is infinite; use classify_dim3 or the family verifiers")
    ids = enum.points()
    if len(ids) > max_idempotents:
        raise NotApplicable(f"{len(ids)} idempotents exceed the cap {max_idempotents}")
    B = _spanning_subset(ids, n)
    if len(B) < n:
        raise NotApplicable("idempotents do not span the algebra")
    Bmat = RatMatrix.from_columns([b.coords for b in B])
    Binv = Bmat.inverse()
    keep_weight = is_weight_unique(alg).unique is True

    checks: dict[int, list[tuple[int, int, tuple[Fraction, ...]]]] = {}
    for k in range(n):
        for l in range(k, n):
            c = Binv @ multiply(alg, B[k], B[l]).coords
            ready = max([k, l] + [j for j in range(n) if c[j] != 0])
            checks.setdefault(ready, []).append((k, l, c))

    found: list[LinearMap] = []
    images: list[Element] = []

    def consistent(pos: int) -> bool:
        for k, l, c in checks.get(pos, ()):
            lhs = multiply(alg, images[k], images[l])
            rhs = [ZERO] * n
            for j, cj in enumerate(c):
                if cj:
                    rhs = [r + cj * x for r, x in zip(rhs, images[j].coords)]
            if lhs.coords != tuple(rhs):
                return False
        return True

    def extend(pos: int) -> None:
        if pos == n:
            F = LinearMap(RatMatrix.from_columns([u.coords for u in images]) @ Binv)
            if is_automorphism(alg, F):
                found.append(F)
            return
        for u in ids:
            if u in images or (keep_weight and u.weight != B[pos].weight):
                continue
            images.append(u)
            if consistent(pos):
                extend(pos + 1)
            images.pop()

    extend(0)
    return _finite_description(found, idempotent_count=len(ids))


# -- named maps in dimension 3 ------------------------------------------------


def _e3(i: int) -> Element:
    return Element.basis(3, i)


def u_vec(a) -> Element:
    """u_a = a e_2 + (1 - a) e_3."""
    a = rational(a)
    return Element((ZERO, a, 1 - a))


def rho_literal_map() -> LinearMap:
    """e_k -> -e_k + 2 e_3 for every k.

    Not an automorphism of A(r,0,0) once r != 0: the product e_1 e_2 is not
    respected.  Kept so the discrepancy stays testable; see :func:`rho_map`.
    """
    return LinearMap.from_images([-_e3(k) + 2 * _e3(3) for k in (1, 2, 3)], "rho_literal")


def rho_map() -> LinearMap:
    """The involution of A(r,0,0): e_1 -> -e_2 + 2 e_3, e_2 -> -e_1 + 2 e_3, e_3 fixed.

    This is the literal rho followed by the swap e_1 <-> e_2, which is what
    the images v_{-1} = -e_1 + 2 e_3, u_{-1} = -e_2 + 2 e_3 force once
    sigma(e_1) sigma(e_2) = (1/2 + r) sigma(e_1) + (1/2 - r) sigma(e_2) is imposed.
    """
    return LinearMap.from_images([-_e3(2) + 2 * _e3(3), -_e3(1) + 2 * _e3(3), _e3(3)], "rho")


def varrho_map() -> LinearMap:
    """e_1 -> e_2 -> e_3 -> e_1."""
    return LinearMap.from_images([_e3(2), _e3(3), _e3(1)], "varrho")


def eta_map() -> LinearMap:
    return LinearMap.from_images([_e3(1), _e3(1) - _e3(3), _e3(1) - _e3(2)], "eta")


def gamma_map() -> LinearMap:
    return LinearMap.from_images([_e3(1), _e3(1) - _e3(3), _e3(2) - _e3(3)], "gamma")


def sigma2_map() -> LinearMap:
    return LinearMap.from_images([_e3(1), _e3(1) - _e3(2) + _e3(3), _e3(3)], "s2")


def g_map(a, b) -> LinearMap:
    """g_{a,b}: e_1 -> e_1, e_2 -> u_a, e_3 -> u_b."""
    a, b = rational(a), rational(b)
    if a == b:
        raise ValueError("g_{a,b} needs a != b")
    return LinearMap.from_images([_e3(1), u_vec(a), u_vec(b)], f"g[{a},{b}]")


def f_map(eps: int, a, b) -> LinearMap:
    """f^(eps)_{a,b}: e_1 -> e_1, e_k -> eps (-e_1 + g_{a,b}(e_k)).

    An automorphism of A(-1/2,-1/2,0) for eps = -1.  For eps = +1 it is not
    an automorphism of A(1/2,1/2,0) (it sends e_1 e_2 = e_1 to 0).
    """
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    g = g_map(a, b)
    return LinearMap.from_images([_e3(1)] + [eps * (-_e3(1) + g.image(k)) for k in (2, 3)], f"f{eps:+d}[{a},{b}]")


# -- family verifiers ---------------------------------------------------------


def block_condition(A: SkewMatrix, I: Sequence[int]) -> bool:
    """a_ij = 0 and a_ik = a_jk for all i, j in I and k outside I."""
    I = list(I)
    outside = [k for k in range(1, A.n + 1) if k not in I]
    return all(A.a(i, j) == 0 for i in I for j in I) and all(
        A.a(i, k) == A.a(I[0], k) for i in I for k in outside
    )


def block_supports(alg: LVAlgebra) -> list[tuple[int, ...]]:
    """Every I with |I| >= 2 satisfying :func:`block_condition`."""
    n = alg.n
    return [
        I
        for k in range(2, n + 1)
        for I in itertools.combinations(range(1, n + 1), k)
        if block_condition(alg.matrix, I)
    ]


def block_map(alg: LVAlgebra, I: Sequence[int], block: Sequence[Sequence]) -> LinearMap:
    """Member of Aut(A|I): e_k fixed off I, e_{I[m]} -> sum_r block[m][r] e_{I[r]}.

    ``block[m]`` lists the image coordinates of the m-th basis vector of I.
    """
    I = list(I)
    if len(block) != len(I) or any(len(col) != len(I) for col in block):
        raise ValueError("block must be |I| x |I|")
    images = [alg.e(k) for k in range(1, alg.n + 1)]
    for m, i in enumerate(I):
        v = [ZERO] * alg.n
        for r, j in enumerate(I):
            v[j - 1] = rational(block[m][r])
        images[i - 1] = Element(tuple(v))
    return LinearMap.from_images(images, "block")


def family_verifier(alg: LVAlgebra, tag: str, params: Sequence) -> LinearMap:
    """Construct a member of a parametric automorphism family and verify it.

    Tags: ``"g"`` with (a, b) on A(r,r,0); ``"f"`` with (eps, a, b) on
    A(eps/2, eps/2, 0); ``"block"`` with (I, block) on a matrix satisfying the
    block condition, the block's columns summing to 1 and independent;
    ``"sigma_H"`` with a full n x n column list summing to 1 on the zero matrix.
    """
    A = alg.matrix
    if tag in ("g", "f"):
        if A.n != 3:
            raise ValueError(f"family {tag} lives in dimension 3")
        a12, a13, a23 = skew3_params(A)
        if tag == "g":
            if not (a12 == a13 and a23 == 0):
                raise ValueError("g_{a,b} needs the form A(r,r,0)")
            f = g_map(*params)
        else:
            eps, a, b = params
            if not (a12 == a13 == Fraction(eps, 2) and a23 == 0):
                raise ValueError(f"f^({eps}) needs A({eps}/2,{eps}/2,0)")
            f = f_map(eps, a, b)
    elif tag in ("block", "sigma_H"):
        if tag == "sigma_H":
            if not A.is_zero():
                raise ValueError("sigma_H family needs the zero matrix")
            I, block = list(range(1, A.n + 1)), params[0] if len(params) == 1 else params
        else:
            I, block = params
        I = sorted(I)
        if len(I) < 2 or not block_condition(A, I):
            raise ValueError(f"block condition fails for I={I}")
        if any(sum((rational(x) for x in col), ZERO) != 1 for col in block):
            raise ValueError("block columns must lie in H (sum to 1)")
        if determinant(RatMatrix.from_columns([[rational(x) for x in c] for c in block])) == 0:
            raise ValueError("block columns must be linearly independent")
        f = block_map(alg, I, block)
    else:
        raise ValueError(f"unknown family tag {tag!r}")
    if not is_automorphism(alg, f):
        raise AssertionError(f"family member {f!r} failed the automorphism check")
    return f


def family_params(tag: str, f: LinearMap):
    """Recover the parameters of ``f`` inside family ``tag``, or None."""
    M = f.matrix
    if tag == "sigma_H":
        return (f.matrix.columns(),) if determinant(M) != 0 and all(s == 1 for s in f.column_sums()) else None
    if f.n != 3 or f.image(1) != _e3(1):
        return None
    if tag == "g":
        a, b = M[1, 1], M[1, 2]
        return (a, b) if a != b and f == g_map(a, b) else None
    if tag in ("f+1", "f-1"):
        eps = 1 if tag == "f+1" else -1
        a, b = eps * M[1, 1], eps * M[1, 2]
        return (eps, a, b) if a != b and f == f_map(eps, a, b) else None
    raise ValueError(f"unknown family tag {tag!r}")


# -- dimension 3 classification ----------------------------------------------


def _nonspecial(x: Fraction) -> bool:
    return x not in (0, HALF, -HALF)


Matcher = Callable[[Fraction, Fraction, Fraction], "dict | None"]


def _m_zero(a, b, c):
    return {} if a == b == c == 0 else None


def _m_r00(a, b, c):
    return {"r": a} if a != 0 and b == 0 and c == 0 else None


def _m_rr0(a, b, c):
    return {"r": a} if a == b and c == 0 and _nonspecial(a) else None


def _m_half_half_0(a, b, c):
    return {"eps": 1 if a > 0 else -1} if a == b and abs(a) == HALF and c == 0 else None


def _m_s3(a, b, c):
    return {} if a == b == c == -HALF else None


def _m_mhalf_c(a, b, c):
    return {"c": c} if a == b == -HALF and _nonspecial(c) else None


def _m_rrr(a, b, c):
    return {"r": a} if a == b == c and _nonspecial(a) else None


def _m_rmr(a, b, c):
    return {"r": a} if a != 0 and b == -a and c == a else None


# Most specific first; within a family the S_3 orbit is scanned in
# itertools.permutations order, so the witnessing tau is deterministic.
DIM3_FAMILIES: tuple[tuple[str, str, Matcher], ...] = (
    ("i", "A(0,0,0)", _m_zero),
    ("ii", "A(r,0,0)", _m_r00),
    ("iii", "A(r,r,0)", _m_rr0),
    ("iv", "A(eps/2,eps/2,0)", _m_half_half_0),
    ("viii", "A(-1/2,-1/2,-1/2)", _m_s3),
    ("vii", "A(-1/2,-1/2,c)", _m_mhalf_c),
    ("v", "A(r,r,r)", _m_rrr),
    ("vi", "A(r,-r,r)", _m_rmr),
)


@dataclass(frozen=True)
class Dim3Classification:
    case: str | None
    label: str
    params: dict
    tau: Permutation
    canonical: SkewMatrix
    description: AutDescription

    def permutation_matrix(self) -> RatMatrix:
        """P with P e'_i = e_tau(i), e' the canonical basis."""
        n = 3
        return RatMatrix.from_rows([[ONE if self.tau[i] == r + 1 else ZERO for i in range(n)] for r in range(n)])

    def to_original(self, f: LinearMap) -> LinearMap:
        return f.conjugate(self.permutation_matrix())

    def maps_in_original_basis(self) -> list[LinearMap]:
        return sorted((self.to_original(f) for f in self.description.maps), key=LinearMap.key)

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "family": self.label,
            "params": {k: format_rational(v) if isinstance(v, Fraction) else v for k, v in self.params.items()},
            "tau": list(self.tau),
            "canonical": [format_rational(x) for x in skew3_params(self.canonical)],
            "automorphisms": self.description.to_json(),
        }


def _description_for(case: str | None, params: dict) -> AutDescription:
    if case == "i":
        return AutDescription("family", families=(FamilySpec("sigma_H", 6, "invertible maps with sigma(H) = H"),))
    if case == "iii":
        return AutDescription("family", families=(FamilySpec("g", 2, "g_{a,b}, a != b"),))
    if case == "iv":
        # f^(+1) does not preserve e_1 e_2 = e_1 on A(1/2,1/2,0); only eps = -1 has it
        g = FamilySpec("g", 2, "g_{a,b}, a != b")
        if params["eps"] == 1:
            return AutDescription("family", families=(g,))
        return AutDescription("family", families=(FamilySpec("f-1", 2, "f^(-1)_{a,b}, a != b"), g))
    gens = {
        "ii": [rho_map()],
        "v": [sigma2_map()],
        "vi": [varrho_map()],
        "vii": [eta_map()],
        "viii": [gamma_map(), sigma2_map()],
    }.get(case)
    if gens is None:
        return _finite_description([LinearMap.identity(3)])
    return _finite_description(close_group(gens))


def classify_dim3(alg: LVAlgebra) -> Dim3Classification:
    """Match a 3-dimensional algebra to the classification of non-trivial Aut.

    Returns the family, the permutation tau with A_tau equal to the
    canonical representative, and Aut described in the canonical basis
    (use :meth:`Dim3Classification.maps_in_original_basis` to move back).
    """
    if alg.n != 3:
        raise ValueError("classify_dim3 needs a 3-dimensional algebra")
    A = alg.matrix
    perms = list(itertools.permutations((1, 2, 3)))
    for case, label, match in DIM3_FAMILIES:
        for tau in perms:
            B = apply_permutation(A, tau)
            params = match(*skew3_params(B))
            if params is not None:
                return Dim3Classification(case, label, params, tau, B, _description_for(case, params))
    return Dim3Classification(None, "trivial", {}, (1, 2, 3), A, _description_for(None, {}))
