"""The bicyclic semigroup B on pairs (a, b) = x^-a x^b.

e_i = (i, i), x = (0, 1) and the identity is (0, 0); the idempotents form
the chain e_0 > e_1 > ..., so the "greatest" idempotent of a set is the one
with the smallest index.

Subsemigroups are infinite, so membership is only ever asserted inside a box
[0, N]^2.  ``bounded_closure`` explores words whose prefixes all stay inside
the larger escape box [0, cap*N]^2 and reports the result on [0, N]^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np
from numba import njit

from .errors import CertificationError, IllFormedError, PreconditionError

DEFAULT_BOUND = 100
DEFAULT_CAP = 3


class BicyclicElement(NamedTuple):
    a: int
    b: int

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        return f"({self.a},{self.b})"


def element(p) -> BicyclicElement:
    a, b = (int(v) for v in p)
    if a < 0 or b < 0:
        raise IllFormedError(f"bicyclic coordinates must be nonnegative: {(a, b)}")
    return BicyclicElement(a, b)


def multiply(p, q) -> BicyclicElement:
    a, b = p
    c, d = q
    m = max(b, c)
    return BicyclicElement(a + m - b, d + m - c)


def invert(p) -> BicyclicElement:
    return BicyclicElement(p[1], p[0])


def is_idempotent(p) -> bool:
    return p[0] == p[1]


def sigma_value(p) -> int:
    """Image in the maximal group image Z (the exponent sum of x)."""
    return p[1] - p[0]


def power(p, r: int) -> BicyclicElement:
    if r < 1:
        raise IllFormedError("power exponent must be positive")
    out = BicyclicElement(*p)
    for _ in range(r - 1):
        out = multiply(out, p)
    return out


def idem(i: int) -> BicyclicElement:
    return BicyclicElement(i, i)


def normalize(p) -> BicyclicElement:
    """Orient a nonidempotent as (a, b) with b > a."""
    p = BicyclicElement(*p)
    return p if p.b >= p.a else invert(p)


# ------------------------------------------------------------ bounded closure


@njit(cache=True)
def _closure_kernel(ga, gb, limit):
    size = limit + 1
    seen = np.zeros((size, size), dtype=np.bool_)
    qa = np.empty(size * size, dtype=np.int64)
    qb = np.empty(size * size, dtype=np.int64)
    tail = 0
    for k in range(ga.shape[0]):
        a, b = ga[k], gb[k]
        if a <= limit and b <= limit and not seen[a, b]:
            seen[a, b] = True
            qa[tail] = a
            qb[tail] = b
            tail += 1
    head = 0
    while head < tail:
        a, b = qa[head], qb[head]
        head += 1
        for k in range(ga.shape[0]):
            c, d = ga[k], gb[k]
            m = b if b > c else c
            na = a + m - b
            nb = d + m - c
            if na <= limit and nb <= limit and not seen[na, nb]:
                seen[na, nb] = True
                qa[tail] = na
                qb[tail] = nb
                tail += 1
    return seen


class BoundedSet:
    """Elements of a subsemigroup of B known inside [0, bound]^2.

    Membership for coordinates beyond ``bound`` is unknown, and asking for it
    raises.
    """

    def __init__(self, mask: np.ndarray, bound: int, cap: int):
        self.mask = mask
        self.bound = bound
        self.cap = cap

    def __contains__(self, p) -> bool:
        a, b = p
        if max(a, b) > self.bound:
            raise CertificationError(f"membership of {tuple(p)} unknown beyond bound {self.bound}",
                                     self.bound, self.cap)
        return bool(self.mask[a, b])

    def __eq__(self, other):
        return (isinstance(other, BoundedSet) and self.bound == other.bound
                and np.array_equal(self.mask, other.mask))

    def __and__(self, other: "BoundedSet") -> "BoundedSet":
        if self.bound != other.bound:
            raise PreconditionError("bounded sets have different bounds")
        return BoundedSet(self.mask & other.mask, self.bound, min(self.cap, other.cap))

    def __len__(self):
        return int(self.mask.sum())

    def elements(self) -> list[BicyclicElement]:
        a, b = np.nonzero(self.mask)
        return sorted(BicyclicElement(int(x), int(y)) for x, y in zip(a, b))

    def idempotent_indices(self) -> list[int]:
        return [int(i) for i in np.nonzero(np.diagonal(self.mask))[0]]


def bounded_closure(gens: Iterable, N: int, cap: int = DEFAULT_CAP) -> BoundedSet:
    """Members of <gens> with coordinates <= N, reached without leaving [0, cap*N]^2."""
    gens = [element(p) for p in gens]
    if not gens:
        raise IllFormedError("closure needs at least one generator")
    if N < max(max(p) for p in gens):
        raise PreconditionError(f"bound {N} is below a generator coordinate")
    letters = sorted({q for p in gens for q in (p, invert(p))})
    ga = np.array([p.a for p in letters], dtype=np.int64)
    gb = np.array([p.b for p in letters], dtype=np.int64)
    seen = _closure_kernel(ga, gb, cap * N)
    return BoundedSet(seen[: N + 1, : N + 1].copy(), N, cap)


# ------------------------------------------------------------ structure summary


@dataclass(frozen=True)
class BicyclicSubsemigroup:
    """Structure of a finitely generated inverse subsemigroup S of B.

    When S has a nonidempotent: e_k is the greatest idempotent whose R-class
    in S is nontrivial, (k, k+m) is in S with m minimal, and the idempotents
    of S at or below e_k are exactly e_{k+i+rm} for i in ``residues`` and
    r >= 0.  ``low_idempotents`` are the indices j < k with e_j in S.
    Without a nonidempotent S is the finite chain ``low_idempotents``.
    """

    gens: tuple[BicyclicElement, ...]
    has_nonidempotent: bool
    k: int | None
    m: int | None
    residues: tuple[int, ...]
    low_idempotents: tuple[int, ...]
    bound_used: int
    cap: int

    def contains_idempotent(self, j: int) -> bool:
        if not self.has_nonidempotent or j < self.k:
            return j in self.low_idempotents
        return (j - self.k) % self.m in self.residues


def structural_summary(gens, N: int = DEFAULT_BOUND, cap: int = DEFAULT_CAP) -> BicyclicSubsemigroup:
    gens = tuple(sorted({element(p) for p in gens}))
    if not gens:
        raise IllFormedError("summary needs at least one generator")
    if all(is_idempotent(p) for p in gens):
        return BicyclicSubsemigroup(gens, False, None, None, (), tuple(p.a for p in gens), N, cap)
    S = bounded_closure(gens, N, cap)
    elems = S.elements()
    nonid = [p for p in elems if p.b > p.a]
    k = min(p.a for p in nonid)
    m = min(p.b - p.a for p in nonid if p.a == k)
    if k + m > N:
        raise CertificationError("bound too small to locate e_k x^m", N, cap)
    idems = S.idempotent_indices()
    low = tuple(j for j in idems if j < k)
    # certified rules: e_{k+sm+i} in S gives e_{k+i}; e_{k+i} gives e_{k+i+rm}
    residues = tuple(sorted({(j - k) % m for j in idems if j >= k}))
    summary = BicyclicSubsemigroup(gens, True, k, m, residues, low, N, cap)
    for j in range(k, N + 1):
        if summary.contains_idempotent(j) and idem(j) not in S:
            raise CertificationError(f"e_{j} is certified in S but not reached; raise the cap", N, cap)
    return summary


def finite_generating_set(gens, N: int = DEFAULT_BOUND, cap: int = DEFAULT_CAP) -> list[BicyclicElement]:
    """Nonidempotent generators plus the idempotents e_j of S with j < k + m.

    Idempotents already generated by the nonidempotent part are dropped.
    """
    s = structural_summary(gens, N, cap)
    if not s.has_nonidempotent:
        raise PreconditionError("subsemigroup is a finite chain of idempotents; it has no nonidempotent part")
    A = sorted({normalize(p) for p in s.gens if not is_idempotent(p)})
    core = bounded_closure(A, N, cap)
    extra = [idem(j) for j in range(s.k + s.m) if s.contains_idempotent(j) and idem(j) not in core]
    out = sorted(set(A) | set(extra))
    if bounded_closure(out, N, cap) != bounded_closure(s.gens, N, cap):
        raise CertificationError("finite generating set differs from input at bound", N, cap)
    return out


def harvest_generators(target: BoundedSet) -> list[BicyclicElement]:
    """Greedy generators whose bounded closure covers ``target``.

    Candidates are scanned by max coordinate, nonidempotents first.
    """
    N, cap = target.bound, target.cap
    order = sorted(target.elements(), key=lambda p: (max(p), p.a == p.b, p.a, p.b))
    gens: list[BicyclicElement] = []
    reached = np.zeros_like(target.mask)
    for p in order:
        if not reached[p.a, p.b]:
            gens.append(p)
            reached = bounded_closure(gens, N, cap).mask
    return gens


# -------------------------------------------------------------- intersection


@dataclass(frozen=True)
class BicyclicIntersection:
    """Generators of U meet V, certified on [0, bound]^2.

    ``case`` is ``"idempotent_only"``, ``"nonidempotent"`` or
    ``"finite_fallback"``.
    """

    generators: tuple[BicyclicElement, ...]
    case: str
    u: BicyclicElement | None
    v: BicyclicElement | None
    witness_idempotent: int | None
    bound: int
    cap: int
    empty: bool


def _pick(gens):
    return min(normalize(p) for p in gens if not is_idempotent(p))


def intersect(U_gens, V_gens, N: int = DEFAULT_BOUND, cap: int = DEFAULT_CAP) -> BicyclicIntersection:
    U_gens = sorted({element(p) for p in U_gens})
    V_gens = sorted({element(p) for p in V_gens})
    if not U_gens or not V_gens:
        raise IllFormedError("both generator sets must be nonempty")
    bu, bv = bounded_closure(U_gens, N, cap), bounded_closure(V_gens, N, cap)
    W = bu & bv
    u = v = None
    witness = None
    if all(is_idempotent(p) for p in U_gens) or all(is_idempotent(p) for p in V_gens):
        # <idempotents> is the generator set itself: e_i e_j = e_max(i,j)
        case = "idempotent_only"
        out = sorted(idem(i) for i in W.idempotent_indices())
    else:
        j, jm = _pick(U_gens)
        k, kn = _pick(V_gens)
        m, n = jm - j, kn - k
        u = power((j, jm), n)  # both now have sigma value m*n
        v = power((k, kn), m)
        lo = max(j, k)
        hits = [i for i in W.idempotent_indices() if i >= lo]
        if hits:
            witness = hits[0]
            w = multiply(idem(witness), u)
            assert w == multiply(idem(witness), v) and not is_idempotent(w)
            case = "nonidempotent"
            if max(w) > N:
                raise CertificationError(f"witness {tuple(w)} lies beyond the bound", N, cap)
            harvested = harvest_generators(W)
            if all(is_idempotent(p) for p in harvested):
                raise CertificationError("no nonidempotent of U & V reached at bound", N, cap)
            out = finite_generating_set(harvested, N, cap)
        else:
            case = "finite_fallback"
            out = sorted(idem(i) for i in W.idempotent_indices() if i < lo)
    if not out:
        if len(W):
            raise CertificationError("nonempty intersection produced no generators", N, cap)
        return BicyclicIntersection((), case, u, v, witness, N, cap, True)
    if bounded_closure(out, N, cap) != W:
        raise CertificationError("intersection generators not certified at bound; raise bound or cap", N, cap)
    return BicyclicIntersection(tuple(out), case, u, v, witness, N, cap, False)


def sigma_subgroup(gens) -> int:
    """Generator of the image of <gens> in Z (0 when the image is trivial)."""
    return math.gcd(*(sigma_value(p) for p in gens))
