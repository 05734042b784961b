"""Monogenic inverse semigroups as quotients of the free monogenic one, FI_1.

Elements of FI_1 are Munn triples (lo, hi, t): the interval swept by the walk
that steps +1 on ``x`` and -1 on ``X`` (= x^-1), and where it ends.

Presentations handled:

* ``free``              FI_1 itself
* ``finite``            x^k = x^(k+l)
* ``commuting_power``   x^k x^-1 = x^-1 x^k
* ``bicyclic_ext``      x^k = x^-1 x^(k+1)

For the three relators the Schutzenberger graph of a triple of span >= k
becomes an l-cycle, the whole line, or a ray unbounded below respectively,
while triples of span < k keep their path graph.  That gives the normal
forms below.  ``saturate_ball`` rebuilds the congruence by brute force on a
ball of triples and serves as an independent check of them.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

import numpy as np

from . import bicyclic, howson
from .errors import CertificationError, IllFormedError, PreconditionError, UndecidedError
from .finite import FiniteInvSemigroup, PartialInjection, closure

VARIANTS = ("free", "finite", "commuting_power", "bicyclic_ext")
DEFAULT_BOUND = 30
FREE_BOUND = 6


class MunnTriple(NamedTuple):
    lo: int
    hi: int
    t: int

    @property
    def span(self) -> int:
        return self.hi - self.lo

    def is_idempotent(self) -> bool:
        return self.t == 0

    def __mul__(self, other):
        return multiply(self, other)

    def __repr__(self):
        return f"({self.lo},{self.hi},{self.t})"


def triple(lo, hi, t) -> MunnTriple:
    if not (lo <= 0 <= hi and lo <= t <= hi and hi - lo >= 1):
        raise IllFormedError(f"invalid Munn triple {(lo, hi, t)}")
    return MunnTriple(lo, hi, t)


def eval_word(word: str) -> MunnTriple:
    if not word:
        raise IllFormedError("empty word")
    pos = lo = hi = 0
    for c in word:
        if c == "x":
            pos += 1
        elif c == "X":
            pos -= 1
        else:
            raise IllFormedError(f"word letter {c!r} is not x or X")
        lo, hi = min(lo, pos), max(hi, pos)
    return MunnTriple(lo, hi, pos)


def multiply(p, q) -> MunnTriple:
    return MunnTriple(min(p[0], p[2] + q[0]), max(p[1], p[2] + q[1]), p[2] + q[2])


def invert(p) -> MunnTriple:
    lo, hi, t = p
    return MunnTriple(lo - t, hi - t, -t)


def word_of(p) -> str:
    """Shortest walk covering [lo, hi] and ending at t; downward-first on ties."""
    lo, hi, t = p
    down = "X" * -lo + "x" * (hi - lo) + "X" * (hi - t)
    up = "x" * hi + "X" * (hi - lo) + "x" * (t - lo)
    return up if len(up) < len(down) else down


# --------------------------------------------------------------- presentations


@dataclass(frozen=True)
class MonogenicPresentation:
    variant: str
    k: int = 1
    l: int = 1

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise IllFormedError(f"unknown variant {self.variant!r}")
        if self.k < 1 or self.l < 1:
            raise IllFormedError("presentation parameters must be positive")

    @property
    def relation(self) -> tuple[str, str] | None:
        k, l = self.k, self.l
        return {
            "free": None,
            "finite": ("x" * k, "x" * (k + l)),
            "commuting_power": ("x" * k + "X", "X" + "x" * k),
            "bicyclic_ext": ("x" * k, "X" + "x" * (k + 1)),
        }[self.variant]

    @property
    def default_cap(self) -> int:
        return self.k + (self.l if self.variant == "finite" else 0) + 8

    def invariant(self, p) -> int:
        """Exponent sum, a homomorphism to Z (to Z/l for ``finite``)."""
        return p[2] % self.l if self.variant == "finite" else p[2]


# Quotient elements are tagged tuples:
#   ("F", lo, hi, t)  triple outside the ideal (or any triple for ``free``)
#   ("C", r)          residue r mod l in the kernel cycle of ``finite``
#   ("Z", t)          element t of the kernel group Z of ``commuting_power``
#   ("B", a, b)       element (a, b) of the kernel B of ``bicyclic_ext``


def normal_form(pres: MonogenicPresentation, p) -> tuple:
    lo, hi, t = p
    if pres.variant == "free" or hi - lo < pres.k:
        return ("F", lo, hi, t)
    if pres.variant == "finite":
        return ("C", t % pres.l)
    if pres.variant == "commuting_power":
        return ("Z", t)
    return ("B", hi, hi - t)


def representative(pres: MonogenicPresentation, f) -> MunnTriple:
    tag = f[0]
    k = pres.k
    if tag == "F":
        return MunnTriple(*f[1:])
    if tag == "C":
        t = f[1] + (k - f[1] + pres.l - 1) // pres.l * pres.l if f[1] < k else f[1]
        return MunnTriple(0, t, t)
    if tag == "Z":
        t = f[1]
        lo, hi = min(0, t), max(0, t)
        return MunnTriple(lo, max(hi, lo + k), t)
    a, b = f[1], f[2]
    t = a - b
    return MunnTriple(min(0, t, a - k), a, t)


def in_ideal(f) -> bool:
    return f[0] != "F"


class Quotient:
    """Arithmetic on normal forms of one presentation."""

    def __init__(self, pres: MonogenicPresentation):
        self.pres = pres

    def nf(self, p):
        return normal_form(self.pres, p)

    def word(self, w: str):
        return self.nf(eval_word(w))

    def mul(self, f, g):
        return self.nf(multiply(representative(self.pres, f), representative(self.pres, g)))

    def inv(self, f):
        return self.nf(invert(representative(self.pres, f)))

    def to_word(self, f) -> str:
        return word_of(representative(self.pres, f))

    def size(self, f) -> int:
        """Coordinate size used for bounded exploration."""
        tag = f[0]
        if tag == "F":
            return (f[2] - f[1]) if self.pres.variant == "free" else 0
        if tag == "C":
            return 0
        if tag == "Z":
            return abs(f[1])
        return max(f[1], f[2])


def quotient_equal(pres: MonogenicPresentation, u: str, v: str, *, method: str = "normal_form",
                   cap: int | None = None) -> bool:
    """Equality of two words in the quotient.

    ``method="saturation"`` decides from a capped congruence closure and the
    exponent-sum invariant alone, raising UndecidedError when neither settles
    the question.
    """
    p, q = eval_word(u), eval_word(v)
    if method == "normal_form":
        return normal_form(pres, p) == normal_form(pres, q)
    if method != "saturation":
        raise IllFormedError(f"unknown method {method!r}")
    cap = pres.default_cap if cap is None else cap
    if pres.variant == "free":
        return p == q
    if pres.invariant(p) != pres.invariant(q):
        return False
    if max(p.span, q.span) > cap:
        raise UndecidedError(f"word outside the saturation ball (cap {cap}); raise cap", cap=cap)
    classes = saturate_ball(pres, cap)
    if classes[p] == classes[q]:
        return True
    raise UndecidedError(f"not joined within cap {cap}; raise cap", cap=cap)


def ball(cap: int) -> list[MunnTriple]:
    out = []
    for span in range(1, cap + 1):
        for lo in range(-span, 1):
            hi = lo + span
            out += [MunnTriple(lo, hi, t) for t in range(lo, hi + 1)]
    return out


@lru_cache(maxsize=32)
def saturate_ball(pres: MonogenicPresentation, cap: int) -> dict:
    """Congruence generated by the relator, restricted to spans <= cap.

    Returns triple -> least triple of its class.  Only relator instances
    p r q whose both sides lie in the ball are used.
    """
    B = ball(cap)
    parent = {p: p for p in B}
    if pres.relation is not None:
        r1, r2 = (eval_word(w) for w in pres.relation)

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ends = [None] + B
        for p in ends:
            a0 = r1 if p is None else multiply(p, r1)
            b0 = r2 if p is None else multiply(p, r2)
            if a0.span > cap or b0.span > cap:
                continue
            for q in ends:
                a = a0 if q is None else multiply(a0, q)
                b = b0 if q is None else multiply(b0, q)
                if a.span <= cap and b.span <= cap:
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        for p in B:
            parent[p] = find(p)
    return parent


def to_kernel(pres: MonogenicPresentation, p):
    """Image of an ideal element in the kernel: an int (Z) or a BicyclicElement.

    For ``bicyclic_ext`` the relator makes x^-1 x act as the identity, so
    the kernel element is x^-hi' x^b' read in B after swapping x and x^-1:
    (hi, hi - t).
    """
    if pres.variant not in ("commuting_power", "bicyclic_ext"):
        raise PreconditionError("kernel map exists only for commuting_power and bicyclic_ext")
    p = MunnTriple(*p)
    if p.span < pres.k:
        raise PreconditionError(f"{p!r} has span < {pres.k}: not in the ideal")
    f = normal_form(pres, p)
    if f[0] == "Z":
        return f[1]
    return bicyclic.BicyclicElement(f[1], f[2])


# ----------------------------------------------------------- finite quotients


@dataclass(frozen=True)
class FiniteQuotient:
    presentation: MonogenicPresentation
    forms: tuple
    semigroup: FiniteInvSemigroup
    to_element: dict
    from_element: dict
    generator: PartialInjection


@lru_cache(maxsize=16)
def enumerate_finite(k: int, l: int) -> FiniteQuotient:
    """FI_1 / (x^k = x^(k+l)) as partial injections on itself (Wagner-Preston)."""
    pres = MonogenicPresentation("finite", k, l)
    Q = Quotient(pres)
    forms = sorted({normal_form(pres, p) for p in ball(k)} | {("C", r) for r in range(l)})
    # the saturation oracle must see the same classes
    sat = saturate_ball(pres, k + l + 2)
    by_form: dict = {}
    for p, rep in sat.items():
        by_form.setdefault(normal_form(pres, p), set()).add(rep)
    if any(len(reps) != 1 for reps in by_form.values()) or set(by_form) != set(forms):
        raise AssertionError("normal forms disagree with saturation")
    pos = {f: i for i, f in enumerate(forms)}
    n = len(forms)
    elems = {}
    for a in forms:
        e = Q.mul(a, Q.inv(a))
        graph = [(pos[s], pos[Q.mul(s, a)]) for s in forms if Q.mul(s, e) == s]
        elems[a] = PartialInjection(n, graph)
    x = elems[Q.word("x")]
    S = closure([x])
    if len(S) != n or set(S.elements) != set(elems.values()):
        raise AssertionError("Wagner-Preston image is not the quotient")
    xk = elems[Q.word("x" * k)]
    assert xk == elems[Q.word("x" * (k + l))]
    return FiniteQuotient(pres, tuple(forms), S, elems, {v: f for f, v in elems.items()}, x)


# -------------------------------------------------------------- intersections


@dataclass(frozen=True)
class MonogenicIntersection:
    """Generating words for U meet V, certified up to ``bound``.

    ``kernel`` describes the ideal part: a Z-subgroup generator for
    ``commuting_power`` or bicyclic pairs for ``bicyclic_ext``.
    """

    presentation: MonogenicPresentation
    generators: tuple[str, ...]
    finite_part: tuple[str, ...]
    kernel: dict
    bound: int
    cap: int
    certified: str
    empty: bool


class _Bounded:
    """Closure of generators on normal forms, with escape box cap*N."""

    def __init__(self, Q: Quotient, gens, N: int, cap: int):
        self.N = N
        letters = sorted({h for g in gens for h in (g, Q.inv(g))})
        limit = cap * N
        seen = {g for g in letters if Q.size(g) <= limit}
        todo = deque(sorted(seen))
        while todo:
            a = todo.popleft()
            for y in letters:
                b = Q.mul(a, y)
                if b not in seen and Q.size(b) <= limit:
                    seen.add(b)
                    todo.append(b)
        self.elements = frozenset(f for f in seen if Q.size(f) <= N)


def _finite_part(Q: Quotient, gens):
    letters = sorted({h for g in gens for h in (g, Q.inv(g))})
    fin = [y for y in letters if not in_ideal(y)]
    seen = set(fin)
    todo = deque(fin)
    while todo:
        a = todo.popleft()
        for y in fin:
            b = Q.mul(a, y)
            if not in_ideal(b) and b not in seen:
                seen.add(b)
                todo.append(b)
    meets_ideal = any(in_ideal(y) for y in letters) or any(
        in_ideal(Q.mul(a, y)) for a in seen for y in letters)
    return frozenset(seen), meets_ideal


def _harvest(Q: Quotient, target: frozenset, N: int, cap: int) -> list:
    order = sorted(target, key=lambda f: (Q.size(f), Q.mul(f, f) == f, f[-1] < 0, f))
    gens: list = []
    reached: frozenset = frozenset()
    for f in order:
        if f not in reached:
            gens.append(f)
            reached = _Bounded(Q, gens, N, cap).elements
    return gens


def _mask(fs, N, cap):
    m = np.zeros((N + 1, N + 1), dtype=bool)
    for f in fs:
        m[f[1], f[2]] = True
    return bicyclic.BoundedSet(m, N, cap)


def intersect_fg(pres: MonogenicPresentation, U_words: Iterable[str], V_words: Iterable[str],
                 N: int | None = None, cap: int = bicyclic.DEFAULT_CAP) -> MonogenicIntersection:
    U_words, V_words = sorted(set(U_words)), sorted(set(V_words))
    if not U_words or not V_words:
        raise IllFormedError("both generator lists must be nonempty")
    Q = Quotient(pres)
    U = [Q.word(w) for w in U_words]
    V = [Q.word(w) for w in V_words]
    if N is None:
        N = FREE_BOUND if pres.variant == "free" else DEFAULT_BOUND
    if N < max(Q.size(f) for f in U + V):
        raise PreconditionError(f"bound {N} is below a generator size")

    if pres.variant == "finite":
        fq = enumerate_finite(pres.k, pres.l)
        res = howson.intersect_fg(fq.semigroup, [fq.to_element[f] for f in U],
                                  [fq.to_element[f] for f in V])
        forms = sorted(fq.from_element[a] for a in res.generators)
        words = tuple(Q.to_word(f) for f in forms)
        fin = tuple(Q.to_word(f) for f in forms if not in_ideal(f))
        kern = {"residues": sorted(f[1] for f in forms if in_ideal(f))}
        return MonogenicIntersection(pres, words, fin, kern, N, cap, "exact", res.empty)

    if pres.variant == "free":
        W = _Bounded(Q, U, N, cap).elements & _Bounded(Q, V, N, cap).elements
        gens = _harvest(Q, W, N, cap)
        got = _Bounded(Q, gens, N, cap).elements if gens else frozenset()
        if got != W:
            raise CertificationError("free intersection not certified; raise bound", N, cap)
        words = tuple(Q.to_word(f) for f in gens)
        return MonogenicIntersection(pres, words, words, {}, N, cap, f"bounded (span <= {N})", not gens)

    fin_u, ideal_u = _finite_part(Q, U)
    fin_v, ideal_v = _finite_part(Q, V)
    fin = sorted(fin_u & fin_v)
    kernel_gens: list = []
    kern: dict = {}
    if pres.variant == "commuting_power":
        if ideal_u and ideal_v:
            gu = math.gcd(*(_exponent(Q, f) for f in U))
            gv = math.gcd(*(_exponent(Q, f) for f in V))
            L = math.lcm(gu, gv)
            kernel_gens = [("Z", L)]
            kern = {"subgroup_generator": L}
    else:
        bu, bv = _Bounded(Q, U, N, cap), _Bounded(Q, V, N, cap)
        ku = [f for f in bu.elements if in_ideal(f)]
        kv = [f for f in bv.elements if in_ideal(f)]
        if ideal_u and ideal_v and ku and kv:
            hu = bicyclic.harvest_generators(_mask(ku, N, cap))
            hv = bicyclic.harvest_generators(_mask(kv, N, cap))
            for h, part in ((hu, ku), (hv, kv)):
                if bicyclic.bounded_closure(h, N, cap) != _mask(part, N, cap):
                    raise CertificationError("kernel trace not certified at bound; raise bound", N, cap)
            res = bicyclic.intersect(hu, hv, N, cap)
            kernel_gens = [("B", p.a, p.b) for p in res.generators]
            kern = {"bicyclic_generators": [[p.a, p.b] for p in res.generators], "case": res.case}
    gens = sorted(set(fin) | set(kernel_gens))
    W = _Bounded(Q, U, N, cap).elements & _Bounded(Q, V, N, cap).elements
    got = _Bounded(Q, gens, N, cap).elements if gens else frozenset()
    if got != W:
        raise CertificationError("intersection not certified at bound; raise bound", N, cap)
    words = tuple(Q.to_word(f) for f in gens)
    return MonogenicIntersection(pres, words, tuple(Q.to_word(f) for f in fin), kern, N, cap,
                                 f"bounded (kernel coordinates <= {N})", not gens)


def _exponent(Q: Quotient, f) -> int:
    return representative(Q.pres, f).t
