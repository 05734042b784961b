"""Brandt semigroups B(G, I) over finite group tables, with I = {0..n-1}."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import IllFormedError, PreconditionError, StructuralError
from .finite import PartialInjection
from .groups import FiniteGroupTable


@dataclass(frozen=True, order=True)
class BrandtElement:
    """``(i, g, j)``, or the zero when all three fields are -1."""

    i: int = -1
    g: int = -1
    j: int = -1

    @property
    def is_zero(self) -> bool:
        return self.i < 0

    def __repr__(self):
        return "ZERO" if self.is_zero else f"({self.i},{self.g},{self.j})"


ZERO = BrandtElement()


@dataclass(frozen=True)
class BrandtSemigroup:
    group: FiniteGroupTable
    index_size: int

    def __post_init__(self):
        if self.index_size < 1:
            raise IllFormedError("index set must be nonempty")

    def __len__(self):
        return self.index_size ** 2 * self.group.order + 1

    def check(self, a: BrandtElement) -> BrandtElement:
        if not a.is_zero:
            n, k = self.index_size, self.group.order
            if not (0 <= a.i < n and 0 <= a.j < n and 0 <= a.g < k):
                raise IllFormedError(f"element {a!r} out of range")
        return a

    def elements(self) -> list[BrandtElement]:
        n, k = self.index_size, self.group.order
        return [ZERO] + [BrandtElement(i, g, j) for i in range(n) for g in range(k) for j in range(n)]

    def multiply(self, a: BrandtElement, b: BrandtElement) -> BrandtElement:
        self.check(a)
        self.check(b)
        if a.is_zero or b.is_zero or a.j != b.i:
            return ZERO
        return BrandtElement(a.i, self.group.mul(a.g, b.g), b.j)

    def invert(self, a: BrandtElement) -> BrandtElement:
        self.check(a)
        if a.is_zero:
            return ZERO
        return BrandtElement(a.j, self.group.inv(a.g), a.i)

    def is_idempotent(self, a: BrandtElement) -> bool:
        return a.is_zero or (a.i == a.j and a.g == self.group.identity)

    def idempotent(self, i: int) -> BrandtElement:
        return BrandtElement(i, self.group.identity, i)

    def closure(self, gens: Iterable[BrandtElement]) -> frozenset[BrandtElement]:
        """Inverse subsemigroup generated by ``gens``."""
        letters = []
        for a in sorted(set(gens)):
            letters += [self.check(a), self.invert(a)]
        seen = set(letters)
        todo = deque(sorted(seen))
        while todo:
            a = todo.popleft()
            for y in letters:
                b = self.multiply(a, y)
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return frozenset(seen)

    def to_partial_injections(self) -> dict[BrandtElement, PartialInjection]:
        """Faithful representation on I x G: (i,g,j) sends (i,h) to (j,hg)."""
        n, k = self.index_size, self.group.order
        out = {ZERO: PartialInjection.empty(n * k)}
        for a in self.elements()[1:]:
            out[a] = PartialInjection(
                n * k, [(a.i * k + h, a.j * k + self.group.mul(h, a.g)) for h in range(k)]
            )
        return out


def fg_generating_set(B: BrandtSemigroup, group_gens: Iterable[int]) -> list[BrandtElement]:
    """Group generators placed at (0, a, 0) plus the transversal (0, e, j), j >= 1."""
    group_gens = sorted(set(group_gens))
    reached = B.group.subgroup(group_gens)
    missing = sorted(set(range(B.group.order)) - reached)
    if missing:
        raise PreconditionError(f"group generators miss element {missing[0]}")
    e = B.group.identity
    out = [BrandtElement(0, a, 0) for a in group_gens]
    out += [BrandtElement(0, e, j) for j in range(1, B.index_size)]
    return out


@dataclass(frozen=True)
class BrandtFactor:
    """One Brandt summand of a primitive inverse subsemigroup.

    ``subgroup`` is the maximal subgroup at ``(base_row, e, base_row)`` as
    group indices; ``transversal[j]`` is the least element of the factor in
    the H-class (base_row, j).
    """

    rows: tuple[int, ...]
    base_row: int
    subgroup: tuple[int, ...]
    transversal: dict
    elements: frozenset[BrandtElement]

    @property
    def is_group(self) -> bool:
        return len(self.rows) == 1

    def generators(self) -> list[BrandtElement]:
        r = self.base_row
        gens = [BrandtElement(r, g, r) for g in self.subgroup]
        gens += [self.transversal[j] for j in self.rows if j != r]
        return gens


def zero_direct_decomposition(elems: Iterable[BrandtElement], B: BrandtSemigroup) -> list[BrandtFactor]:
    """Split the nonzero part of ``elems`` into its 0-direct Brandt summands."""
    elems = {B.check(a) for a in elems}
    full = elems | {ZERO}
    for a in full:
        if B.invert(a) not in full:
            raise PreconditionError(f"not inverse-closed at {a!r}")
        for b in full:
            if B.multiply(a, b) not in full:
                raise PreconditionError(f"not closed: {a!r}*{b!r}")
    nonzero = sorted(a for a in elems if not a.is_zero)
    parent = {a: a for a in nonzero}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in nonzero:
        for b in nonzero:
            if not B.multiply(a, b).is_zero:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    comps: dict = {}
    for a in nonzero:
        comps.setdefault(find(a), []).append(a)
    factors = []
    for members in comps.values():
        mset = frozenset(members)
        rows = tuple(sorted({a.i for a in members} | {a.j for a in members}))
        for i in rows:
            for j in rows:
                if not any(a.i == i and a.j == j for a in members):
                    raise StructuralError(f"factor is not 0-simple: H({i},{j}) empty", witness=(i, j))
        r = rows[0]
        subgroup = tuple(sorted(a.g for a in members if a.i == r and a.j == r))
        transversal = {j: min(a for a in members if a.i == r and a.j == j) for j in rows}
        transversal[r] = B.idempotent(r)
        factors.append(BrandtFactor(rows, r, subgroup, transversal, mset))
    factors.sort(key=lambda f: (f.rows, f.subgroup))
    return factors


@dataclass(frozen=True)
class BrandtIntersection:
    generators: tuple[BrandtElement, ...]
    factors: tuple[BrandtFactor, ...]
    contains_zero: bool
    empty: bool


def intersect(B: BrandtSemigroup, U_gens, V_gens) -> BrandtIntersection:
    """Generating set for <U_gens> and <V_gens> intersected, one block per summand."""
    U = B.closure(U_gens)
    V = B.closure(V_gens)
    W = U & V
    if not W:
        return BrandtIntersection((), (), False, True)
    factors = zero_direct_decomposition(W, B)
    gens = sorted({g for f in factors for g in f.generators()})
    if ZERO in W and (not gens or ZERO not in B.closure(gens)):
        gens.append(ZERO)
        gens.sort()
    assert B.closure(gens) == W, "Brandt intersection generating set does not regenerate U & V"
    return BrandtIntersection(tuple(gens), tuple(factors), ZERO in W, False)
