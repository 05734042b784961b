"""Finite groups given by multiplication tables."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations, product

from .errors import IllFormedError, StructuralError


@dataclass(frozen=True)
class FiniteGroupTable:
    """Group on ``range(order)`` with ``mult[a][b] = ab``.

    The identity and inverse tables are derived and every group axiom is
    checked on construction.
    """

    mult: tuple[tuple[int, ...], ...]
    identity: int = field(init=False)
    inverse: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        mult = tuple(tuple(int(v) for v in row) for row in self.mult)
        object.__setattr__(self, "mult", mult)
        n = len(mult)
        if n == 0 or any(len(row) != n for row in mult):
            raise IllFormedError("group table must be a nonempty square")
        if any(not 0 <= v < n for row in mult for v in row):
            raise IllFormedError("group table entry out of range")
        ids = [e for e in range(n) if all(mult[e][a] == a == mult[a][e] for a in range(n))]
        if not ids:
            raise StructuralError("table has no identity")
        e = ids[0]
        inv = []
        for a in range(n):
            cands = [b for b in range(n) if mult[a][b] == e]
            if not cands or mult[cands[0]][a] != e:
                raise StructuralError(f"element {a} has no inverse", witness=a)
            inv.append(cands[0])
        for a, b, c in product(range(n), repeat=3):
            if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
                raise StructuralError("table is not associative", witness=(a, b, c))
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.mult)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mult[x][a]
            k += 1
        return k

    def subgroup(self, gens) -> frozenset[int]:
        """Subgroup generated by ``gens`` (the trivial group if empty)."""
        seen = {self.identity}
        todo = deque(seen)
        gens = list(gens)
        while todo:
            a = todo.popleft()
            for g in gens:
                b = self.mult[a][g]
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return frozenset(seen)

    def generating_set(self) -> list[int]:
        """A small generating set, chosen greedily in index order."""
        gens: list[int] = []
        have = self.subgroup(gens)
        for a in range(self.order):
            if a not in have:
                gens.append(a)
                have = self.subgroup(gens)
        return gens


def cyclic_group(n: int) -> FiniteGroupTable:
    return FiniteGroupTable(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def symmetric_group(n: int) -> FiniteGroupTable:
    """S_n on permutations in lexicographic order; composition acts on the right."""
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    return FiniteGroupTable(
        tuple(tuple(index[tuple(q[p[i]] for i in range(n))] for q in perms) for p in perms)
    )


def table_from_elements(elements, mul) -> FiniteGroupTable:
    """Group table of ``elements`` (a sequence) under ``mul``; index = position."""
    index = {x: i for i, x in enumerate(elements)}
    try:
        rows = tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)
    except KeyError:
        raise StructuralError("elements are not closed under multiplication") from None
    return FiniteGroupTable(rows)


def find_isomorphism(g: FiniteGroupTable, h: FiniteGroupTable) -> list[int] | None:
    """Return ``phi`` with ``phi[a]`` the image of ``a``, or None if g and h differ.

    Backtracks over images of a greedy generating set of ``g`` and extends each
    candidate along the Cayley graph.
    """
    if g.order != h.order:
        return None
    gens = g.generating_set()
    h_orders = [h.element_order(b) for b in range(h.order)]
    choices = [[b for b in range(h.order) if h_orders[b] == g.element_order(a)] for a in gens]
    for images in product(*choices):
        phi = _extend(g, h, gens, images)
        if phi is not None:
            return phi
    return None


def _extend(g, h, gens, images):
    phi = {g.identity: h.identity}
    todo = deque([g.identity])
    while todo:
        a = todo.popleft()
        for s, t in zip(gens, images):
            b, c = g.mult[a][s], h.mult[phi[a]][t]
            if b in phi:
                if phi[b] != c:
                    return None
            else:
                phi[b] = c
                todo.append(b)
    out = [phi[a] for a in range(g.order)]
    if len(set(out)) != g.order:
        return None
    for a in range(g.order):
        for b in range(g.order):
            if out[g.mult[a][b]] != h.mult[out[a]][out[b]]:
                return None
    return out
