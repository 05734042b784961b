"""Finite inverse semigroups of partial injections.

Maps act on the right: ``compose(f, g)`` applies ``f`` first.  Elements are
totally ordered by ``(degree, graph)`` with the graph as a sorted pair list;
every tie in this package is broken by that order.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import IllFormedError, PreconditionError, StructuralError
from .groups import FiniteGroupTable, table_from_elements

Letter = tuple[int, int]  # (generator index, +1 or -1)
Word = tuple[Letter, ...]


class PartialInjection:
    """Injective partial map on ``{0, ..., degree-1}``.

    ``images[i]`` is the image of ``i`` or -1 when ``i`` is outside the domain.
    """

    __slots__ = ("degree", "images", "_hash")

    def __init__(self, degree: int, graph: Iterable[Sequence[int]] = ()):
        if degree < 1:
            raise IllFormedError(f"degree must be positive, got {degree}")
        images = [-1] * degree
        used = set()
        for pair in graph:
            i, j = pair
            if not (0 <= i < degree and 0 <= j < degree):
                raise IllFormedError(f"pair {(i, j)} out of range for degree {degree}")
            if images[i] != -1 or j in used:
                raise IllFormedError(f"graph is not injective at {(i, j)}")
            images[i] = j
            used.add(j)
        self.degree = degree
        self.images = tuple(images)
        self._hash = hash(self.images)

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "PartialInjection":
        obj = cls.__new__(cls)
        obj.degree = len(images)
        obj.images = images
        obj._hash = hash(images)
        return obj

    @classmethod
    def from_images(cls, images: Sequence[int]) -> "PartialInjection":
        n = len(images)
        return cls(n, [(i, j) for i, j in enumerate(images) if j is not None and j >= 0])

    @classmethod
    def identity(cls, degree: int, domain: Iterable[int] | None = None) -> "PartialInjection":
        pts = range(degree) if domain is None else domain
        return cls(degree, [(i, i) for i in pts])

    @classmethod
    def empty(cls, degree: int) -> "PartialInjection":
        return cls(degree)

    @property
    def graph(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j in enumerate(self.images) if j >= 0)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(i for i, j in enumerate(self.images) if j >= 0)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(j for j in self.images if j >= 0)

    @property
    def rank(self) -> int:
        return sum(1 for j in self.images if j >= 0)

    @property
    def key(self):
        return (self.degree, self.graph)

    def is_idempotent(self) -> bool:
        return all(j == -1 or j == i for i, j in enumerate(self.images))

    def inverse(self) -> "PartialInjection":
        inv = [-1] * self.degree
        for i, j in enumerate(self.images):
            if j >= 0:
                inv[j] = i
        return PartialInjection._raw(tuple(inv))

    def __mul__(self, other: "PartialInjection") -> "PartialInjection":
        if self.degree != other.degree:
            raise IllFormedError(f"degree mismatch: {self.degree} vs {other.degree}")
        g = other.images
        return PartialInjection._raw(tuple(-1 if j < 0 else g[j] for j in self.images))

    def __eq__(self, other):
        return isinstance(other, PartialInjection) and self.images == other.images

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "PartialInjection"):
        return self.key < other.key

    def __le__(self, other: "PartialInjection"):
        return self.key <= other.key

    def __repr__(self):
        return f"PartialInjection({self.degree}, {list(self.graph)})"


def compose(f: PartialInjection, g: PartialInjection) -> PartialInjection:
    return f * g


def invert(f: PartialInjection) -> PartialInjection:
    return f.inverse()


def natural_order(a: PartialInjection, b: PartialInjection) -> bool:
    """``a <= b`` in the natural partial order, i.e. ``a = aa^-1 b``."""
    if a.degree != b.degree:
        raise IllFormedError(f"degree mismatch: {a.degree} vs {b.degree}")
    return all(j == -1 or j == k for j, k in zip(a.images, b.images))


def evaluate(gens: Sequence[PartialInjection], word: Word) -> PartialInjection:
    if not word:
        raise IllFormedError("empty word")
    out = None
    for idx, sign in word:
        y = gens[idx] if sign > 0 else gens[idx].inverse()
        out = y if out is None else out * y
    return out


class FiniteInvSemigroup:
    """Inverse subsemigroup generated by ``generators``, fully enumerated.

    ``generators`` are deduplicated and sorted canonically; words refer to
    them by position.  ``elements`` is sorted canonically.
    """

    def __init__(self, generators, elements, words):
        self.generators: tuple[PartialInjection, ...] = tuple(generators)
        self.degree = self.generators[0].degree
        self.elements: tuple[PartialInjection, ...] = tuple(sorted(elements))
        self.generator_words: dict[PartialInjection, Word] = dict(words)
        self._elemset = frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a):
        return a in self._elemset

    @property
    def element_set(self) -> frozenset[PartialInjection]:
        return self._elemset

    @cached_property
    def letters(self) -> tuple[PartialInjection, ...]:
        """Generators and their inverses, interleaved: x0, x0^-1, x1, ..."""
        out = []
        for g in self.generators:
            out += [g, g.inverse()]
        return tuple(out)

    @cached_property
    def idempotents(self) -> tuple[PartialInjection, ...]:
        return tuple(a for a in self.elements if a.is_idempotent())

    def __repr__(self):
        return f"<FiniteInvSemigroup degree={self.degree} size={len(self)}>"


def closure(gens: Iterable[PartialInjection]) -> FiniteInvSemigroup:
    """Inverse subsemigroup generated by ``gens``.

    Breadth-first over words in the letters x0 < x0^-1 < x1 < ...; each
    element keeps the first (shortlex least) word that reaches it.
    """
    gens = sorted(set(gens))
    if not gens:
        raise IllFormedError("closure needs at least one generator")
    degrees = {g.degree for g in gens}
    if len(degrees) != 1:
        raise IllFormedError(f"generators have mixed degrees {sorted(degrees)}")
    letters = []
    for i, g in enumerate(gens):
        letters += [((i, 1), g), ((i, -1), g.inverse())]
    words: dict[PartialInjection, Word] = {}
    frontier = []
    for letter, y in letters:
        if y not in words:
            words[y] = (letter,)
            frontier.append(y)
    while frontier:
        nxt = []
        for a in frontier:
            w = words[a]
            for letter, y in letters:
                b = a * y
                if b not in words:
                    words[b] = w + (letter,)
                    nxt.append(b)
        frontier = nxt
    return FiniteInvSemigroup(gens, words.keys(), words)


def symmetric_inverse_monoid(n: int) -> FiniteInvSemigroup:
    """I_n from two permutation generators of S_n plus a rank n-1 idempotent."""
    gens = [PartialInjection(n, [(i, (i + 1) % n) for i in range(n)])]
    if n > 1:
        gens.append(PartialInjection(n, [(0, 1), (1, 0)] + [(i, i) for i in range(2, n)]))
    gens.append(PartialInjection.identity(n, range(n - 1)))
    return closure(gens)


# ---------------------------------------------------------------- Green's data


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            if y < x:
                x, y = y, x
            self.parent[y] = x

    def groups(self):
        out = defaultdict(list)
        for x in self.parent:
            out[self.find(x)].append(x)
        return [tuple(sorted(v)) for v in out.values()]


def _partition(elements, key):
    groups = defaultdict(list)
    for a in elements:
        groups[key(a)].append(a)
    return sorted((tuple(sorted(v)) for v in groups.values()), key=lambda c: c[0].key)


def _index(classes):
    return {a: i for i, c in enumerate(classes) for a in c}


@dataclass(frozen=True)
class GreensData:
    """Green's relations of a finite inverse semigroup.

    ``d_classes`` are listed top-down (a linear extension of the J-order);
    ``j_order`` holds ``(i, j)`` whenever ``D_i <= D_j``.  ``kernel`` is the
    index of the least class when one exists.
    """

    r_classes: tuple[tuple[PartialInjection, ...], ...]
    l_classes: tuple[tuple[PartialInjection, ...], ...]
    h_classes: tuple[tuple[PartialInjection, ...], ...]
    d_classes: tuple[tuple[PartialInjection, ...], ...]
    j_order: frozenset[tuple[int, int]]
    idempotents: tuple[PartialInjection, ...]
    kernel: int | None

    @cached_property
    def r_index(self):
        return _index(self.r_classes)

    @cached_property
    def l_index(self):
        return _index(self.l_classes)

    @cached_property
    def h_index(self):
        return _index(self.h_classes)

    @cached_property
    def d_index(self):
        return _index(self.d_classes)

    def d_class_of(self, a) -> int:
        return self.d_index[a]

    def leq(self, i: int, j: int) -> bool:
        return (i, j) in self.j_order

    def d_idempotents(self, i: int) -> tuple[PartialInjection, ...]:
        return tuple(a for a in self.d_classes[i] if a.is_idempotent())


def _j_classes(S: FiniteInvSemigroup):
    """J-classes as strongly connected components of the two-sided Cayley graph.

    b is reachable from a iff b lies in S^1 a S^1, so SCCs are J-classes and
    reachability between them is principal-ideal inclusion.
    """
    elems = S.elements
    idx = {a: i for i, a in enumerate(elems)}
    adj = [sorted({idx[a * y] for y in S.letters} | {idx[y * a] for y in S.letters}) for a in elems]
    # iterative Tarjan
    n = len(elems)
    index = [-1] * n
    low = [0] * n
    on = [False] * n
    stack, comps = [], []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on[v] = True
            recurse = False
            for k in range(pi, len(adj[v])):
                w = adj[v][k]
                if index[w] == -1:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    comp_of = [0] * n
    for c, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = c
    # Tarjan emits components in reverse topological order: successors first.
    below = [set() for _ in comps]
    for c, comp in enumerate(comps):
        reach = {c}
        for v in comp:
            for w in adj[v]:
                d = comp_of[w]
                if d != c:
                    reach |= below[d]
        below[c] = reach
    classes = [frozenset(elems[v] for v in comp) for comp in comps]
    return classes, below


def greens(S: FiniteInvSemigroup) -> GreensData:
    """Green's relations; J is computed from ideals and checked against D."""
    cache = S.__dict__.setdefault("_greens", None)
    if cache is not None:
        return cache
    elems = S.elements
    r_classes = _partition(elems, lambda a: a * a.inverse())
    l_classes = _partition(elems, lambda a: a.inverse() * a)
    h_classes = _partition(elems, lambda a: (a * a.inverse(), a.inverse() * a))
    uf = _UnionFind(elems)
    for cls in r_classes + l_classes:
        for a in cls[1:]:
            uf.union(cls[0], a)
    d_sets = {frozenset(c) for c in uf.groups()}

    j_sets, below = _j_classes(S)
    if d_sets != set(j_sets):
        raise StructuralError("D and J differ; input is not a finite inverse semigroup")

    sizes = [len(b) for b in below]
    ideal_size = [sum(len(j_sets[c]) for c in b) for b in below]
    order = sorted(range(len(j_sets)), key=lambda c: (-ideal_size[c], min(j_sets[c]).key))
    pos = {c: i for i, c in enumerate(order)}
    d_classes = tuple(tuple(sorted(j_sets[c])) for c in order)
    j_order = frozenset((pos[d], pos[c]) for c in range(len(j_sets)) for d in below[c])
    minimal = [pos[c] for c in range(len(j_sets)) if sizes[c] == 1]
    kernel = minimal[0] if len(minimal) == 1 else None
    data = GreensData(
        r_classes=tuple(r_classes),
        l_classes=tuple(l_classes),
        h_classes=tuple(h_classes),
        d_classes=d_classes,
        j_order=j_order,
        idempotents=S.idempotents,
        kernel=kernel,
    )
    S.__dict__["_greens"] = data
    return data


# ------------------------------------------------------------------- sigma


@dataclass(frozen=True)
class SigmaData:
    """Least group congruence with witnesses and the quotient group.

    ``witness[(s, t)]`` is the least idempotent ``e`` with ``es = et``.
    ``quotient`` is indexed like ``classes``.
    """

    classes: tuple[tuple[PartialInjection, ...], ...]
    class_of: dict
    witness: dict
    quotient: FiniteGroupTable


def sigma_classes(S: FiniteInvSemigroup) -> SigmaData:
    cached = S.__dict__.get("_sigma")
    if cached is not None:
        return cached
    elems = S.elements
    uf = _UnionFind(elems)
    witness = {}
    for e in S.idempotents:
        groups = defaultdict(list)
        for s in elems:
            groups[e * s].append(s)
        for grp in groups.values():
            for s in grp:
                for t in grp:
                    if s != t and (s, t) not in witness:
                        witness[(s, t)] = e
            for s in grp[1:]:
                uf.union(grp[0], s)
    classes = tuple(sorted(uf.groups(), key=lambda c: c[0].key))
    class_of = _index(classes)
    for (s, t) in list(witness):
        assert class_of[s] == class_of[t]
    reps = [c[0] for c in classes]
    for s in elems:
        for t in elems:
            if class_of[s * t] != class_of[reps[class_of[s]] * reps[class_of[t]]]:
                raise StructuralError("sigma is not a congruence", witness=(s, t))
    quotient = FiniteGroupTable(
        tuple(tuple(class_of[a * b] for b in reps) for a in reps)
    )
    data = SigmaData(classes, class_of, witness, quotient)
    S.__dict__["_sigma"] = data
    return data


def is_e_unitary(S: FiniteInvSemigroup):
    """Return ``(True, None)`` or ``(False, (e, s))`` with ``es`` idempotent, ``s`` not."""
    result = (True, None)
    for e in S.idempotents:
        for s in S.elements:
            if not s.is_idempotent() and (e * s).is_idempotent():
                result = (False, (e, s))
                break
        if not result[0]:
            break
    sig = sigma_classes(S)
    e_class = sig.classes[sig.class_of[S.idempotents[0]]]
    assert result[0] == (set(e_class) == set(S.idempotents)), "E-unitary cross-check failed"
    return result


# --------------------------------------------------- principal factors, groups


@dataclass(frozen=True)
class PrincipalFactor:
    """A J-class with the synthetic zero at index ``len(elements)``.

    ``has_zero`` is False exactly when the class is the kernel (a group).
    """

    elements: tuple[PartialInjection, ...]
    has_zero: bool
    table: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]

    @property
    def zero(self) -> int | None:
        return len(self.elements) if self.has_zero else None

    @property
    def size(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, a: PartialInjection) -> int:
        return self.elements.index(a)


def principal_factor(S: FiniteInvSemigroup, j_class) -> PrincipalFactor:
    """Principal factor of a J-class, given as a D-class index or element set."""
    g = greens(S)
    if isinstance(j_class, int):
        members = g.d_classes[j_class]
    else:
        members = tuple(sorted(j_class))
        if members not in g.d_classes:
            raise PreconditionError("not a J-class of S")
    is_kernel = g.kernel is not None and g.d_classes[g.kernel] == members
    pos = {a: i for i, a in enumerate(members)}
    zero = len(members)
    rows = []
    for a in members:
        row = []
        for b in members:
            c = pos.get(a * b)
            if c is None:
                if is_kernel:
                    raise StructuralError("kernel is not closed under multiplication")
                c = zero
            row.append(c)
        if not is_kernel:
            row.append(zero)
        rows.append(tuple(row))
    inverse = [pos[a.inverse()] for a in members]
    if not is_kernel:
        rows.append((zero,) * (zero + 1))
        inverse.append(zero)
    pf = PrincipalFactor(members, not is_kernel, tuple(rows), tuple(inverse))
    if is_kernel:
        FiniteGroupTable(pf.table)  # kernel of a finite inverse semigroup is a group
    return pf


@dataclass(frozen=True)
class MaximalSubgroup:
    idempotent: PartialInjection
    elements: tuple[PartialInjection, ...]
    table: FiniteGroupTable


def maximal_subgroup(S: FiniteInvSemigroup, e: PartialInjection) -> MaximalSubgroup:
    if e not in S or not e.is_idempotent():
        raise IllFormedError(f"{e!r} is not an idempotent of S")
    elems = tuple(a for a in S.elements if a * a.inverse() == e and a.inverse() * a == e)
    return MaximalSubgroup(e, elems, table_from_elements(elems, compose))
