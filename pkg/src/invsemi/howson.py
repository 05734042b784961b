"""Per-J-class generating sets and intersections of finitely generated
inverse subsemigroups of a finite inverse semigroup.

Every routine recomputes its claim by brute force before returning, so a
wrong answer surfaces as an AssertionError rather than a silent result.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from . import brandt
from .errors import IllFormedError, PreconditionError, StructuralError
from .finite import (
    FiniteInvSemigroup,
    PartialInjection,
    PrincipalFactor,
    Word,
    closure,
    evaluate,
    greens,
    is_e_unitary,
    maximal_subgroup,
    principal_factor,
    sigma_classes,
)
from .groups import FiniteGroupTable, find_isomorphism, table_from_elements

_ZERO = None  # synthetic zero of a principal factor, in element-level code


def _product(items):
    out = None
    for a in items:
        out = a if out is None else out * a
    return out


def _mul_opt(*items):
    """Product ignoring ``None`` factors (empty prefix or suffix)."""
    return _product([a for a in items if a is not None])


# ------------------------------------------------------------- Hall factorisation


@dataclass(frozen=True)
class HallFactorization:
    target: PartialInjection
    letters: tuple[PartialInjection, ...]
    bars: tuple[PartialInjection, ...]
    idempotents: tuple[PartialInjection, ...]
    conjugates: dict = field(default_factory=dict)  # position -> f_i for inverse letters


def hall_factorize(S: FiniteInvSemigroup, X: Sequence[PartialInjection], word: Word,
                   t: PartialInjection) -> HallFactorization:
    """Rewrite ``t = y_1...y_n`` as ``t = (e_1 y_1)...(e_n y_n)``.

    ``e_i = y_i...y_n t^-1 y_1...y_{i-1}``, with the empty prefix or suffix
    simply omitted.  For an inverse letter ``y_i = x^-1`` the factor is also
    returned as ``(f_i x)^-1`` with ``f_i = x e_i x^-1``.
    """
    X = list(X)
    if not word:
        raise IllFormedError("empty word")
    for idx, sign in word:
        if not 0 <= idx < len(X) or sign not in (1, -1):
            raise IllFormedError(f"bad letter {(idx, sign)}")
    ys = [X[i] if s > 0 else X[i].inverse() for i, s in word]
    if _product(ys) != t:
        raise PreconditionError("word does not evaluate to the target")
    n = len(ys)
    t_inv = t.inverse()
    es, bars, conj = [], [], {}
    for i in range(n):
        e = _mul_opt(_product(ys[i:]), t_inv, _product(ys[:i]) if i else None)
        bar = e * ys[i]
        es.append(e)
        bars.append(bar)
        idx, sign = word[i]
        if sign < 0:
            x = X[idx]
            f = x * e * x.inverse()
            assert (f * x).inverse() == bar
            conj[i] = f
    g = greens(S)
    dt = g.d_class_of(t)
    assert _product(bars) == t, "Hall product does not reconstruct t"
    for e, bar in zip(es, bars):
        assert e.is_idempotent() and g.d_class_of(e) == dt, "e_i not in E_J"
        assert g.d_class_of(bar) == dt, "bar y_i not D-related to t"
    return HallFactorization(t, tuple(ys), tuple(bars), tuple(es), conj)


# ------------------------------------------------------------- principal factors


def pf_closure(members: frozenset, gens, with_zero: bool) -> set:
    """Inverse subsemigroup of PF(J) generated by ``gens`` (elements of J).

    Products leaving J become ``None`` (the synthetic zero).
    """
    letters = []
    for a in sorted(set(gens)):
        letters += [a, a.inverse()]
    seen = set(letters)
    todo = deque(letters)
    while todo:
        a = todo.popleft()
        if a is None:
            continue
        for y in letters:
            b = a * y
            if b not in members:
                if not with_zero:
                    raise StructuralError("product left the kernel group")
                b = _ZERO
            if b not in seen:
                seen.add(b)
                todo.append(b)
    return seen


@dataclass(frozen=True)
class TraceGenerators:
    """Generators ``e x`` of T meet J, with ``provenance[g] = (e, x)``."""

    j_class: tuple[PartialInjection, ...]
    generators: tuple[PartialInjection, ...]
    provenance: dict


def _resolve_class(S, J):
    g = greens(S)
    if isinstance(J, int):
        return J, g.d_classes[J]
    members = tuple(sorted(J))
    return g.d_classes.index(members), members


def trace_generators(S: FiniteInvSemigroup, X: Sequence[PartialInjection], J,
                     T: FiniteInvSemigroup | None = None) -> TraceGenerators:
    """The finite set ``E_J X`` restricted to T and J, which generates T's trace on J."""
    X = sorted(set(X))
    T = closure(X) if T is None else T
    g = greens(S)
    j_idx, members = _resolve_class(S, J)
    mset = frozenset(members)
    tj = [a for a in T.elements if a in mset]
    if not tj:
        raise PreconditionError("T does not meet J")
    ej = [e for e in tj if e.is_idempotent()]
    prov = {}
    for x in X:
        for e in ej:
            a = e * x
            if a in mset and a not in prov:
                prov[a] = (e, x)
    gens = tuple(sorted(prov))
    with_zero = j_idx != g.kernel
    reached = pf_closure(mset, gens, with_zero)
    assert set(tj) <= reached and reached - {_ZERO} <= set(tj), "trace generators do not generate T meet J"
    return TraceGenerators(members, gens, prov)


@dataclass(frozen=True)
class Assembly:
    blocks: dict  # D-class index -> TraceGenerators
    generators: tuple[PartialInjection, ...]


def assemble(S: FiniteInvSemigroup, X: Sequence[PartialInjection]) -> Assembly:
    """Per-class generating sets of T = <X>, whose union regenerates T."""
    T = closure(X)
    g = greens(S)
    tset = T.element_set
    blocks = {}
    for i, members in enumerate(g.d_classes):
        if any(a in tset for a in members):
            blocks[i] = trace_generators(S, X, i, T=T)
    gens = tuple(sorted({a for b in blocks.values() for a in b.generators}))
    assert closure(gens).element_set == tset, "union of class generators does not regenerate T"
    return Assembly(blocks, gens)


# ------------------------------------------------------------- Brandt coordinates


@dataclass(frozen=True)
class BrandtCoordinates:
    """Isomorphism of a principal factor onto B(group, index_size).

    Factor elements are indices into ``factor.table``; the zero index maps
    to ``brandt.ZERO``.
    """

    factor: PrincipalFactor
    group: FiniteGroupTable
    index_size: int
    to_brandt: tuple[brandt.BrandtElement, ...]
    from_brandt: dict
    base: int
    transversal: tuple[int, ...]

    @property
    def semigroup(self) -> brandt.BrandtSemigroup:
        return brandt.BrandtSemigroup(self.group, self.index_size)


def brandt_coordinates(P: PrincipalFactor) -> BrandtCoordinates:
    if not P.has_zero:
        raise StructuralError("principal factor is a group; use the group path")
    z = P.zero
    nz = range(len(P.elements))
    idem = [a for a in nz if P.mul(a, a) == a]
    for e in idem:
        for f in idem:
            if e != f and P.mul(e, f) != z:
                raise StructuralError("idempotent is not primitive", witness=P.elements[e])
    # idempotents are listed in canonical element order, so rows are too
    row_of = {e: r for r, e in enumerate(idem)}
    inv = P.inverse
    row = {a: row_of[P.mul(a, inv[a])] for a in nz}
    col = {a: row_of[P.mul(inv[a], a)] for a in nz}
    n = len(idem)
    for i in range(n):
        for j in range(n):
            if not any(row[a] == i and col[a] == j for a in nz):
                raise StructuralError(f"not 0-simple: H({i},{j}) empty", witness=(i, j))
    base = idem[0]
    h00 = [a for a in nz if row[a] == 0 and col[a] == 0]
    group = table_from_elements(h00, P.mul)
    gpos = {a: k for k, a in enumerate(h00)}
    transversal = [base] + [min(a for a in nz if row[a] == 0 and col[a] == j) for j in range(1, n)]
    to_b = []
    for a in nz:
        i, j = row[a], col[a]
        g = P.mul(P.mul(transversal[i], a), inv[transversal[j]])
        to_b.append(brandt.BrandtElement(i, gpos[g], j))
    to_b.append(brandt.ZERO)
    from_b = {b: a for a, b in enumerate(to_b)}
    if len(from_b) != len(to_b):
        raise StructuralError("coordinate map is not injective")
    B = brandt.BrandtSemigroup(group, n)
    for a in range(P.size):
        for b in range(P.size):
            assert B.multiply(to_b[a], to_b[b]) == to_b[P.mul(a, b)], "coordinates do not transport products"
    return BrandtCoordinates(P, group, n, tuple(to_b), from_b, base, tuple(transversal))


# ---------------------------------------------------------- intersection pipeline


@dataclass(frozen=True)
class IntersectionBlock:
    class_index: int
    is_kernel: bool
    generators: tuple[PartialInjection, ...]


@dataclass(frozen=True)
class HowsonIntersection:
    generators: tuple[PartialInjection, ...]
    blocks: tuple[IntersectionBlock, ...]
    empty: bool


def intersect_fg(S: FiniteInvSemigroup, U_gens, V_gens) -> HowsonIntersection:
    """Generating set of <U_gens> and <V_gens> intersected, assembled per J-class.

    Non-kernel classes are intersected inside the Brandt coordinates of their
    principal factor; the kernel group is intersected directly.
    """
    U_gens, V_gens = sorted(set(U_gens)), sorted(set(V_gens))
    for a in U_gens + V_gens:
        if a not in S:
            raise PreconditionError(f"generator {a!r} is not in S")
    U, V = closure(U_gens), closure(V_gens)
    W = U.element_set & V.element_set
    if not W:
        return HowsonIntersection((), (), True)
    g = greens(S)
    blocks = []
    for ci, members in enumerate(g.d_classes):
        mset = frozenset(members)
        wj = sorted(W & mset)
        if not wj:
            continue
        if ci == g.kernel:
            blocks.append(IntersectionBlock(ci, True, tuple(wj)))
            continue
        P = principal_factor(S, ci)
        coords = brandt_coordinates(P)
        pos = {a: k for k, a in enumerate(P.elements)}
        tu = trace_generators(S, U_gens, ci, T=U).generators
        tv = trace_generators(S, V_gens, ci, T=V).generators
        res = brandt.intersect(
            coords.semigroup,
            [coords.to_brandt[pos[a]] for a in tu],
            [coords.to_brandt[pos[a]] for a in tv],
        )
        back = tuple(sorted(P.elements[coords.from_brandt[b]] for b in res.generators if not b.is_zero))
        reached = pf_closure(mset, back, True)
        assert set(wj) <= reached, "pulled-back Brandt generators miss part of U & V on J"
        blocks.append(IntersectionBlock(ci, False, back))
    gens = tuple(sorted({a for b in blocks for a in b.generators}))
    assert closure(gens).element_set == W, "assembled generators do not regenerate U & V"
    return HowsonIntersection(gens, tuple(blocks), False)


# ---------------------------------------------------------------- E-unitary case


@dataclass(frozen=True)
class EUnitaryReport:
    kernel: tuple[PartialInjection, ...]
    kernel_idempotent: PartialInjection
    isomorphism: dict  # kernel element -> sigma class index
    embeddings: dict  # idempotent e -> {a in H_e: f a}


def e_unitary_report(S: FiniteInvSemigroup) -> EUnitaryReport:
    ok, witness = is_e_unitary(S)
    if not ok:
        raise StructuralError("semigroup is not E-unitary", witness=witness)
    g = greens(S)
    if g.kernel is None:
        raise StructuralError("no least J-class")
    kernel = g.d_classes[g.kernel]
    f = [a for a in kernel if a.is_idempotent()]
    if len(f) != 1:
        raise StructuralError("kernel is not a group")
    f = f[0]
    ktab = maximal_subgroup(S, f).table
    kelems = maximal_subgroup(S, f).elements
    assert set(kelems) == set(kernel)
    sig = sigma_classes(S)
    phi = find_isomorphism(ktab, sig.quotient)
    if phi is None:
        raise AssertionError("kernel is not isomorphic to the maximal group image")
    iso = {kelems[a]: phi[a] for a in range(len(kelems))}
    embeddings = {}
    kset = set(kelems)
    for e in S.idempotents:
        H = maximal_subgroup(S, e).elements
        img = {a: f * a for a in H}
        assert set(img.values()) <= kset, "f*a left the kernel"
        assert len(set(img.values())) == len(H), "a -> f*a is not injective"
        for a in H:
            for b in H:
                assert img[a * b] == img[a] * img[b], "a -> f*a is not a homomorphism"
        embeddings[e] = img
    return EUnitaryReport(tuple(kelems), f, iso, embeddings)
