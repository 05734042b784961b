import pytest

from conftest import all_partial_injections, pi
from invsemi.errors import IllFormedError, PreconditionError, StructuralError
from invsemi.finite import (PartialInjection, closure, compose, evaluate, greens, invert,
                            is_e_unitary, maximal_subgroup, natural_order, principal_factor,
                            sigma_classes, symmetric_inverse_monoid)


# ------------------------------------------------------------ partial maps


def test_compose_examples():
    ident = PartialInjection.identity(3)
    assert compose(ident, ident) == ident
    assert compose(pi(2, (0, 1)), pi(2, (1, 0))) == pi(2, (0, 0))
    assert compose(pi(3, (0, 1), (1, 2)), pi(3, (2, 0))) == pi(3, (1, 0))


def test_compose_degree_mismatch():
    with pytest.raises(IllFormedError):
        compose(pi(2, (0, 1)), pi(3, (0, 1)))


def test_invert_examples():
    assert invert(PartialInjection.identity(3)) == PartialInjection.identity(3)
    assert invert(pi(2, (0, 1))) == pi(2, (1, 0))
    assert invert(PartialInjection.empty(2)) == PartialInjection.empty(2)


def test_non_injective_graph_rejected():
    with pytest.raises(IllFormedError):
        pi(2, (0, 1), (1, 1))
    with pytest.raises(IllFormedError):
        pi(2, (0, 2))


def test_natural_order_examples():
    a = pi(2, (0, 1))
    assert natural_order(a, a)
    assert natural_order(PartialInjection.empty(2), a)
    assert natural_order(pi(2, (0, 0)), PartialInjection.identity(2))
    assert not natural_order(PartialInjection.identity(2), pi(2, (0, 0)))


def test_evaluate_word():
    x = pi(3, (0, 1))
    assert evaluate([x], [(0, 1), (0, -1)]) == pi(3, (0, 0))


# ----------------------------------------------------------------- closure


def test_closure_identity_is_trivial():
    S = closure([PartialInjection.identity(2)])
    assert len(S) == 1


def test_symmetric_inverse_monoid_3(i3_gens):
    S = closure(i3_gens)
    assert len(S) == 34
    assert set(S.elements) == set(all_partial_injections(3))
    assert len(symmetric_inverse_monoid(3)) == 34


def test_closure_words_are_witnesses(i3_gens):
    S = closure(i3_gens)
    for a in S.elements:
        assert evaluate(S.generators, S.generator_words[a]) == a


def test_closure_is_deterministic(i3_gens):
    a, b = closure(i3_gens), closure(list(reversed(i3_gens)))
    assert a.elements == b.elements and a.generator_words == b.generator_words


# ------------------------------------------------------------------ Green's


def test_greens_semilattice_singletons(chain3):
    G = greens(chain3)
    for cs in (G.r_classes, G.l_classes, G.h_classes, G.d_classes):
        assert all(len(c) == 1 for c in cs)
    assert len(G.d_classes) == 3


def test_greens_group_single_class(s3):
    G = greens(s3)
    assert len(G.h_classes) == len(G.d_classes) == len(G.r_classes) == len(G.l_classes) == 1
    assert G.kernel == 0


def test_greens_brandt_trivial_2(brandt_trivial_2):
    B, rep, X = brandt_trivial_2
    S = closure(X)
    assert len(S) == 5
    G = greens(S)
    sizes = sorted(len(c) for c in G.d_classes)
    assert sizes == [1, 4]
    top = G.d_classes[0]
    assert len(top) == 4
    zero = rep[B.elements()[0]]
    assert G.d_classes[G.kernel] == (zero,)
    diag_groups = [h for h in G.h_classes if any(a.is_idempotent() for a in h) and h[0] != zero]
    assert len(diag_groups) == 2
    assert G.leq(G.kernel, 0) and not G.leq(0, G.kernel)


def test_d_equals_j_on_i3(i3_gens):
    S = closure(i3_gens)
    G = greens(S)
    elems = S.elements
    ideal = {a: frozenset(s * a * t for s in elems for t in elems) | {a} for a in elems}
    for c in G.d_classes:
        assert len({ideal[a] for a in c}) == 1
    assert len({ideal[c[0]] for c in G.d_classes}) == len(G.d_classes)
    assert [len(c) for c in G.d_classes] == [6, 18, 9, 1]


# -------------------------------------------------------------------- sigma


def test_sigma_group_and_semilattice(s3, chain3):
    sg = sigma_classes(s3)
    assert all(len(c) == 1 for c in sg.classes) and sg.quotient.order == 6
    sl = sigma_classes(chain3)
    assert len(sl.classes) == 1 and sl.quotient.order == 1


def test_sigma_witnesses_hold(i3_gens):
    S = closure(i3_gens)
    sig = sigma_classes(S)
    for (s, t), e in sig.witness.items():
        assert e * s == e * t


def test_e_unitary_positive(chain3, s3):
    assert is_e_unitary(chain3) == (True, None)
    assert is_e_unitary(s3) == (True, None)


def test_e_unitary_brandt_with_zero():
    from conftest import brandt_model
    B, rep = brandt_model(2, 1)
    S = closure([rep[a] for a in B.elements()])
    ok, (e, s) = is_e_unitary(S)
    assert not ok
    assert e == rep[B.elements()[0]]  # the zero
    assert not s.is_idempotent() and (e * s).is_idempotent()


# --------------------------------------------------------- principal factors


def test_principal_factor_group(s3):
    P = principal_factor(s3, 0)
    assert not P.has_zero and P.size == 6


def test_principal_factor_brandt_top(brandt_trivial_2):
    B, rep, X = brandt_trivial_2
    S = closure(X)
    P = principal_factor(S, 0)
    assert P.has_zero and P.size == 5
    back = {v: k for k, v in rep.items()}
    for a in range(4):
        for b in range(4):
            expect = B.multiply(back[P.elements[a]], back[P.elements[b]])
            got = P.mul(a, b)
            if expect.is_zero:
                assert got == P.zero
            else:
                assert back[P.elements[got]] == expect


def test_maximal_subgroups(s3, chain3, brandt_c2_2):
    assert len(maximal_subgroup(s3, PartialInjection.identity(3)).elements) == 6
    for e in chain3.idempotents:
        assert maximal_subgroup(chain3, e).elements == (e,)
    B, rep, X = brandt_c2_2
    S = closure(X)
    e = rep[B.idempotent(0)]
    assert len(maximal_subgroup(S, e).elements) == 2
    nonidempotent = next(rep[a] for a in B.elements() if not B.is_idempotent(a))
    with pytest.raises(PreconditionError):
        maximal_subgroup(S, nonidempotent)
