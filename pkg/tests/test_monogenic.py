import random

import pytest

from conftest import SEED
from invsemi import bicyclic, monogenic as mg
from invsemi.errors import IllFormedError, PreconditionError, UndecidedError
from invsemi.monogenic import MonogenicPresentation as Pres, MunnTriple as T


def test_eval_word_examples():
    assert mg.eval_word("x") == T(0, 1, 1)
    assert mg.eval_word("xX") == T(0, 1, 0)
    assert mg.eval_word("Xxxx") == T(-1, 2, 2)
    with pytest.raises(IllFormedError):
        mg.eval_word("xy")
    with pytest.raises(IllFormedError):
        mg.eval_word("")


def test_multiply_invert_examples():
    assert mg.multiply(T(0, 1, 1), T(0, 1, 1)) == T(0, 2, 2)
    assert mg.multiply(T(0, 1, 1), T(-1, 0, -1)) == T(0, 1, 0)
    assert mg.invert(T(0, 1, 1)) == T(-1, 0, -1)
    assert mg.invert(T(-2, 3, 0)) == T(-2, 3, 0)
    assert mg.invert(T(-1, 2, 2)) == T(-3, 0, -2)


def test_triple_validation():
    with pytest.raises(IllFormedError):
        mg.triple(1, 2, 1)
    with pytest.raises(IllFormedError):
        mg.triple(0, 0, 0)


def test_word_of_round_trip():
    for p in mg.ball(5):
        w = mg.word_of(p)
        assert mg.eval_word(w) == p
        shortest = p.span + min(-p.lo + p.hi - p.t, p.hi + p.t - p.lo)
        assert len(w) == shortest


def test_presentation_validation():
    with pytest.raises(IllFormedError):
        Pres("cyclic", 1, 1)
    with pytest.raises(IllFormedError):
        Pres("finite", 0, 1)


def test_quotient_equal_examples():
    for k in (1, 2, 3):
        assert mg.quotient_equal(Pres("commuting_power", k), "x" * k + "X", "X" + "x" * k)
        assert mg.quotient_equal(Pres("commuting_power", k), "x" * k + "X", "X" + "x" * k,
                                 method="saturation")
    assert mg.quotient_equal(Pres("free"), "xXx", "x")
    assert not mg.quotient_equal(Pres("free"), "xX", "Xx")
    assert mg.quotient_equal(Pres("finite", 2, 3), "xx", "xxxxx")
    assert mg.quotient_equal(Pres("bicyclic_ext", 1), "x", "Xxx")


def test_saturation_undecided_beyond_cap():
    with pytest.raises(UndecidedError):
        mg.quotient_equal(Pres("bicyclic_ext", 1), "x" * 20, "X" + "x" * 21, method="saturation", cap=6)


def test_saturation_uses_invariant():
    assert not mg.quotient_equal(Pres("commuting_power", 1), "x" * 20, "x" * 21, method="saturation")


@pytest.mark.parametrize("variant,k,l", [("finite", 1, 1), ("finite", 2, 2), ("finite", 3, 1),
                                         ("commuting_power", 1, 1), ("commuting_power", 2, 1),
                                         ("bicyclic_ext", 1, 1), ("bicyclic_ext", 2, 1)])
def test_normal_form_matches_saturation(variant, k, l):
    pres = Pres(variant, k, l)
    cap = k + (l if variant == "finite" else 0) + 4
    sat = mg.saturate_ball(pres, cap)
    B = mg.ball(cap)
    nf = {p: mg.normal_form(pres, p) for p in B}
    by_class: dict = {}
    for p in B:
        by_class.setdefault(sat[p], set()).add(nf[p])
    assert all(len(v) == 1 for v in by_class.values())
    by_form: dict = {}
    for p in B:
        by_form.setdefault(nf[p], set()).add(sat[p])
    assert all(len(v) == 1 for v in by_form.values())


def test_relation_holds_in_normal_forms():
    for variant in ("finite", "commuting_power", "bicyclic_ext"):
        for k in (1, 2, 3):
            pres = Pres(variant, k, 2)
            u, v = pres.relation
            assert mg.quotient_equal(pres, u, v)


def test_finite_k1_l1_is_trivial():
    fq = mg.enumerate_finite(1, 1)
    assert len(fq.semigroup) == 1
    assert fq.generator.is_idempotent()


@pytest.mark.parametrize("k,l,size", [(1, 1, 1), (1, 2, 2), (2, 1, 5), (2, 2, 6), (3, 1, 14)])
def test_finite_sizes(k, l, size):
    assert len(mg.enumerate_finite(k, l).semigroup) == size


def test_to_kernel_examples():
    bx = Pres("bicyclic_ext", 1)
    assert mg.to_kernel(bx, mg.eval_word("xX")) == bicyclic.BicyclicElement(1, 1)
    assert mg.to_kernel(bx, mg.eval_word("Xx")) == bicyclic.BicyclicElement(0, 0)
    assert mg.to_kernel(bx, mg.eval_word("x")) == bicyclic.BicyclicElement(1, 0)
    cp = Pres("commuting_power", 1)
    assert mg.to_kernel(cp, mg.eval_word("x")) == 1
    assert mg.to_kernel(cp, mg.eval_word("X")) == -1
    assert mg.to_kernel(cp, mg.eval_word("xxXXX")) == -1
    with pytest.raises(PreconditionError):
        mg.to_kernel(Pres("commuting_power", 3), mg.eval_word("xx"))
    with pytest.raises(PreconditionError):
        mg.to_kernel(Pres("finite", 1, 1), mg.eval_word("x"))


def test_intersect_bicyclic_ext_matches_bicyclic():
    res = mg.intersect_fg(Pres("bicyclic_ext", 1), ["x"], ["xx"])
    direct = bicyclic.intersect([(0, 1)], [(0, 2)], res.bound)
    assert res.kernel["bicyclic_generators"] == [list(p) for p in direct.generators]


def test_intersect_commuting_power_lcm():
    res = mg.intersect_fg(Pres("commuting_power", 1), ["xx"], ["xxx"])
    assert res.kernel == {"subgroup_generator": 6}
    assert res.generators == ("xxxxxx",)


def test_intersect_finite_is_exact():
    res = mg.intersect_fg(Pres("finite", 2, 1), ["xX"], ["Xx"])
    assert res.certified == "exact"
    res = mg.intersect_fg(Pres("finite", 2, 2), ["xx"], ["xxx"])
    assert res.generators == ("xx",)


def test_intersect_free_bounded():
    res = mg.intersect_fg(Pres("free"), ["xx"], ["xxx"])
    assert res.generators == ("xxxxxx",)
    assert res.certified.startswith("bounded")


def test_triple_associativity_and_idempotent_order():
    rng = random.Random(SEED)
    ball = mg.ball(5)
    for _ in range(2000):
        a, b, c = (rng.choice(ball) for _ in range(3))
        assert mg.multiply(mg.multiply(a, b), c) == mg.multiply(a, mg.multiply(b, c))
    idems = [p for p in ball if p.t == 0]
    for e in idems:
        for f in idems:
            contains = e.lo <= f.lo and f.hi <= e.hi
            assert contains == (mg.multiply(e, f) == e)
