"""Shared fixtures: small partial-injection models of the structures under test."""
from __future__ import annotations

import itertools
import os
import random

import pytest

from invsemi.brandt import BrandtElement, BrandtSemigroup, fg_generating_set
from invsemi.finite import PartialInjection, closure
from invsemi.groups import cyclic_group

SEED = int(os.environ.get("INVSEMI_TEST_SEED", "20240607"))


def pi(degree, *pairs):
    return PartialInjection(degree, pairs)


def all_partial_injections(n):
    """Every injective partial map on n points, by brute force."""
    out = []
    for images in itertools.product(range(-1, n), repeat=n):
        used = [j for j in images if j >= 0]
        if len(used) == len(set(used)):
            out.append(PartialInjection.from_images(images))
    return out


def random_partial_injection(rng, n, min_rank=0):
    rank = rng.randint(min_rank, n)
    dom = rng.sample(range(n), rank)
    img = rng.sample(range(n), rank)
    return PartialInjection(n, zip(dom, img))


def brandt_model(order, index):
    """B(C_order, index) and its faithful partial-injection representation."""
    B = BrandtSemigroup(cyclic_group(order), index)
    rep = B.to_partial_injections()
    return B, rep


def clifford_chain(n, levels):
    """Chain of ``levels`` copies of C_n with identity structure maps.

    Level i rotates blocks 0..i of Z_n each; the result is E-unitary with
    kernel the level-0 group.
    """
    degree = n * levels

    def rot(level, g):
        return PartialInjection(degree, [(b * n + h, b * n + (h + g) % n)
                                         for b in range(level + 1) for h in range(n)])

    gens = [rot(levels - 1, 1)] + [rot(i, 0) for i in range(levels - 1)]
    return closure(gens)


@pytest.fixture(scope="session")
def rng():
    print(f"\n[seed {SEED}]")
    return random.Random(SEED)


@pytest.fixture(scope="session")
def brandt_trivial_2():
    B, rep = brandt_model(1, 2)
    X = [rep[a] for a in fg_generating_set(B, [0])]
    return B, rep, X


@pytest.fixture(scope="session")
def brandt_c2_2():
    B, rep = brandt_model(2, 2)
    X = [rep[a] for a in fg_generating_set(B, [1])]
    return B, rep, X


@pytest.fixture(scope="session")
def chain3():
    return closure([PartialInjection.identity(3, range(k)) for k in (1, 2, 3)])


@pytest.fixture(scope="session")
def s3():
    return closure([pi(3, (0, 1), (1, 2), (2, 0)), pi(3, (0, 1), (1, 0), (2, 2))])


@pytest.fixture(scope="session")
def i3_gens():
    return [pi(3, (0, 1), (1, 2), (2, 0)), pi(3, (0, 1), (1, 0), (2, 2)), pi(3, (0, 0), (1, 1))]


@pytest.fixture(scope="session")
def e_unitary_fixtures(chain3, s3):
    return {"C2 over 2-chain": clifford_chain(2, 2), "C3 over 3-chain": clifford_chain(3, 3),
            "3-chain": chain3, "S3": s3}


# ---------------------------------------------------------- criterion report

_results: dict = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, text = marker.args
    ok = call.excinfo is None
    prev = _results.get(number, (True, text))
    _results[number] = (prev[0] and ok, text)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        ok, text = _results[number]
        terminalreporter.write_line(f"AC{number:02d} {'PASS' if ok else 'FAIL'}  {text}")
