"""Shared example spaces, forms and algebras for the test suite."""

from fractions import Fraction

import pytest

from gradedgroups import (SKEW, SYMMETRIC, form_from_pairings, make_algebra,
                          make_space)


@pytest.fixture(scope="session")
def e1_space():
    return make_space([("t1", 1), ("tm1", -1)])


@pytest.fixture(scope="session")
def e1_form(e1_space):
    return form_from_pairings(e1_space, 0, SYMMETRIC, {(0, 1): Fraction(1)})


@pytest.fixture(scope="session")
def odd_space():
    return make_space([("t0", 0), ("t1", 1)])


@pytest.fixture(scope="session")
def odd_form(odd_space):
    return form_from_pairings(odd_space, -1, SYMMETRIC, {(0, 1): Fraction(1)})


@pytest.fixture(scope="session")
def r2_space():
    return make_space([0, 0])


@pytest.fixture(scope="session")
def r2_sym(r2_space):
    return form_from_pairings(r2_space, 0, SYMMETRIC,
                              {(0, 0): Fraction(1), (1, 1): Fraction(1)})


@pytest.fixture(scope="session")
def r2_skew(r2_space):
    return form_from_pairings(r2_space, 0, SKEW, {(0, 1): Fraction(1)})


@pytest.fixture(scope="session")
def mixed_space():
    return make_space([1, 1, 0, 0])


@pytest.fixture(scope="session")
def mixed_form(mixed_space):
    return form_from_pairings(mixed_space, -1, SYMMETRIC,
                              {(0, 2): Fraction(1), (1, 3): Fraction(2),
                               (0, 3): Fraction(1)})


@pytest.fixture(scope="session")
def algebra4():
    return make_algebra([("a", 2), ("b", -2), ("c", 1), ("d", -1)], 4)
