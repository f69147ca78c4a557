import random
import sys

import pytest
from hypothesis import strategies as st

from lrhopf import multiindex as mi
from lrhopf.fixtures import envelope
from lrhopf.poly import Poly


@pytest.fixture(scope="session")
def W1():
    return envelope("W1")


@pytest.fixture(scope="session")
def W2():
    return envelope("W2")


@pytest.fixture(scope="session")
def AFF():
    return envelope("AFF")


@pytest.fixture(scope="session")
def SL2():
    return envelope("SL2")


@pytest.fixture(scope="session")
def NC():
    return envelope("NC")


def polys(nvars, max_degree=2):
    """Small polynomials with integer and half-integer coefficients."""
    exps = [e for d in range(max_degree + 1) for e in mi.of_degree(nvars, d)]
    coeff = st.sampled_from([-2, -1, 1, 2, 3]).flatmap(lambda c: st.sampled_from([c, c / 2]))
    return st.dictionaries(st.sampled_from(exps), coeff, max_size=4).map(lambda t: Poly(nvars, t))


def right_action(env, p, u):
    """``p ◁ u`` on the base ring: ``a ◁ X_i = -ω_i(a)``, coefficients multiply."""
    anchor = env.presentation.anchor
    out = Poly.zero(env.nvars)
    for alpha, c in u.terms.items():
        q = p
        for i in mi.word(alpha):
            q = -anchor[i](q)
        out = out + q * c
    return out


def random_env_element(rng: random.Random, env, degree, coeff_degree=1):
    terms = {}
    for a in mi.up_to(env.rank, degree):
        if rng.random() < 0.6:
            t = {}
            for d in range(coeff_degree + 1):
                for e in mi.of_degree(env.nvars, d):
                    if rng.random() < 0.5:
                        t[e] = rng.randint(-3, 3)
            c = Poly(env.nvars, t)
            if c:
                terms[a] = c
    return env.element(terms)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.acceptance_lines():
        terminalreporter.write_line(line)
