import pytest

from lrhopf.enveloping import Envelope
from lrhopf.fixtures import FIXTURE_NAMES, envelope, fixture_document, load_fixture, seed_reps
from lrhopf.hopf import report
from lrhopf.suites import DEFAULT_LEVELS, SUITES, run_suite


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_seed_reps_load_and_are_flat(name):
    reps = seed_reps(envelope(name))
    assert reps[0].name == "trivial"
    assert len(reps) >= 2


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture_document("W3")


def test_default_levels_cover_suites():
    assert set(DEFAULT_LEVELS) == set(SUITES)


@pytest.mark.parametrize("suite", ["pbw", "schauenburg", "fuv", "zeta", "jets"])
def test_small_suites_pass_on_nc(suite):
    env = envelope("NC")
    results = run_suite(suite, env, 1, "NC")
    assert all(r.passed for r in results), report(results)


def test_zeta_suite_catches_wrong_antipode():
    env = Envelope(load_fixture("W1"), translation_sign=1)
    results = {r.check: r for r in run_suite("zeta", env, 1, "W1-mutated")}
    assert not results["zeta-antipode"].passed
    assert results["zeta-antipode"].witness


def test_suites_are_reproducible():
    a = report(run_suite("fuv", envelope("AFF"), 1, "AFF", seed=3))
    b = report(run_suite("fuv", envelope("AFF"), 1, "AFF", seed=3))
    assert a == b


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", envelope("W1"), 1, "W1")
