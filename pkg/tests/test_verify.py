import json

import pytest

from padicgerm.errors import ConfigError
from padicgerm.verify import PROPERTIES, SUITES, VerifyConfig, run_verify


def test_every_suite_has_properties():
    assert {s for s, _ in PROPERTIES.values()} == set(SUITES)


def test_volumes_small():
    report = run_verify(VerifyConfig(suites=("volumes",), n_max=2, x_max=4))
    v = report.suites["volumes"]
    assert v["failed"] == 0 and v["counterexamples"] == [] and v["passed"] > 0
    assert report.exit_status == 0


def test_all_defaults_succeed():
    report = run_verify()
    assert report.ok, report.to_json()
    assert report.to_dict()["status"] == "success"


def test_determinism():
    cfg = VerifyConfig(suites=("orbital", "lfactors", "invariants"), seeds=3, rng_seed=42)
    assert run_verify(cfg).to_json() == run_verify(cfg).to_json()


def test_parallel_matches_serial():
    cfg = VerifyConfig(suites=("lfactors", "branching"), seeds=3, rng_seed=1)
    par = VerifyConfig(suites=("lfactors", "branching"), seeds=3, rng_seed=1, jobs=2)
    assert run_verify(cfg).to_json() == run_verify(par).to_json()


def test_substreams_are_independent():
    # the cases of one property do not depend on which other suites run
    a = run_verify(VerifyConfig(suites=("lfactors",), seeds=4, rng_seed=9)).suites["lfactors"]
    b = run_verify(VerifyConfig(suites=("qring", "lfactors"), seeds=4, rng_seed=9)).suites["lfactors"]
    assert a == b


@pytest.mark.parametrize(
    "kwargs",
    [
        {"suites": ("nosuch",)},
        {"suites": ()},
        {"n_max": 5},
        {"x_max": 11},
        {"seeds": 0},
        {"primes": (11,)},
        {"primes": ()},
        {"jobs": 0},
    ],
)
def test_guardrails(kwargs):
    with pytest.raises(ConfigError):
        run_verify(VerifyConfig(**kwargs))


def test_failure_is_reported(monkeypatch):
    import padicgerm.verify as v

    def broken(cfg):
        yield (1, 2), True
        yield {"x": 3}, False
        yield {"x": 4}, False

    monkeypatch.setitem(v.PROPERTIES, "broken", ("volumes", broken))
    report = run_verify(VerifyConfig(suites=("volumes",), n_max=1, x_max=1))
    vol = report.suites["volumes"]
    assert vol["failed"] == 2
    assert vol["counterexamples"] == [{"property": "broken", "input": {"x": 3}}]
    assert report.exit_status == 1
    assert json.loads(report.to_json())["status"] == "failure"
