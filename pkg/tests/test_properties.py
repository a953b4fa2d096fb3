"""The named property suites must pass at moderate trial counts."""

import pytest

from lyapid.properties import SUITES, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    trials = 20 if name in ("kernel", "spectral") else 40
    result = run_suite(name, trials=trials, seed=2024)
    for check in result.checks:
        assert check.passed, f"{name}: {check.label}: {check.detail}"
    assert result.passed


def test_unknown_suite_raises():
    with pytest.raises(KeyError):
        run_suite("nonsense")


def test_suite_json_shape():
    result = run_suite("cycle3", trials=5, seed=1)
    data = result.to_json()
    assert data["suite"] == "cycle3"
    assert data["passed"] is True
    assert all("label" in c for c in data["checks"])
