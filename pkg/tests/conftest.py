from dataclasses import replace
from pathlib import Path

import pytest

from cpnonlocal import kernels
from cpnonlocal.cli import load_config
from cpnonlocal.experiment import CorrelationMode, ReadoutNoiseSpec

ROOT = Path(__file__).resolve().parents[1]
PAPER_CFG = ROOT / "configs" / "paper.cfg"


@pytest.fixture
def paper_config():
    return load_config(PAPER_CFG)


@pytest.fixture
def noiseless_config(paper_config):
    return replace(paper_config, readout=ReadoutNoiseSpec.noiseless(), n_trials=2000)


@pytest.fixture
def uncorrelated_config(noiseless_config):
    return replace(noiseless_config, correlation_mode=CorrelationMode.UNCORRELATED)


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    previous = kernels.backend()
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(previous)


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        name = report.nodeid.split("::test_criterion_", 1)[1]
        detail = dict(report.user_properties).get("measured", "")
        _acceptance.append((name, report.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in sorted(_acceptance, key=lambda r: int(r[0].split("_", 1)[0])):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  criterion {name.replace('_', ' ', 1)}  {detail}")
