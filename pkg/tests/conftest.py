import json
import random
from pathlib import Path

import pytest

from sortnetsat import csolver
from sortnetsat.networks import Network
from sortnetsat.solving import SolverConfig

DATA = Path(__file__).parent / "data"

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if "test_acceptance" in item.nodeid and rep.when in ("call", "setup"):
        if rep.when == "call" or rep.outcome == "skipped":
            _ACCEPTANCE_RESULTS.append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for name, outcome in _ACCEPTANCE_RESULTS:
            tag = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
            terminalreporter.write_line(f"{tag}: {name}")


@pytest.fixture(scope="session")
def known_optima() -> dict:
    """Best known (and proven optimal) sorting networks, transcribed as
    fixtures; every record carries its (depth, size) and, for n >= 11, the
    canonical two-layer prefix it extends."""
    return json.loads((DATA / "known_optima.json").read_text())


def net_from_record(rec: dict) -> Network:
    return Network.make(rec["n"], rec["layers"])


@pytest.fixture(scope="session")
def external_cfg() -> SolverConfig:
    binary = csolver.ensure_built(quiet=True)
    if binary is None:
        pytest.skip("no C compiler available to build the bundled solver")
    return SolverConfig("external", f"{binary} {{cnf}}", timeout=600)


@pytest.fixture
def builtin_cfg() -> SolverConfig:
    return SolverConfig("builtin", timeout=300)


def random_two_layer(rng: random.Random, n: int) -> Network:
    def matching() -> list[tuple[int, int]]:
        chans = list(range(1, n + 1))
        rng.shuffle(chans)
        comps = []
        while len(chans) >= 2 and rng.random() < 0.8:
            a, b = chans.pop(), chans.pop()
            comps.append((min(a, b), max(a, b)))
        return comps

    return Network.make(n, [matching(), matching()])


def random_network(rng: random.Random, n: int, depth: int) -> Network:
    def matching() -> list[tuple[int, int]]:
        chans = list(range(1, n + 1))
        rng.shuffle(chans)
        comps = []
        while len(chans) >= 2 and rng.random() < 0.7:
            a, b = chans.pop(), chans.pop()
            comps.append((min(a, b), max(a, b)))
        return comps

    return Network.make(n, [matching() for _ in range(depth)])
