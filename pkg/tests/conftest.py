from fractions import Fraction as F

import pytest

from affjantzen.rootdata import build_root_system
from affjantzen.weylcalc import critical_weight


@pytest.fixture(scope="session")
def A1():
    return build_root_system("A1")


@pytest.fixture(scope="session")
def A2():
    return build_root_system("A2")


# finite coordinates <lam, alpha_i^vee> of the critical test weights
A1_SUBGENERIC = {1: [0], 2: [1], 3: [2]}  # keyed by n = <lam + rho, alpha^vee>
A1_GENERIC = [[F(-1, 2)], [F(-2, 3)]]
A2_SUBGENERIC = [0, F(-2, 3)]  # pairings 1 and 1/3 with lam + rho
A2_GENERIC = [[F(-1, 2), F(-2, 3)], [F(-2, 3), F(-4, 5)]]
A2_GENERAL = [0, 0]


def crit(system, finite):
    return critical_weight(system, finite)


def pytest_terminal_summary(terminalreporter):
    lines = [v for key in ("passed", "failed") for r in terminalreporter.stats.get(key, [])
             for k, v in getattr(r, "user_properties", []) if k == "acceptance"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
