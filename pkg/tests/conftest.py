import math

import pytest

from conical_shock import derive_parameters, hypersonic_sweep, integrate_inverse
from conical_shock.direct import SweepConfig

LADDER = (0.08, 0.04, 0.02, 0.01)
THETA0 = math.radians(20.0)


@pytest.fixture(scope="session")
def ladder_sweep():
    return hypersonic_sweep(THETA0, list(LADDER), config=SweepConfig(on_violation="warn"))


@pytest.fixture(scope="session")
def ladder_fields(ladder_sweep):
    # re-solve the inverse problem at each converged beta to get the field object
    return [
        integrate_inverse(r.beta, derive_parameters(r.epsilon))
        for r in ladder_sweep.records
    ]


@pytest.fixture(scope="session")
def field_30():
    return integrate_inverse(math.radians(30.0), derive_parameters(0.01))


@pytest.fixture(scope="session")
def ladder_report():
    from conical_shock import convergence_report

    return convergence_report(THETA0, list(LADDER))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
