import numpy as np
import pytest

from mengercurv.client import MengerClient


def pytest_addoption(parser):
    """
    Add a command-line option --menger-debug to enable log output of MengerClient.
    """
    parser.addoption(
        "--menger-debug", action="store_true", help="Enable debug mode for MengerClient"
    )


@pytest.fixture(scope="session")
def menger_client(request):
    """
    Fixture to create a MengerClient; the worker count comes from .pytest.env.
    Supports debug mode via the --menger-debug command-line option.
    """
    debug_mode = request.config.getoption("--menger-debug")
    return MengerClient(debug=debug_mode)


@pytest.fixture
def rng():
    """Seeded generator for test inputs (never for the estimators themselves)."""
    return np.random.default_rng(20240611)
