import os
from unittest.mock import patch

import pytest

from src.core.curve import Curve, new_curve


@pytest.fixture(scope="session", autouse=True)
def test_config(tmp_path_factory):
    """Override config for testing with an isolated log file."""
    log_dir = tmp_path_factory.mktemp("logs")
    test_env = {
        "LOG_LEVEL": "DEBUG",
        "LOG_FILE": str(log_dir / "torsion_growth.log"),
        # Keep batch runs sequential in tests
        "JOBS": "1",
    }

    with patch.dict(os.environ, test_env, clear=False):
        # Clear the config cache to use new environment
        from src.config import get_config

        get_config.cache_clear()
        yield
    get_config.cache_clear()


@pytest.fixture
def tables():
    from src.growth.tables import get_tables

    return get_tables()


@pytest.fixture
def fixture_rows():
    """Rows of the bundled example file."""
    from src.cli.fixtures import load_fixture
    from src.config import get_config

    return load_fixture(get_config().fixture_path)


@pytest.fixture
def e_x3_plus_1() -> Curve:
    """y^2 = x^3 + 1, torsion C6."""
    return new_curve(0, 0, 0, 0, 1)


@pytest.fixture
def e_x3_minus_x() -> Curve:
    """y^2 = x^3 - x, torsion C2xC2."""
    return new_curve(0, 0, 0, -1, 0)


@pytest.fixture
def curve_19a2() -> Curve:
    return new_curve(0, 1, 1, -769, -8470)


@pytest.fixture
def write_fixture(tmp_path):
    """Write fixture lines to a temporary file and return its path."""

    def _write(*lines: str) -> str:
        path = tmp_path / "fixture.txt"
        path.write_text("\n".join(lines) + "\n")
        return str(path)

    return _write
