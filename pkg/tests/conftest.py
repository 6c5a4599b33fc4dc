import pytest

from pyfabgupta import config as config_module
from pyfabgupta.metric_enum import enumerate_ball


@pytest.fixture(scope="session")
def ball2():
    """Exhausted ball of radius 2."""
    return enumerate_ball(2)


@pytest.fixture(scope="session")
def ball4():
    """Exhausted ball of radius 4, with every minimal representative."""
    return enumerate_ball(4, collect_alternates=True)


@pytest.fixture
def isolated_config(tmp_path, monkeypatch):
    """Point the config file at a temp dir and clear FG_CACHE_DIR."""
    cfg_dir = tmp_path / "home"
    monkeypatch.setattr(config_module, "CONFIG_DIR", cfg_dir)
    monkeypatch.setattr(config_module, "CONFIG_FILE", cfg_dir / "config.json")
    monkeypatch.delenv("FG_CACHE_DIR", raising=False)
    return cfg_dir
