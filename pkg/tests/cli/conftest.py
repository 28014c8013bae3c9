import pytest
from hydra import compose, initialize_config_module


@pytest.fixture
def make_cfg():
    def _make_cfg(*overrides):
        with initialize_config_module(version_base=None, config_module="hypersym.config"):
            return compose(config_name="main", overrides=list(overrides))

    return _make_cfg
