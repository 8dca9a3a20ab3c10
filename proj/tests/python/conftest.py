import os
import pathlib

import pytest


@pytest.fixture
def cli():
    path = os.environ.get("SAGNAC_GYRO_CLI")
    if not path or not pathlib.Path(path).exists():
        pytest.skip("SAGNAC_GYRO_CLI not set")
    return path


@pytest.fixture
def configs():
    return pathlib.Path(os.environ.get("SAGNAC_CONFIG_DIR", pathlib.Path(__file__).parent.parent / "configs"))
