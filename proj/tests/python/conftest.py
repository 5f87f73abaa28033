import os
import pathlib

import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
DATA = ROOT / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("HOMALG_CLI", str(ROOT / "build" / "tools" / "homalg"))
    if not os.path.exists(path):
        pytest.skip("homalg executable not built")
    return path


def read(name):
    return (DATA / name).read_text()
