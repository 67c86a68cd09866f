import json
import logging

import numpy as np
import pytest

from setfam import SetFamily, hilton_milner_family, star


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def hm73():
    # H(1, {2,3,4}) in ([7] choose 3)
    return hilton_milner_family(7, 3, 1, (2, 3, 4))


@pytest.fixture
def star52():
    return star(5, 2, 1)


@pytest.fixture
def write_json(tmp_path):
    def write(data, name="witness.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write


@pytest.fixture(autouse=True)
def restore_log_level():
    logger = logging.getLogger("setfam")
    level = logger.level
    yield
    logger.setLevel(level)


def family(n, k, *sets):
    return SetFamily.from_sets(n, k, sets)
