import os

import pytest


@pytest.fixture(scope="session", autouse=True)
def isolated_cache(tmp_path_factory):
    # keep structure-constant caches out of the user's home during tests
    os.environ["LGQ_CACHE_DIR"] = str(tmp_path_factory.mktemp("qh_cache"))
    yield
