import pytest

from diagstrat.params import make_config


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    # keep test runs independent of any cache left in the working directory
    mp = pytest.MonkeyPatch()
    mp.setenv("DIAGSTRAT_CACHE", str(tmp_path_factory.mktemp("cache")))
    yield
    mp.undo()


def cb(u, bubbles=None, N=4, **kw):
    raw = {"flavor": "CB", "m": len(u), "u": list(u), "N": N}
    if bubbles is not None:
        raw["bubbles"] = list(bubbles)
    raw.update(kw)
    return make_config(raw)


@pytest.fixture
def cb_m1():
    return cb(["1/3"])


@pytest.fixture
def cb_m2():
    return cb(["1/5", "3/10"], ["1", "0"])


@pytest.fixture
def ob_m2():
    return make_config({"flavor": "OB", "m": 2, "u": ["1/5", "3/10"],
                        "bubbles": {"cw": ["3", "7/2"]}, "N": 4})
