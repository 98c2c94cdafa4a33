import pytest

from data.builders import group_algebra, pair_groupoid, product_algebra
from data.instance_io import parse_hopf, parse_instance
from tools.linalg.scalars import field_from_descriptor, prime_field, rational_field
from tools.set_runtime import resolve_path, set_runtime

FIXTURES = resolve_path("data/fixtures")


def fixture_path(stem: str) -> str:
    return f"{FIXTURES}/{stem}.json"


@pytest.fixture(scope="session", autouse=True)
def runtime():
    set_runtime(g_use_cache=False, g_check_well_defined=True)


@pytest.fixture(scope="session")
def Q():
    return rational_field()


@pytest.fixture(scope="session")
def F2():
    return prime_field(2)


@pytest.fixture(scope="session")
def qc2_hopf():
    return parse_hopf(rational_field(), group_algebra(2))


@pytest.fixture(scope="session")
def f2c2_hopf():
    return parse_hopf(prime_field(2), group_algebra(2, field={"Fp": 2}))


@pytest.fixture(scope="session")
def qxq_hopf():
    return parse_hopf(rational_field(), product_algebra(2))


@pytest.fixture(scope="session")
def groupoid_hopf():
    return parse_hopf(rational_field(), pair_groupoid(2))


@pytest.fixture(scope="session")
def load():
    """Loaded fixture instances by file stem, built once per session."""
    cache = {}

    def get(stem: str, strict: bool = True):
        key = (stem, strict)
        if key not in cache:
            cache[key] = parse_instance(fixture_path(stem), strict=strict)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def qc2(load):
    return load("qc2")


@pytest.fixture(scope="session")
def qc2_smash(load):
    return load("qc2_smash")


@pytest.fixture(scope="session")
def twisted(load):
    return load("twisted_c2")


@pytest.fixture(scope="session")
def groupoid(load):
    return load("pair_groupoid2")


@pytest.fixture(scope="session")
def field_of():
    return field_from_descriptor
