import sys

import pytest

from loopsmith.groups import cyclic, quaternion8, symmetric
from loopsmith.octonion import build_octavian_units
from loopsmith.product import ProductSpec, build_group_and_section, build_product_loop


@pytest.fixture(scope="session")
def s3():
    return symmetric(3)


@pytest.fixture(scope="session")
def spec18():
    """K = C3, P = S3, S = C2, phi(1) = (0 2 1 as a tuple), g = (0, 1, 1)."""
    return ProductSpec.from_images(cyclic(3), symmetric(3), cyclic(2), [0, 1], [0, 1, 1])


@pytest.fixture(scope="session")
def loop18(spec18):
    return build_product_loop(spec18)


@pytest.fixture(scope="session")
def gs18(spec18):
    return build_group_and_section(spec18)


@pytest.fixture(scope="session")
def octavian():
    return build_octavian_units()


@pytest.fixture(scope="session")
def q8():
    return quaternion8()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.VERDICTS:
        terminalreporter.write_line(line)
