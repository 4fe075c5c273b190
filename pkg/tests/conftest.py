"""Shared fixtures: wheel prefixes are expensive enough to build once."""

import pytest

from layerwheel import build_trianglefree_wheel, build_wheel


@pytest.fixture(scope="session")
def w1d2():
    return build_wheel(1, 2)


@pytest.fixture(scope="session")
def w1d3():
    return build_wheel(1, 3)


@pytest.fixture(scope="session")
def w1d4():
    return build_wheel(1, 4)


@pytest.fixture(scope="session")
def w1d5():
    return build_wheel(1, 5)


@pytest.fixture(scope="session")
def w2d2():
    return build_wheel(2, 2)


@pytest.fixture(scope="session")
def w2d3():
    return build_wheel(2, 3)


@pytest.fixture(scope="session")
def w3d2():
    return build_wheel(3, 2)


@pytest.fixture(scope="session")
def tf1d3():
    return build_trianglefree_wheel(1, 3)


@pytest.fixture(scope="session")
def tf2d2():
    return build_trianglefree_wheel(2, 2)
