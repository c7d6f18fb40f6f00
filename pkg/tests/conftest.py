import pytest

from kmatchlab.graph import from_edge_list, generate


@pytest.fixture
def p3():
    return generate("path", 3)


@pytest.fixture
def c4():
    return generate("cycle", 4)


@pytest.fixture
def k4():
    return generate("complete", 4)


@pytest.fixture
def k2():
    return generate("complete", 2)


@pytest.fixture
def edgeless4():
    return from_edge_list(4, [])
