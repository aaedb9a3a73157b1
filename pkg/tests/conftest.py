import pytest

from discrecon.generator import LayerSpec, PatchSpec, lattice_patch, layered_map
from discrecon.planar_map import build_from_faces


@pytest.fixture
def triangle():
    return build_from_faces([0, 1, 2], [[0, 1, 2]])


@pytest.fixture
def w6():
    return build_from_faces(range(6), [[i, (i + 1) % 6, 6] for i in range(6)])


@pytest.fixture
def square_with_chord():
    return build_from_faces(range(4), [[0, 1, 2], [0, 2, 3]])


@pytest.fixture
def h2():
    return lattice_patch(PatchSpec(radius=2))


@pytest.fixture
def q22():
    return lattice_patch(PatchSpec("quad", "rectangle", a=2, b=2))


@pytest.fixture
def q33():
    return lattice_patch(PatchSpec("quad", "rectangle", a=3, b=3))


@pytest.fixture
def hex7_layers():
    return layered_map(LayerSpec("tri", 2, (7,), seed=0))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
