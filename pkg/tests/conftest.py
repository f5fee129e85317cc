import pytest

import schemelab as sl

# The matched-pairs 5-cell partition of the Petersen graph: one edge cell
# {0,0'} and four non-edge cells pairing cycle vertices with complement
# vertices. Not equitable, yet it passes the projection-integrality test.
PAIR_CELLS = [["0", "0'"], ["1", "2'"], ["2", "1'"], ["3", "4'"], ["4", "3'"]]

# Independent statement of the Petersen edge set (cycle + matching +
# complement cycle), used as an oracle against the graph builder.
PETERSEN_EDGES = sorted(
    [("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("0", "4"),
     ("0", "0'"), ("1", "1'"), ("2", "2'"), ("3", "3'"), ("4", "4'"),
     ("0'", "2'"), ("2'", "4'"), ("1'", "4'"), ("1'", "3'"), ("0'", "3'")]
)


@pytest.fixture(scope="session")
def petersen():
    return sl.named_scheme("petersen")


@pytest.fixture(scope="session")
def petersen_spec(petersen):
    return sl.spectral_data(petersen)


@pytest.fixture(scope="session")
def hamming32():
    return sl.named_scheme("hamming", 3, 2)


@pytest.fixture(scope="session")
def hamming32_spec(hamming32):
    return sl.spectral_data(hamming32)


@pytest.fixture(scope="session")
def johnson42():
    return sl.named_scheme("johnson", 4, 2)


@pytest.fixture(scope="session")
def johnson52():
    return sl.named_scheme("johnson", 5, 2)


@pytest.fixture(scope="session")
def cycle5():
    return sl.named_scheme("cycle", 5)


@pytest.fixture(scope="session")
def cycle7():
    return sl.named_scheme("cycle", 7)


@pytest.fixture(scope="session")
def k4():
    # complete graph on 4 vertices, as the one-letter Hamming scheme
    return sl.named_scheme("hamming", 1, 4)


@pytest.fixture(scope="session")
def exact_catalog(petersen, hamming32, johnson42, johnson52, k4):
    return [petersen, hamming32, johnson42, johnson52, k4]


@pytest.fixture(scope="session")
def pair_partition(petersen):
    return sl.make_partition(petersen, PAIR_CELLS)
