import pytest
from hypothesis import strategies as st

from dtakit import MixedArray, catalog


@st.composite
def mixed_arrays(draw, min_k=2, max_k=5, min_v=2, max_v=3, min_n=1, max_n=16):
    k = draw(st.integers(min_k, max_k))
    types = tuple(draw(st.integers(min_v, max_v)) for _ in range(k))
    row = st.tuples(*(st.integers(0, v - 1) for v in types))
    rows = draw(st.lists(row, min_size=min_n, max_size=max_n))
    return MixedArray(types, tuple(rows))


@pytest.fixture(scope="session")
def table1():
    return catalog.load_array("table1")


@pytest.fixture(scope="session")
def example34():
    return catalog.load_array("example34")
