import pytest

from translucent import setup_global


@pytest.fixture(scope="session")
def toy23():
    return setup_global("toy23")


@pytest.fixture(scope="session")
def test64():
    return setup_global("test64")


@pytest.fixture(scope="session")
def demo512():
    return setup_global("demo512")
