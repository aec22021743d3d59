import pytest

from qstab import parabolic, root_system, stable_tables


@pytest.fixture(scope="session")
def tables():
    """Shared table access; instances are memoized per parabolic, so every
    test file works on the same objects."""

    def get(type_name, subset=()):
        return stable_tables(parabolic(root_system(type_name), subset))

    return get
