import pytest

from distvar.solver import build_template


@pytest.fixture(scope="session")
def template():
    return build_template(validate=True)
