import hypothesis
import pytest

from monopole_bvp import pipeline

hypothesis.settings.register_profile("default", max_examples=25, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile("default")


@pytest.fixture(scope="session")
def pipe():
    return pipeline.run()


@pytest.fixture(scope="session")
def a_star(pipe):
    return pipe.a_star


@pytest.fixture(scope="session")
def left(pipe):
    return pipe.left


@pytest.fixture(scope="session")
def right(pipe):
    return pipe.right


@pytest.fixture(scope="session")
def constants(pipe):
    return pipe.constants


@pytest.fixture(scope="session")
def model(pipe):
    return pipe.model


@pytest.fixture(scope="session")
def curve(pipe):
    return pipe.phase_curve
