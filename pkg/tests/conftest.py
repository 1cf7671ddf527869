import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kotzig_cdc.generate import cubic_census, generate_planted_instance, k4, k33, petersen, prism, theta
from kotzig_cdc.graph import is_bridgeless

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = {"K4": k4, "K33": k33, "prism": prism, "petersen": petersen, "theta": theta}


def all_census():
    return [g for gs in cubic_census().values() for g in gs]


def bridgeless_census():
    return [g for g in all_census() if is_bridgeless(g)]


census_graphs = st.sampled_from(all_census())
bridgeless_graphs = st.sampled_from(bridgeless_census())


@st.composite
def planted(draw):
    seed = draw(st.integers(0, 10_000))
    index = draw(st.integers(0, 2))
    lengths = draw(st.lists(st.sampled_from((4, 6, 8)), max_size=2))
    return generate_planted_instance(seed, index, lengths)


@pytest.fixture(params=sorted(FIXTURES))
def fixture_graph(request):
    return FIXTURES[request.param]()
