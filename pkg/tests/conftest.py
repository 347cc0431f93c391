import pytest
from hypothesis import HealthCheck, settings

from summ.corpus import load_dataset
from summ.synthetic import bundled_corpus

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def bundled():
    docs, refs = bundled_corpus()
    return load_dataset(docs, refs)
