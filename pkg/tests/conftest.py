import pytest

from app import create_app
from features import services
from features.context import get_context


@pytest.fixture
def app():
    """Create test app without an element cache"""
    app = create_app()
    app.config['TESTING'] = True
    yield app


@pytest.fixture
def client(app):
    """Create test client"""
    return app.test_client()


@pytest.fixture
def sl2():
    return get_context('sl(2)')


@pytest.fixture
def sl3():
    return get_context('sl(3)')


@pytest.fixture
def sl21():
    return get_context('sl(2|1)')


@pytest.fixture
def gl22():
    return get_context('gl(2|2)')


@pytest.fixture
def shapovalov_sl3():
    return services.shapovalov_service('sl(3)', seed=0)


@pytest.fixture
def shapovalov_sl21():
    return services.shapovalov_service('sl(2|1)', seed=0)


@pytest.fixture
def jantzen_sl2():
    return services.jantzen_service('sl(2)', seed=0)


@pytest.fixture
def jantzen_sl21():
    return services.jantzen_service('sl(2|1)', seed=0)


@pytest.fixture
def generic_on_b():
    """sl(2|1) weight on H_b with (λ+ρ, a^∨) = 1/3 and (λ+ρ, a+b) ≠ 0"""
    return 'pairings:a=1/3,b=0'


@pytest.fixture
def generic_on_ab():
    """sl(2|1) weight on H_{a+b}, off H_b"""
    return 'pairings:a=1/3,a+b=0'


@pytest.fixture
def gl22_pair_weight():
    """gl(2|2) weight on H_{a+b+c} ∩ H_b, weakly generic along both lattice directions"""
    return 'pairings:a=4/21,b=0,c=4/21,a+b+c=0'
