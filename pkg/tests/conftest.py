import pytest

from conelab import _kernels

try:
    from conelab import _speedups
except ImportError:
    _speedups = None

BACKENDS = [_kernels] if _speedups is None else [_kernels, _speedups]
BACKEND_IDS = ["python"] if _speedups is None else ["python", "c"]


@pytest.fixture(params=BACKENDS, ids=BACKEND_IDS, scope="session")
def kernels(request):
    return request.param


@pytest.fixture(scope="session")
def fixture_family():
    from conelab.rank3 import bundled_family_3_5_7

    return bundled_family_3_5_7()
