import numpy as np
import pytest

from lglab.exact import GF, QQ

F1009 = GF(1009)
FIELDS = [QQ, F1009]


@pytest.fixture(params=FIELDS, ids=["Q", "F1009"])
def field(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
