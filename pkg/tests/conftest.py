import os
import tempfile

# the web app reads DATABASE_URL at import time
os.environ.setdefault('DATABASE_URL', 'sqlite:///' + os.path.join(tempfile.mkdtemp(), 'phrasehopf-test.db'))

import pytest

from utils.coefficients import INTEGER
from utils.inscription_coalgebra import Pairing
from utils.stable_sets import AllNonEmpty


@pytest.fixture
def all_words():
    return AllNonEmpty()


@pytest.fixture
def delta_pairing():
    return Pairing.delta(ring=INTEGER)


@pytest.fixture
def client():
    from app import app
    app.config['TESTING'] = True
    with app.test_client() as client:
        yield client
