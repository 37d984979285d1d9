import runpy
from pathlib import Path


def test_health(client):
    response = client.get('/health')
    assert response.status_code == 200
    assert response.get_json() == {'status': 'ok'}


def test_formats(client):
    assert set(client.get('/api/formats').get_json()) == {'text', 'json', 'markdown', 'html'}


def test_coproduct(client):
    response = client.post('/api/coproduct', json={'family': 'L', 'phrase': '(AB)'})
    assert response.status_code == 200
    data = response.get_json()
    assert data['success'] is True
    assert data['result'] == '1 ⊗ (AB) + (A) ⊗ (B) + (B) ⊗ (A) + (AB) ⊗ 1'
    assert {'left': '(A)', 'right': '(B)', 'coeff': '1'} in data['terms']


def test_inscription_coproduct_with_inline_pairing(client):
    payload = {'family': 'mu', 'phrase': '(AB)', 'pairing': [{'a': 'A', 'b': 'B', 'coeff': '3'}]}
    data = client.post('/api/coproduct', json=payload).get_json()
    assert data['success'] is True
    assert {'left': '(~)', 'right': '(~)', 'coeff': '3'} in data['terms']


def test_antipode_and_rho(client):
    data = client.post('/api/antipode', json={'phrase': '(AB)'}).get_json()
    assert data['result'] == '-(AB) + (A|B) + (B|A)'
    data = client.post('/api/rho', json={'family': 'mu', 'word': 'ABACBA'}).get_json()
    assert len(data['terms']) == 4


def test_trees(client):
    assert client.post('/api/tree2word', json={'tree': 'A(B,C)'}).get_json()['result'] == 'ABBCCA'
    assert client.post('/api/word2tree', json={'word': 'AABB'}).get_json()['result'] == 'A,B'


def test_bad_requests(client):
    assert client.post('/api/word2tree', json={'word': 'ABAB'}).status_code == 400
    assert client.post('/api/coproduct', json={'family': 'X', 'phrase': '(A)'}).status_code == 400
    assert client.post('/api/coproduct', json={'family': 'mu', 'pairing': '/etc/passwd'}).status_code == 400
    assert client.post('/api/coproduct', data='not json').status_code == 400


def test_check_is_stored(client):
    response = client.post('/api/check', json={'law': 'antipode', 'coprod': 'L', 'max_len': 3})
    data = response.get_json()
    assert data['success'] is True
    assert data['report']['passed'] is True
    assert data['run_id'] is not None
    runs = client.get('/api/history').get_json()['runs']
    assert any(run['id'] == data['run_id'] and run['law'] == 'antipode' for run in runs)


def test_check_rejects_unknown_law(client):
    assert client.post('/api/check', json={'law': 'nope'}).status_code == 400


def test_gunicorn_config_serves_the_app(monkeypatch):
    monkeypatch.setenv('PHRASEHOPF_WORKERS', '3')
    monkeypatch.delenv('PHRASEHOPF_BIND', raising=False)
    monkeypatch.delenv('PHRASEHOPF_TIMEOUT', raising=False)
    config = runpy.run_path(str(Path(__file__).parent.parent / 'deployment' / 'gunicorn.conf.py'))
    assert config['wsgi_app'] == 'main:app'
    assert config['workers'] == 3
    assert config['timeout'] == 300
    assert config['bind'] == '0.0.0.0:5000'
