import os
import logging
from flask import Flask, request, jsonify
from werkzeug.middleware.proxy_fix import ProxyFix
from cli import Settings, build_check
from utils.coefficients import Ring
from utils.cut_coalgebra import MAX_CUT_LENGTH, cut_bialgebra
from utils.inscription_coalgebra import MAX_INSCRIPTION_LENGTH, inscription_bialgebra, parse_pairing
from utils.output_formatter import format_output, get_supported_formats, to_json_data
from utils.rooted_trees import parse_tree, tree_to_word, word_to_tree
from utils.stable_sets import parse_stable
from models import db, LawCheckRun

# Configure logging
logging.basicConfig(level=os.environ.get('PHRASEHOPF_LOG_LEVEL', 'INFO').upper())
logger = logging.getLogger(__name__)

# Create Flask app
app = Flask(__name__)
app.secret_key = os.environ.get("SESSION_SECRET", "dev_secret_key")
app.wsgi_app = ProxyFix(app.wsgi_app, x_proto=1, x_host=1)
app.json.ensure_ascii = False
app.config['MAX_CONTENT_LENGTH'] = 1024 * 1024  # request bodies are small JSON documents

# Configure database
db_url = os.environ.get("DATABASE_URL")
if db_url:
    logger.info("DATABASE_URL is set and will be used for the database connection")

    app.config["SQLALCHEMY_DATABASE_URI"] = db_url
    if not db_url.startswith('sqlite'):
        app.config["SQLALCHEMY_ENGINE_OPTIONS"] = {
            "pool_recycle": 300,
            "pool_pre_ping": True,
        }
    app.config["SQLALCHEMY_TRACK_MODIFICATIONS"] = False

    db.init_app(app)

    try:
        with app.app_context():
            db.create_all()
            logger.info("Database tables created successfully")
    except Exception as e:
        logger.error(f"Database initialization failed: {str(e)}")
        logger.warning("Application will continue without database support")
else:
    logger.warning("DATABASE_URL environment variable is not set! Law checks will not be stored")

# Database availability flag
DB_AVAILABLE = False
if db_url:
    try:
        from sqlalchemy import text
        with app.app_context():
            db.session.execute(text('SELECT 1'))
            DB_AVAILABLE = True
            logger.info("Database connection verified - DB_AVAILABLE = True")
    except Exception as e:
        logger.warning(f"Database not available - DB_AVAILABLE = False: {str(e)}")


def settings_from(data):
    """Build per-request settings from the JSON body; keys mirror the CLI flags."""
    letters = data.get('letters')
    if isinstance(letters, str):
        letters = [x for x in letters.split(',') if x]
    return Settings(
        ring=Ring.from_label(str(data.get('ring', 'int'))),
        letters=letters or None,
        format_type=data.get('format', 'text'),
        seed=int(data.get('seed', 0)),
        max_cut_length=min(int(data.get('max_cut_length', MAX_CUT_LENGTH)), MAX_CUT_LENGTH),
        max_inscription_length=min(int(data.get('max_inscription_length', MAX_INSCRIPTION_LENGTH)),
                                   MAX_INSCRIPTION_LENGTH),
    )


def request_pairing(data, settings):
    """'delta' or an inline list of {a, b, coeff}; file paths are not accepted over HTTP."""
    pairing = data.get('pairing', 'delta')
    if isinstance(pairing, str) and pairing != 'delta':
        raise ValueError("Pairing must be 'delta' or a list of {a, b, coeff} entries")
    alphabet = data.get('alphabet')
    letters = settings.alphabet(alphabet) if alphabet else None
    return parse_pairing(pairing, settings.ring, letters)


def bialgebra_from(data, settings):
    family = data.get('family', 'L')
    if family == 'L':
        return cut_bialgebra(parse_stable(data.get('stable', 'all')), settings.ring, settings.max_cut_length)
    if family == 'mu':
        return inscription_bialgebra(request_pairing(data, settings), settings.max_inscription_length)
    raise ValueError(f"Unknown family: {family}")


def result_response(result, settings):
    return jsonify({
        'success': True,
        'result': (format_output(result, settings.format_type, separated=settings.separated)
                   if settings.format_type != 'json' else None),
        'terms': to_json_data(result, settings.separated),
    })


def handle(operation):
    """Run a request handler, mapping domain errors to 400 and the rest to 500."""
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        return jsonify({'success': False, 'error': 'Request body must be a JSON object'}), 400
    try:
        return operation(data)
    except ValueError as e:
        return jsonify({'success': False, 'error': str(e)}), 400
    except Exception as e:
        logger.error(f"Error handling {request.path}: {str(e)}")
        return jsonify({'success': False, 'error': 'Internal error'}), 500


@app.route('/health', methods=['GET'])
def health_check():
    return jsonify({'status': 'ok'}), 200


@app.route('/api/formats', methods=['GET'])
def formats():
    return jsonify(get_supported_formats())


@app.route('/api/coproduct', methods=['POST'])
def coproduct():
    """Δ_L or Δ_μ of a phrase: {"family": "L"|"mu", "phrase": "(AB|C)", ...}"""
    def operation(data):
        settings = settings_from(data)
        bialgebra = bialgebra_from(data, settings)
        return result_response(bialgebra.coproduct(settings.phrase(data.get('phrase', ''))), settings)
    return handle(operation)


@app.route('/api/antipode', methods=['POST'])
def antipode():
    def operation(data):
        settings = settings_from(data)
        bialgebra = bialgebra_from(data, settings)
        return result_response(bialgebra.antipode(settings.phrase(data.get('phrase', ''))), settings)
    return handle(operation)


@app.route('/api/rho', methods=['POST'])
def rho():
    def operation(data):
        settings = settings_from(data)
        bialgebra = bialgebra_from(data, settings)
        word = settings.word(data.get('word', ''))
        bialgebra.check_word(word)
        return result_response(bialgebra.rho_word(word), settings)
    return handle(operation)


@app.route('/api/tree2word', methods=['POST'])
def tree2word():
    def operation(data):
        word = tree_to_word(parse_tree(data.get('tree', '')))
        return jsonify({'success': True, 'result': str(word)})
    return handle(operation)


@app.route('/api/word2tree', methods=['POST'])
def word2tree():
    def operation(data):
        settings = settings_from(data)
        tree = word_to_tree(settings.word(data.get('word', '')))
        return jsonify({'success': True, 'result': tree.render()})
    return handle(operation)


@app.route('/api/check', methods=['POST'])
def check():
    """Run one law check and store it when the database is available."""
    def operation(data):
        settings = settings_from(data)
        law = data.get('law')
        coprod = data.get('coprod', 'L')
        pairing = data.get('pairing', 'delta')
        if coprod == 'mu':
            pairing = request_pairing(data, settings)
        run_check = build_check(
            law, coprod, settings,
            stable=data.get('stable'),
            strong=data.get('strong'),
            pairing=pairing,
            alphabet=data.get('alphabet', 'AB'),
            max_len=min(int(data.get('max_len', 4)), 6),
            max_pair_len=min(int(data.get('max_pair_len', 3)), 4),
            random_count=min(int(data.get('random', 0)), 200),
        )
        report = run_check()
        run_id = None
        if DB_AVAILABLE:
            try:
                descriptor = data.get('stable') if coprod == 'L' else (
                    data.get('strong') if coprod == 'S' else getattr(pairing, 'descriptor', pairing))
                run = LawCheckRun.from_report(report, coprod, descriptor, data.get('alphabet', 'AB'))
                db.session.add(run)
                db.session.commit()
                run_id = run.id
            except Exception as e:
                db.session.rollback()
                logger.error(f"Failed to store law check: {str(e)}")
        return jsonify({'success': True, 'report': report.to_dict(), 'run_id': run_id})
    return handle(operation)


@app.route('/api/history', methods=['GET'])
def api_check_history():
    if not DB_AVAILABLE:
        return jsonify({'runs': [], 'message': 'Database unavailable'})

    try:
        runs = LawCheckRun.query.order_by(LawCheckRun.created_at.desc()).limit(100).all()
        return jsonify({'runs': [run.to_dict() for run in runs]})
    except Exception as e:
        logger.error(f"Error fetching history: {str(e)}")
        return jsonify({'runs': [], 'error': str(e)}), 500
