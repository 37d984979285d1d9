# Gunicorn configuration for the phrasehopf API

import multiprocessing
import os

bind = os.environ.get("PHRASEHOPF_BIND", "0.0.0.0:5000")
workers = int(os.environ.get("PHRASEHOPF_WORKERS", min(multiprocessing.cpu_count() * 2 + 1, 8)))
timeout = int(os.environ.get("PHRASEHOPF_TIMEOUT", "300"))  # law checks are CPU bound

wsgi_app = "main:app"

accesslog = "-"
errorlog = "-"
loglevel = os.environ.get("PHRASEHOPF_LOG_LEVEL", "info").lower()
