import logging
import os
from app import app

# Configure logging
logging.basicConfig(level=os.environ.get('PHRASEHOPF_LOG_LEVEL', 'INFO').upper())

if __name__ == "__main__":
    app.run(host="0.0.0.0", port=int(os.environ.get("PORT", "5000")), debug=False)
