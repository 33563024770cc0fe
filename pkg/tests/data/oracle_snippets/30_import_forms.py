import json
from pathlib import Path
CONFIG = Path("app.json")
