"""Configuration for the orientation engine"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load .env file from project root
project_root = Path(__file__).parent.parent.parent
env_path = project_root / '.env'
if env_path.exists():
    load_dotenv(env_path)

# Brute-force oracle: 2^m orientations are enumerated
ORACLE_EDGE_CAP: int = int(os.getenv('ORACLE_EDGE_CAP', '24'))

# Atlas rows that need the oracle (C3 / K1K2 sets) are skipped above this size
ATLAS_ORACLE_EDGE_CAP: int = int(os.getenv('ATLAS_ORACLE_EDGE_CAP', '14'))

# Brute-force 3-colouring (3^n with pruning)
COLORING_VERTEX_CAP: int = int(os.getenv('COLORING_VERTEX_CAP', '11'))

# Worker threads for CLI batch mode
DEFAULT_JOBS: int = int(os.getenv('DEFAULT_JOBS', '1'))
