"""
Application Configuration
Centralized bounds, paths and exit codes for the library, CLI and explorer
"""
from pathlib import Path

# Paths
ROOT_PATH = Path(__file__).resolve().parent.parent
DATA_PATH = ROOT_PATH / "data"
GRAPHS_PATH = DATA_PATH / "graphs"
HOMS_PATH = DATA_PATH / "homs"
CERTS_PATH = DATA_PATH / "certs"
HIST_FILE = DATA_PATH / "explorer_history.json"

# Search and stabilization bounds
STAGE_CAP = 64
ENTRY_MAX = 8
LAG_MAX = 6
SEARCH_CANDIDATE_LIMIT = 250_000
# parameters of an underdetermined inverse-certificate system are enumerated up to this many
SEARCH_FREE_PARAMETERS = 2

# Rewriting
NORMALIZE_FUEL = 10 ** 6

# Coefficients
DEFAULT_FIELD = "q"
POLYNOMIAL_VARIABLE = "t"

# Explorer
MAX_HISTORY_ITEMS = 50
MAX_FILE_SIZE_KB = 64
ALLOWED_FILE_TYPES = ['graph', 'txt']

# CLI exit codes
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3
