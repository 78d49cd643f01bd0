import os
from dotenv import load_dotenv

load_dotenv()

SCHEMA_VERSION = 1

DEFAULT_WORKERS = int(os.getenv("PRYMSCOPE_WORKERS", "1"))

LOG_FILE = os.getenv("PRYMSCOPE_LOG_FILE", "prymscope.log")
LOG_LEVEL = os.getenv("PRYMSCOPE_LOG_LEVEL", "DEBUG")

# Hard caps for enumeration and canonical forms
MODULUS_MIN = 2
MODULUS_MAX = 16
ROWS_MIN = 1
ROWS_MAX = 4
COLS_MIN = 4
COLS_MAX = 16

PROGRESS_SUFFIX = ".progress"

# verify-paper grids: (modulus, rows) pairs and column ranges
TRICHOTOMY_MODULI = (2, 4, 6, 8, 10, 12)
TRICHOTOMY_COLS = (4, 8)

CYCLIC_SUMS_MODULI = (4, 6, 8, 10, 12)
CYCLIC_SUMS_COLS = (6, 9)

ABELIAN_THM_GRID = ((2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (8, 1), (2, 2))
ABELIAN_THM_COLS = (14, 16)

DEFAULT_SAMPLES = 10000
DEFAULT_SEED = 42

# Sampler bounds for the invariants suite
SAMPLE_MODULUS_MAX = int(os.getenv("PRYMSCOPE_SAMPLE_MODULUS_MAX", "8"))
SAMPLE_ROWS_MAX = int(os.getenv("PRYMSCOPE_SAMPLE_ROWS_MAX", "3"))
SAMPLE_COLS_MAX = int(os.getenv("PRYMSCOPE_SAMPLE_COLS_MAX", "9"))
# canonical keys are only compared where N^m stays small
SAMPLE_KEY_SPACE_MAX = 64
SYMMETRY_SAMPLE_FRACTION = 10
