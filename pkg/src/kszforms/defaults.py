"""Default configuration values for kszforms."""

# Alternating ascent
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 500
DEFAULT_STARTS = 32

# Slots with at most this many coordinates get every basis vector as a start
STRUCTURED_START_LIMIT = 8

# Exhaustive enumeration caps (number of evaluations / number of sign tensors)
DEFAULT_VERTEX_CAP = 2**24
EXHAUSTIVE_SEARCH_CAP = 2**20

# Rows handled per vectorized block inside the vertex oracle
VERTEX_BLOCK_ROWS = 2**14

# Power iteration for the l2 x l2 oracle
POWER_TOL = 1e-10
POWER_MAX_ITER = 10_000

# Points on the angular grid of the brute-force bilinear search
DEFAULT_GRID_POINTS = 100_000

# Unimodularity checks: generators are held to the tight bound, readers to the loose one
GENERATOR_UNIMODULAR_TOL = 1e-12
READER_UNIMODULAR_TOL = 1e-9

# Tolerance for "this start vector is on the unit sphere"
UNIT_START_TOL = 1e-8

# Run record format
RECORD_SCHEMA_VERSION = 1

# Experiment kinds understood by the record reader
EXPERIMENT_KINDS = (
    "min-norm-search",
    "slope",
    "conjecture-ratio",
    "fourier-scan",
    "constant-one",
)

# Fourier grid used by `fourier-scan` and `constant` when none is given
DEFAULT_FOURIER_DIMS = (1, 2, 4, 8, 16)
DEFAULT_FOURIER_PS = ("2", "3", "4", "inf")

# Conjecture path: n1 = 1, n2 = n3 = 4**k for k = 0..6
DEFAULT_CONJECTURE_NS = tuple(4**k for k in range(7))
CONJECTURE_PS = ("3/2", "3", "3")

# Environment variable holding the default worker count
THREADS_ENV_VAR = "KSZFORMS_THREADS"

# Default config file path
DEFAULT_CONFIG_PATH = ".kszforms/settings.json"

# Default run-log directory (relative to cwd)
DEFAULT_OUTPUT_DIR = ".kszforms"

# Default configuration values (for init command)
DEFAULT_CONFIG = {
    "estimator": {
        "starts": DEFAULT_STARTS,
        "tol": DEFAULT_TOL,
        "max_iter": DEFAULT_MAX_ITER,
        "vertex_cap": DEFAULT_VERTEX_CAP,
        "threads": 1,
    },
    "logging": {
        "enabled": True,
        "output_dir": DEFAULT_OUTPUT_DIR,
        "verbose": False,
    },
}

# Default .gitignore content for .kszforms directory
DEFAULT_GITIGNORE = """# kszforms run logs (auto-generated)
runs/
"""
