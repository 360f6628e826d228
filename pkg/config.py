"""Configuration for the monic representation / Gorenstein-projective toolkit."""

import os

from dotenv import load_dotenv

# Local overrides (.env.local next to this file), then the process environment
_ENV_PATH = os.path.join(os.path.dirname(__file__), ".env.local")
if os.path.exists(_ENV_PATH):
    load_dotenv(_ENV_PATH)


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or value.strip() == "":
        return default
    return int(value)


# ── Field ─────────────────────────────────────────────────────────────────────
DEFAULT_PRIME = _env_int("MONIC_PRIME", 101)
# Residues stay int64 below this bound; larger primes use Python ints
NUMPY_PRIME_LIMIT = 2 ** 24
# Random rational entries are drawn from [-bound, bound]
RATIONAL_RANDOM_BOUND = 3

# ── Algebras ──────────────────────────────────────────────────────────────────
# A nonzero path longer than this means the algebra is not finite-dimensional
PATH_LENGTH_CAP = 64

# ── Gorenstein-projective oracle ──────────────────────────────────────────────
GP_DEPTH = _env_int("MONIC_GP_DEPTH", 12)
ISO_TRIALS = _env_int("MONIC_ISO_TRIALS", 32)
GP_MODES = ["auto", "semisimple", "selfinjective", "bounded"]

# ── Sampling ──────────────────────────────────────────────────────────────────
DEFAULT_SEED = _env_int("MONIC_SEED", 0)
MAX_BRANCH_DIM = 4
RANDOM_REP_ATTEMPTS = 100
EPI_SAMPLE_ATTEMPTS = 100
AUTOMORPHISM_ATTEMPTS = 20
# Share of sampled reps drawn from the monic sampler in mixed suites
MONIC_SAMPLE_SHARE = 0.5
# Largest number of tensor summands in a sampled monic rep
MONIC_SUMMANDS = 2
# Random base modules tried by the tensor-gp corollary rows, besides simples and projectives
TENSOR_RANDOM_MODULES = 3

# Default sample counts per suite kind
SUITE_SAMPLES = {
    "extension": 200,
    "kernel-of-epi": 100,
    "summand": 50,
    "projective-containment": 1,
    "corollary": 200,
    "thm23": 100,
    "adjunction": 100,
    "injective-lift": 50,
}
CLOSURE_KINDS = ["extension", "kernel-of-epi", "summand", "projective-containment"]
SUITE_KINDS = ["closure", "corollary", "thm23", "adjunction", "injective"]

# ── Reports / CLI ─────────────────────────────────────────────────────────────
SCHEMA_VERSION = 1
REPORT_FORMATS = ["text", "json"]

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2
EXIT_UNKNOWN = 3
EXIT_INTERNAL = 4
