"""Static constants for nilbal.

Tunable limits (coset bound, bar-complex bounds, sweep bounds, primes) are
configured via ``nilbal.config.NilbalConfig`` and loaded from environment
variables / ``.env`` file. Only values fixed by the mathematics or by the
output contract live here.
"""

# Exit codes
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ASSERTION_FAILED = 2

# Verdict strings (see nilbal.models.Verdict)
VERDICT_BALANCED = "balanced-consistent"
VERDICT_NOT_BALANCED = "not-homologically-balanced"
VERDICT_UNDETERMINED = "undetermined"

# Highest homological degree built by tower resolutions
RESOLUTION_TOP_DEGREE = 3

# Rows of the bar boundary matrix reduced per streaming chunk
BAR_CHUNK_ROWS = 4096

# Abelian groups with more invariant factors than this are not enumerated
# exhaustively; their unipotent automorphisms are listed up to conjugacy
MAX_ENUMERATED_FACTORS = 3

# Fox–Lyndon family: smallest admissible base order
PARTIAL3_MIN_K = 8

# Primes at which the catalog compares the Fox Jacobian with the Smith form
FOX_CHECK_PRIMES = (2, 3, 5, 7, 11, 13)

# Memoised products and automorphism powers kept per tower
TOWER_CACHE_SIZE = 1 << 16
