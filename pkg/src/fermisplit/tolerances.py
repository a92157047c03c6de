"""Shared numerical tolerances, stated once."""

# Absolute tolerance for complex/real equality checks.
ATOL = 1e-10

# Amplitudes below this are pruned after arithmetic (sparsity guard).
PRUNE = 1e-14

# Singular values below this count as zero when ranks are computed.
RANK_THRESHOLD = 1e-8
