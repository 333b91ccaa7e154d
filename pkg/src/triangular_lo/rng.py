"""Seed derivation for reproducible trials.

Every trial gets its own 64-bit seed, derived from a master seed and the
trial index with the SplitMix64 finalizer.  The seed then drives a numpy
``PCG64`` bit generator, so a trial's output never depends on which worker
ran it or in which order.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(x):
    """One SplitMix64 step: add the golden gamma, then apply the finalizer."""
    z = (x + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_seed(master_seed, trial_index):
    """Seed for trial ``trial_index`` of a run started from ``master_seed``."""
    check_seed(master_seed)
    if trial_index < 0:
        raise ValueError(f"trial_index must be non-negative, got {trial_index}")
    return splitmix64(master_seed ^ splitmix64(trial_index))


def check_seed(seed):
    if not isinstance(seed, (int, np.integer)) or not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(check_seed(seed)))
