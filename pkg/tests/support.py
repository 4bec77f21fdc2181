"""Shared parameter sets for the test suite."""

from gdmux import SystemParams

# desk-scale systems with p^m <= 1000, used for exhaustive property checks
SMALL_SYSTEMS = [
    (3, 1, 2),
    (5, 1, 4),
    (7, 1, 6),
    (7, 1, 3),
    (11, 1, 10),
    (13, 1, 12),
    (3, 2, 8),
    (5, 2, 24),
    (3, 3, 26),
]

# the acceptance trio
ACCEPT_SYSTEMS = [(5, 1, 4), (3, 3, 26), (7, 2, 48)]


def make(p, m, N) -> SystemParams:
    return SystemParams.create(p, m, N)
