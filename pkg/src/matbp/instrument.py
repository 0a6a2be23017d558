"""Pass counters used to check how many forward/backward passes and cost
evaluations a gradient computation performs."""

from collections import Counter
from contextlib import contextmanager

_active = []


@contextmanager
def count_calls():
    """Collect event counts for the duration of the ``with`` block.

    >>> with count_calls() as counts:
    ...     record("forward")
    >>> counts["forward"]
    1
    """
    counts = Counter()
    _active.append(counts)
    try:
        yield counts
    finally:
        _active.remove(counts)


def record(event):
    for counts in _active:
        counts[event] += 1
