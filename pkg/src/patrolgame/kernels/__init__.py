"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``PATROL_PURE_PYTHON=1`` to force the pure implementations (used by
the benchmark to compare both).  The native kernels only accept inputs
they can hold in machine words; the dispatchers below fall back to the
pure twin for anything wider.
"""

import os

from . import pure

if os.environ.get("PATROL_PURE_PYTHON"):
    _native = None
else:
    try:
        from . import _native
    except ImportError:
        _native = None

HAVE_NATIVE = _native is not None

_INT64_MAX = 2**63 - 1


def enumerate_cyclic_sequences(neighbors, period):
    if _native is not None and len(neighbors) < 128:
        return _native.enumerate_cyclic_sequences(neighbors, period)
    return pure.enumerate_cyclic_sequences(neighbors, period)


def coverage_masks(walks, n, period, duration):
    if _native is not None and n * period <= 64:
        return _native.coverage_masks(walks, n, period, duration)
    return pure.coverage_masks(walks, n, period, duration)


def greedy_union(masks, weights, k):
    return pure.greedy_union(masks, weights, k)


def max_weight_union(masks, weights, k, cap=None):
    if (
        _native is not None
        and masks
        and len(weights) <= 64
        and max(masks) < 2**64
        and sum(weights) <= _INT64_MAX
        and all(0 <= w for w in weights)
    ):
        return _native.max_weight_union(masks, weights, k, cap)
    return pure.max_weight_union(masks, weights, k, cap)
