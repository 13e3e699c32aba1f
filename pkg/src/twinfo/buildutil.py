"""Helpers shared by the index builders."""
from __future__ import annotations

import gc
from contextlib import contextmanager


@contextmanager
def bulk_build():
    """Pause cyclic garbage collection while building long-lived indexes.

    Builders allocate many objects that all survive, so each full collection
    rescans a growing heap for nothing and the build turns superlinear."""
    was = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was:
            gc.enable()
