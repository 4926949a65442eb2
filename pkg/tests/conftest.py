"""Shared fixtures: memoized full pipeline runs keyed by builtin spec."""

import pytest

from hopfusion.builtins import default_characteristic, make_builtin
from hopfusion.field import gf_construct
from hopfusion.pipeline import run_pipeline


@pytest.fixture(scope="session")
def pipeline_for():
    """Factory returning (and caching) a full pipeline run for a builtin."""
    cache = {}

    def run(name, p=None, seed=0):
        p = p or default_characteristic(name)
        key = (name, p, seed)
        if key not in cache:
            H = make_builtin(name, gf_construct(p))
            cache[key] = run_pipeline(H, name=f"{name}@p={p}", seed=seed)
        return cache[key]

    return run
