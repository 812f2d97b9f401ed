import time

import pytest

from contraplot import analyze_dataset, bundled_dataset

ACCEPTANCE_SEED = 42
ACCEPTANCE_SAMPLES = 1_000_000


@pytest.fixture(scope="session")
def tpc_1m():
    ds = bundled_dataset("tpc")
    started = time.perf_counter()
    result = analyze_dataset(ds, samples=ACCEPTANCE_SAMPLES, seed=ACCEPTANCE_SEED, workers=4)
    return result, time.perf_counter() - started


@pytest.fixture(scope="session")
def plaque_1m():
    ds = bundled_dataset("plaque")
    started = time.perf_counter()
    result = analyze_dataset(ds, samples=ACCEPTANCE_SAMPLES, seed=ACCEPTANCE_SEED, workers=4)
    return result, time.perf_counter() - started
