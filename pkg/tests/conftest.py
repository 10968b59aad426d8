from __future__ import annotations

import os
import random

import pytest

SEED = int(os.environ.get("MONOPOLE_OBSTRUCT_SEED", "20240601"))


def pytest_report_header(config):
    return f"MONOPOLE_OBSTRUCT_SEED={SEED}"


@pytest.fixture
def rng() -> random.Random:
    return random.Random(SEED)
