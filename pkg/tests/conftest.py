"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from quditgraph import PauliWord


def random_word(rng: np.random.Generator, d: int, n: int) -> PauliWord:
    xz = tuple(
        (int(rng.integers(0, d)), int(rng.integers(0, d))) for _ in range(n)
    )
    return PauliWord(d, int(rng.integers(0, d)), xz)


def random_state_amps(rng: np.random.Generator, dim: int) -> np.ndarray:
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return z / np.linalg.norm(z)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
