"""Shared state builders for the test suite."""

from __future__ import annotations

import math
from functools import reduce

import numpy as np
import pytest

from entwedge import PureState


def random_state(rng: np.random.Generator, dims) -> PureState:
    """Normalized dense state with iid complex Gaussian amplitudes."""
    size = math.prod(dims)
    vec = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    return PureState(tuple(dims), vec / np.linalg.norm(vec))


def random_product_state(rng: np.random.Generator, dims) -> PureState:
    """Tensor product of independent random unit vectors."""
    factors = []
    for n in dims:
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        factors.append(v / np.linalg.norm(v))
    return PureState(tuple(dims), reduce(np.kron, factors))


def bell_state() -> PureState:
    vec = np.zeros(4, dtype=np.complex128)
    vec[0] = vec[3] = 1 / math.sqrt(2)
    return PureState((2, 2), vec)


def ghz_state(m: int) -> PureState:
    vec = np.zeros(2 ** m, dtype=np.complex128)
    vec[0] = vec[-1] = 1 / math.sqrt(2)
    return PureState((2,) * m, vec)


def w3_state() -> PureState:
    tensor = np.zeros((2, 2, 2), dtype=np.complex128)
    tensor[0, 0, 1] = tensor[0, 1, 0] = tensor[1, 0, 0] = 1 / math.sqrt(3)
    return PureState((2, 2, 2), tensor.reshape(-1))


def bell_x_zero_state() -> PureState:
    tensor = np.zeros((2, 2, 2), dtype=np.complex128)
    tensor[0, 0, 0] = tensor[1, 1, 0] = 1 / math.sqrt(2)
    return PureState((2, 2, 2), tensor.reshape(-1))


def bell_x_bell_state() -> PureState:
    pair = bell_state().amplitudes
    return PureState((2, 2, 2, 2), np.kron(pair, pair))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260817)
