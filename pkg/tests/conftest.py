import numpy as np
import pytest


def random_density(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random full-rank density matrix from a Ginibre sample."""
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = G @ G.conj().T
    return rho / rho.trace()


def random_hermitian(n: int, rng: np.random.Generator) -> np.ndarray:
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (G + G.conj().T) / 2.0


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
