import numpy as np
import pytest

from nogosuper.states import PureState, StateSet


def random_pure_state(rng: np.random.Generator, dim: int) -> PureState:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return PureState(v / np.linalg.norm(v))


def random_state_set(rng: np.random.Generator, dim: int, size: int) -> StateSet:
    return StateSet([random_pure_state(rng, dim) for _ in range(size)])


def random_orthonormal(rng: np.random.Generator, dim: int, k: int) -> list[PureState]:
    """k orthonormal states from the QR factorization of a random complex matrix."""
    m = rng.standard_normal((dim, k)) + 1j * rng.standard_normal((dim, k))
    q, _ = np.linalg.qr(m)
    return [PureState(q[:, i]) for i in range(k)]


def det3_cofactor(g: np.ndarray) -> complex:
    """3x3 determinant by explicit cofactor expansion (independent oracle)."""
    return (
        g[0, 0] * (g[1, 1] * g[2, 2] - g[1, 2] * g[2, 1])
        - g[0, 1] * (g[1, 0] * g[2, 2] - g[1, 2] * g[2, 0])
        + g[0, 2] * (g[1, 0] * g[2, 1] - g[1, 1] * g[2, 0])
    )


def svd_rank_oracle(amplitude_matrix: np.ndarray, tol: float = 1e-9) -> int:
    """Independent rank oracle: numpy SVD of the raw amplitude matrix."""
    sigma = np.linalg.svd(amplitude_matrix, compute_uv=False)
    if sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > tol * sigma[0]))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
