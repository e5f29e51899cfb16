import numpy as np
import pytest

from dirgsp import Spectrum, directed_cycle, laplacian, perturbed_cycle

# seeds whose n=20, p=0.2, w=0.8 instances have kappa(V) > 10
NONNORMAL_SEEDS = (1, 2)


def cycle_spectrum(n=20):
    return Spectrum.from_laplacian(laplacian(directed_cycle(n)))


def perturbed_spectrum(seed, n=20, p=0.2, w=0.8):
    return Spectrum.from_laplacian(laplacian(perturbed_cycle(n, p, w, seed)))


@pytest.fixture(scope="session")
def cycle20():
    return cycle_spectrum(20)


@pytest.fixture(scope="session", params=NONNORMAL_SEEDS, ids=lambda s: f"seed{s}")
def perturbed20(request):
    return perturbed_spectrum(request.param)


@pytest.fixture(
    scope="session",
    params=["cycle", "perturbed-1", "perturbed-2"],
)
def test_graph(request):
    """(label, Laplacian matrix, Spectrum) for every standard test graph."""
    if request.param == "cycle":
        g = directed_cycle(20)
    else:
        g = perturbed_cycle(20, 0.2, 0.8, int(request.param.split("-")[1]))
    lap = laplacian(g)
    return request.param, lap.matrix, Spectrum.from_laplacian(lap)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
