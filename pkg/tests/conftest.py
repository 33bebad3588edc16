import math

import pytest

from xychain import ChainSpec, build_spectral


@pytest.fixture(scope="session")
def sd21():
    """Default 21-site chain, node 1 polarized at beta = 10."""
    return build_spectral(ChainSpec(n_sites=21, polarized_node=1,
                                    inverse_temperature=10.0))


@pytest.fixture(scope="session")
def sd5_full():
    """Small fully polarized chain with an off-center node."""
    return build_spectral(ChainSpec(n_sites=5, polarized_node=2,
                                    inverse_temperature=math.inf))
