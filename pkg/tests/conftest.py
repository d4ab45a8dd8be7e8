import numpy as np
import pytest

import mellinlab as ml


@pytest.fixture(scope="session")
def cat():
    return ml.catalog()


@pytest.fixture(scope="session")
def qcfg():
    return ml.QuadratureConfig(rel_tol=1e-10, max_refinement_depth=12)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)
