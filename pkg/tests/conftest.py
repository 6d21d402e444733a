import json

import numpy as np
import pytest

from gausscorr.core import CovMatrix, cm_to_dict
from gausscorr.reference import (MEASURED_CM_STD_ERRORS,
                                 MEASURED_SPLIT_SQUEEZED_CM)


@pytest.fixture
def measured_cm() -> CovMatrix:
    return MEASURED_SPLIT_SQUEEZED_CM


@pytest.fixture
def measured_errors() -> np.ndarray:
    return MEASURED_CM_STD_ERRORS


@pytest.fixture
def measured_cm_file(tmp_path, measured_cm):
    path = tmp_path / "measured_cm.json"
    path.write_text(json.dumps(cm_to_dict(measured_cm)))
    return path


def make_separable_cm(rng, n_loadings=3):
    """Two-mode CM separable by construction: product pure plus classical noise."""
    blocks = []
    for _ in range(2):
        th = rng.uniform(0, 2 * np.pi)
        z = rng.uniform(-0.4, 0.4)
        c, s = np.cos(th), np.sin(th)
        r = np.array([[c, -s], [s, c]])
        blocks.append(r @ np.diag([np.exp(2 * z), np.exp(-2 * z)]) @ r.T)
    g = np.zeros((4, 4))
    g[:2, :2], g[2:, 2:] = blocks
    for _ in range(n_loadings):
        vec = rng.normal(0, 1, 4)
        g += rng.uniform(0.1, 3.0) * np.outer(vec, vec)
    return CovMatrix(g)


def make_coherent_mixture_cm(rng, n_loadings=3):
    """Classical mixture of two-mode coherent states: identity plus classical noise."""
    g = np.eye(4)
    for _ in range(n_loadings):
        vec = rng.normal(0, 1, 4)
        g += rng.uniform(0.1, 4.0) * np.outer(vec, vec)
    return CovMatrix(g)
