import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for reference_values

from qaoadec.codes import LinearCode

import reference_values as ref


@pytest.fixture
def hamming():
    return LinearCode(ref.SYSTEMATIC_G, name="hamming74")


@pytest.fixture
def zero7():
    return np.zeros(7, dtype=np.uint8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
