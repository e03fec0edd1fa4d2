import numpy as np
import pytest
from hypothesis import settings

from operators.paired import PairedSpec
from symbols.parser import parse_symbol

settings.register_profile("paired", max_examples=50, deadline=None, derandomize=True)
settings.load_profile("paired")


@pytest.fixture
def z():
    return parse_symbol("z")


@pytest.fixture
def extremal_spec():
    """(1, z): sigma = sqrt(2) M at every band."""
    return PairedSpec.of("1", "z")


@pytest.fixture
def pinned_kernel_specs():
    return {
        "two": PairedSpec.of("z^-1", "z"),
        "one": PairedSpec.of("z^-1", "1"),
        "trivial": PairedSpec.of("1", "1 - z"),
    }


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
