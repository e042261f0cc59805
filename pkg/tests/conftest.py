import math

import numpy as np
import pytest
from scipy.linalg import expm

from nscloning import _pykernels
from nscloning.pseudospin import spin_operators

try:
    from nscloning import _ckernels
except ImportError:  # extension not built
    _ckernels = None

KERNEL_IMPLS = [pytest.param(_pykernels, id="python")]
KERNEL_IMPLS.append(
    pytest.param(_ckernels, id="cython",
                 marks=pytest.mark.skipif(_ckernels is None, reason="extension not built"))
)


@pytest.fixture(params=KERNEL_IMPLS)
def kernel_impl(request):
    return request.param


def expm_rotation(two_j, theta, phi=0.0):
    """Independent oracle: exp(-i phi J_z) exp(-i theta J_y) by matrix exponential."""
    _, jy, jz = spin_operators(two_j)
    return expm(-1j * phi * jz) @ expm(-1j * theta * jy)


def bloch_projector(theta, phi):
    """|n><n| in (up, down) order from the Bloch vector, no kets involved."""
    x, y, z = math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)
    return 0.5 * np.array([[1 + z, x - 1j * y], [x + 1j * y, 1 - z]])
