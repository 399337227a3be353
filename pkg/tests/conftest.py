import numpy as np
import pytest

import ring_thermo as rt

STRENGTHS = (0.0, 0.3, 0.6, 0.9, 1.2)


@pytest.fixture
def unit_model():
    """omega = 1 eV, m*r0 = 1: the convention used for dataset reproduction."""
    return rt.RingModel.dimensionless(omega=1.0, mass_radius=1.0)


@pytest.fixture
def strengths():
    return STRENGTHS


@pytest.fixture
def both_variants():
    return (rt.Coupling.anisotropic, rt.Coupling.isotropic)


@pytest.fixture
def t_grid_20():
    return np.linspace(0.2, 1.0, 20)
