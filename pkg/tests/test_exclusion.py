import pytest

from psu3.exclusion import exclusion_certificate
from psu3.forms import e, wedge
from psu3.holonomy import SUBALGEBRAS, varphi1, varphi2
from psu3.linalg import Subspace

pytestmark = pytest.mark.slow


@pytest.mark.parametrize("h,full", [("r_suc2", 0), ("suc2", 1), ("t2", 0)])
def test_only_the_exceptional_line_has_full_holonomy(h, full):
    cert = exclusion_certificate(h)
    assert cert.ok
    assert len(cert.full_holonomy) == full
    line = Subspace([wedge(varphi1() + varphi2(), e(8)).coeffs])
    dim_h = SUBALGEBRAS[h].dim
    for comp in cert.components:
        if comp.F:
            assert not comp.T and not comp.residual
        if comp.image_dim == dim_h:
            assert line.contains(comp.F.coeffs)
