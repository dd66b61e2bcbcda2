import pytest

import torsionlab as tl

# UT2(2) element indices under the canonical encoding 4a + 2b + c.
E11, E12, E22 = 4, 2, 1
ONE = 5
# Bitsets of the seven left ideals of UT2(2), verified against the
# matrix-arithmetic oracle in test_rings.py.
UT2_IDEAL_BITS = (1, 5, 15, 17, 65, 85, 255)
A_BITS = 85       # (e11, e12) = {0, e12, e11, e11+e12}
RE22_BITS = 15    # (e22) = {0, e22, e12, e12+e22}


@pytest.fixture(scope="session")
def ut2():
    return tl.parse_ring_spec("UT2(2)")


@pytest.fixture(scope="session")
def z4():
    return tl.parse_ring_spec("Z(4)")


@pytest.fixture(scope="session")
def z6():
    return tl.parse_ring_spec("Z(6)")


@pytest.fixture(scope="session")
def z8():
    return tl.parse_ring_spec("Z(8)")


@pytest.fixture(scope="session")
def gf2():
    return tl.parse_ring_spec("GF(2)")


@pytest.fixture(scope="session")
def builtin16():
    return tl.builtin_rings(16)


@pytest.fixture(scope="session")
def builtin8():
    return tl.builtin_rings(8)


@pytest.fixture(scope="session")
def ut2_nontrivial(ut2):
    """The validated notion {(e11,e12), R} over UT2(2)."""
    family = [tl.left_ideal_closure(ut2, [E11, E12]),
              tl.left_ideal_closure(ut2, [ut2.one])]
    notion = tl.check_torsion_axioms(ut2, family)
    assert isinstance(notion, tl.TorsionNotion)
    return notion


def trivial_notion(ring):
    notion = tl.check_torsion_axioms(ring, [tl.left_ideal_closure(ring, [ring.one])])
    assert isinstance(notion, tl.TorsionNotion)
    return notion
