import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cntminority.device_model import (
    DEFAULT_CONSTANTS,
    Chirality,
    CntDevice,
    Kind,
    MetallicTubeError,
    ModelCard,
    chiral_length,
    classify,
    diameter,
    threshold_voltage,
    vth_from_diameter,
)

A0 = 0.142


def oracle_chiral_length(n1, n2):
    # Law of cosines on the two lattice vectors, |a1| = |a2| = 2*a0*sin(60 deg).
    a = 2 * A0 * math.sin(math.radians(60))
    return math.sqrt(a * a * n1 * n1 + a * a * n2 * n2 + 2 * a * a * n1 * n2 * math.cos(math.radians(60)))


chiralities = st.tuples(st.integers(0, 100), st.integers(0, 100)).filter(lambda c: c != (0, 0))
semiconducting = chiralities.filter(lambda c: (c[0] - c[1]) % 3 != 0)


@pytest.mark.parametrize(
    "c, kind",
    [((3, 3), Kind.METALLIC), ((19, 0), Kind.SEMICONDUCTING), ((9, 0), Kind.METALLIC), ((10, 0), Kind.SEMICONDUCTING)],
)
def test_classify(c, kind):
    assert classify(Chirality(*c)) is kind


@pytest.mark.parametrize("c, expected", [((19, 0), 1.4875), ((10, 10), 1.3560), ((1, 0), 0.0783)])
def test_diameter_examples(c, expected):
    assert diameter(c) == pytest.approx(expected, abs=5e-5)


@pytest.mark.parametrize("c, expected", [((19, 0), 4.6731), ((1, 1), 0.4260)])
def test_chiral_length_examples(c, expected):
    assert chiral_length(c) == pytest.approx(expected, abs=5e-5)


@given(chiralities)
def test_chiral_length_matches_geometry_oracle(c):
    assert chiral_length(c) == pytest.approx(oracle_chiral_length(*c), rel=1e-12)


@given(chiralities)
def test_chiral_length_is_pi_diameter(c):
    assert chiral_length(c) / diameter(c) == pytest.approx(math.pi, rel=1e-12)


def test_threshold_voltage_examples():
    assert vth_from_diameter(1.0) == pytest.approx(0.43)
    assert threshold_voltage((19, 0)) == pytest.approx(0.43 / oracle_chiral_length(19, 0) * math.pi, rel=1e-12)
    assert threshold_voltage((19, 0)) == pytest.approx(0.2891, abs=5e-5)


def test_metallic_has_no_threshold():
    with pytest.raises(MetallicTubeError, match="metallic"):
        threshold_voltage((9, 0))


@given(semiconducting)
def test_vth_times_diameter_is_constant(c):
    assert threshold_voltage(c) * diameter(c) == pytest.approx(0.43, rel=1e-12)


@given(chiralities)
def test_classification_periodic_in_n1(c):
    n1, n2 = c
    assert classify((n1 + 3, n2)) is classify((n1, n2))


def test_zigzag_diameter_increasing():
    ds = [diameter((n, 0)) for n in range(1, 60)]
    assert all(b > a for a, b in zip(ds, ds[1:]))


@pytest.mark.parametrize("bad", [(0, 0), (-1, 2), (2, -1)])
def test_invalid_chirality(bad):
    with pytest.raises(ValueError):
        Chirality(*bad)
    with pytest.raises(ValueError):
        diameter(bad)


def test_device_record():
    dev = CntDevice.from_chirality(Chirality(19, 0))
    assert dev.kind is Kind.SEMICONDUCTING
    assert dev.threshold_voltage * dev.diameter == pytest.approx(0.43, rel=1e-12)
    assert dev.chiral_length == pytest.approx(math.pi * dev.diameter, rel=1e-12)
    metal = CntDevice.from_chirality(Chirality(9, 0))
    assert metal.kind is Kind.METALLIC and metal.threshold_voltage is None


def test_constants_and_model_card_defaults():
    assert DEFAULT_CONSTANTS.v_pi == 3.033
    assert DEFAULT_CONSTANTS.a0_cc == 0.142
    card = ModelCard()
    assert (card.channel_length, card.mean_free_path, card.source_ext, card.drain_ext) == (32, 100, 32, 32)
    assert (card.k_gate, card.t_ox, card.c_sub, card.e_fermi) == (16, 4, 40e-12, 6)
