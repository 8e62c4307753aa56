import math

import numpy as np
import pytest

from lopcsim import hwp, jones, pbs, phase_flip, pol_filter, ppbs
from lopcsim.elements import TARGET_SPLIT_MATRIX, ElementSpec

SQ2 = math.sqrt(2.0)
T = 1.0 / math.sqrt(3.0)


def test_hwp_225_is_hadamard():
    m = hwp("t", 22.5).matrix
    assert np.allclose(m, np.array([[1, 1], [1, -1]]) / SQ2, atol=1e-12, rtol=0)


def test_hwp_45_is_swap():
    m = hwp("t", 45.0).matrix
    assert np.allclose(m, [[0, 1], [1, 0]], atol=1e-12, rtol=0)


def test_hwp_0_is_vertical_sign():
    m = hwp("t", 0.0).matrix
    assert np.allclose(m, np.diag([1.0, -1.0]), atol=1e-12, rtol=0)


@pytest.mark.parametrize("angle", [-9.2, 0.0, 15.0, 22.5, 45.0, 75.0, 123.4])
def test_hwp_is_hermitian_involution_with_det_minus_one(angle):
    el = hwp("t", angle)
    m = el.matrix
    assert el.unitary
    assert np.allclose(m, m.conj().T, atol=1e-12, rtol=0)
    assert np.allclose(m @ m, np.eye(2), atol=1e-12, rtol=0)
    assert abs(np.linalg.det(m) + 1.0) < 1e-12


def test_hadamard_squared_is_identity():
    m = hwp("t", 22.5).matrix
    assert np.allclose(m @ m, np.eye(2), atol=1e-12, rtol=0)


def test_pbs_routing_and_unitarity():
    el = pbs("a", "b", "t", "r")
    m = el.matrix
    assert el.unitary
    assert np.allclose(m.conj().T @ m, np.eye(4), atol=1e-12, rtol=0)
    # H transmits straight through, V swaps ports, all with amplitude +1
    assert m[0, 0] == 1 and m[1, 1] == 1
    assert m[2, 3] == 1 and m[3, 2] == 1
    assert el.channels_in == (("a", "H"), ("b", "H"), ("a", "V"), ("b", "V"))
    assert el.channels_out == (("t", "H"), ("r", "H"), ("t", "V"), ("r", "V"))


def test_pbs_rejects_duplicate_ports():
    with pytest.raises(ValueError):
        pbs("a", "a", "t", "r")
    with pytest.raises(ValueError):
        pbs("a", "b", "t", "t")


def test_ppbs_blocks():
    el = ppbs("a", "b", "a", "b", T)
    m = el.matrix
    assert el.unitary
    assert np.allclose(m[:2, :2], np.eye(2), atol=1e-12, rtol=0)
    r = math.sqrt(1 - T * T)
    assert np.allclose(m[2:, 2:], [[T, -r], [r, T]], atol=1e-12, rtol=0)
    # coincidence amplitude is the permanent of the V block
    perm = m[2, 2] * m[3, 3] + m[2, 3] * m[3, 2]
    assert abs(perm + 1.0 / 3.0) < 1e-12


def test_ppbs_transmissivity_range():
    for bad in (0.0, 1.0, -0.2, 1.3):
        with pytest.raises(ValueError):
            ppbs("a", "b", "a", "b", bad)


def test_target_split_matrix_matches_hwp75():
    assert np.allclose(TARGET_SPLIT_MATRIX, hwp("t", 75.0).matrix, atol=1e-12, rtol=0)
    el = jones("t", TARGET_SPLIT_MATRIX)
    # |V> -> (1/2)|H> + (sqrt(3)/2)|V>
    image = el.matrix @ np.array([0.0, 1.0])
    assert np.allclose(image, [0.5, math.sqrt(3) / 2], atol=1e-12, rtol=0)
    assert np.allclose(el.matrix @ el.matrix, np.eye(2), atol=1e-12, rtol=0)


def test_jones_identity_and_subunitarity():
    el = jones("t", np.eye(2))
    assert el.unitary
    with pytest.raises(ValueError):
        jones("t", np.array([[1.0, 0.9], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        jones("t", np.eye(3))


def test_filters():
    f1 = pol_filter("t", 0.5, 0.5)
    assert np.allclose(f1.matrix, np.diag([0.5, 0.5]), atol=1e-15, rtol=0)
    assert not f1.unitary
    f2 = pol_filter("c", T, 1.0)
    assert np.allclose(f2.matrix, np.diag([T, 1.0]), atol=1e-15, rtol=0)
    f1_opt = pol_filter("t", 1 / SQ2, 1 / SQ2)
    sv = np.linalg.svd(f1_opt.matrix, compute_uv=False)
    assert np.allclose(sorted(sv), sorted([1 / SQ2, 1 / SQ2]), atol=1e-12, rtol=0)
    assert pol_filter("t", 1.0, 1.0).unitary
    with pytest.raises(ValueError):
        pol_filter("t", 1.5, 1.0)
    with pytest.raises(ValueError):
        pol_filter("t", 0.5, -0.1)


def test_phase_flip_involution():
    el = phase_flip("t")
    assert el.unitary
    assert np.allclose(el.matrix, np.diag([1.0, -1.0]), atol=1e-15, rtol=0)
    assert np.allclose(el.matrix @ el.matrix, np.eye(2), atol=1e-15, rtol=0)


def test_singular_values_match_transmissivities():
    el = pol_filter("t", 0.3, 0.9)
    sv = np.linalg.svd(el.matrix, compute_uv=False)
    assert np.allclose(sorted(sv), [0.3, 0.9], atol=1e-12, rtol=0)


def test_element_spec_build_round_trips_kinds():
    specs = [
        ElementSpec("pbs", "P", ("a", "b", "t", "r")),
        ElementSpec("ppbs", "Q", ("a", "b", "a", "b"), (complex(T),)),
        ElementSpec("hwp", "W", ("a",), (complex(22.5),)),
        ElementSpec("jones", "J", ("a",), tuple(map(complex, TARGET_SPLIT_MATRIX.ravel()))),
        ElementSpec("filter", "F", ("a",), (complex(0.5), complex(0.5))),
        ElementSpec("phaseflip", "Z", ("a",)),
    ]
    for spec in specs:
        el = spec.build()
        assert el.name == spec.name
