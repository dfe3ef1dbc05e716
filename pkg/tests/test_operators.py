import math

import numpy as np
import pytest

from circledual import (
    Basis,
    BasisError,
    DimensionError,
    OperatorMatrix,
    OscillatorConfig,
    apply_operator,
    build_duality_map,
    build_hamiltonian,
    build_ladder,
    build_position_momentum,
    commutator,
    conjugate_to_ontological,
    energy_state,
    ontological_element,
    ontological_matrix,
    ontological_state,
)

AGREEMENT_TOL = 1e-10


def test_ladder_dim2():
    a, adag = build_ladder(2)
    assert np.array_equal(a.entries, [[0.0, 1.0], [0.0, 0.0]])
    assert np.array_equal(adag.entries, [[0.0, 0.0], [1.0, 0.0]])


def test_ladder_dim3_superdiagonal():
    a, _ = build_ladder(3)
    assert a.entries[0, 1] == 1.0
    assert abs(a.entries[1, 2] - math.sqrt(2.0)) < 1e-15
    assert np.count_nonzero(a.entries) == 2


def test_ground_state_annihilated():
    a, _ = build_ladder(5)
    out = apply_operator(a, energy_state(0, 5))
    assert np.all(out.amplitudes == 0.0)


def test_position_momentum_dim2():
    x, p = build_position_momentum(2)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    assert np.max(np.abs(x.entries - inv_sqrt2 * np.array([[0, 1], [1, 0]]))) < 1e-15
    expected_p = inv_sqrt2 * np.array([[0, -1j], [1j, 0]])
    assert np.max(np.abs(p.entries - expected_p)) < 1e-15


def test_hermiticity_large():
    x, p = build_position_momentum(256)
    assert x.hermiticity_defect() <= 1e-12
    assert p.hermiticity_defect() <= 1e-12


def test_hamiltonian_values():
    h = build_hamiltonian(OscillatorConfig(4))
    assert np.array_equal(np.diag(h.entries).real, [0.0, 1.0, 2.0, 3.0])
    h_scaled = build_hamiltonian(OscillatorConfig(3, omega=2.5))
    assert np.array_equal(np.diag(h_scaled.entries).real, [0.0, 2.5, 5.0])
    assert build_hamiltonian(OscillatorConfig(1)).entries[0, 0] == 0.0


def test_config_validation():
    with pytest.raises(DimensionError):
        OscillatorConfig(0)
    with pytest.raises(ValueError):
        OscillatorConfig(3, omega=-1.0)


def test_site_basis_hamiltonian_has_constant_diagonal():
    n = 12
    h = build_hamiltonian(OscillatorConfig(n))
    h_site = conjugate_to_ontological(h, build_duality_map(n))
    assert h_site.basis is Basis.ONTOLOGICAL
    assert np.max(np.abs(np.diag(h_site.entries) - (n - 1) / 2.0)) < 1e-12


def test_identity_is_fixed_by_conjugation():
    n = 9
    eye = OperatorMatrix(Basis.ENERGY, np.eye(n), hermitian=True)
    out = conjugate_to_ontological(eye, build_duality_map(n))
    assert np.max(np.abs(out.entries - np.eye(n))) < 1e-13


def test_spectrum_preserved_by_conjugation():
    n = 64
    omega = 1.3
    h = build_hamiltonian(OscillatorConfig(n, omega))
    h_site = conjugate_to_ontological(h, build_duality_map(n))
    eigs = np.sort(np.linalg.eigvalsh(h_site.entries))
    assert np.max(np.abs(eigs - omega * np.arange(n))) < 1e-9


@pytest.mark.parametrize("kind", ["a", "adag", "x", "p"])
@pytest.mark.parametrize("n", [2, 16, 64])
def test_closed_form_matches_conjugation(kind, n):
    dmap = build_duality_map(n)
    a, adag = build_ladder(n)
    x, p = build_position_momentum(n)
    level_ops = {"a": a, "adag": adag, "x": x, "p": p}
    closed = ontological_matrix(kind, n).entries
    conjugated = conjugate_to_ontological(level_ops[kind], dmap).entries
    assert np.max(np.abs(closed - conjugated)) <= AGREEMENT_TOL


def test_scalar_element_consistency():
    n = 64
    x, _ = build_position_momentum(n)
    conjugated = conjugate_to_ontological(x, build_duality_map(n)).entries
    assert abs(ontological_element("x", n, 3, 17) - conjugated[3, 17]) <= AGREEMENT_TOL


def test_element_trivial_and_diagonal_cases():
    assert ontological_element("a", 1, 0, 0) == 0.0
    # s1 == s2: kernel argument is 1, so the sum is real
    n = 16
    direct = sum(math.sqrt(k) for k in range(1, n)) / n
    phi1 = 2.0 * math.pi * 3 / n
    expected = direct * np.exp(-1j * phi1)
    assert abs(ontological_element("a", n, 3, 3) - expected) < 1e-12


def test_element_index_validation():
    with pytest.raises(DimensionError):
        ontological_element("a", 4, 4, 0)
    with pytest.raises(ValueError):
        ontological_element("b", 4, 0, 0)


def test_ladder_commutator_truncation():
    a, adag = build_ladder(4)
    defect = commutator(a, adag).entries
    assert np.max(np.abs(defect - np.diag([1.0, 1.0, 1.0, -3.0]))) < 1e-14


@pytest.mark.parametrize("n", [2, 4, 64])
def test_xp_commutator_is_i_with_top_level_defect(n):
    x, p = build_position_momentum(n)
    defect = commutator(x, p).entries
    expected = 1j * np.eye(n)
    expected[n - 1, n - 1] = 1j * (1.0 - n)
    assert np.max(np.abs(defect - expected)) <= 1e-10
    # restricted to the first n-1 levels the canonical value is exact
    block = defect[: n - 1, : n - 1] - 1j * np.eye(n - 1)
    assert np.max(np.abs(block)) <= 1e-12


def test_anything_commutes_with_itself():
    h = build_hamiltonian(OscillatorConfig(6))
    assert np.all(commutator(h, h).entries == 0.0)


def test_commutator_mismatch_errors():
    a4, _ = build_ladder(4)
    a5, _ = build_ladder(5)
    with pytest.raises(DimensionError):
        commutator(a4, a5)
    site_a = ontological_matrix("a", 4)
    with pytest.raises(BasisError):
        commutator(a4, site_a)


def test_heisenberg_flow_derivative():
    """d/dt of e^{iHt} x e^{-iHt} at t=0 equals i[H, x] = p.

    Central difference in t with step 1e-4; the top-right truncation edge
    is excluded from the comparison.
    """
    n = 16
    x, p = build_position_momentum(n)
    levels = np.arange(n)
    step = 1e-4

    def evolved(t):
        phases = np.exp(1j * levels * t)
        return phases[:, None] * x.entries * phases.conj()[None, :]

    derivative = (evolved(step) - evolved(-step)) / (2.0 * step)
    block = slice(0, n - 2)
    assert np.max(np.abs(derivative[block, block] - p.entries[block, block])) <= 1e-6


def test_small_time_rotation_mixes_x_into_p():
    n = 24
    x, p = build_position_momentum(n)
    t = 1e-2
    levels = np.arange(n)
    phases = np.exp(1j * levels * t)
    x_t = phases[:, None] * x.entries * phases.conj()[None, :]
    approx = x.entries * math.cos(t) + p.entries * math.sin(t)
    block = slice(0, n - 2)
    assert np.max(np.abs(x_t[block, block] - approx[block, block])) <= 1e-5


def test_declared_hermitian_is_validated():
    bad = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        OperatorMatrix(Basis.ENERGY, bad, hermitian=True)


def test_apply_operator_enforces_tags():
    x, _ = build_position_momentum(4)
    with pytest.raises(BasisError):
        apply_operator(x, ontological_state(2, 4))
