import numpy as np
import pytest

from pqckit import (
    CapacityError,
    Statevector,
    apply_gate,
    fidelity,
    generalized_distance,
    project_out,
    rotation,
    standard_gate,
    zero_state,
)
from oracles import gate_on_register, wedge_distance_double_sum

rng = np.random.default_rng(1303)


def random_state(n):
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return Statevector(n, v / np.linalg.norm(v))


def test_zero_state_examples():
    assert np.array_equal(zero_state(1).amplitudes, [1, 0])
    assert np.array_equal(zero_state(2).amplitudes, [1, 0, 0, 0])
    s4 = zero_state(4)
    assert s4.amplitudes.shape == (16,)
    assert s4.amplitudes[0] == 1


def test_zero_state_capacity():
    with pytest.raises(CapacityError):
        zero_state(0)
    with pytest.raises(CapacityError):
        zero_state(13)


def test_statevector_rejects_unnormalized():
    with pytest.raises(ValueError):
        Statevector(1, np.array([1.0, 1.0]))


def test_apply_gate_x_flips_msb():
    """X on qubit 0 of |00> gives |10> (qubit 0 is the most significant bit)."""
    out = apply_gate(zero_state(2), rotation("X", np.pi), [0])
    assert abs(out.amplitudes[2] + 1j) < 1e-12  # exp(-i pi X/2)|0> = -i|1>


def test_apply_gate_identity_leaves_state():
    from pqckit.gates import GateSpec

    ident = GateSpec("id2", 2, np.eye(4))
    s = random_state(3)
    out = apply_gate(s, ident, [2, 0])
    np.testing.assert_allclose(out.amplitudes, s.amplitudes, atol=1e-14)


def test_apply_gate_diamond_paper_entries():
    dia = standard_gate("DIAMOND")
    e3 = np.zeros(16, complex)
    e3[3] = 1  # |0011>
    out = apply_gate(Statevector(4, e3), dia, [0, 1, 2, 3])
    expected = np.zeros(16, complex)
    expected[3] = -1
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-14)


def test_apply_gate_validates_targets():
    cnot = standard_gate("CNOT")
    s = zero_state(2)
    with pytest.raises(ValueError):
        apply_gate(s, cnot, [0])  # arity mismatch
    with pytest.raises(ValueError):
        apply_gate(s, cnot, [1, 1])  # duplicates
    with pytest.raises(ValueError):
        apply_gate(s, cnot, [0, 2])  # out of range


def test_apply_gate_matches_dense_oracle():
    """Strided kernel application agrees with an explicit kron-style operator."""
    for n in (2, 3, 4):
        for _ in range(5):
            k = rng.integers(1, min(n, 3) + 1)
            targets = list(rng.permutation(n)[:k])
            m = np.linalg.qr(rng.normal(size=(1 << k, 1 << k))
                             + 1j * rng.normal(size=(1 << k, 1 << k)))[0]
            from pqckit.gates import GateSpec

            gate = GateSpec("rand", k, m)
            s = random_state(n)
            out = apply_gate(s, gate, targets)
            expected = gate_on_register(m, targets, n) @ s.amplitudes
            np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)


def test_norm_preserved_by_unitaries():
    for _ in range(20):
        s = random_state(4)
        out = apply_gate(s, rotation("Y", rng.uniform(0, 2 * np.pi)), [int(rng.integers(4))])
        out = apply_gate(out, standard_gate("ISWAP"), [1, 3])
        assert abs(np.linalg.norm(out.amplitudes) ** 2 - 1) < 1e-10


def test_disjoint_gates_commute():
    for _ in range(10):
        s = random_state(4)
        g1 = rotation("X", rng.uniform(0, 2 * np.pi))
        g2 = standard_gate("ISWAP")
        a = apply_gate(apply_gate(s, g1, [0]), g2, [2, 3])
        b = apply_gate(apply_gate(s, g2, [2, 3]), g1, [0])
        np.testing.assert_allclose(a.amplitudes, b.amplitudes, atol=1e-12)


def test_fidelity_examples():
    zero = zero_state(1)
    one = Statevector(1, np.array([0, 1], complex))
    plus = Statevector(1, np.array([1, 1]) / np.sqrt(2))
    assert fidelity(zero, zero) == pytest.approx(1.0, abs=1e-14)
    assert fidelity(zero, one) == pytest.approx(0.0, abs=1e-14)
    assert fidelity(plus, zero) == pytest.approx(0.5, abs=1e-14)
    assert fidelity(plus, zero) == fidelity(zero, plus)


def test_fidelity_dimension_mismatch():
    with pytest.raises(ValueError):
        fidelity(zero_state(1), zero_state(2))


def test_fidelity_bounds_random():
    for _ in range(50):
        f = fidelity(random_state(3), random_state(3))
        assert 0.0 <= f <= 1.0 + 1e-12


def test_project_out_examples():
    ten = Statevector(2, np.array([0, 0, 1, 0], complex))  # |10>
    np.testing.assert_array_equal(project_out(ten, 0, 1).amplitudes, [1, 0])
    np.testing.assert_array_equal(project_out(ten, 0, 0).amplitudes, [0, 0])
    bell = Statevector(2, np.array([1, 0, 0, 1]) / np.sqrt(2))
    np.testing.assert_allclose(project_out(bell, 0, 0).amplitudes, [1 / np.sqrt(2), 0])


def test_project_out_completeness():
    """Branch norms add to 1 for every qubit."""
    for n in (2, 3, 5):
        s = random_state(n)
        for j in range(n):
            n0 = np.linalg.norm(project_out(s, j, 0).amplitudes) ** 2
            n1 = np.linalg.norm(project_out(s, j, 1).amplitudes) ** 2
            assert abs(n0 + n1 - 1) < 1e-10


def test_project_out_range_check():
    with pytest.raises(ValueError):
        project_out(zero_state(2), 2, 0)


def test_generalized_distance_examples():
    assert generalized_distance([1, 0], [1, 0]) == 0.0
    assert generalized_distance([1, 0], [0, 1]) == pytest.approx(1.0, abs=1e-14)
    r = 1 / np.sqrt(2)
    assert generalized_distance([r, 0], [0, r]) == pytest.approx(0.25, abs=1e-14)


def test_generalized_distance_matches_double_sum():
    for dim in (2, 4, 8):
        for _ in range(20):
            u = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
            u /= np.linalg.norm(u) * rng.uniform(1, 2)
            v /= np.linalg.norm(v) * rng.uniform(1, 2)
            got = generalized_distance(u, v)
            want = wedge_distance_double_sum(u, v)
            assert got == pytest.approx(want, abs=1e-12)


def test_generalized_distance_parallel_is_exact_zero():
    """Product-state branches must report exactly zero, not 1e-17 residue."""
    for _ in range(20):
        chi = rng.normal(size=8) + 1j * rng.normal(size=8)
        chi /= np.linalg.norm(chi)
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert generalized_distance(a * chi, b * chi) == 0.0


def test_generalized_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        generalized_distance([1, 0], [1, 0, 0])
