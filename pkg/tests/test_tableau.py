import numpy as np
import pytest

from matchcliff import oracle, tableau
from matchcliff.pauli import PauliString
from matchcliff.tableau import (
    CliffordClass,
    CliffordTableau,
    NotAPermutationClifford,
    basis_action,
    classify,
    compose,
    from_gates,
    invert,
    random_tableau,
    stabilizer_state_to_encoding,
)

from conftest import random_clifford_gates, random_pauli_string


def dense_unitary(n, gates):
    u = np.eye(2**n, dtype=complex)
    for g in gates:
        full = np.zeros((2**n, 2**n), dtype=complex)
        for col in range(2**n):
            v = np.zeros(2**n, dtype=complex)
            v[col] = 1.0
            s = oracle.apply_clifford_gate(oracle.DenseState(n, v), g.gate, g.qubits)
            full[:, col] = s.amp
        u = full @ u
    return u


def test_identity_tableau_fixes_all_paulis():
    t = CliffordTableau.identity(3)
    for q in range(3):
        assert t.image_of_x(q) == PauliString.single(3, q, "X")
        assert t.image_of_z(q) == PauliString.single(3, q, "Z")


def test_conjugation_matches_dense():
    rng = np.random.default_rng(0)
    n = 3
    for trial in range(20):
        gates = random_clifford_gates(rng, n, 5)
        t = from_gates(n, [(g.gate, *g.qubits) for g in gates])
        u = dense_unitary(n, gates)
        for _ in range(4):
            p = random_pauli_string(rng, n)
            got = t.conjugate_pauli(p).dense()
            want = u @ p.dense() @ u.conj().T
            assert np.allclose(got, want, atol=1e-10)


def test_compose_and_invert():
    rng = np.random.default_rng(1)
    n = 3
    for trial in range(15):
        ga = random_clifford_gates(rng, n, 4)
        gb = random_clifford_gates(rng, n, 4)
        a = from_gates(n, [(g.gate, *g.qubits) for g in ga])
        b = from_gates(n, [(g.gate, *g.qubits) for g in gb])
        ab = compose(a, b)
        both = from_gates(
            n, [(g.gate, *g.qubits) for g in gb] + [(g.gate, *g.qubits) for g in ga]
        )
        assert ab.images == both.images
        ident = compose(a, invert(a))
        assert ident.images == CliffordTableau.identity(n).images


def test_random_tableau_is_valid_and_seeded():
    for n in (2, 4):
        t1 = random_tableau(n, seed=7)
        t2 = random_tableau(n, seed=7)
        assert t1.images == t2.images
        assert t1.is_valid()


def test_classify_hierarchy():
    n = 3
    swap = from_gates(n, [("SWAP", 0, 2)])
    assert classify(swap) == CliffordClass.SWAP_ONLY
    czsw = from_gates(n, [("SWAP", 0, 1), ("CZ", 1, 2)])
    assert classify(czsw) == CliffordClass.CZ_SWAP
    perm = from_gates(n, [("CNOT", 0, 1), ("S", 2)])
    assert classify(perm) == CliffordClass.PERMUTATION
    gen = from_gates(n, [("H", 0)])
    assert classify(gen) == CliffordClass.GENERAL


def test_classify_is_upward_closed():
    # each class is also a member of the weaker classes' supersets
    n = 2
    ident = CliffordTableau.identity(n)
    assert classify(ident) == CliffordClass.SWAP_ONLY


def test_basis_action_cz_phase():
    t = from_gates(2, [("CZ", 0, 1)])
    bits, phase = basis_action(t, (1, 1))
    assert tuple(bits) == (1, 1) and phase == -1
    bits, phase = basis_action(t, (1, 0))
    assert tuple(bits) == (1, 0) and phase == 1


def test_basis_action_cnot_and_swap():
    t = from_gates(2, [("CNOT", 0, 1)])
    bits, phase = basis_action(t, (1, 0))
    assert tuple(bits) == (1, 1) and phase == 1
    t = from_gates(3, [("SWAP", 0, 2)])
    bits, phase = basis_action(t, (1, 0, 0))
    assert tuple(bits) == (0, 0, 1) and phase == 1


def test_basis_action_matches_dense():
    rng = np.random.default_rng(3)
    n = 3
    checked = 0
    for trial in range(30):
        gates = random_clifford_gates(rng, n, 5, names=("S", "CNOT", "CZ", "SWAP"))
        t = from_gates(n, [(g.gate, *g.qubits) for g in gates])
        u = dense_unitary(n, gates)
        # fix the dense global phase with the tableau's |0...0> convention
        b0, _ = basis_action(t, (0,) * n)
        col0 = u[:, 0]
        idx0 = int("".join(str(int(x)) for x in b0), 2)
        g = col0[idx0]
        assert abs(abs(g) - 1) < 1e-10
        u = u / g
        for _ in range(4):
            bits = rng.integers(0, 2, size=n)
            ob, phase = basis_action(t, bits)
            col = u[:, int("".join(map(str, bits)), 2)]
            want_idx = int(np.argmax(np.abs(col)))
            assert want_idx == int("".join(str(int(x)) for x in ob), 2)
            assert abs(col[want_idx] - phase) < 1e-10
            checked += 1
    assert checked > 0


def test_basis_action_rejects_general_cliffords():
    t = from_gates(2, [("H", 0)])
    with pytest.raises(NotAPermutationClifford):
        basis_action(t, (0, 0))


def test_stabilizer_state_encoding_is_valid():
    from matchcliff.encodings import validate

    t = random_tableau(4, seed=11)
    enc = stabilizer_state_to_encoding(t)
    assert validate(enc) == []
