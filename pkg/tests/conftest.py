"""Shared builders for randomized circuit tests."""
import numpy as np
import pytest

from matchcliff.circuits import (
    BasisInput,
    Circuit,
    CliffordLayer,
    LinearLayer,
    MatchgateLayer,
    ProductInput,
    QuadraticLayer,
)

FIXTURES = "fixtures"

ONE_QUBIT_GATES = ("H", "S")
TWO_QUBIT_GATES = ("CNOT", "CZ", "SWAP")


def random_basis_input(rng, n):
    return BasisInput(tuple(int(b) for b in rng.integers(0, 2, size=n)))


def random_product_input(rng, n):
    return ProductInput(
        tuple((float(t), float(p)) for t, p in rng.normal(size=(n, 2)))
    )


def random_matchgate_layers(rng, n, count, scale=0.6):
    return [
        MatchgateLayer(int(rng.integers(n - 1)), tuple(rng.normal(size=6) * scale))
        for _ in range(count)
    ]


def random_linear_layer(rng, n, scale=0.4):
    return LinearLayer(tuple(rng.normal(size=2 * n) * scale))


def random_quadratic_layer(rng, n, scale=0.3):
    h = rng.normal(size=(2 * n, 2 * n)) * scale
    h = h - h.T
    return QuadraticLayer(tuple(map(tuple, h)))


def random_clifford_gates(rng, n, count, names=None):
    """List of CliffordLayer drawn from the given gate names."""
    if names is None:
        names = ONE_QUBIT_GATES + TWO_QUBIT_GATES
    out = []
    for _ in range(count):
        name = names[rng.integers(len(names))]
        if name in ONE_QUBIT_GATES:
            out.append(CliffordLayer(name, (int(rng.integers(n)),)))
        else:
            a, b = rng.choice(n, size=2, replace=False)
            out.append(CliffordLayer(name, (int(a), int(b))))
    return out


def invert_clifford_gates(gates):
    """Gate-by-gate inverse of a CliffordLayer list."""
    out = []
    for g in reversed(gates):
        if g.gate == "S":
            out.extend([g, g, g])
        else:
            out.append(g)
    return out


def conjugated_circuit(rng, n, inp, conj_gates, body_count=3):
    lead = list(conj_gates)
    trail = invert_clifford_gates(lead)
    body = random_matchgate_layers(rng, n, body_count)
    return Circuit(n, inp, tuple(lead + body + trail), "conjugated")


def random_pauli_string(rng, n):
    from matchcliff.pauli import PauliString

    letters = "IXYZ"
    return PauliString.from_string(
        "".join(letters[rng.integers(4)] for _ in range(n))
    )
