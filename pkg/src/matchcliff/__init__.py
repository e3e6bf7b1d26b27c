"""matchcliff: classical simulation of Clifford-conjugated free-fermion
(matchgate) circuits.

Core pieces: exact Pauli-string algebra, Clifford tableaux with a
structural hierarchy classifier, fermion-to-qubit encodings with a
CZ+SWAP recovery routine, a covariance-matrix Gaussian engine with
Pfaffian readout, a query dispatcher, and a dense-statevector oracle
for verification at small sizes.
"""

from .circuits import (
    BasisInput,
    Circuit,
    CliffordLayer,
    LinearLayer,
    MatchgateLayer,
    ProductInput,
    QuadraticLayer,
)
from .encodings import Encoding, bravyi_kitaev, decompose_pauli, jordan_wigner, validate
from .gaussian import CovarianceMatrix, MarginalQuery
from .pauli import PauliString
from .simulator import (
    UnsupportedQuery,
    classify_circuit,
    ghz4_gadget,
    restricted_pauli_expectation,
    run_expectation,
    run_marginal,
)
from .tableau import CliffordClass, CliffordTableau, from_gates, random_tableau

__all__ = [
    "BasisInput",
    "Circuit",
    "CliffordClass",
    "CliffordLayer",
    "CliffordTableau",
    "CovarianceMatrix",
    "Encoding",
    "LinearLayer",
    "MarginalQuery",
    "MatchgateLayer",
    "PauliString",
    "ProductInput",
    "QuadraticLayer",
    "UnsupportedQuery",
    "bravyi_kitaev",
    "classify_circuit",
    "decompose_pauli",
    "from_gates",
    "ghz4_gadget",
    "jordan_wigner",
    "random_tableau",
    "restricted_pauli_expectation",
    "run_expectation",
    "run_marginal",
    "validate",
]

__version__ = "0.1.0"
