from __future__ import annotations

import sys
from pathlib import Path

import pytest

from bqlinks import Cocycle2, FiniteBiquandle, Permutation
from bqlinks.cohomology import omega5_cocycle_lattice

DATA = Path(__file__).parent / "data"

SWAP3_ROWS = [[2, 2, 1, 2, 2, 1], [1, 1, 2, 1, 1, 2], [3, 3, 3, 3, 3, 3]]
# order 4, star = circ, admissible f = (1 2 3) of order three
ORDER3_ROWS = [[1, 1, 1, 2] * 2, [2, 2, 2, 3] * 2, [3, 3, 3, 1] * 2, [4, 4, 4, 4] * 2]
# Latin, star = circ, only admissible automorphism is the identity
LATIN4_ROWS = [[2, 1, 3, 4] * 2, [3, 4, 2, 1] * 2, [4, 3, 1, 2] * 2, [1, 2, 4, 3] * 2]

SEED_CODES = [
    "()",
    "u1+,o2+;o1+,u2+",
    "o1+,u2+,o3+,u1+,o2+,u3+",
    "a+,u1-,o2+;o1-,a-,u2+",
    "u1+,o2-,a+;o1+,u2-",
]


def swap3() -> FiniteBiquandle:
    return FiniteBiquandle.from_matrix(SWAP3_ROWS)


def swap3_phi() -> Cocycle2:
    return Cocycle2.from_integers([[0, 0, 1], [0, 0, 1], [-1, -1, 0]])


def alexander5() -> FiniteBiquandle:
    """x*y = 2x + y, x o y = 3x over Z/5 (elements shifted to 1..5)."""
    return FiniteBiquandle.from_functions(
        5, lambda x, y: (2 * (x - 1) + (y - 1)) % 5 + 1, lambda x, y: (3 * (x - 1)) % 5 + 1
    )


def dihedral3() -> FiniteBiquandle:
    return FiniteBiquandle.from_functions(3, lambda x, y: (2 * (y - 1) - (x - 1)) % 3 + 1, lambda x, y: x)


def lattice_phi(b: FiniteBiquandle, f: Permutation, coeffs=None) -> Cocycle2:
    basis = omega5_cocycle_lattice(b, f)
    coeffs = coeffs or [1] * len(basis)
    v = [sum(c * vec[i] for c, vec in zip(coeffs, basis)) for i in range(b.n * b.n)]
    return Cocycle2.from_integers([v[i * b.n:(i + 1) * b.n] for i in range(b.n)])


def admissible_fixtures():
    """(name, X, f, phi) with f admissible and phi a cocycle meeting the Omega5 condition."""
    e = swap3()
    f = Permutation.parse("2 1 3")
    t4 = FiniteBiquandle.trivial(4)
    c4 = Permutation.parse("2 3 4 1")
    o3 = FiniteBiquandle.from_matrix(ORDER3_ROWS)
    g3 = Permutation.parse("2 3 1 4")
    return [
        ("swap3", e, f, swap3_phi()),
        ("trivial4", t4, c4, lattice_phi(t4, c4)),
        ("order3", o3, g3, lattice_phi(o3, g3)),
    ]


@pytest.fixture
def data_dir() -> Path:
    return DATA


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
