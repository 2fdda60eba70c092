import itertools
import random

import pytest
from sympy import Matrix as SympyMatrix
from sympy.matrices.normalforms import invariant_factors

from bqlinks import (
    AbelianGroup, ArrowedDiagram, Cocycle2, ContractError, FiniteBiquandle, FormatError, GroupRingElement,
    Permutation, boundary_matrix, cohomology, degenerate_indices, delta1, is_coboundary, is_cocycle2,
    omega5_compatible, quotient_boundary, solve, state_sum,
)
from bqlinks.cohomology import (
    basis, nondegenerate_indices, omega5_cocycle_lattice, state_sum_unchecked, tuple_index,
)
from bqlinks.snf import matmul, transpose
from conftest import LATIN4_ROWS, ORDER3_ROWS, admissible_fixtures, dihedral3, swap3, swap3_phi
from oracles import kernel_count_mod

F12 = Permutation.parse("2 1 3")
HOPF = ArrowedDiagram.parse("u1+,o2+;o1+,u2+")
SMALL = [swap3(), FiniteBiquandle.trivial(1), FiniteBiquandle.trivial(2), FiniteBiquandle.trivial(3), dihedral3()]


def test_d1_is_zero():
    assert boundary_matrix(swap3(), 1) == [[0, 0, 0]]


def test_d2_column_formula():
    b = swap3()
    d2 = boundary_matrix(b, 2)
    for j, (x, y) in enumerate(basis(b, 2)):
        want = [0] * 3
        want[x - 1] += 1
        want[b.op_star(x, y) - 1] -= 1
        want[y - 1] -= 1
        want[b.op_circ(y, x) - 1] += 1
        assert [row[j] for row in d2] == want


@pytest.mark.parametrize("b", SMALL)
def test_chain_identities(b):
    for n in (3, 4):
        assert all(v == 0 for row in matmul(boundary_matrix(b, n - 1), boundary_matrix(b, n)) for v in row)


def test_degenerate_basics():
    b = swap3()
    assert [basis(b, 2)[k] for k in degenerate_indices(b, 2)] == [(1, 1), (2, 2), (3, 3)]
    d2 = boundary_matrix(b, 2)
    for k in degenerate_indices(b, 2):
        assert all(row[k] == 0 for row in d2)
    for n in (2, 3, 4):
        quotient_boundary(b, n)  # raises on a closure failure
    assert degenerate_indices(b, 1) == []


def test_envelope():
    with pytest.raises(ContractError):
        boundary_matrix(swap3(), 5)
    with pytest.raises(ContractError):
        cohomology(swap3(), 4)
    with pytest.raises(ContractError):
        cohomology(FiniteBiquandle.trivial(7), 2)


def test_one_point_h1():
    assert cohomology(FiniteBiquandle.trivial(1), 1) == AbelianGroup(1, ())
    assert cohomology(FiniteBiquandle.trivial(1), 1, 5) == AbelianGroup(0, (5,))


def _delta(b, n):
    """Coboundary delta^n on non-degenerate cochains: transpose of the quotient d_{n+1}."""
    return transpose(quotient_boundary(b, n + 1), cols=len(nondegenerate_indices(b, n + 1)))


def sympy_integral(b, n):
    """Directly from the cochain complex: free rank and torsion of ker delta^n / im delta^(n-1)."""
    dim = len(nondegenerate_indices(b, n))
    up = SympyMatrix(_delta(b, n)) if nondegenerate_indices(b, n + 1) else SympyMatrix.zeros(0, dim)
    down = SympyMatrix(_delta(b, n - 1)) if n > 1 else SympyMatrix.zeros(dim, 1)
    r_up = up.rank() if up.rows and up.cols else 0
    r_down = down.rank() if down.rows and down.cols else 0
    tors = []
    if down.rows and down.cols and any(down):
        tors = [abs(int(x)) for x in invariant_factors(down) if abs(int(x)) > 1]
    return dim - r_up - r_down, sorted(tors)


@pytest.mark.parametrize("b", SMALL)
@pytest.mark.parametrize("n", [1, 2])
def test_integral_cohomology_matches_sympy(b, n):
    h = cohomology(b, n)
    free, tors = sympy_integral(b, n)
    assert h.rank == free
    assert list(h.torsion) == list(AbelianGroup.from_orders([0] * free + tors).torsion)


@pytest.mark.parametrize("b", [swap3(), FiniteBiquandle.trivial(2), dihedral3()])
@pytest.mark.parametrize("m", [2, 3])
def test_mod_m_order_by_kernel_counting(b, m):
    for n in (1, 2):
        dim = len(nondegenerate_indices(b, n))
        ker_n = kernel_count_mod(_delta(b, n), dim, m) if nondegenerate_indices(b, n + 1) else m ** dim
        if n == 1:
            im = 1
        else:
            prev = len(nondegenerate_indices(b, n - 1))
            im = m ** prev // kernel_count_mod(_delta(b, n - 1), prev, m)
        h = cohomology(b, n, m)
        order = 1
        for d in h.torsion:
            order *= d
        assert h.rank == 0
        assert order == ker_n // im


def test_example_cocycle_checks():
    b = swap3()
    phi = swap3_phi()
    assert is_cocycle2(b, phi) and omega5_compatible(b, F12, phi)
    zero = Cocycle2.zero(3)
    assert is_cocycle2(b, zero) and omega5_compatible(b, F12, zero)
    single = Cocycle2.from_integers([[0, 0, 1], [0, 0, 0], [0, 0, 0]])
    assert not omega5_compatible(b, F12, single)


def test_hexagon_equals_dual_of_d3():
    rng = random.Random(2)
    for b in (swap3(), FiniteBiquandle.from_matrix(ORDER3_ROWS)):
        d3 = boundary_matrix(b, 3)
        deg = set(degenerate_indices(b, 2))
        for _ in range(200):
            vals = [rng.choice((0, 0, 1, -1)) for _ in range(b.n * b.n)]
            phi = Cocycle2.from_integers([vals[i * b.n:(i + 1) * b.n] for i in range(b.n)])
            dual_ok = all(sum(vals[i] * d3[i][j] for i in range(len(vals))) == 0 for j in range(len(d3[0])))
            assert is_cocycle2(b, phi) == (dual_ok and all(vals[k] == 0 for k in deg))


def test_cocycle_text_round_trip(data_dir):
    phi = Cocycle2.parse((data_dir / "swap3_phi.cc").read_text())
    assert phi == swap3_phi()
    assert Cocycle2.parse(phi.to_text()) == phi
    mixed = Cocycle2(AbelianGroup(1, (2,)), (((0, 0), (1, 1)), ((-1, 1), (0, 0))))
    assert Cocycle2.parse(mixed.to_text()) == mixed
    with pytest.raises(FormatError):
        Cocycle2.parse("rank 1; torsion\n[0] [1]\n[0]\n")


def test_coboundary_round_trip():
    rng = random.Random(5)
    for b in (swap3(), dihedral3(), FiniteBiquandle.from_matrix(LATIN4_ROWS)):
        for target in (AbelianGroup(1, ()), AbelianGroup(0, (4,)), AbelianGroup(1, (2, 6))):
            psi = [target.element([rng.randint(-5, 5) for _ in range(target.length)]) for _ in range(b.n)]
            phi = delta1(b, psi, target)
            assert is_cocycle2(b, phi)
            w = is_coboundary(b, phi)
            assert w is not None and delta1(b, w, target) == phi


def test_zero_is_coboundary():
    assert is_coboundary(swap3(), Cocycle2.zero(3)) == [(0,), (0,), (0,)]


def test_example_cocycle_is_not_a_coboundary():
    """Rational oracle: d2^T psi = phi has no solution even over Q."""
    b = swap3()
    m = SympyMatrix(transpose(boundary_matrix(b, 2)))
    rhs = SympyMatrix(swap3_phi().coordinate(0))
    assert m.rank() < m.row_join(rhs).rank()
    assert is_coboundary(b, swap3_phi()) is None


def test_mod_m_coboundary():
    b = swap3()
    phi = Cocycle2.from_integers([[0, 0, 1], [0, 0, 1], [-1, -1, 0]], modulus=2)
    w = is_coboundary(b, phi)
    m = transpose(boundary_matrix(b, 2))
    brute = [psi for psi in itertools.product(range(2), repeat=3)
             if all((sum(r[k] * psi[k] for k in range(3)) - phi.coordinate(0)[i]) % 2 == 0 for i, r in enumerate(m))]
    assert (w is None) == (not brute)


def test_state_sum_examples():
    b = swap3()
    assert state_sum(b, F12, swap3_phi(), HOPF) == GroupRingElement.of((0,), 9)
    assert state_sum(b, F12, Cocycle2.zero(3), HOPF) == GroupRingElement.of((0,), 9)
    kink = ArrowedDiagram.parse("o1+,u1+")
    assert state_sum(b, F12, swap3_phi(), kink) == GroupRingElement.of((0,), 3)


def test_state_sum_refuses_bad_inputs():
    b = swap3()
    with pytest.raises(ContractError):
        state_sum(b, F12, Cocycle2.from_integers([[0, 0, 1], [0, 0, 0], [0, 0, 0]]), HOPF)
    with pytest.raises(ContractError):
        state_sum(b, F12, Cocycle2.from_integers([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), HOPF)


def test_lattice_vectors_satisfy_both_conditions():
    for _, b, f, phi in admissible_fixtures():
        assert is_cocycle2(b, phi) and omega5_compatible(b, f, phi)
        for vec in omega5_cocycle_lattice(b, f):
            c = Cocycle2.from_integers([vec[i * b.n:(i + 1) * b.n] for i in range(b.n)])
            assert is_cocycle2(b, c) and omega5_compatible(b, f, c)


def test_coboundary_state_sum_telescopes():
    """For phi = delta psi each coloring contributes the arrow terms +-(psi(f x) - psi(x))."""
    rng = random.Random(9)
    b = swap3()
    psi = [(rng.randint(-4, 4),) for _ in range(3)]
    phi = delta1(b, psi, AbelianGroup(1, ()))
    from bqlinks.coloring import CompiledDiagram
    for code in ("a+,u1-,o2+;o1-,a-,u2+", "a+,a+,o1+,u1+", "u1+,o2-,a+;o1+,u2-"):
        d = ArrowedDiagram.parse(code)
        comp = CompiledDiagram(d)
        want = []
        for col in solve(b, F12, d):
            s = 0
            for a in comp.arrows:
                lo, hi = (a.before, a.after) if a.direction > 0 else (a.after, a.before)
                s += a.direction * (psi[col[hi] - 1][0] - psi[col[lo] - 1][0])
            want.append((s,))
        assert state_sum_unchecked(b, F12, phi, d) == GroupRingElement.from_elements(want)
