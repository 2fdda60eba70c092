"""Chain complexes of a finite biquandle, 2-cocycles and the state sum.

Chains in degree ``n`` have basis ``X^n`` in lexicographic order.  The
boundary is

    d_n(x_1..x_n) = sum_i (-1)^i [ (x_1..^x_i..x_n)
                                   - (x_1*x_i, .., x_{i-1}*x_i, x_{i+1}ox_i, .., x_n o x_i) ]

and the degenerate tuples (two equal neighbours) span a subcomplex.  All
coefficient groups are written additively.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .abelian import AbelianGroup, GroupElement, GroupRingElement, element_text, parse_element
from .biquandle import FiniteBiquandle, Permutation, is_admissible
from .coloring import CompiledDiagram, iter_colorings
from .diagram import ArrowedDiagram
from .errors import ContractError, FormatError, InternalConsistencyError
from .snf import Matrix, matmul, smith_normal_form, transpose, zeros

MAX_CHAIN_DEGREE = 4
MAX_COHOMOLOGY_DEGREE = 3
MAX_COHOMOLOGY_ORDER = 6


# chains ------------------------------------------------------------------


def basis(b: FiniteBiquandle, n: int) -> list[tuple[int, ...]]:
    return list(itertools.product(b.elements, repeat=n))


def tuple_index(b: FiniteBiquandle, t: Sequence[int]) -> int:
    k = 0
    for x in t:
        k = k * b.n + (x - 1)
    return k


def boundary_matrix(b: FiniteBiquandle, n: int) -> Matrix:
    """Matrix of ``d_n`` (rows: ``X^(n-1)``, columns: ``X^n``)."""
    if not 1 <= n <= MAX_CHAIN_DEGREE:
        raise ContractError(f"boundary degree {n} outside 1..{MAX_CHAIN_DEGREE}")
    cols = basis(b, n)
    m = zeros(b.n ** (n - 1), len(cols))
    if n == 1:
        return m
    for j, t in enumerate(cols):
        for i in range(n):
            s = -1 if i % 2 == 0 else 1  # (-1)^(i+1) with i 0-based
            xi = t[i]
            face = t[:i] + t[i + 1:]
            moved = tuple(b.op_star(x, xi) for x in t[:i]) + tuple(b.op_circ(x, xi) for x in t[i + 1:])
            m[tuple_index(b, face)][j] += s
            m[tuple_index(b, moved)][j] -= s
    return m


def is_degenerate(t: Sequence[int]) -> bool:
    return any(t[i] == t[i + 1] for i in range(len(t) - 1))


def degenerate_indices(b: FiniteBiquandle, n: int) -> list[int]:
    return [k for k, t in enumerate(basis(b, n)) if is_degenerate(t)] if n >= 2 else []


def nondegenerate_indices(b: FiniteBiquandle, n: int) -> list[int]:
    return [k for k, t in enumerate(basis(b, n)) if not is_degenerate(t)]


def quotient_boundary(b: FiniteBiquandle, n: int) -> Matrix:
    """``d_n`` on the quotient by degenerate chains, in the non-degenerate bases.

    Raises :class:`InternalConsistencyError` if some degenerate chain has a
    boundary leaving the degenerate subcomplex.
    """
    full = boundary_matrix(b, n)
    deg_rows = set(degenerate_indices(b, n - 1))
    for j in degenerate_indices(b, n):
        for i, row in enumerate(full):
            if row[j] and i not in deg_rows:
                raise InternalConsistencyError(
                    f"d_{n} of degenerate tuple {basis(b, n)[j]} leaves the degenerate subcomplex"
                )
    rows = nondegenerate_indices(b, n - 1)
    cols = nondegenerate_indices(b, n)
    return [[full[i][j] for j in cols] for i in rows]


# cohomology ---------------------------------------------------------------


def _coeff_modulus(coeffs: int | AbelianGroup) -> int:
    if isinstance(coeffs, AbelianGroup):
        if not coeffs.is_cyclic:
            raise ContractError("cohomology coefficients must be Z or Z/m")
        return coeffs.modulus
    if coeffs < 0 or coeffs == 1:
        raise ContractError("coefficient modulus must be 0 (for Z) or at least 2")
    return coeffs


@dataclass(frozen=True)
class ChainData:
    """Ranks and torsion of the non-degenerate chain complex around degree n."""

    n: int
    dimension: int  # number of non-degenerate n-tuples
    rank_in: int  # rank of d_{n+1}
    rank_out: int  # rank of d_n
    torsion_in: tuple[int, ...]  # invariant factors > 1 of d_{n+1}
    torsion_out: tuple[int, ...]  # invariant factors > 1 of d_n


def _factors(b: FiniteBiquandle, n: int) -> tuple[int, tuple[int, ...]]:
    width = len(nondegenerate_indices(b, n))
    snf = smith_normal_form(quotient_boundary(b, n), cols=width)
    return snf.rank, tuple(d for d in snf.invariant_factors if d > 1)


def chain_data(b: FiniteBiquandle, n: int) -> ChainData:
    r_in, t_in = _factors(b, n + 1)
    r_out, t_out = _factors(b, n)
    return ChainData(n, len(nondegenerate_indices(b, n)), r_in, r_out, t_in, t_out)


def homology(b: FiniteBiquandle, n: int) -> AbelianGroup:
    """Integral homology of the non-degenerate complex."""
    c = chain_data(b, n)
    return AbelianGroup.from_orders([0] * (c.dimension - c.rank_in - c.rank_out) + list(c.torsion_in))


def cohomology(b: FiniteBiquandle, n: int, coeffs: int | AbelianGroup = 0) -> AbelianGroup:
    """Isomorphism type of ``H^n`` of the non-degenerate complex with coefficients ``Z`` or ``Z/m``.

    Uses the universal coefficient splitting
    ``H^n(C; A) = Hom(H_n, A) + Ext(H_{n-1}, A)``; both pieces are read off
    Smith forms of the boundary maps.
    """
    if not 1 <= n <= MAX_COHOMOLOGY_DEGREE:
        raise ContractError(f"cohomology degree {n} outside 1..{MAX_COHOMOLOGY_DEGREE}")
    if b.n > MAX_COHOMOLOGY_ORDER:
        raise ContractError(f"cohomology supports |X| <= {MAX_COHOMOLOGY_ORDER}")
    m = _coeff_modulus(coeffs)
    c = chain_data(b, n)
    free = c.dimension - c.rank_in - c.rank_out
    if m == 0:
        return AbelianGroup.from_orders([0] * free + list(c.torsion_out))
    orders = [m] * free
    orders += [math.gcd(e, m) for e in c.torsion_in]  # Hom(Z/e, Z/m)
    orders += [math.gcd(e, m) for e in c.torsion_out]  # Ext(Z/e, Z/m)
    return AbelianGroup.from_orders(orders)


# cochains -----------------------------------------------------------------


@dataclass(frozen=True)
class Cocycle2:
    """A 2-cochain ``phi(x, y)`` with values in ``target``."""

    target: AbelianGroup
    table: tuple[tuple[GroupElement, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(self.target.element(v) for v in row) for row in self.table)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise FormatError("cocycle table must be square")
        object.__setattr__(self, "table", rows)

    @property
    def n(self) -> int:
        return len(self.table)

    def __call__(self, x: int, y: int) -> GroupElement:
        return self.table[x - 1][y - 1]

    @classmethod
    def zero(cls, n: int, target: AbelianGroup | None = None) -> "Cocycle2":
        target = target or AbelianGroup.integers()
        return cls(target, tuple((target.zero(),) * n for _ in range(n)))

    @classmethod
    def from_function(cls, n: int, target: AbelianGroup, fn: Callable[[int, int], Iterable[int]]) -> "Cocycle2":
        return cls(target, tuple(tuple(tuple(fn(x, y)) for y in range(1, n + 1)) for x in range(1, n + 1)))

    @classmethod
    def from_integers(cls, rows: Sequence[Sequence[int]], modulus: int = 0) -> "Cocycle2":
        """Cyclic coefficients: ``Z`` when ``modulus`` is 0, else ``Z/modulus``."""
        target = AbelianGroup.cyclic(modulus)
        return cls(target, tuple(tuple((v,) for v in row) for row in rows))

    def to_text(self) -> str:
        lines = [self.target.header()]
        lines += [" ".join(element_text(v) for v in row) for row in self.table]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "Cocycle2":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise FormatError("empty cocycle file")
        target = AbelianGroup.parse_header(lines[0])
        rows = []
        for ln in lines[1:]:
            cells = re.findall(r"\[[^\]]*\]", ln)
            if re.sub(r"\[[^\]]*\]", "", ln).strip():
                raise FormatError(f"stray text in cocycle row {ln!r}")
            rows.append(tuple(parse_element(cell) for cell in cells))
        try:
            return cls(target, tuple(rows))
        except ValueError as exc:
            raise FormatError(str(exc)) from None

    def coordinate(self, k: int) -> list[int]:
        """Coordinate ``k`` of every value, as a vector over ``X^2`` in lexicographic order."""
        return [v[k] for row in self.table for v in row]


def _check_size(b: FiniteBiquandle, phi: Cocycle2) -> None:
    if phi.n != b.n:
        raise ContractError(f"cocycle is {phi.n}x{phi.n} but the biquandle has order {b.n}")


def cocycle_violations(b: FiniteBiquandle, phi: Cocycle2) -> list[tuple[int, ...]]:
    """Witnesses: ``(x,)`` where ``phi(x,x) != 0`` and ``(x,y,z)`` where the hexagon fails."""
    _check_size(b, phi)
    A = phi.target
    s, c = b.op_star, b.op_circ
    bad: list[tuple[int, ...]] = [(x,) for x in b.elements if not A.is_zero(phi(x, x))]
    for x, y, z in itertools.product(b.elements, repeat=3):
        lhs = A.sum((phi(x, y), phi(y, z), phi(s(x, y), c(z, y))))
        rhs = A.sum((phi(s(x, z), s(y, z)), phi(c(y, x), c(z, x)), phi(x, z)))
        if lhs != rhs:
            bad.append((x, y, z))
    return bad


def is_cocycle2(b: FiniteBiquandle, phi: Cocycle2) -> bool:
    return not cocycle_violations(b, phi)


def omega5_violations(b: FiniteBiquandle, f: Permutation, phi: Cocycle2) -> list[tuple[int, int]]:
    _check_size(b, phi)
    A = phi.target
    finv = f.inverse()
    return [
        (x, y)
        for x, y in itertools.product(b.elements, repeat=2)
        if not A.is_zero(A.add(phi(x, y), phi(y, finv(x))))
    ]


def omega5_compatible(b: FiniteBiquandle, f: Permutation, phi: Cocycle2) -> bool:
    return not omega5_violations(b, f, phi)


def delta1(b: FiniteBiquandle, psi: Sequence[GroupElement], target: AbelianGroup) -> Cocycle2:
    """``(delta psi)(x, y) = psi(x) - psi(x*y) - psi(y) + psi(y o x)``; ``psi`` is indexed from 0."""
    p = [target.element(v) for v in psi]

    def val(x: int, y: int) -> GroupElement:
        return target.sum(
            (p[x - 1], target.neg(p[b.op_star(x, y) - 1]), target.neg(p[y - 1]), p[b.op_circ(y, x) - 1])
        )

    return Cocycle2.from_function(b.n, target, val)


def solve_linear(m: Matrix, rhs: Sequence[int], modulus: int, cols: int) -> list[int] | None:
    """One solution of ``m x = rhs`` over ``Z`` (modulus 0) or ``Z/modulus``, or ``None``."""
    snf = smith_normal_form(m, cols=cols)
    ub = [sum(u * r for u, r in zip(row, rhs)) for row in snf.U]
    diag = snf.diagonal
    y = [0] * cols
    for i, target in enumerate(ub):
        d = diag[i] if i < len(diag) else 0
        if modulus == 0:
            if d == 0:
                if target:
                    return None
                continue
            if target % d:
                return None
            y[i] = target // d
        else:
            g = math.gcd(d, modulus)
            if target % g:
                return None
            if d % modulus == 0:
                continue
            mod = modulus // g
            y[i] = (target // g) * pow(d // g, -1, mod) % mod if mod > 1 else 0
    x = [sum(v * yy for v, yy in zip(row, y)) for row in snf.V]
    if modulus:
        x = [v % modulus for v in x]
    return x


def is_coboundary(b: FiniteBiquandle, phi: Cocycle2) -> list[GroupElement] | None:
    """A witness ``psi`` (list indexed from 0) with ``delta1(psi) == phi``, or ``None``.

    The coefficient group is split into its cyclic coordinates and each is
    solved separately through a Smith form.
    """
    _check_size(b, phi)
    A = phi.target
    m = transpose(boundary_matrix(b, 2), cols=b.n * b.n)  # rows: pairs, columns: elements
    moduli = [0] * A.rank + list(A.torsion)
    coords: list[list[int]] = []
    for k, mod in enumerate(moduli):
        sol = solve_linear(m, phi.coordinate(k), mod, b.n)
        if sol is None:
            return None
        coords.append(sol)
    psi = [A.element(tuple(coords[k][x] for k in range(len(moduli)))) for x in range(b.n)]
    if delta1(b, psi, A) != phi:
        raise InternalConsistencyError("coboundary witness failed verification")
    return psi


def kernel_basis(m: Matrix, cols: int) -> list[list[int]]:
    """A basis of the integer kernel ``{v : m v = 0}``."""
    snf = smith_normal_form(m, cols=cols)
    r = snf.rank
    return [[snf.V[i][j] for i in range(cols)] for j in range(r, cols)]


def omega5_cocycle_lattice(b: FiniteBiquandle, f: Permutation) -> list[list[int]]:
    """Integer basis of the 2-cocycles that also satisfy the Omega5 condition.

    Vectors are over ``X^2`` in lexicographic order.
    """
    n = b.n
    rows: list[list[int]] = []
    idx = lambda x, y: (x - 1) * n + (y - 1)  # noqa: E731
    d3 = boundary_matrix(b, 3)
    rows.extend(transpose(d3, cols=n ** 3))  # hexagon: phi d_3 = 0
    for x in b.elements:
        r = [0] * (n * n)
        r[idx(x, x)] = 1
        rows.append(r)
    finv = f.inverse()
    for x, y in itertools.product(b.elements, repeat=2):
        r = [0] * (n * n)
        r[idx(x, y)] += 1
        r[idx(y, finv(x))] += 1
        rows.append(r)
    return kernel_basis(rows, n * n)


# state sum ----------------------------------------------------------------


def check_state_sum_hypotheses(b: FiniteBiquandle, f: Permutation, phi: Cocycle2) -> None:
    if not is_admissible(b, f):
        raise ContractError(f"f = {f} is not an admissible automorphism")
    bad = cocycle_violations(b, phi)
    if bad:
        raise ContractError(f"phi is not a 2-cocycle (first witness {bad[0]})")
    bad5 = omega5_violations(b, f, phi)
    if bad5:
        raise ContractError(f"phi violates the Omega5 condition at {bad5[0]}")


def state_sum_unchecked(
    b: FiniteBiquandle, f: Permutation, phi: Cocycle2, d: ArrowedDiagram | CompiledDiagram
) -> GroupRingElement:
    """The state sum without checking its hypotheses.  Only an invariant when they hold."""
    comp = d if isinstance(d, CompiledDiagram) else CompiledDiagram(d)
    A = phi.target
    terms = []
    for col in iter_colorings(b, f, comp):
        g = A.zero()
        for c in comp.crossings:
            w = phi(col[c.p_arc], col[c.q_arc])
            g = A.add(g, w if c.sign > 0 else A.neg(w))
        terms.append(g)
    return GroupRingElement.from_elements(terms)


def state_sum(b: FiniteBiquandle, f: Permutation, phi: Cocycle2, d: ArrowedDiagram) -> GroupRingElement:
    """Sum over colorings of the group element ``sum_c sign(c) * phi(weight pair of c)``.

    Refuses (``ContractError``) when ``f`` is not admissible or ``phi`` fails
    the cocycle or Omega5 condition, since the result would not be invariant.
    """
    check_state_sum_hypotheses(b, f, phi)
    return state_sum_unchecked(b, f, phi, d)
