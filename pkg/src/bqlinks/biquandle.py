"""Finite biquandles given by operation tables.

Elements are the integers ``1..n``.  A biquandle is stored as two ``n x n``
tables: ``star[x-1][y-1] = x * y`` and ``circ[x-1][y-1] = x o y``.  The text
layout puts the star block in columns ``1..n`` and the circ block in columns
``n+1..2n`` of each row::

    3
    2 2 1 2 2 1
    1 1 2 1 1 2
    3 3 3 3 3 3
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .errors import ContractError, FormatError

Table = tuple[tuple[int, ...], ...]


def _as_table(rows: Iterable[Iterable[int]], n: int, name: str) -> Table:
    table = tuple(tuple(int(v) for v in row) for row in rows)
    if len(table) != n or any(len(row) != n for row in table):
        raise FormatError(f"{name} table must be {n}x{n}")
    for x, row in enumerate(table, start=1):
        for y, v in enumerate(row, start=1):
            if not 1 <= v <= n:
                raise FormatError(f"{name}({x},{y}) = {v} is outside 1..{n}")
    return table


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..n}`` stored by its image sequence."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise FormatError(f"{list(images)} is not a permutation of 1..{len(images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        """``Permutation.from_cycles(5, (1, 2, 3), (4, 5))``."""
        images = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        try:
            return cls(tuple(int(tok) for tok in text.split()))
        except ValueError as exc:
            raise FormatError(f"bad permutation {text!r}: {exc}") from None

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for x, y in enumerate(self.images, start=1):
            inv[y - 1] = x
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """``(self o other)(x) = self(other(x))``."""
        return Permutation(tuple(self(other(x)) for x in range(1, self.n + 1)))

    def power(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.n)
        for _ in range(abs(k)):
            out = base.compose(out)
        return out

    def orbits(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            orbit = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                orbit.append(x)
                seen.add(x)
                x = self(x)
            out.append(tuple(orbit))
        return out

    def to_text(self) -> str:
        return " ".join(map(str, self.images))

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Violation:
    """One failed axiom instance.

    ``axiom`` is 1, 2 or 3; ``part`` names the sub-condition (``"2a"`` for
    ``z -> z*x``, ``"2b"`` for ``w -> w o x``, ``"2c"`` for the map S,
    ``"3a"``..``"3c"`` for the exchange identities).
    """

    axiom: int
    part: str
    witness: tuple[int, ...]

    def __str__(self) -> str:
        return f"axiom {self.part} fails at {self.witness}"


@dataclass(frozen=True)
class AxiomReport:
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    @property
    def failed_axioms(self) -> set[int]:
        return {v.axiom for v in self.violations}

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class LatinVerdict:
    kind: str  # "latin" | "semi_latin" | "neither"
    family: str | None = None  # "star" or "circ" for semi_latin

    def __str__(self) -> str:
        return self.kind if self.family is None else f"{self.kind} ({self.family})"


@dataclass(frozen=True, eq=True)
class FiniteBiquandle:
    star: Table
    circ: Table
    _s_inverse: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        n = len(self.star)
        if n == 0:
            raise FormatError("a biquandle needs at least one element")
        object.__setattr__(self, "star", _as_table(self.star, n, "star"))
        object.__setattr__(self, "circ", _as_table(self.circ, n, "circ"))

    # construction ----------------------------------------------------------

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "FiniteBiquandle":
        """Build from ``n`` rows of ``2n`` entries (star block, then circ block)."""
        n = len(rows)
        if any(len(r) != 2 * n for r in rows):
            raise FormatError(f"each row must have {2 * n} entries")
        return cls(tuple(tuple(r[:n]) for r in rows), tuple(tuple(r[n:]) for r in rows))

    @classmethod
    def from_functions(
        cls, n: int, star: Callable[[int, int], int], circ: Callable[[int, int], int]
    ) -> "FiniteBiquandle":
        r = range(1, n + 1)
        return cls(
            tuple(tuple(star(x, y) for y in r) for x in r),
            tuple(tuple(circ(x, y) for y in r) for x in r),
        )

    @classmethod
    def trivial(cls, n: int) -> "FiniteBiquandle":
        return cls.from_functions(n, lambda x, y: x, lambda x, y: x)

    @classmethod
    def parse(cls, text: str) -> "FiniteBiquandle":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise FormatError("empty biquandle file")
        try:
            n = int(lines[0])
            rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
        except ValueError as exc:
            raise FormatError(f"non-integer token in biquandle file: {exc}") from None
        if n < 1 or len(rows) != n:
            raise FormatError(f"expected {n} table rows, found {len(rows)}")
        return cls.from_matrix(rows)

    def to_text(self) -> str:
        lines = [str(self.n)]
        for x in range(self.n):
            lines.append(" ".join(map(str, self.star[x] + self.circ[x])))
        return "\n".join(lines) + "\n"

    # operations ------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.star)

    @property
    def elements(self) -> range:
        return range(1, self.n + 1)

    def op_star(self, x: int, y: int) -> int:
        return self.star[x - 1][y - 1]

    def op_circ(self, x: int, y: int) -> int:
        return self.circ[x - 1][y - 1]

    def s_map(self, x: int, y: int) -> tuple[int, int]:
        """``S(x, y) = (y o x, x * y)``."""
        return self.op_circ(y, x), self.op_star(x, y)

    def s_inverse(self, u: int, v: int) -> tuple[int, int]:
        """The unique ``(x, y)`` with ``S(x, y) = (u, v)``."""
        if self._s_inverse is None:
            inv = {}
            for x in self.elements:
                for y in self.elements:
                    inv[self.s_map(x, y)] = (x, y)
            if len(inv) != self.n * self.n:
                raise ContractError("S is not a bijection, so it has no inverse")
            object.__setattr__(self, "_s_inverse", inv)
        try:
            return self._s_inverse[(u, v)]
        except KeyError:
            raise ContractError(f"S is not invertible: {(u, v)} has no preimage") from None

    # axioms ----------------------------------------------------------------

    def check_axioms(self) -> AxiomReport:
        """Scan every axiom instance and report all violations."""
        X = self.elements
        s, c = self.op_star, self.op_circ
        found: list[Violation] = []
        for x in X:
            if s(x, x) != c(x, x):
                found.append(Violation(1, "1", (x,)))
        for x in X:
            for part, op in (("2a", s), ("2b", c)):
                images = [op(z, x) for z in X]
                if len(set(images)) != self.n:
                    dup = next(v for v in images if images.count(v) > 1)
                    found.append(Violation(2, part, (x, dup)))
        seen: dict[tuple[int, int], tuple[int, int]] = {}
        for x in X:
            for y in X:
                img = self.s_map(x, y)
                if img in seen:
                    found.append(Violation(2, "2c", seen[img] + (x, y)))
                seen.setdefault(img, (x, y))
        for x, y, z in itertools.product(X, repeat=3):
            if c(c(z, y), s(x, y)) != c(c(z, x), c(y, x)):
                found.append(Violation(3, "3a", (x, y, z)))
            if s(c(y, x), c(z, x)) != c(s(y, z), s(x, z)):
                found.append(Violation(3, "3b", (x, y, z)))
            if s(s(x, y), c(z, y)) != s(s(x, z), s(y, z)):
                found.append(Violation(3, "3c", (x, y, z)))
        return AxiomReport(tuple(found))

    def require_valid(self) -> None:
        report = self.check_axioms()
        if not report.valid:
            raise ContractError(f"not a biquandle: {report.violations[0]}")

    def latin_class(self) -> LatinVerdict:
        def rows_bijective(op: Callable[[int, int], int]) -> bool:
            return all(len({op(x, y) for y in self.elements}) == self.n for x in self.elements)

        star_ok = rows_bijective(self.op_star)
        circ_ok = rows_bijective(self.op_circ)
        if star_ok and circ_ok:
            return LatinVerdict("latin")
        if star_ok:
            return LatinVerdict("semi_latin", "star")
        if circ_ok:
            return LatinVerdict("semi_latin", "circ")
        return LatinVerdict("neither")


def is_homomorphism(b1: FiniteBiquandle, b2: FiniteBiquandle, mapping: Sequence[int]) -> bool:
    """True iff ``x -> mapping[x-1]`` preserves both operations."""
    images = tuple(mapping)
    if len(images) != b1.n or any(not 1 <= int(v) <= b2.n for v in images):
        raise FormatError(f"mapping must send 1..{b1.n} into 1..{b2.n}")
    m = lambda x: images[x - 1]  # noqa: E731
    for x in b1.elements:
        for y in b1.elements:
            if m(b1.op_star(x, y)) != b2.op_star(m(x), m(y)):
                return False
            if m(b1.op_circ(x, y)) != b2.op_circ(m(x), m(y)):
                return False
    return True


def _automorphism_search(b: FiniteBiquandle) -> Iterator[tuple[int, ...]]:
    # Depth-first over partial image sequences in increasing order; a partial
    # map is pruned once some product of assigned elements has an assigned,
    # mismatching image.
    n = b.n
    images = [0] * (n + 1)
    used = [False] * (n + 1)

    def consistent(k: int) -> bool:
        for x in range(1, k + 1):
            for y in range(1, k + 1):
                if x != k and y != k:
                    continue
                for op in (b.op_star, b.op_circ):
                    z = op(x, y)
                    if z <= k and images[z] != op(images[x], images[y]):
                        return False
        return True

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k > n:
            yield tuple(images[1:])
            return
        for v in range(1, n + 1):
            if used[v]:
                continue
            images[k] = v
            used[v] = True
            if consistent(k):
                yield from extend(k + 1)
            used[v] = False
        images[k] = 0

    yield from extend(1)


def automorphisms(b: FiniteBiquandle) -> list[Permutation]:
    return [Permutation(p) for p in _automorphism_search(b)]


def is_admissible(b: FiniteBiquandle, f: Permutation) -> bool:
    """``x * y == x o f(y)`` for all pairs (automorphism-ness checked separately)."""
    return all(b.op_star(x, y) == b.op_circ(x, f(y)) for x in b.elements for y in b.elements)


def admissible_automorphisms(b: FiniteBiquandle) -> list[Permutation]:
    return [f for f in automorphisms(b) if is_admissible(b, f)]


def require_admissible(b: FiniteBiquandle, f: Permutation) -> None:
    if f.n != b.n:
        raise ContractError(f"permutation has degree {f.n}, biquandle has order {b.n}")
    if not is_homomorphism(b, b, f.images):
        raise ContractError(f"f = [{f}] is not an automorphism")
    if not is_admissible(b, f):
        raise ContractError(f"f = [{f}] is not admissible: x*y != x o f(y) somewhere")
