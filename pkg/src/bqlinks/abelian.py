"""Finitely generated abelian groups and integral group rings over them.

Group elements are tuples of ints: free coordinates first, then torsion
coordinates reduced into ``[0, d)``.  Everything is written additively.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import FormatError
from .snf import smith_normal_form

GroupElement = tuple[int, ...]


@dataclass(frozen=True)
class AbelianGroup:
    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"torsion modulus {d} must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @classmethod
    def integers(cls) -> "AbelianGroup":
        return cls(1, ())

    @classmethod
    def cyclic(cls, m: int) -> "AbelianGroup":
        """``Z`` for ``m == 0``, the trivial group for ``m == 1``, else ``Z/m``."""
        if m == 0:
            return cls(1, ())
        if m == 1:
            return cls(0, ())
        return cls(0, (abs(m),))

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "AbelianGroup":
        """Normalize a direct sum of cyclic groups (order 0 meaning ``Z``)."""
        orders = list(orders)
        diag = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
        factors = smith_normal_form(diag, cols=len(orders)).diagonal
        return cls(sum(1 for d in factors if d == 0), tuple(d for d in factors if d > 1))

    @property
    def length(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.length == 0

    @property
    def is_cyclic(self) -> bool:
        return self.length <= 1

    @property
    def modulus(self) -> int:
        """For a cyclic group: 0 for ``Z``, ``m`` for ``Z/m``, 1 if trivial."""
        if not self.is_cyclic:
            raise ValueError("group is not cyclic")
        if self.rank:
            return 0
        return self.torsion[0] if self.torsion else 1

    def zero(self) -> GroupElement:
        return (0,) * self.length

    def element(self, coords: Iterable[int]) -> GroupElement:
        v = tuple(int(c) for c in coords)
        if len(v) != self.length:
            raise FormatError(f"element {list(v)} has {len(v)} coordinates, group needs {self.length}")
        return self.reduce(v)

    def reduce(self, v: Iterable[int]) -> GroupElement:
        v = tuple(v)
        r = self.rank
        return v[:r] + tuple(x % d for x, d in zip(v[r:], self.torsion))

    def add(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return self.reduce(x + y for x, y in zip(a, b))

    def neg(self, a: GroupElement) -> GroupElement:
        return self.reduce(-x for x in a)

    def scale(self, k: int, a: GroupElement) -> GroupElement:
        return self.reduce(k * x for x in a)

    def sum(self, items: Iterable[GroupElement]) -> GroupElement:
        acc = self.zero()
        for it in items:
            acc = self.add(acc, it)
        return acc

    def is_zero(self, a: GroupElement) -> bool:
        return not any(a)

    def to_text(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def header(self) -> str:
        return f"rank {self.rank}; torsion" + "".join(f" {d}" for d in self.torsion)

    @classmethod
    def parse_header(cls, line: str) -> "AbelianGroup":
        m = re.fullmatch(r"\s*rank\s+(\d+)\s*;\s*torsion((?:\s+\d+)*)\s*", line)
        if m is None:
            raise FormatError(f"bad group header {line!r}; expected 'rank r; torsion d1 d2 ...'")
        try:
            return cls(int(m.group(1)), tuple(int(t) for t in m.group(2).split()))
        except ValueError as exc:
            raise FormatError(str(exc)) from None

    def __str__(self) -> str:
        return self.to_text()


def element_text(a: GroupElement) -> str:
    return "[" + ",".join(str(x) for x in a) + "]"


_ELEMENT = re.compile(r"\[\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\]")


def parse_element(text: str) -> GroupElement:
    m = _ELEMENT.fullmatch(text.strip())
    if m is None:
        raise FormatError(f"bad group element {text!r}")
    body = m.group(1)
    return tuple(int(t) for t in body.split(",")) if body else ()


class GroupRingElement:
    """Finitely supported map from group elements to nonzero integers."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[GroupElement, int] | Iterable[tuple[GroupElement, int]] = ()):
        acc: dict[GroupElement, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for g, c in items:
            g = tuple(g)
            acc[g] = acc.get(g, 0) + int(c)
        self._terms = {g: c for g, c in acc.items() if c}
        self._hash: int | None = None

    @classmethod
    def of(cls, g: GroupElement, coeff: int = 1) -> "GroupRingElement":
        return cls({g: coeff})

    @classmethod
    def from_elements(cls, items: Iterable[GroupElement]) -> "GroupRingElement":
        """Formal sum with multiplicity, e.g. one term per coloring."""
        return cls((g, 1) for g in items)

    @property
    def terms(self) -> dict[GroupElement, int]:
        return dict(self._terms)

    def coefficient(self, g: GroupElement) -> int:
        return self._terms.get(tuple(g), 0)

    def support(self) -> list[GroupElement]:
        return sorted(self._terms)

    def augmentation(self) -> int:
        """Sum of coefficients."""
        return sum(self._terms.values())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({g: -c for g, c in self._terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __rmul__(self, k: int) -> "GroupRingElement":
        return GroupRingElement({g: k * c for g, c in self._terms.items()})

    def multiply(self, other: "GroupRingElement", group: AbelianGroup) -> "GroupRingElement":
        """Ring product; group elements combine by addition in ``group``."""
        out: dict[GroupElement, int] = {}
        for g, c in self._terms.items():
            for h, d in other._terms.items():
                k = group.add(g, h)
                out[k] = out.get(k, 0) + c * d
        return GroupRingElement(out)

    def map(self, fn: Callable[[GroupElement], GroupElement]) -> "GroupRingElement":
        """Push forward along a group homomorphism."""
        return GroupRingElement((fn(g), c) for g, c in self._terms.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(sorted(self._terms.items()))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{self._terms[g]}*{element_text(g)}" for g in sorted(self._terms))

    @classmethod
    def parse(cls, text: str) -> "GroupRingElement":
        text = text.strip()
        if text == "0":
            return cls()
        terms = []
        for piece in text.split(" + "):
            m = re.fullmatch(r"\s*(-?\d+)\s*\*\s*(\[.*\])\s*", piece)
            if m is None:
                raise FormatError(f"bad group-ring term {piece!r}")
            terms.append((parse_element(m.group(2)), int(m.group(1))))
        return cls(terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"GroupRingElement({self.to_text()!r})"
