"""Crossing indices valued in the abelianized pair group and the a_g profile.

The pair group has one generator ``(x, y)`` per ordered pair and relations

    (x,x) = 0,  (x,y) + (y, f^-1 x) = 0,
    (x,y) = (x*z, y*z),  (y,z) = (y o x, z o x),  (x,z) = (x*y, z o y).

Everything here lives in its abelianization, computed by a Smith form.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .abelian import AbelianGroup, GroupElement, GroupRingElement, element_text
from .biquandle import FiniteBiquandle, Permutation, require_admissible
from .coloring import CompiledDiagram, iter_colorings
from .diagram import ArrowedDiagram
from .errors import ContractError, InternalConsistencyError
from .snf import hermite_rows, smith_normal_form

Pair = tuple[int, int]


@dataclass(frozen=True)
class GxPresentation:
    generators: tuple[Pair, ...]
    relators: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]


def gx_presentation(b: FiniteBiquandle, f: Permutation) -> GxPresentation:
    n = b.n
    gens = tuple(itertools.product(b.elements, repeat=2))
    idx = lambda x, y: (x - 1) * n + (y - 1)  # noqa: E731
    s, c = b.op_star, b.op_circ
    finv = f.inverse()
    rows: list[list[int]] = []
    labels: list[str] = []

    def rel(label: str, *terms: tuple[int, Pair]) -> None:
        r = [0] * (n * n)
        for k, p in terms:
            r[idx(*p)] += k
        rows.append(r)
        labels.append(label)

    for x in b.elements:
        rel(f"({x},{x})", (1, (x, x)))
    for x, y in itertools.product(b.elements, repeat=2):
        rel(f"pair {x},{y}", (1, (x, y)), (1, (y, finv(x))))
    for x, y, z in itertools.product(b.elements, repeat=3):
        rel(f"star {x},{y},{z}", (1, (x, y)), (-1, (s(x, z), s(y, z))))
        rel(f"circ {x},{y},{z}", (1, (y, z)), (-1, (c(y, x), c(z, x))))
        rel(f"mixed {x},{y},{z}", (1, (x, z)), (-1, (s(x, y), c(z, y))))
    return GxPresentation(gens, tuple(tuple(r) for r in rows), tuple(labels))


@dataclass(frozen=True)
class Abelianization:
    """``group`` together with the image of every generator pair."""

    group: AbelianGroup
    projection: dict[Pair, GroupElement] = field(hash=False)

    def __call__(self, x: int, y: int) -> GroupElement:
        return self.projection[(x, y)]

    def to_text(self) -> str:
        lines = [f"group = {self.group.to_text()}"]
        lines += [f"({x},{y}) -> {element_text(v)}" for (x, y), v in sorted(self.projection.items())]
        return "\n".join(lines) + "\n"


def gx_abelianization(b: FiniteBiquandle, f: Permutation, *, verify: bool = True) -> Abelianization:
    """Abelianization of the pair group for ``(b, f)``.

    The free coordinates are normalized by a Hermite form, so the image of the
    first generator (in lexicographic order) that is not torsion has its first
    nonzero coordinate positive.
    """
    require_admissible(b, f)
    pres = gx_presentation(b, f)
    N = len(pres.generators)
    snf = smith_normal_form([list(r) for r in pres.relators], cols=N)
    diag = snf.diagonal + [0] * (N - len(snf.diagonal))
    free_cols = [i for i in range(N) if diag[i] == 0]
    tors_cols = [i for i in range(N) if diag[i] > 1]
    # generator j has coordinates given by row j of V
    free = [[snf.V[j][i] for i in free_cols] for j in range(N)]
    if free_cols:
        _, T = hermite_rows([[free[j][k] for j in range(N)] for k in range(len(free_cols))])
        free = [[sum(T[a][k] * free[j][k] for k in range(len(free_cols))) for a in range(len(free_cols))] for j in range(N)]
    group = AbelianGroup(len(free_cols), tuple(diag[i] for i in tors_cols))
    proj = {
        pres.generators[j]: group.element(free[j] + [snf.V[j][i] for i in tors_cols]) for j in range(N)
    }
    ab = Abelianization(group, proj)
    if verify:
        bad = projection_violations(b, f, ab)
        if bad:
            raise InternalConsistencyError(f"projection does not kill relator {bad[0]}")
    return ab


def projection_violations(b: FiniteBiquandle, f: Permutation, ab: Abelianization) -> list[str]:
    """Relators (plus the derived ``(x o y, z * y) = (x, z)``) not killed by ``ab``."""
    pres = gx_presentation(b, f)
    G = ab.group
    bad = []
    for label, row in zip(pres.labels, pres.relators):
        img = G.sum(G.scale(k, ab.projection[g]) for k, g in zip(row, pres.generators) if k)
        if not G.is_zero(img):
            bad.append(label)
    for x, y, z in itertools.product(b.elements, repeat=3):
        if ab(b.op_circ(x, y), b.op_star(z, y)) != ab(x, z):
            bad.append(f"derived {x},{y},{z}")
    return bad


def specialize(ab: Abelianization, matrix: Sequence[Sequence[int]], target: AbelianGroup) -> Abelianization:
    """Compose the projection with the homomorphism given by ``matrix`` (rows: target coordinates).

    Raises ``ContractError`` if the matrix does not respect the torsion of
    the source group.
    """
    src = ab.group
    if len(matrix) != target.length or any(len(r) != src.length for r in matrix):
        raise ContractError(f"specialization matrix must be {target.length}x{src.length}")
    for k, d in enumerate(src.torsion):
        col = [row[src.rank + k] * d for row in matrix]
        if not target.is_zero(target.reduce(col)):
            raise ContractError(f"matrix does not kill {d} times torsion generator {k}")

    def apply(v: GroupElement) -> GroupElement:
        return target.reduce(sum(r * x for r, x in zip(row, v)) for row in matrix)

    return Abelianization(target, {p: apply(v) for p, v in ab.projection.items()})


# indices ------------------------------------------------------------------


def crossing_indices(
    b: FiniteBiquandle,
    f: Permutation,
    d: ArrowedDiagram | CompiledDiagram,
    ab: Abelianization | None = None,
) -> dict[int, GroupRingElement]:
    """``Ind(c)``: over all colorings, the formal sum of the projected weight pair of ``c``."""
    require_admissible(b, f)
    ab = ab or gx_abelianization(b, f)
    comp = d if isinstance(d, CompiledDiagram) else CompiledDiagram(d)
    bags: dict[int, list[GroupElement]] = {c.crossing: [] for c in comp.crossings}
    for col in iter_colorings(b, f, comp):
        for c in comp.crossings:
            bags[c.crossing].append(ab(col[c.p_arc], col[c.q_arc]))
    return {cid: GroupRingElement.from_elements(v) for cid, v in bags.items()}


@dataclass(frozen=True)
class IndexProfile:
    entries: dict[GroupRingElement, int] = field(hash=False)
    col: int
    writhe: int
    group: AbelianGroup

    def invariant_part(self) -> tuple:
        """What move-invariance compares: the sorted ``(g, a_g)`` pairs."""
        return tuple(sorted(((g.sort_key(), a) for g, a in self.entries.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexProfile):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.invariant_part())

    def lines(self) -> list[str]:
        ordered = sorted(self.entries.items(), key=lambda kv: kv[0].sort_key())
        return [f"a_g = {a} @ g = {g.to_text()}" for g, a in ordered]

    def to_text(self) -> str:
        head = [f"Col = {self.col}", f"writhe = {self.writhe}", f"group = {self.group.to_text()}"]
        return "\n".join(head + self.lines()) + "\n"


def index_profile(
    b: FiniteBiquandle,
    f: Permutation,
    d: ArrowedDiagram,
    ab: Abelianization | None = None,
) -> IndexProfile:
    """``a_g = sum of w(c) over crossings with Ind(c) = g``, minus ``w(D)`` at ``g = Col*[0]``."""
    ab = ab or gx_abelianization(b, f)
    comp = CompiledDiagram(d)
    colorings = list(iter_colorings(b, f, comp))
    inds = crossing_indices(b, f, comp, ab)
    sign = {c.crossing: c.sign for c in comp.crossings}
    acc: dict[GroupRingElement, int] = {}
    for cid, g in inds.items():
        acc[g] = acc.get(g, 0) + sign[cid]
    special = GroupRingElement.of(ab.group.zero(), len(colorings)) if colorings else GroupRingElement()
    w = d.writhe()
    acc[special] = acc.get(special, 0) - w
    return IndexProfile({g: a for g, a in acc.items() if a}, len(colorings), w, ab.group)
