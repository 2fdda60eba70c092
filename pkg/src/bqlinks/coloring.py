"""Colorings of arrowed diagrams by a biquandle with an admissible automorphism.

Crossing rule.  Every crossing carries a *weight pair* ``(p, q)``:

* positive crossing: ``p`` = incoming under arc, ``q`` = outgoing over arc;
  then outgoing under = ``p * q`` and incoming over = ``q o p``;
* negative crossing: ``p`` = outgoing under arc, ``q`` = incoming over arc;
  then incoming under = ``p * q`` and outgoing over = ``q o p``.

Arrow rule: read along the arrow, the color ``x`` becomes ``f(x)``.

The same weight pair feeds the Boltzmann weights of the state sum and the
crossing indices, so all three invariants share one convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .biquandle import FiniteBiquandle, Permutation, require_admissible
from .diagram import Arc, Arrow, ArrowedDiagram

Coloring = tuple[int, ...]  # one color (1-based) per semi-arc, in semi-arc order


@dataclass(frozen=True)
class CrossingArcs:
    """Semi-arc indices around one crossing, named by role in the weight pair."""

    crossing: int
    sign: int
    p_arc: int  # carries p
    pq_arc: int  # carries p * q
    q_arc: int  # carries q
    qp_arc: int  # carries q o p
    under_in: int
    under_out: int
    over_in: int
    over_out: int


@dataclass(frozen=True)
class ArrowArcs:
    before: int
    after: int
    direction: int


class CompiledDiagram:
    """Index semi-arcs and translate events into constraints."""

    def __init__(self, diagram: ArrowedDiagram):
        diagram.require_valid()
        self.diagram = diagram
        self.arcs: list[Arc] = diagram.semi_arcs()
        self.arc_index = {a: k for k, a in enumerate(self.arcs)}
        self.crossings: list[CrossingArcs] = []
        self.arrows: list[ArrowArcs] = []
        for cid, info in diagram.crossings().items():
            ui = self.arc_index[diagram.arc_before(*info.under)]
            uo = self.arc_index[info.under]
            oi = self.arc_index[diagram.arc_before(*info.over)]
            oo = self.arc_index[info.over]
            if info.sign > 0:
                arcs = (ui, uo, oo, oi)
            else:
                arcs = (uo, ui, oi, oo)
            self.crossings.append(CrossingArcs(cid, info.sign, *arcs, ui, uo, oi, oo))
        for i, comp in enumerate(diagram.components):
            for j, e in enumerate(comp):
                if isinstance(e, Arrow):
                    before = self.arc_index[diagram.arc_before(i, j)]
                    self.arrows.append(ArrowArcs(before, self.arc_index[(i, j)], e.direction))

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)


class _Tables:
    """0-based lookup tables for the propagation solver."""

    def __init__(self, b: FiniteBiquandle, f: Permutation):
        n = b.n
        self.n = n
        self.star = [[v - 1 for v in row] for row in b.star]
        self.circ = [[v - 1 for v in row] for row in b.circ]
        self.f = [v - 1 for v in f.images]
        self.finv = [0] * n
        for x, y in enumerate(self.f):
            self.finv[y] = x
        # star_div[q][r] = the p with p * q = r; circ_div[p][r] = the q with q o p = r
        self.star_div = [[-1] * n for _ in range(n)]
        self.circ_div = [[-1] * n for _ in range(n)]
        self.s_inv: dict[tuple[int, int], tuple[int, int]] = {}
        for p in range(n):
            for q in range(n):
                self.star_div[q][self.star[p][q]] = p
                self.circ_div[p][self.circ[q][p]] = q
                # S(p, q) = (q o p, p * q)
                self.s_inv[(self.circ[q][p], self.star[p][q])] = (p, q)


def _propagate(colors: list[int], comp: CompiledDiagram, t: _Tables, watch: list[list[tuple]], start: list[int]) -> bool:
    stack = list(start)
    while stack:
        arc = stack.pop()
        for kind, c in watch[arc]:
            if kind == "arrow":
                b, a = colors[c.before], colors[c.after]
                if c.direction > 0:
                    want_a = t.f[b] if b >= 0 else -1
                    want_b = t.finv[a] if a >= 0 else -1
                else:
                    want_a = t.finv[b] if b >= 0 else -1
                    want_b = t.f[a] if a >= 0 else -1
                for idx, want in ((c.after, want_a), (c.before, want_b)):
                    if want < 0:
                        continue
                    if colors[idx] < 0:
                        colors[idx] = want
                        stack.append(idx)
                    elif colors[idx] != want:
                        return False
                continue
            p, pq, q, qp = colors[c.p_arc], colors[c.pq_arc], colors[c.q_arc], colors[c.qp_arc]
            if p >= 0 and q >= 0:
                pass
            elif p >= 0 and qp >= 0:
                q = t.circ_div[p][qp]
            elif pq >= 0 and q >= 0:
                p = t.star_div[q][pq]
            elif pq >= 0 and qp >= 0:
                p, q = t.s_inv[(qp, pq)]
            else:
                continue
            values = ((c.p_arc, p), (c.q_arc, q), (c.pq_arc, t.star[p][q]), (c.qp_arc, t.circ[q][p]))
            for idx, want in values:
                if colors[idx] < 0:
                    colors[idx] = want
                    stack.append(idx)
                elif colors[idx] != want:
                    return False
    return True


def iter_colorings(b: FiniteBiquandle, f: Permutation, d: ArrowedDiagram | CompiledDiagram) -> Iterator[Coloring]:
    """Yield colorings (1-based tuples); order is not specified, see :func:`solve`."""
    comp = d if isinstance(d, CompiledDiagram) else CompiledDiagram(d)
    t = _Tables(b, f)
    m = comp.n_arcs
    watch: list[list[tuple]] = [[] for _ in range(m)]
    for c in comp.crossings:
        for a in {c.p_arc, c.pq_arc, c.q_arc, c.qp_arc}:
            watch[a].append(("crossing", c))
    for a in comp.arrows:
        watch[a.before].append(("arrow", a))
        if a.after != a.before:
            watch[a.after].append(("arrow", a))

    sides = [((c.p_arc, c.pq_arc), (c.q_arc, c.qp_arc)) for c in comp.crossings]

    def pick(colors: list[int]) -> int:
        # Branch where one side of a crossing is already known: the choice
        # then determines the whole crossing and failures surface early.
        for under, over in sides:
            u_known = colors[under[0]] >= 0 or colors[under[1]] >= 0
            o_known = colors[over[0]] >= 0 or colors[over[1]] >= 0
            if u_known != o_known:
                return (over if u_known else under)[0]
        return colors.index(-1)

    def search(colors: list[int]) -> Iterator[Coloring]:
        if -1 not in colors:
            yield tuple(v + 1 for v in colors)
            return
        k = pick(colors)
        for v in range(t.n):
            trial = colors.copy()
            trial[k] = v
            if _propagate(trial, comp, t, watch, [k]):
                yield from search(trial)

    yield from search([-1] * m)


def solve(
    b: FiniteBiquandle, f: Permutation, d: ArrowedDiagram, *, require_admissible_f: bool = True
) -> list[Coloring]:
    """All colorings of ``d`` by ``(b, f)``, lexicographic in semi-arc order.

    With ``require_admissible_f=False`` the count is still well defined for any
    permutation ``f``, but it is only a link invariant when ``f`` is an
    admissible automorphism.
    """
    if require_admissible_f:
        require_admissible(b, f)
    return sorted(iter_colorings(b, f, d))


def count_colorings(b: FiniteBiquandle, f: Permutation, d: ArrowedDiagram, **kw) -> int:
    return len(solve(b, f, d, **kw))


def weight_pairs(comp: CompiledDiagram, coloring: Coloring) -> dict[int, tuple[int, int]]:
    """Weight pair of each crossing under one coloring (1-based colors)."""
    return {c.crossing: (coloring[c.p_arc], coloring[c.q_arc]) for c in comp.crossings}


def coloring_count_formula_check(n: int, f: Permutation, h: int) -> int:
    """Closed form for a knot with winding ``h`` colored by the trivial quandle of order ``n``.

    Sum of the sizes of the ``f``-orbits whose size divides ``h`` (every orbit
    divides 0).
    """
    if f.n != n:
        raise ValueError("permutation degree must equal n")
    return sum(len(o) for o in f.orbits() if h % len(o) == 0)


def arrow_circle(h: int) -> ArrowedDiagram:
    """One component carrying ``|h|`` arrows, all along (h > 0) or against (h < 0)."""
    return ArrowedDiagram(((Arrow(1 if h > 0 else -1),) * abs(h),))
