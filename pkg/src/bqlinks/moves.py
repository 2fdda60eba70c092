"""Diagram moves as rewrites of arrowed Gauss codes.

Move kinds: ``R1+``/``R1-`` (kink), ``R2+``/``R2-`` (bigon), ``R3`` (triangle),
``O4+``/``O4-`` (cancelling arrow pair) and ``O5`` (arrow slides through a
crossing, exchanging over/under and flipping the sign).

A move is a kind plus a parameter map; the textual site syntax used by the
command line is ``key=value`` pairs joined by commas, for example
``arc=0:2,order=ou,sign=+``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from .diagram import OVER, UNDER, Arc, Arrow, ArrowedDiagram, Event, Half
from .errors import FormatError, MoveError

_ARC_KEYS = ("arc", "under", "over", "at")
_SIGN_KEYS = ("sign", "first")
KINDS = ("R1+", "R1-", "R2+", "R2-", "R3", "O4+", "O4-", "O5")


@dataclass(frozen=True)
class Move:
    kind: str
    params: tuple[tuple[str, object], ...] = field(default=())

    @classmethod
    def make(cls, kind: str, **params: object) -> "Move":
        if kind not in KINDS:
            raise FormatError(f"unknown move {kind!r}")
        return cls(kind, tuple(sorted(params.items())))

    def get(self, key: str) -> object:
        for k, v in self.params:
            if k == key:
                return v
        raise FormatError(f"move {self.kind} needs parameter {key!r}")

    # site syntax -----------------------------------------------------------

    def site_text(self) -> str:
        def fmt(k: str, v: object) -> str:
            if isinstance(v, bool):
                return "yes" if v else "no"
            if k in _ARC_KEYS:
                return f"{v[0]}:{v[1]}"
            if isinstance(v, tuple):
                return "/".join(map(str, v))
            if k in _SIGN_KEYS:
                return "+" if v > 0 else "-"
            return str(v)

        return ",".join(f"{k}={fmt(k, v)}" for k, v in self.params)

    def __str__(self) -> str:
        return f"{self.kind} {self.site_text()}"

    @classmethod
    def parse(cls, kind: str, site: str) -> "Move":
        raw: dict[str, str] = {}
        for part in filter(None, (p.strip() for p in site.split(","))):
            if "=" not in part:
                raise FormatError(f"bad site component {part!r}")
            k, v = part.split("=", 1)
            raw[k.strip()] = v.strip()

        def arc(v: str) -> Arc:
            try:
                a, b = v.split(":")
                return int(a), int(b)
            except ValueError:
                raise FormatError(f"bad semi-arc {v!r}, expected C:P") from None

        def sign(v: str) -> int:
            if v not in ("+", "-"):
                raise FormatError(f"bad sign {v!r}")
            return 1 if v == "+" else -1

        def ids(v: str) -> tuple[int, ...]:
            try:
                return tuple(int(t) for t in v.split("/"))
            except ValueError:
                raise FormatError(f"bad crossing list {v!r}") from None

        converters = {
            "arc": arc, "under": arc, "over": arc, "at": arc,
            "sign": sign, "first": sign,
            "order": str, "side": str,
            "crossing": int, "crossings": ids,
            "parallel": lambda v: v in ("yes", "true", "1"),
        }
        params = {}
        for k, v in raw.items():
            if k not in converters:
                raise FormatError(f"unknown site key {k!r}")
            try:
                params[k] = converters[k](v)
            except ValueError:
                raise FormatError(f"bad value for {k}: {v!r}") from None
        return cls.make(kind, **params)


# sequence surgery ----------------------------------------------------------


def _check_arc(d: ArrowedDiagram, arc: Arc) -> None:
    i, j = arc
    if not 0 <= i < len(d.components) or not 0 <= j < max(len(d.components[i]), 1):
        raise MoveError(f"no semi-arc {arc}")


def _insert(comps: list[list[Event]], arc: Arc, events: list[Event]) -> None:
    i, j = arc
    comp = comps[i]
    pos = j + 1 if comp else 0
    comp[pos:pos] = events


def _replace(d: ArrowedDiagram, comps: list[list[Event]]) -> ArrowedDiagram:
    out = ArrowedDiagram(tuple(tuple(c) for c in comps))
    errors = out.validate()
    if errors:  # pragma: no cover - would be a bug in a rewrite rule
        raise MoveError("rewrite produced an invalid diagram: " + "; ".join(errors))
    return out


def _remove_positions(d: ArrowedDiagram, positions: set[tuple[int, int]]) -> ArrowedDiagram:
    comps = [[e for j, e in enumerate(comp) if (i, j) not in positions] for i, comp in enumerate(d.components)]
    return _replace(d, comps)


def _next(d: ArrowedDiagram, loc: tuple[int, int]) -> tuple[int, int]:
    i, j = loc
    return i, (j + 1) % len(d.components[i])


def _adjacent(d: ArrowedDiagram, first: tuple[int, int], second: tuple[int, int]) -> bool:
    """``second`` immediately follows ``first`` on the same component."""
    return first != second and first[0] == second[0] and _next(d, first) == second


def _event(d: ArrowedDiagram, loc: tuple[int, int]) -> Event:
    return d.components[loc[0]][loc[1]]


def _half_loc(d: ArrowedDiagram, crossing: int, role: str) -> tuple[int, int]:
    info = d.crossings().get(crossing)
    if info is None:
        raise MoveError(f"no crossing {crossing}")
    return info.under if role == UNDER else info.over


# the moves -----------------------------------------------------------------


def r1_add(d: ArrowedDiagram, arc: Arc, order: str = "ou", sign: int = 1) -> ArrowedDiagram:
    _check_arc(d, arc)
    if order not in ("ou", "uo") or sign not in (1, -1):
        raise FormatError("R1+ needs order in {ou, uo} and sign +/-")
    (c,) = d.fresh_ids(1)
    pair = [Half(c, order[0], sign), Half(c, order[1], sign)]
    comps = [list(x) for x in d.components]
    _insert(comps, arc, pair)
    return _replace(d, comps)


def r1_remove(d: ArrowedDiagram, crossing: int) -> ArrowedDiagram:
    u = _half_loc(d, crossing, UNDER)
    o = _half_loc(d, crossing, OVER)
    if not (_adjacent(d, u, o) or _adjacent(d, o, u)):
        raise MoveError(f"crossing {crossing} is not a kink")
    return _remove_positions(d, {u, o})


def r2_add(
    d: ArrowedDiagram, under: Arc, over: Arc, sign: int = 1, parallel: bool = True
) -> ArrowedDiagram:
    """Push the strand through ``over`` across the strand through ``under``.

    The under strand reads ``u(c), u(d)``; the over strand reads ``o(c), o(d)``
    when ``parallel`` and ``o(d), o(c)`` otherwise.  ``c`` gets ``sign`` and
    ``d`` the opposite sign.
    """
    _check_arc(d, under)
    _check_arc(d, over)
    if sign not in (1, -1):
        raise FormatError("R2+ needs sign +/-")
    c, e = d.fresh_ids(2)
    under_events = [Half(c, UNDER, sign), Half(e, UNDER, -sign)]
    over_events = [Half(c, OVER, sign), Half(e, OVER, -sign)]
    if not parallel:
        over_events.reverse()
    comps = [list(x) for x in d.components]
    if under == over:
        _insert(comps, under, under_events + over_events)
    elif under[0] == over[0] and under[1] > over[1]:
        _insert(comps, under, under_events)
        _insert(comps, over, over_events)
    else:
        _insert(comps, over, over_events)
        _insert(comps, under, under_events)
    return _replace(d, comps)


def _r2_match(d: ArrowedDiagram, a: int, b: int) -> bool:
    info = d.crossings()
    if a == b or a not in info or b not in info or info[a].sign != -info[b].sign:
        return False
    for c, e in ((a, b), (b, a)):
        if _adjacent(d, info[c].under, info[e].under) and (
            _adjacent(d, info[c].over, info[e].over) or _adjacent(d, info[e].over, info[c].over)
        ):
            return True
    return False


def r2_remove(d: ArrowedDiagram, crossings: tuple[int, int]) -> ArrowedDiagram:
    a, b = crossings
    if not _r2_match(d, a, b):
        raise MoveError(f"crossings {a},{b} do not form a bigon")
    info = d.crossings()
    return _remove_positions(d, {info[a].under, info[a].over, info[b].under, info[b].over})


# R3 patterns, with the three crossings named by the strands they join.
# Each entry lists (first half, second half) for the bottom, middle and top
# strand; a matching site is rewritten to the other pattern by swapping every
# pair.
_R3_FORWARD = ((("XY", UNDER), ("XZ", UNDER)), (("XY", OVER), ("YZ", UNDER)), (("XZ", OVER), ("YZ", OVER)))
_R3_BACKWARD = ((("XZ", UNDER), ("XY", UNDER)), (("YZ", UNDER), ("XY", OVER)), (("YZ", OVER), ("XZ", OVER)))


def _r3_pairs(d: ArrowedDiagram, crossings: tuple[int, int, int]):
    info = d.crossings()
    if len(set(crossings)) != 3 or any(c not in info for c in crossings):
        return None
    if len({info[c].sign for c in crossings}) != 1:
        return None
    for names in itertools.permutations(crossings):
        label = dict(zip(("XY", "YZ", "XZ"), names))
        for pattern in (_R3_FORWARD, _R3_BACKWARD):
            pairs = []
            for (n1, r1), (n2, r2) in pattern:
                l1 = info[label[n1]].under if r1 == UNDER else info[label[n1]].over
                l2 = info[label[n2]].under if r2 == UNDER else info[label[n2]].over
                if not _adjacent(d, l1, l2):
                    break
                pairs.append((l1, l2))
            else:
                return pairs
    return None


def r3(d: ArrowedDiagram, crossings: tuple[int, int, int]) -> ArrowedDiagram:
    pairs = _r3_pairs(d, tuple(crossings))
    if pairs is None:
        raise MoveError(f"crossings {crossings} do not form an R3 triangle")
    comps = [list(x) for x in d.components]
    for (i, j1), (_, j2) in pairs:
        comps[i][j1], comps[i][j2] = d.components[i][j2], d.components[i][j1]
    return _replace(d, comps)


def o4_add(d: ArrowedDiagram, arc: Arc, first: int = 1) -> ArrowedDiagram:
    _check_arc(d, arc)
    if first not in (1, -1):
        raise FormatError("O4+ needs first=+/-")
    comps = [list(x) for x in d.components]
    _insert(comps, arc, [Arrow(first), Arrow(-first)])
    return _replace(d, comps)


def o4_remove(d: ArrowedDiagram, at: tuple[int, int]) -> ArrowedDiagram:
    i, j = at
    if not 0 <= i < len(d.components) or not 0 <= j < len(d.components[i]):
        raise MoveError(f"no event at {at}")
    nxt = _next(d, at)
    e1, e2 = _event(d, at), _event(d, nxt)
    if nxt == at or not (isinstance(e1, Arrow) and isinstance(e2, Arrow)) or e1.direction != -e2.direction:
        raise MoveError(f"no cancelling arrow pair at {at}")
    return _remove_positions(d, {at, nxt})


def _o5_site(d: ArrowedDiagram, at: tuple[int, int], side: str):
    i, j = at
    if not 0 <= i < len(d.components) or not 0 <= j < len(d.components[i]):
        return None
    arrow = _event(d, at)
    k = len(d.components[i])
    if not isinstance(arrow, Arrow) or k < 2 or side not in ("after", "before"):
        return None
    hloc = (i, (j + 1) % k) if side == "after" else (i, (j - 1) % k)
    half = _event(d, hloc)
    if not isinstance(half, Half):
        return None
    # Just past an arrow met along its direction the strand sits at the bottom
    # of the fibre, so it must be the under strand there; the other three cases
    # follow by reversing the side or the arrow.
    need = UNDER if (arrow.direction == 1) == (side == "after") else OVER
    if half.role != need:
        return None
    return arrow, hloc, half


def o5(d: ArrowedDiagram, at: tuple[int, int], side: str = "after") -> ArrowedDiagram:
    """Slide the arrow at ``at`` through the adjacent crossing half on ``side``."""
    site = _o5_site(d, at, side)
    if site is None:
        raise MoveError(f"no arrow/crossing pair at {at} ({side})")
    arrow, hloc, half = site
    info = d.crossings()[half.crossing]
    other = info.over if half.role == UNDER else info.under
    flip = {UNDER: OVER, OVER: UNDER}
    comps = [list(x) for x in d.components]
    comps[other[0]][other[1]] = Half(half.crossing, half.role, -half.sign)
    comps[hloc[0]][hloc[1]] = arrow
    comps[at[0]][at[1]] = Half(half.crossing, flip[half.role], -half.sign)
    return _replace(d, comps)


def apply_move(d: ArrowedDiagram, move: Move) -> ArrowedDiagram:
    d.require_valid()
    k = move.kind
    if k == "R1+":
        return r1_add(d, move.get("arc"), str(_opt(move, "order", "ou")), int(_opt(move, "sign", 1)))
    if k == "R1-":
        return r1_remove(d, int(move.get("crossing")))
    if k == "R2+":
        return r2_add(
            d, move.get("under"), move.get("over"), int(_opt(move, "sign", 1)), bool(_opt(move, "parallel", True))
        )
    if k == "R2-":
        cs = tuple(move.get("crossings"))
        if len(cs) != 2:
            raise FormatError("R2- needs two crossings")
        return r2_remove(d, cs)
    if k == "R3":
        cs = tuple(move.get("crossings"))
        if len(cs) != 3:
            raise FormatError("R3 needs three crossings")
        return r3(d, cs)
    if k == "O4+":
        return o4_add(d, move.get("arc"), int(_opt(move, "first", 1)))
    if k == "O4-":
        return o4_remove(d, move.get("at"))
    if k == "O5":
        return o5(d, move.get("at"), str(_opt(move, "side", "after")))
    raise FormatError(f"unknown move {k!r}")


def _opt(move: Move, key: str, default: object) -> object:
    try:
        return move.get(key)
    except FormatError:
        return default


# site enumeration and random walks -----------------------------------------


def removal_sites(d: ArrowedDiagram) -> Iterator[Move]:
    """Every applicable R1-, R2-, R3, O4- and O5 move, in a fixed order."""
    info = d.crossings()
    ids = list(info)
    for c in ids:
        u, o = info[c].under, info[c].over
        if _adjacent(d, u, o) or _adjacent(d, o, u):
            yield Move.make("R1-", crossing=c)
    for a, b in itertools.combinations(ids, 2):
        if _r2_match(d, a, b):
            yield Move.make("R2-", crossings=(a, b))
    for trio in itertools.combinations(ids, 3):
        if _r3_pairs(d, trio) is not None:
            yield Move.make("R3", crossings=trio)
    for i, comp in enumerate(d.components):
        for j, e in enumerate(comp):
            if not isinstance(e, Arrow):
                continue
            if len(comp) >= 2:
                e2 = comp[(j + 1) % len(comp)]
                if isinstance(e2, Arrow) and e2.direction == -e.direction:
                    yield Move.make("O4-", at=(i, j))
            for side in ("after", "before"):
                if _o5_site(d, (i, j), side) is not None:
                    yield Move.make("O5", at=(i, j), side=side)


def random_insertion(d: ArrowedDiagram, kind: str, rng: random.Random) -> Move:
    arcs = d.semi_arcs()
    if kind == "R1+":
        return Move.make("R1+", arc=rng.choice(arcs), order=rng.choice(("ou", "uo")), sign=rng.choice((1, -1)))
    if kind == "R2+":
        return Move.make(
            "R2+",
            under=rng.choice(arcs),
            over=rng.choice(arcs),
            sign=rng.choice((1, -1)),
            parallel=rng.random() < 0.5,
        )
    if kind == "O4+":
        return Move.make("O4+", arc=rng.choice(arcs), first=rng.choice((1, -1)))
    raise ValueError(kind)


_INSERT_KINDS = ("R1+", "R2+", "O4+")
_OTHER_KINDS = ("R1-", "R2-", "O4-", "R3", "O5")


def random_move(d: ArrowedDiagram, rng: random.Random, retries: int = 64) -> Move | None:
    """Draw one applicable move; insertions are twice as likely as the rest."""
    if not d.components:
        return None
    sites: dict[str, list[Move]] = {}
    for m in removal_sites(d):
        sites.setdefault(m.kind, []).append(m)
    for _ in range(retries):
        if rng.random() < 2 / 3:
            return random_insertion(d, rng.choice(_INSERT_KINDS), rng)
        kind = rng.choice(_OTHER_KINDS)
        if sites.get(kind):
            return rng.choice(sites[kind])
    return None


def random_walk(d: ArrowedDiagram, steps: int, seed: int) -> tuple[ArrowedDiagram, list[Move]]:
    """Apply ``steps`` random moves; returns the final diagram and the move script."""
    d.require_valid()
    rng = random.Random(seed)
    script: list[Move] = []
    for _ in range(steps):
        move = random_move(d, rng)
        if move is None:
            break
        d = apply_move(d, move)
        script.append(move)
    return d, script


def random_equivalent(d: ArrowedDiagram, steps: int, seed: int) -> ArrowedDiagram:
    return random_walk(d, steps, seed)[0]


def replay(d: ArrowedDiagram, script: list[Move]) -> ArrowedDiagram:
    """Apply a script, skipping moves that no longer match (used when shrinking)."""
    for move in script:
        try:
            d = apply_move(d, move)
        except MoveError:
            continue
    return d
