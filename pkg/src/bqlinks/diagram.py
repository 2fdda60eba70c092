"""Arrowed Gauss codes.

A diagram is a tuple of components; each component is a cyclic sequence of
events.  An event is either one half of a crossing (``Half``) or an arrow
(``Arrow``).  The semi-arc ``(i, j)`` of component ``i`` is the gap right after
event ``j``; an event-free component has the single semi-arc ``(i, 0)``.

Text form: components separated by ``;``, events by ``,``.  ``o3+`` is the over
half of crossing 3 with sign +, ``u3-`` an under half with sign -, ``a+`` an
arrow along the traversal and ``a-`` an arrow against it.  An event-free
component is written ``()``.  Whitespace is ignored.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Union

from .errors import FormatError

OVER, UNDER = "o", "u"


@dataclass(frozen=True)
class Half:
    crossing: int
    role: str  # OVER or UNDER
    sign: int  # +1 or -1

    def to_text(self) -> str:
        return f"{self.role}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class Arrow:
    direction: int  # +1 along the traversal, -1 against

    def to_text(self) -> str:
        return "a+" if self.direction > 0 else "a-"


Event = Union[Half, Arrow]
Arc = tuple[int, int]

_TOKEN = re.compile(r"^(?:([ou])(\d+)([+-])|a([+-]))$")


@dataclass(frozen=True)
class CrossingInfo:
    """Where the two halves of one crossing sit."""

    sign: int
    under: tuple[int, int]  # (component, position) of the under half
    over: tuple[int, int]


@dataclass(frozen=True)
class ArrowedDiagram:
    components: tuple[tuple[Event, ...], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(tuple(c) for c in self.components))

    # text ------------------------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "ArrowedDiagram":
        lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
        body = re.sub(r"\s+", "", "".join(lines))
        if not body:
            return cls(())
        comps = []
        for piece in body.split(";"):
            if piece in ("", "()"):
                comps.append(())
                continue
            events: list[Event] = []
            for tok in piece.split(","):
                m = _TOKEN.match(tok)
                if m is None:
                    raise FormatError(f"bad event token {tok!r}")
                if m.group(4):
                    events.append(Arrow(1 if m.group(4) == "+" else -1))
                else:
                    events.append(Half(int(m.group(2)), m.group(1), 1 if m.group(3) == "+" else -1))
            comps.append(tuple(events))
        return cls(tuple(comps))

    def to_text(self, renumber: bool = True) -> str:
        d = self.canonical() if renumber else self
        return ";".join(",".join(e.to_text() for e in comp) if comp else "()" for comp in d.components)

    def __str__(self) -> str:
        return self.to_text(renumber=False)

    # structure -------------------------------------------------------------

    def validate(self) -> list[str]:
        """Structural errors; the empty list means the diagram is well formed."""
        errors = []
        roles: dict[int, list[str]] = {}
        signs: dict[int, set[int]] = {}
        for comp in self.components:
            for e in comp:
                if isinstance(e, Half):
                    if e.role not in (OVER, UNDER) or e.sign not in (1, -1):
                        errors.append(f"malformed half {e!r}")
                        continue
                    roles.setdefault(e.crossing, []).append(e.role)
                    signs.setdefault(e.crossing, set()).add(e.sign)
                elif isinstance(e, Arrow):
                    if e.direction not in (1, -1):
                        errors.append(f"malformed arrow {e!r}")
                else:
                    errors.append(f"unknown event {e!r}")
        for cid in sorted(roles):
            count = Counter(roles[cid])
            if count[OVER] > 1 or count[UNDER] > 1:
                errors.append(f"crossing {cid}: duplicate role ({sorted(roles[cid])})")
            elif count[OVER] == 0:
                errors.append(f"crossing {cid}: missing its over half")
            elif count[UNDER] == 0:
                errors.append(f"crossing {cid}: missing its under half")
            if len(signs[cid]) > 1:
                errors.append(f"crossing {cid}: sign mismatch between halves")
        return errors

    @property
    def is_valid(self) -> bool:
        return not self.validate()

    def require_valid(self) -> None:
        errors = self.validate()
        if errors:
            raise FormatError("invalid diagram: " + "; ".join(errors))

    def crossings(self) -> dict[int, CrossingInfo]:
        under: dict[int, tuple[int, int]] = {}
        over: dict[int, tuple[int, int]] = {}
        sign: dict[int, int] = {}
        for i, comp in enumerate(self.components):
            for j, e in enumerate(comp):
                if isinstance(e, Half):
                    (under if e.role == UNDER else over)[e.crossing] = (i, j)
                    sign[e.crossing] = e.sign
        return {c: CrossingInfo(sign[c], under[c], over[c]) for c in sorted(sign)}

    def crossing_ids(self) -> list[int]:
        return sorted({e.crossing for comp in self.components for e in comp if isinstance(e, Half)})

    def fresh_ids(self, k: int) -> list[int]:
        start = max(self.crossing_ids(), default=0) + 1
        return list(range(start, start + k))

    def semi_arcs(self) -> list[Arc]:
        return [(i, j) for i, comp in enumerate(self.components) for j in range(max(len(comp), 1))]

    def arc_before(self, i: int, j: int) -> Arc:
        k = len(self.components[i])
        return (i, (j - 1) % k)

    def event_count(self) -> int:
        return sum(len(c) for c in self.components)

    # numeric invariants of the diagram itself -----------------------------

    def writhe(self) -> int:
        return sum(info.sign for info in self.crossings().values())

    def winding(self, component: int) -> int:
        return sum(e.direction for e in self.components[component] if isinstance(e, Arrow))

    def total_winding(self) -> int:
        return sum(self.winding(i) for i in range(len(self.components)))

    # relabelling -----------------------------------------------------------

    def relabel(self, mapping: dict[int, int]) -> "ArrowedDiagram":
        def ev(e: Event) -> Event:
            return Half(mapping[e.crossing], e.role, e.sign) if isinstance(e, Half) else e

        return ArrowedDiagram(tuple(tuple(ev(e) for e in comp) for comp in self.components))

    def canonical(self) -> "ArrowedDiagram":
        """Crossings renumbered ``1..m`` in order of first appearance."""
        mapping: dict[int, int] = {}
        for comp in self.components:
            for e in comp:
                if isinstance(e, Half) and e.crossing not in mapping:
                    mapping[e.crossing] = len(mapping) + 1
        return self.relabel(mapping)

    def same_as(self, other: "ArrowedDiagram") -> bool:
        """Equality up to crossing-id renaming."""
        return self.canonical() == other.canonical()

    def rotations(self) -> Iterator["ArrowedDiagram"]:
        """All diagrams obtained by rotating each component's starting point."""

        def rec(i: int, acc: list[tuple[Event, ...]]) -> Iterator["ArrowedDiagram"]:
            if i == len(self.components):
                yield ArrowedDiagram(tuple(acc))
                return
            comp = self.components[i]
            for r in range(max(len(comp), 1)):
                yield from rec(i + 1, acc + [comp[r:] + comp[:r]])

        yield from rec(0, [])

    def equivalent_cyclic(self, other: "ArrowedDiagram") -> bool:
        """Equality as cyclic sequences up to crossing-id renaming (small diagrams)."""
        if len(self.components) != len(other.components):
            return False
        target = other.canonical()
        return any(r.canonical() == target for r in self.rotations())


def unknot() -> ArrowedDiagram:
    return ArrowedDiagram(((),))
