"""Move-invariance fuzzing with greedy counterexample shrinking."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .abelian import GroupRingElement
from .biquandle import FiniteBiquandle, Permutation
from .cohomology import Cocycle2, check_state_sum_hypotheses, state_sum_unchecked
from .coloring import CompiledDiagram, iter_colorings
from .diagram import ArrowedDiagram
from .index import Abelianization, IndexProfile, gx_abelianization, index_profile
from .moves import Move, random_walk, replay


@dataclass(frozen=True)
class Invariants:
    col: int
    phi: GroupRingElement | None
    profile: IndexProfile

    def differences(self, other: "Invariants") -> list[str]:
        out = []
        if self.col != other.col:
            out.append(f"Col {self.col} -> {other.col}")
        if self.phi != other.phi:
            out.append(f"Phi {self.phi} -> {other.phi}")
        if self.profile != other.profile:
            a = "; ".join(self.profile.lines()) or "empty"
            b = "; ".join(other.profile.lines()) or "empty"
            out.append(f"profile {{{a}}} -> {{{b}}}")
        return out


class Evaluator:
    """Computes the three invariants for one fixed ``(X, f, phi)``."""

    def __init__(self, b: FiniteBiquandle, f: Permutation, phi: Cocycle2 | None = None):
        if phi is not None:
            check_state_sum_hypotheses(b, f, phi)
        self.b, self.f, self.phi = b, f, phi
        self.ab: Abelianization = gx_abelianization(b, f)

    def __call__(self, d: ArrowedDiagram) -> Invariants:
        comp = CompiledDiagram(d)
        col = sum(1 for _ in iter_colorings(self.b, self.f, comp))
        phi = state_sum_unchecked(self.b, self.f, self.phi, comp) if self.phi is not None else None
        return Invariants(col, phi, index_profile(self.b, self.f, d, self.ab))


@dataclass
class TrialResult:
    index: int
    seed: int
    script: list[Move]
    differences: list[str]
    minimized: list[Move] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.differences


def trial_script(d: ArrowedDiagram, max_steps: int, seed: int) -> list[Move]:
    """The move script of one trial: a walk of 1..max_steps moves."""
    rng = random.Random(seed)
    length = rng.randint(1, max_steps) if max_steps > 0 else 0
    return random_walk(d, length, rng.getrandbits(64))[1]


def minimize(d: ArrowedDiagram, script: list[Move], fails) -> list[Move]:
    """Greedily drop moves while ``fails(replayed diagram)`` stays true."""
    current = list(script)
    changed = True
    while changed:
        changed = False
        for k in range(len(current)):
            trial = current[:k] + current[k + 1:]
            if fails(replay(d, trial)):
                current = trial
                changed = True
                break
    return current


def run_trial(ev: Evaluator, d: ArrowedDiagram, base: Invariants, index: int, seed: int, max_steps: int) -> TrialResult:
    script = trial_script(d, max_steps, seed)
    diffs = base.differences(ev(replay(d, script)))
    res = TrialResult(index, seed, script, diffs)
    if diffs:
        res.minimized = minimize(d, script, lambda e: bool(base.differences(ev(e))))
    return res


def fuzz(ev: Evaluator, d: ArrowedDiagram, steps: int, trials: int, seed: int) -> list[TrialResult]:
    """Trials ``0..trials-1`` use seeds ``seed, seed+1, ...``."""
    base = ev(d)
    return [run_trial(ev, d, base, t, seed + t, steps) for t in range(trials)]


def report(results: list[TrialResult]) -> str:
    bad = [r for r in results if not r.ok]
    lines = [f"trials: {len(results)}", f"failures: {len(bad)}"]
    for r in bad:
        lines.append(f"trial {r.index} (seed {r.seed}): " + "; ".join(r.differences))
        lines.append("  minimized script:")
        lines += [f"    {m}" for m in r.minimized]
    return "\n".join(lines) + "\n"
