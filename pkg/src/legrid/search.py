"""Bounded breadth-first search over the move graph, and move scripts.

States are byte-encoded grids deduplicated by literal equality only (two
diagrams are the same state iff their marker permutations coincide).  The
expansion order is the canonical move order, so results are reproducible:
the returned script is shortest, with ties broken by discovery order.
"""

from __future__ import annotations

import os
import tempfile
import time
from dataclasses import dataclass, field

from ._backend import kernels
from ._kernels_py import destab_effect
from .alexander import alexander_polynomial
from .grid import GridDiagram, canonical_key, classical_invariants
from .moves import Move, apply_move

DEFAULT_MOVE_SET = frozenset({"Commutation", "CyclicFlip", "Destabilize"})


@dataclass(frozen=True)
class SearchBudget:
    max_depth: int = 20
    max_states: int = 1_000_000
    max_grid_size: int = 32
    wall_clock_seconds: float = 60.0
    spill_threshold: int = 2_000_000
    workers: int = 1


@dataclass
class SearchStats:
    visited: int = 0
    depth_reached: int = 0
    frontier_size: int = 0
    elapsed: float = 0.0
    reason: str = ""


class Exhausted(Exception):
    """Search ended without reaching the goal; carries frontier statistics."""

    def __init__(self, stats: SearchStats):
        super().__init__(
            f"search exhausted ({stats.reason}): visited={stats.visited} "
            f"depth={stats.depth_reached} elapsed={stats.elapsed:.2f}s"
        )
        self.stats = stats


@dataclass(frozen=True)
class MoveScript:
    source_key: str
    steps: tuple[Move, ...]
    expect_tb: int
    expect_r: int
    expect_alex: str

    def format(self) -> str:
        lines = [f"FROM {self.source_key}"]
        lines += [str(m) for m in self.steps]
        lines.append(f"EXPECT tb={self.expect_tb} r={self.expect_r} alex={self.expect_alex}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "MoveScript":
        source = ""
        steps: list[Move] = []
        expect = None
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("FROM "):
                source = line.split(None, 1)[1]
            elif line.startswith("EXPECT "):
                fields = dict(tok.split("=", 1) for tok in line.split()[1:])
                expect = (int(fields["tb"]), int(fields["r"]), fields["alex"])
            else:
                steps.append(Move.parse(line))
        if expect is None:
            raise ValueError("script has no EXPECT footer")
        return cls(source, tuple(steps), expect[0], expect[1], expect[2])


class HashMismatch(ValueError):
    pass


class StepInapplicable(ValueError):
    pass


class FooterMismatch(ValueError):
    pass


def alexander_hash(d: GridDiagram) -> str:
    import hashlib

    poly = alexander_polynomial(d)
    text = ",".join(f"{e}:{c}" for e, c in sorted(poly.coeffs.items()))
    return hashlib.blake2b(text.encode(), digest_size=8).hexdigest()


def make_script(start: GridDiagram, steps: list[Move]) -> MoveScript:
    d = start
    for m in steps:
        d = apply_move(d, m)
    inv = classical_invariants(d)
    return MoveScript(
        source_key=canonical_key(start),
        steps=tuple(steps),
        expect_tb=inv.tb,
        expect_r=inv.r,
        expect_alex=alexander_hash(d),
    )


def replay(script: MoveScript, d: GridDiagram) -> GridDiagram:
    """Apply every step, checking applicability and Alexander invariance."""
    if canonical_key(d) != script.source_key:
        raise HashMismatch("script header does not match the source diagram")
    alex = alexander_polynomial(d)
    current = d
    for m in script.steps:
        try:
            current = apply_move(current, m)
        except Exception as exc:
            raise StepInapplicable(f"step {m} failed: {exc}") from exc
        if alexander_polynomial(current) != alex:
            raise StepInapplicable(f"step {m} changed the topological type")
    inv = classical_invariants(current)
    if (inv.tb, inv.r) != (script.expect_tb, script.expect_r):
        raise FooterMismatch(
            f"terminal invariants {(inv.tb, inv.r)} != expected "
            f"{(script.expect_tb, script.expect_r)}"
        )
    if alexander_hash(current) != script.expect_alex:
        raise FooterMismatch("terminal Alexander hash mismatch")
    return current


# ---------------------------------------------------------------------------
# BFS core


def _kernel_flags(move_set) -> dict:
    return dict(
        commutation="Commutation" in move_set,
        cyclic="CyclicFlip" in move_set,
        stabilize="Stabilize" in move_set,
        destabilize="Destabilize" in move_set,
    )


class _Visited:
    """Visited set with an optional append-only on-disk key log.

    The in-memory set is the filter of record; above the spill threshold
    each new key is also appended to a log file so that very large runs
    leave an auditable trail and can be resumed externally.
    """

    def __init__(self, threshold: int):
        self.threshold = threshold
        self.seen: set[bytes] = set()
        self.log = None

    def add(self, key: bytes) -> bool:
        if key in self.seen:
            return False
        self.seen.add(key)
        if self.log is None and len(self.seen) > self.threshold:
            fd, path = tempfile.mkstemp(prefix="legrid-visited-", suffix=".log")
            self.log = os.fdopen(fd, "ab")
            self.path = path
        if self.log is not None:
            self.log.write(key + b"\n")
        return True

    def close(self):
        if self.log is not None:
            self.log.close()


def search_equivalence(
    start: GridDiagram,
    goal,
    move_set=DEFAULT_MOVE_SET,
    budget: SearchBudget = SearchBudget(),
) -> MoveScript:
    """Shortest move script from start to a state satisfying ``goal``.

    ``goal`` is a predicate on GridDiagram.  Raises Exhausted when a budget
    limit is hit first.
    """
    flags = _kernel_flags(move_set)
    t0 = time.monotonic()
    start_state = start.to_bytes()
    visited = _Visited(budget.spill_threshold)
    visited.add(start_state)
    # parents maps state -> (parent_state, encoded move)
    parents: dict[bytes, tuple[bytes, tuple]] = {}
    stats = SearchStats()

    def reconstruct(state: bytes) -> MoveScript:
        enc_steps = []
        while state != start_state:
            parent, enc = parents[state]
            enc_steps.append(enc)
            state = parent
        steps = [Move.from_encoded(e) for e in reversed(enc_steps)]
        return make_script(start, steps)

    if goal(start):
        return make_script(start, [])

    frontier = [start_state]
    for depth in range(1, budget.max_depth + 1):
        stats.depth_reached = depth - 1
        next_frontier: list[bytes] = []
        for state in frontier:
            if time.monotonic() - t0 > budget.wall_clock_seconds:
                stats.visited = len(visited.seen)
                stats.frontier_size = len(frontier)
                stats.elapsed = time.monotonic() - t0
                stats.reason = "wall clock"
                visited.close()
                raise Exhausted(stats)
            for enc, child in kernels.expand(state, max_size=budget.max_grid_size, **flags):
                if not visited.add(child):
                    continue
                parents[child] = (state, enc)
                d = GridDiagram.from_bytes(child)
                if goal(d):
                    stats.visited = len(visited.seen)
                    stats.elapsed = time.monotonic() - t0
                    visited.close()
                    return reconstruct(child)
                next_frontier.append(child)
                if len(visited.seen) >= budget.max_states:
                    stats.visited = len(visited.seen)
                    stats.frontier_size = len(next_frontier)
                    stats.elapsed = time.monotonic() - t0
                    stats.reason = "state budget"
                    visited.close()
                    raise Exhausted(stats)
        if not next_frontier:
            stats.reason = "component exhausted"
            stats.visited = len(visited.seen)
            stats.elapsed = time.monotonic() - t0
            visited.close()
            raise Exhausted(stats)
        frontier = next_frontier
    stats.reason = "depth budget"
    stats.visited = len(visited.seen)
    stats.depth_reached = budget.max_depth
    stats.frontier_size = len(frontier)
    stats.elapsed = time.monotonic() - t0
    visited.close()
    raise Exhausted(stats)


def has_destabilization(d: GridDiagram, sign: str) -> bool:
    want = (1, -1) if sign == "+" else (1, 1)
    for _, _, doubled, corner in kernels.find_destab_sites(d.to_bytes()):
        if destab_effect(doubled, corner) == want:
            return True
    return False


def find_destabilization(
    d: GridDiagram,
    sign: str,
    budget: SearchBudget = SearchBudget(),
    move_set=frozenset({"Commutation", "CyclicFlip"}),
) -> MoveScript:
    """Script reaching a ±-destabilization, with the destabilization
    itself appended as the final step."""
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    script = search_equivalence(
        d, lambda g: has_destabilization(g, sign), move_set=move_set, budget=budget
    )
    terminal = d
    for m in script.steps:
        terminal = apply_move(terminal, m)
    want = (1, -1) if sign == "+" else (1, 1)
    site = None
    for r, c, doubled, corner in kernels.find_destab_sites(terminal.to_bytes()):
        if destab_effect(doubled, corner) == want:
            site = (r, c)
            break
    assert site is not None
    steps = list(script.steps) + [Move("Destabilize", site)]
    return make_script(d, steps)
