"""Typed diagram moves over GridDiagram values.

The heavy lifting (byte-level move application and enumeration) lives in
the kernel modules; this layer adds the typed Move record, error taxonomy,
and per-move invariant bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._backend import kernels
from ._kernels_py import CORNERS, SIDES, STAB_EFFECT, destab_effect
from .grid import GridDiagram, GridError, classical_invariants

KINDS = ("Commutation", "CyclicFlip", "Stabilize", "Destabilize")


class Interleaved(GridError):
    pass


class OutOfRange(GridError):
    pass


class NoDestabilizationHere(GridError):
    pass


@dataclass(frozen=True)
class Move:
    kind: str
    site: tuple

    def encode(self) -> tuple:
        if self.kind == "Commutation":
            return ("commute",) + self.site
        if self.kind == "CyclicFlip":
            return ("cyclic",) + self.site
        if self.kind == "Stabilize":
            return ("stabilize",) + self.site
        if self.kind == "Destabilize":
            return ("destabilize",) + self.site
        raise ValueError(f"unknown move kind {self.kind}")

    @classmethod
    def from_encoded(cls, enc: tuple) -> "Move":
        kindmap = {
            "commute": "Commutation",
            "cyclic": "CyclicFlip",
            "stabilize": "Stabilize",
            "destabilize": "Destabilize",
        }
        return cls(kindmap[enc[0]], tuple(enc[1:]))

    def __str__(self) -> str:
        return " ".join([self.kind.upper()] + [str(a) for a in self.site])

    @classmethod
    def parse(cls, text: str) -> "Move":
        parts = text.split()
        kind = parts[0].upper()
        if kind == "COMMUTATION" or kind == "COMMUTE":
            return cls("Commutation", (parts[1], int(parts[2])))
        if kind == "CYCLICFLIP" or kind == "CYCLIC":
            return cls("CyclicFlip", (parts[1],))
        if kind == "STABILIZE":
            return cls("Stabilize", (parts[1], int(parts[2]), parts[3]))
        if kind == "DESTABILIZE":
            return cls("Destabilize", (int(parts[1]), int(parts[2])))
        raise ValueError(f"cannot parse move {text!r}")


def apply_move(d: GridDiagram, move: Move) -> GridDiagram:
    state = d.to_bytes()
    enc = move.encode()
    if enc[0] == "commute":
        axis, i = enc[1], enc[2]
        if not 0 <= i <= d.n - 2:
            raise OutOfRange(f"no adjacent pair at index {i}")
        if not kernels.commute_legal(state, axis, i):
            raise Interleaved(f"{axis}s {i}, {i + 1} have interleaved spans")
    if enc[0] == "destabilize":
        if kernels.destab_square(state, enc[1], enc[2]) is None:
            raise NoDestabilizationHere(f"no 3-marker square at {enc[1:]}")
    if enc[0] == "stabilize":
        axis, line, corner = enc[1], enc[2], enc[3]
        if not 0 <= line < d.n:
            raise OutOfRange(f"no {axis} {line}")
        if corner not in CORNERS:
            raise GridError(f"unknown corner {corner!r}")
    return GridDiagram.from_bytes(kernels.apply_move(state, enc))


def apply_commutation(d: GridDiagram, axis: str, i: int) -> GridDiagram:
    return apply_move(d, Move("Commutation", (axis, i)))


def apply_cyclic_flip(d: GridDiagram, side: str) -> tuple[GridDiagram, bool]:
    """Returns (flipped diagram, preserved_classical)."""
    if side not in SIDES:
        raise GridError(f"unknown side {side!r}")
    out = apply_move(d, Move("CyclicFlip", (side,)))
    preserved = classical_invariants(out) == classical_invariants(d)
    return out, preserved


def stabilize(d: GridDiagram, line: int, axis: str = "row", corner: str = "NW") -> GridDiagram:
    return apply_move(d, Move("Stabilize", (axis, line, corner)))


def stabilize_kind(corner: str) -> str:
    """Classify an X stabilization corner: 's+', 's-', 't+', or 'iso'."""
    eff = STAB_EFFECT[corner]
    return {(-1, 1): "s+", (-1, -1): "s-", (-2, 0): "t+", (0, 0): "iso"}[eff]


def corner_for(kind: str) -> str:
    """Corner realizing a stabilization kind ('s+', 's-', 't+', 'iso')."""
    for corner, eff in STAB_EFFECT.items():
        if stabilize_kind(corner) == kind:
            return corner
    raise ValueError(f"unknown stabilization kind {kind!r}")


def destabilize(d: GridDiagram, r: int, c: int) -> GridDiagram:
    return apply_move(d, Move("Destabilize", (r, c)))


def destabilization_sites(d: GridDiagram) -> list[tuple[int, int, str, str, tuple[int, int]]]:
    """(r, c, doubled, corner, (dtb, dr)) for each site."""
    out = []
    for r, c, doubled, corner in kernels.find_destab_sites(d.to_bytes()):
        out.append((r, c, doubled, corner, destab_effect(doubled, corner)))
    return out


_DEFAULT_SET = frozenset({"Commutation", "CyclicFlip", "Destabilize"})


def enumerate_moves(
    d: GridDiagram, move_set: frozenset | set = _DEFAULT_SET, max_size: int = 255
) -> list[Move]:
    """Complete, duplicate-free move list in canonical order."""
    encs = kernels.enumerate_moves(
        d.to_bytes(),
        commutation="Commutation" in move_set,
        cyclic="CyclicFlip" in move_set,
        stabilize="Stabilize" in move_set,
        destabilize="Destabilize" in move_set,
        max_size=max_size,
    )
    return [Move.from_encoded(e) for e in encs]
