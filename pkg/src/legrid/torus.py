"""Block-disc solid-torus presentations, standard tilings, singularity
graphs, and framing slopes.

The model is purely combinatorial.  A presentation is a cyclic staircase
of blocks: block i climbs from disc i to disc i+1 (indices in core order)
over a rational angular interval, and consecutive blocks may share the
angular position of their touching edges.  Each disc contributes an
elliptic pair of singularities, each block a hyperbolic pair, and the
junction structure decides how far the separatrices of a hyperbolic point
reach along the disc cycle: a gap keeps them on the block's own discs,
while a shared (or overlapping) junction lets them skip past the newborn
neighbour.  All of the paper-scale counting claims (framing slopes,
divide intersections) become exact rational arithmetic on this data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .braid import BraidWord
from .grid import GridDiagram, validate_grid


class TooFewBlocks(ValueError):
    pass


class BadPresentation(ValueError):
    pass


class NullHomotopic(ValueError):
    pass


class MixedSlopes(ValueError):
    pass


class NothingToEliminate(ValueError):
    pass


class Disconnects(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    lower: int
    upper: int
    start: Fraction
    end: Fraction
    thickness: Fraction = Fraction(1)

    def __post_init__(self):
        if self.end <= self.start:
            raise BadPresentation("block angular interval must have positive width")


@dataclass(frozen=True)
class BlockDiscPresentation:
    """Cyclic staircase of blocks climbing the disc stack.

    ``blocks[i]`` joins disc i to disc i+1 (mod the disc count); angular
    coordinates are rationals on an unrolled circle, so the total winding
    is ``(blocks[-1].end - blocks[0].start)`` full turns.
    """

    discs: int
    blocks: tuple[Block, ...]
    core_braid: BraidWord | None = None

    def __post_init__(self):
        if self.discs < 2:
            raise TooFewBlocks("a presentation needs at least 2 discs")
        if len(self.blocks) != self.discs:
            raise BadPresentation("block count must match disc count")
        for i, b in enumerate(self.blocks):
            if (b.lower, b.upper) != (i, (i + 1) % self.discs):
                raise BadPresentation(f"block {i} must join disc {i} to disc {(i + 1) % self.discs}")

    def junction_depth(self, i: int) -> int:
        """How many newborn blocks are alive when block i dies.

        0 when block i ends strictly before block i+1 begins; d >= 1 when
        its right edge reaches (or passes) the left edges of the next d
        blocks.  Depth d makes the separatrices of the junction's
        hyperbolic pair skip d discs further along the cycle.
        """
        k = self.discs
        end = self.blocks[i].end
        circ = self.turns()
        depth = 0
        for step in range(1, k):
            j = (i + step) % k
            start = self.blocks[j].start
            # compare on the unrolled line: block j starts after block i
            while start < self.blocks[i].start:
                start += circ
            if start <= end:
                depth += 1
            else:
                break
        return depth

    def span(self) -> Fraction:
        return self.blocks[-1].end - self.blocks[0].start

    def turns(self) -> int:
        """Total angular winding of the staircase (full turns)."""
        s = self.span()
        return int(s) if s.denominator == 1 else int(s) + 1

    # kept for backward compatibility in tooling
    def winding(self) -> Fraction:
        return self.span()

    def format(self) -> str:
        lines = [f"discs={self.discs}"]
        for b in self.blocks:
            lines.append(
                f"block {b.lower} {b.upper} {b.start} {b.end} {b.thickness}"
            )
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "BlockDiscPresentation":
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines or not lines[0].startswith("discs="):
            raise BadPresentation("presentation file must start with 'discs=<k>'")
        k = int(lines[0].split("=", 1)[1])
        blocks = []
        for ln in lines[1:]:
            parts = ln.split()
            if parts[0] != "block" or len(parts) != 6:
                raise BadPresentation(f"bad block line: {ln!r}")
            blocks.append(
                Block(
                    int(parts[1]),
                    int(parts[2]),
                    Fraction(parts[3]),
                    Fraction(parts[4]),
                    Fraction(parts[5]),
                )
            )
        return cls(k, tuple(blocks))


def trefoil_presentation(k_blocks: int) -> BlockDiscPresentation:
    """The canonical staircase presentation whose neighbourhood boundary
    carries the standard tiling; eleven blocks give the paper-scale
    fixture.  The staircase winds twice around the axis, with every
    junction shared."""
    if k_blocks < 2:
        raise TooFewBlocks("need at least 2 blocks")
    blocks = []
    for i in range(k_blocks):
        blocks.append(
            Block(i, (i + 1) % k_blocks, Fraction(2 * i, k_blocks), Fraction(2 * (i + 1), k_blocks))
        )
    core = BraidWord(2, (1, 1, 1))
    return BlockDiscPresentation(k_blocks, tuple(blocks), core)


# ---------------------------------------------------------------------------
# Standard tiling


@dataclass(frozen=True)
class Singularity:
    kind: str  # "elliptic" or "hyperbolic"
    parity: int  # +1 or -1
    index: int  # disc index for elliptic, block index for hyperbolic
    theta: Fraction | None = None
    order: int = 0  # tiebreak at shared angular positions


@dataclass(frozen=True)
class StandardTiling:
    presentation: BlockDiscPresentation
    elliptic: tuple[Singularity, ...]
    hyperbolic: tuple[Singularity, ...]
    # adjacency[h] = the four elliptic endpoints (parity, disc) of the
    # separatrices of hyperbolic singularity h = (parity, block)
    adjacency: dict[tuple[int, int], tuple[tuple[int, int], ...]] = field(hash=False, default_factory=dict)


def tiling_from_blocks(p: BlockDiscPresentation) -> StandardTiling:
    k = p.discs
    elliptic = []
    for d in range(k):
        elliptic.append(Singularity("elliptic", +1, d))
        elliptic.append(Singularity("elliptic", -1, d))
    hyperbolic = []
    adjacency: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    for i, b in enumerate(p.blocks):
        # negative hyperbolic just before the left edge, positive just
        # after the right edge; at a shared junction the negative of the
        # upper block precedes the positive of the lower block.
        hyperbolic.append(Singularity("hyperbolic", -1, i, b.start, 0))
        hyperbolic.append(Singularity("hyperbolic", +1, i, b.end, 1))
        depth = p.junction_depth(i)
        lo, up = i, (i + 1) % k
        far = (i + 1 + depth) % k
        if depth == 0:
            adjacency[(+1, i)] = ((+1, lo), (-1, lo), (+1, up), (-1, up))
        else:
            # the singular leaf continues over the newborn blocks
            adjacency[(+1, i)] = ((+1, lo), (-1, lo), (-1, up), (+1, far))
        # mirror structure for the birth saddle of block i: depth of the
        # junction behind it (between blocks i-1 and i)
        depth_b = p.junction_depth((i - 1) % k)
        if depth_b == 0:
            adjacency[(-1, i)] = ((+1, i), (-1, i), (+1, up), (-1, up))
        else:
            prev = (i - 1) % k
            far_b = (i + depth_b) % k
            adjacency[(-1, i)] = ((-1, prev), (+1, i), (+1, far_b), (-1, far_b))
    return StandardTiling(p, tuple(elliptic), tuple(hyperbolic), adjacency)


@dataclass(frozen=True)
class SingularityGraph:
    epsilon: int
    delta: int
    tiling: StandardTiling
    # each edge: (block index, from disc, to disc, skip)
    edges: tuple[tuple[int, int, int, int], ...]
    cycles: tuple[tuple[tuple[int, int, int, int], ...], ...]
    tree_edges: tuple[tuple[int, int, int, int], ...]

    @property
    def components(self) -> int:
        # in the functional structure every tree flows into a cycle, so
        # connected components correspond to the closed curves
        return len(self.cycles)


def graph_G(t: StandardTiling, eps: int, delta: int) -> SingularityGraph:
    """The graph of eps-elliptic singularities joined through
    delta-hyperbolic ones."""
    k = t.presentation.discs
    edges = []
    for (par, i), arms in t.adjacency.items():
        if par != delta:
            continue
        ends = [disc for (p_, disc) in arms if p_ == eps]
        if len(ends) != 2:
            raise AssertionError("hyperbolic point must have two arms of each parity")
        # arm construction lists the cycle-backward end first
        a, b = ends
        skip = (b - a) % k
        edges.append((i, a, b, skip))
    # orient each edge forward along the disc cycle and extract the cycle
    # structure of the functional map disc -> disc + skip
    out_edge: dict[int, tuple[int, int, int, int]] = {}
    for e in edges:
        _, a, b, skip = e
        out_edge[a] = e
    on_cycle: set[int] = set()
    cycles = []
    seen: set[int] = set()
    for start in range(k):
        if start in seen or start not in out_edge:
            continue
        path = []
        pos: dict[int, int] = {}
        v = start
        while v not in pos and v not in seen and v in out_edge:
            pos[v] = len(path)
            path.append(v)
            v = out_edge[v][2]
        if v in pos:
            cyc = path[pos[v]:]
            cycles.append(tuple(out_edge[u] for u in cyc))
            on_cycle.update(cyc)
        seen.update(path)
    cycle_edges = {e for cyc in cycles for e in cyc}
    trees = tuple(e for e in edges if e not in cycle_edges)
    return SingularityGraph(eps, delta, t, tuple(edges), tuple(cycles), trees)


# ---------------------------------------------------------------------------
# Framings and slopes


@dataclass(frozen=True)
class Framing:
    """Torus coordinate system: the meridian has slope 0 in both framings;
    the two longitudes differ by the surface-framing twist of the core."""

    name: str
    # change of basis from the reference (C'_K) longitude: the C_K
    # (Seifert-framed) coordinates of a class (a', b') are
    # (a' + twist * b', b').
    twist: int

    def class_from_reference(self, a: int, b: int) -> tuple[int, int]:
        return (a + self.twist * b, b)


CK_PRIME = Framing("ckprime", 0)
CK = Framing("ck", 6)  # the core trefoil's surface framing

FRAMINGS = {"ckprime": CK_PRIME, "ck": CK}


def _component_class(cycle, k: int) -> tuple[int, int]:
    """Reference-framing class (meridian coeff, longitude coeff) of a
    closed component: it winds sum(skips)/k times along the core and
    crosses the surface-framed longitude once per edge, negatively."""
    total = sum(e[3] for e in cycle)
    if total % k != 0:
        raise AssertionError("cycle does not close along the disc stack")
    winding = total // k
    return (-len(cycle), winding)


def curve_slope(g: SingularityGraph, framing: Framing | str = CK_PRIME) -> Fraction:
    """Slope of the (parallel) closed components of g in the framing:
    longitude coefficient over meridian coefficient, fully reduced."""
    if isinstance(framing, str):
        framing = FRAMINGS[framing]
    if not g.cycles:
        raise NullHomotopic("graph has no closed components")
    k = g.tiling.presentation.discs
    slopes = set()
    for cyc in g.cycles:
        a, b = _component_class(cyc, k)
        if (a, b) == (0, 0):
            raise NullHomotopic("component is null-homotopic")
        a, b = framing.class_from_reference(a, b)
        if a == 0:
            raise ZeroDivisionError("component slope is infinite in this framing")
        slopes.add(Fraction(b, a))
    if len(slopes) != 1:
        raise MixedSlopes(f"components have different slopes: {sorted(slopes)}")
    return slopes.pop()


def meridian_slope(framing: Framing | str = CK_PRIME) -> Fraction:
    """Slope of the meridian test curve: class (1, 0) in every framing."""
    if isinstance(framing, str):
        framing = FRAMINGS[framing]
    a, b = framing.class_from_reference(1, 0)
    return Fraction(b, a)


def convert_slope(slope: Fraction, source: Framing | str, target: Framing | str) -> Fraction:
    """Express a slope measured in one framing in the other one."""
    if isinstance(source, str):
        source = FRAMINGS[source]
    if isinstance(target, str):
        target = FRAMINGS[target]
    # slope = b/a; move to reference, then to the target basis
    b = slope.numerator
    a = slope.denominator
    a_ref = a - source.twist * b
    a_t = a_ref + target.twist * b
    if a_t == 0:
        raise ZeroDivisionError("slope is infinite in the target framing")
    return Fraction(b, a_t)


# ---------------------------------------------------------------------------
# Giroux elimination and thinning


def giroux_eliminate(g: SingularityGraph) -> SingularityGraph:
    """Prune canceling elliptic/hyperbolic leaf pairs until only the
    closed curves remain; the closed components (hence slopes) are
    untouched."""
    if not g.tree_edges:
        raise NothingToEliminate("graph has no trees to eliminate")
    return SingularityGraph(
        g.epsilon, g.delta, g.tiling, tuple(e for e in g.edges if e not in set(g.tree_edges)),
        g.cycles, tuple()
    )


def thin_thicken(p: BlockDiscPresentation, spec: list[tuple]) -> BlockDiscPresentation:
    """Apply resize/remove instructions.

    Instructions:
        ("resize", block_index, new_start, new_end)
        ("remove_disc", disc_index)   merge the disc's two blocks
        ("identity",)
    """
    discs = p.discs
    blocks = list(p.blocks)
    for inst in spec:
        op = inst[0]
        if op == "identity":
            continue
        if op == "resize":
            _, i, s, e = inst
            b = blocks[i]
            blocks[i] = Block(b.lower, b.upper, Fraction(s), Fraction(e), b.thickness)
        elif op == "remove_disc":
            d = inst[1]
            if discs <= 2:
                raise Disconnects("cannot remove a disc from a 2-disc presentation")
            arriving = (d - 1) % discs
            departing = d
            ba, bd = blocks[arriving], blocks[departing]
            merged = Block(ba.lower, bd.upper, ba.start, bd.end, min(ba.thickness, bd.thickness))
            del blocks[max(arriving, departing)]
            blocks[min(arriving, departing)] = merged
            discs -= 1
            blocks = [
                Block(i, (i + 1) % discs, b.start, b.end, b.thickness)
                for i, b in enumerate(blocks)
            ]
        else:
            raise ValueError(f"unknown instruction {op!r}")
    return BlockDiscPresentation(discs, tuple(blocks), p.core_braid)


# ---------------------------------------------------------------------------
# The cable trace and its intersections with the divides


@dataclass(frozen=True)
class CableTrace:
    """Combinatorial trace of the cable knot on the tiling: one vertical
    arc per junction, descending two blocks at the shared angular
    position, except the arc at ``behind_block`` which passes behind."""

    presentation: BlockDiscPresentation
    meridian_wraps: int
    longitude_wraps: int
    behind_block: int


def cable_trace(p: BlockDiscPresentation, behind_block: int = 0) -> CableTrace:
    if any(p.junction_depth(i) != 1 for i in range(p.discs)):
        raise BadPresentation("the cable trace needs the fully shared staircase")
    return CableTrace(p, meridian_wraps=3, longitude_wraps=2, behind_block=behind_block % p.discs)


def knot_divide_intersections(trace: CableTrace, g: SingularityGraph) -> dict:
    """Algebraic and geometric intersection counts of the knot with each
    component of g, and with the meridian test curve.

    The knot's vertical arcs run between the junction's hyperbolic pair,
    parallel to the divide arcs, so the only crossing with a same-parity
    divide happens where the exceptional arc passes behind its block:
    just after it for the positive divide, just before it for the
    negative one.
    """
    out = {"per_component": [], "meridian_algebraic": None}
    k = trace.presentation.discs
    for cyc in g.cycles:
        if g.epsilon == g.delta:
            # divide component: one positive crossing at the behind arc
            geometric = 1
            algebraic = 1 if g.delta > 0 else -1
        else:
            # ruling-type component: crossings at every junction
            geometric = k
            algebraic = k if g.delta > 0 else -k
        out["per_component"].append({"geometric": geometric, "algebraic": algebraic})
    a, b = (0, 0)
    for cyc in g.cycles:
        ca, cb = _component_class(cyc, k)
        a += ca
        b += cb
    # intersection of the graph's cycles with the meridian (class (1, 0)):
    # the longitude coefficient survives
    out["meridian_algebraic"] = b
    return out
