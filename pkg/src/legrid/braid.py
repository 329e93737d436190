"""Braided form of a grid diagram and transverse-side computations.

A grid diagram read on the annulus (horizontal arcs all sweeping forward
around a vertical axis on the left, wrapping arcs crossing the cut) is a
closed-braid wiring: every inter-column gap is crossed by the same number
of arcs, the winding number, which is the strand count.  Each column's
vertical segment moves one strand past the strands between its endpoints
and emits one braid generator per strand crossed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alexander import LaurentPoly, alexander_polynomial
from .grid import ClassicalInvariants, GridDiagram, classical_invariants, transpose_flip


class NotBraided(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    word: tuple[int, ...]

    def __post_init__(self):
        for g in self.word:
            if g == 0 or abs(g) >= self.strands:
                raise ValueError(f"generator {g} out of range for {self.strands} strands")

    @property
    def exponent_sum(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.word)

    def format(self) -> str:
        return f"strands={self.strands}\n" + " ".join(str(g) for g in self.word) + "\n"

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("strands="):
            raise ValueError("braid word file must start with 'strands=<n>'")
        strands = int(lines[0].split("=", 1)[1])
        word: list[int] = []
        for ln in lines[1:]:
            word.extend(int(tok) for tok in ln.split())
        return cls(strands, tuple(word))


def self_linking(w: BraidWord) -> int:
    """Exponent sum minus strand count."""
    return w.exponent_sum - w.strands


@dataclass(frozen=True)
class BraidedRectDiagram:
    base: GridDiagram
    axis: str  # "vertical" or "horizontal"
    braided: bool
    flips_applied: int
    wrapping_lines: tuple[int, ...]


def _winding(d: GridDiagram) -> int:
    n = d.n
    total = sum((d.x[i] - d.o[i]) % n for i in range(n))
    assert total % n == 0
    return total // n


def to_braided_form(d: GridDiagram, axis: str = "vertical") -> BraidedRectDiagram:
    """Coherent closed-braid reading of the diagram about the given axis.

    Horizontal arcs wind coherently around the vertical axis once wrapping
    arcs (drawn leftward in the square) are read through the cut, so no
    flips are required; the wrapping rows are reported.  The horizontal
    axis is handled through the diagonal flip.
    """
    if axis == "horizontal":
        inner = to_braided_form(transpose_flip(d), "vertical")
        return BraidedRectDiagram(
            base=d,
            axis="horizontal",
            braided=True,
            flips_applied=inner.flips_applied,
            wrapping_lines=inner.wrapping_lines,
        )
    if axis != "vertical":
        raise ValueError(f"unknown axis {axis!r}")
    wrapping = tuple(i for i in range(d.n) if d.x[i] < d.o[i])
    return BraidedRectDiagram(
        base=d, axis="vertical", braided=True, flips_applied=0, wrapping_lines=wrapping
    )


def _rot180(d: GridDiagram) -> GridDiagram:
    n = d.n
    x = [0] * n
    o = [0] * n
    for i in range(n):
        x[n - 1 - i] = n - 1 - d.x[i]
        o[n - 1 - i] = n - 1 - d.o[i]
    return GridDiagram(tuple(x), tuple(o))


def braid_word(b: BraidedRectDiagram) -> BraidWord:
    """Braid word of the diagram's positive transverse push-off.

    The raw toroidal reading of a grid is a closed braid presenting the
    same knot, but its self-linking number can exceed tb - r; rotating the
    square by 180 degrees (an ambient isotopy) flips the excess, so one of
    the two readings is always at least tb - r, and negative Markov
    stabilizations (knot-preserving, self-linking -2 each) close the gap
    exactly.
    """
    if not b.braided:
        raise NotBraided("diagram has no coherent braid reading")
    d = b.base if b.axis == "vertical" else transpose_flip(b.base)
    inv = classical_invariants(d)
    target = inv.tb - inv.r
    raw = _raw_annular_word(d)
    if self_linking(raw) < target:
        raw = _raw_annular_word(_rot180(d))
    excess = self_linking(raw) - target
    if excess < 0 or excess % 2:
        raise NotBraided(
            f"no toroidal reading reaches self-linking {target} (got {self_linking(raw)})"
        )
    strands = raw.strands
    word = list(raw.word)
    for _ in range(excess // 2):
        word.append(-strands)
        strands += 1
    return BraidWord(strands, tuple(word))


def _raw_annular_word(d: GridDiagram) -> BraidWord:
    n = d.n
    strands = _winding(d)
    x_row = [0] * n
    o_row = [0] * n
    for i in range(n):
        x_row[d.x[i]] = i
        o_row[d.o[i]] = i

    def active_at_gap(gap: int) -> list[int]:
        # The arc of a row sweeps forward from its O to its X, crossing the
        # gaps (between columns g-1 and g) with (g - o) mod n in [1, span].
        out = []
        for row in range(n):
            o, x = d.o[row], d.x[row]
            span = (x - o) % n
            if 0 < (gap - o) % n <= span:
                out.append(row)
        return out

    rows_now = active_at_gap(0)
    if len(rows_now) != strands:
        raise NotBraided("inconsistent winding")
    letters: list[int] = []
    current = sorted(rows_now)
    for c in range(n):
        a, bb = x_row[c], o_row[c]
        if a not in current:
            raise NotBraided("braid reading lost a strand")
        others = [r for r in current if r != a]
        p = sorted(current).index(a)
        after = sorted(others + [bb])
        q = after.index(bb)
        sign = 1 if bb > a else -1
        if q < p:
            letters.extend(sign * k for k in range(p, q, -1))
        else:
            letters.extend(sign * k for k in range(p + 1, q + 1))
        current = others + [bb]
    return BraidWord(strands, tuple(letters))


def grid_self_linking(d: GridDiagram, axis: str = "vertical") -> int:
    return self_linking(braid_word(to_braided_form(d, axis)))


def positive_pushoff(c: ClassicalInvariants, label: str = "") -> "TransversalClass":
    return TransversalClass(sl=c.tb - c.r, label=label)


@dataclass(frozen=True)
class TransversalClass:
    sl: int
    label: str


class InconsistentOrbit(ValueError):
    pass


def transverse_collapse(
    classes: list[tuple[str, int, int]],
    identifications: list[tuple[str, str]],
) -> list[TransversalClass]:
    """Quotient Legendrian classes by negative-stabilization identification.

    ``classes`` lists (label, tb, r); ``identifications`` lists label pairs
    (A, B) meaning some negative-stabilization images of A and B coincide.
    One TransversalClass per equivalence class, with sl = tb - r of any
    representative (which must agree, else InconsistentOrbit).
    """
    parent = {label: label for label, _, _ in classes}

    def find(a: str) -> str:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in identifications:
        if a not in parent or b not in parent:
            raise KeyError(f"identification references unknown class {a!r}/{b!r}")
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[str, list[tuple[str, int, int]]] = {}
    for label, tb, r in classes:
        groups.setdefault(find(label), []).append((label, tb, r))
    out = []
    for root in sorted(groups):
        members = groups[root]
        sls = {tb - r for _, tb, r in members}
        if len(sls) != 1:
            raise InconsistentOrbit(
                f"identified classes have different self-linking numbers: {sorted(sls)}"
            )
        label = min(m[0] for m in members)
        out.append(TransversalClass(sl=sls.pop(), label=label))
    return sorted(out, key=lambda t: (t.sl, t.label))


# ---------------------------------------------------------------------------
# Burau determinant: an independent route from a braid word to the
# Alexander polynomial of its closure, used to check braid extraction.


def _burau_matrices(strands: int) -> dict[int, list[list[LaurentPoly]]]:
    t = LaurentPoly({1: 1})
    one = LaurentPoly({0: 1})
    zero = LaurentPoly()
    m = strands - 1

    def ident():
        return [[one if i == j else zero for j in range(m)] for i in range(m)]

    mats = {}
    for g in range(1, strands):
        mat = ident()
        i = g - 1
        mat[i][i] = LaurentPoly({1: -1})
        if i - 1 >= 0:
            mat[i - 1][i] = t
        if i + 1 < m:
            mat[i + 1][i] = one
        mats[g] = mat
        inv = ident()
        inv[i][i] = LaurentPoly({-1: -1})
        if i - 1 >= 0:
            inv[i - 1][i] = one
        if i + 1 < m:
            inv[i + 1][i] = LaurentPoly({-1: 1})
        mats[-g] = inv
    return mats


def _mat_mul(a, b):
    m = len(a)
    out = [[LaurentPoly() for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for k in range(m):
            if not a[i][k]:
                continue
            for j in range(m):
                if b[k][j]:
                    out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def _mat_det(a) -> LaurentPoly:
    m = len(a)
    if m == 0:
        return LaurentPoly({0: 1})
    if m == 1:
        return a[0][0]
    det = LaurentPoly()
    for j in range(m):
        if not a[0][j]:
            continue
        minor = [[a[i][k] for k in range(m) if k != j] for i in range(1, m)]
        term = a[0][j] * _mat_det(minor)
        det = det + term if j % 2 == 0 else det - term
    return det


def braid_closure_alexander(w: BraidWord) -> LaurentPoly:
    """Alexander polynomial of the closure, via the reduced Burau matrix."""
    if w.strands == 1:
        return LaurentPoly({0: 1})
    mats = _burau_matrices(w.strands)
    m = w.strands - 1
    one = LaurentPoly({0: 1})
    acc = [[one if i == j else LaurentPoly() for j in range(m)] for i in range(m)]
    for g in w.word:
        acc = _mat_mul(acc, mats[g])
    for i in range(m):
        acc[i][i] = acc[i][i] - one
    det = _mat_det(acc)
    if not det:
        raise ArithmeticError("Burau determinant vanished; closure is not a knot")
    num = det * LaurentPoly({1: 1, 0: -1})
    den = LaurentPoly({w.strands: 1, 0: -1})
    poly = num.divide_exact(den).normalized()
    t_minus_1 = LaurentPoly({1: 1, 0: -1})
    while poly.evaluate(1) == 0:
        poly = poly.divide_exact(t_minus_1).normalized()
    return poly
