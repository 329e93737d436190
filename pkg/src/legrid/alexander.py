"""Alexander polynomials from grid diagrams, plus the cabling oracle.

The polynomial is computed from the planar diagram: the crossings are the
vertical-over-horizontal intersections, each contributing one Fox relation
between the under-arcs and the over-arc.  The determinant of the reduced
relation matrix is evaluated exactly (integer Bareiss elimination at
integer sample points, then Lagrange interpolation over the rationals).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .grid import GridDiagram, crossings, trace_segments


class LaurentPoly:
    """Integer Laurent polynomial, stored sparsely by exponent."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def from_list(cls, coeffs: list[int], min_exp: int = 0) -> "LaurentPoly":
        return cls({min_exp + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def t(cls, exp: int = 1, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    one = classmethod(lambda cls: cls({0: 1}))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.coeffs == ({0: other} if other else {})
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def min_exp(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def max_exp(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def evaluate(self, v):
        total = 0
        for e, c in self.coeffs.items():
            total += c * (Fraction(v) ** e if e < 0 and isinstance(v, int) else v**e)
        return total

    def substitute_power(self, p: int) -> "LaurentPoly":
        """t -> t**p."""
        return LaurentPoly({e * p: c for e, c in self.coeffs.items()})

    def reversed_variable(self) -> "LaurentPoly":
        """t -> 1/t."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def normalized(self) -> "LaurentPoly":
        """Unit normalization: lowest exponent 0, positive leading coefficient."""
        if not self.coeffs:
            return LaurentPoly()
        p = self.shift(-self.min_exp())
        if p.coeffs[p.max_exp()] < 0:
            p = -p
        return p

    def is_symmetric(self) -> bool:
        return self.normalized() == self.reversed_variable().normalized()

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError if the remainder is nonzero."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        num = dict(self.shift(-self.min_exp()).coeffs)
        den = other.shift(-other.min_exp()).coeffs
        dmax = max(den)
        dlead = den[dmax]
        out: dict[int, int] = {}
        while num:
            nmax = max(num)
            if nmax < dmax:
                raise ValueError("inexact polynomial division")
            q, rem = divmod(num[nmax], dlead)
            if rem:
                raise ValueError("inexact polynomial division")
            shift = nmax - dmax
            out[shift] = q
            for e, c in den.items():
                ne = e + shift
                num[ne] = num.get(ne, 0) - q * c
                if num[ne] == 0:
                    del num[ne]
        return LaurentPoly(out).shift(
            self.min_exp() - other.min_exp()
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = f"{mag}"
            elif e == 1:
                body = f"{mag}*t" if mag != 1 else "t"
            else:
                body = f"{mag}*t^{e}" if mag != 1 else f"t^{e}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


def _bareiss_det(mat: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    m = len(mat)
    if m == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(m - 1):
        if a[k][k] == 0:
            for i in range(k + 1, m):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[m - 1][m - 1]


def _interpolate(points: list[tuple[int, int]]) -> LaurentPoly:
    """Exact Lagrange interpolation through integer points."""
    coeffs = [Fraction(0)] * len(points)
    for xi, yi in points:
        basis = [Fraction(1)]
        denom = Fraction(1)
        for xj, _ in points:
            if xj == xi:
                continue
            denom *= xi - xj
            basis = [Fraction(0)] + basis[:]
            for k in range(len(basis) - 1):
                basis[k] -= Fraction(xj) * basis[k + 1]
        scale = Fraction(yi) / denom
        for k, b in enumerate(basis):
            coeffs[k] += scale * b
    out = {}
    for k, c in enumerate(coeffs):
        if c:
            if c.denominator != 1:
                raise ArithmeticError("interpolation did not yield integers")
            out[k] = int(c)
    return LaurentPoly(out)


def _diagram_relations(d: GridDiagram):
    """Arcs and Fox relations of the grid's planar diagram.

    Returns (m, relations) where each relation is
    (sign, arc_in, arc_over, arc_out); m is the crossing count.
    """
    cross = {(r, c): s for r, c, s in crossings(d)}
    # Under-pass events in trace order, and the arc containing each
    # vertical segment.
    events: list[tuple[int, int]] = []
    vertical_event_index: dict[int, int] = {}
    segs = list(trace_segments(d))
    for seg in segs:
        if seg[0] == "h":
            _, row, a, b = seg
            cols = [c for (r, c) in cross if r == row]
            cols.sort(reverse=a > b)
            for c in cols:
                events.append((row, c))
        else:
            _, col, _, _ = seg
            vertical_event_index[col] = len(events)
    m = len(events)
    if m == 0:
        return 0, []
    event_pos = {rc: k for k, rc in enumerate(events)}
    over_arc = {col: (idx - 1) % m for col, idx in vertical_event_index.items()}
    relations = []
    for k, (row, c) in enumerate(events):
        s = cross[(row, c)]
        arc_in = (k - 1) % m
        arc_out = k
        relations.append((s, arc_in, over_arc[c], arc_out))
    return m, relations


@lru_cache(maxsize=65536)
def _alexander_cached(state: bytes) -> LaurentPoly:
    d = GridDiagram.from_bytes(state)
    m, relations = _diagram_relations(d)
    if m <= 1:
        return LaurentPoly({0: 1})
    size = m - 1

    def matrix_at(t: int) -> list[list[int]]:
        rows = []
        for s, a_in, a_over, a_out in relations[:size]:
            row = [0] * size
            # Positive crossing: out = t*in + (1-t)*over; negative uses the
            # inverse, cleared of denominators by multiplying through by t.
            if s > 0:
                triples = ((a_in, t), (a_over, 1 - t), (a_out, -1))
            else:
                triples = ((a_in, 1), (a_over, t - 1), (a_out, -t))
            for arc, coef in triples:
                if arc < size:
                    row[arc] += coef
            rows.append(row)
        return rows

    pts = []
    for t in range(2, size + 3):
        pts.append((t, _bareiss_det(matrix_at(t))))
    poly = _interpolate(pts).normalized()
    if not poly:
        raise ArithmeticError("vanishing Alexander determinant on a knot diagram")
    # The minor equals the polynomial up to units and powers of (t - 1);
    # strip the latter using det(1) = +/-1 for knots.
    t_minus_1 = LaurentPoly({1: 1, 0: -1})
    while poly.evaluate(1) == 0:
        poly = poly.divide_exact(t_minus_1).normalized()
    if abs(poly.evaluate(1)) != 1:
        raise ArithmeticError("Alexander normalization failed: det(1) != +/-1")
    return poly


def alexander_polynomial(d: GridDiagram) -> LaurentPoly:
    """Unit-normalized Alexander polynomial of the underlying knot."""
    return _alexander_cached(d.to_bytes())


def alexander_key(d: GridDiagram) -> str:
    poly = alexander_polynomial(d)
    return ",".join(f"{e}:{c}" for e, c in sorted(poly.coeffs.items()))


# ---------------------------------------------------------------------------
# Independent oracle: torus knots and cables


def torus_knot_alexander(p: int, q: int) -> LaurentPoly:
    """(t^(pq) - 1)(t - 1) / ((t^p - 1)(t^q - 1)), unit-normalized."""
    num = (LaurentPoly({p * q: 1, 0: -1})) * (LaurentPoly({1: 1, 0: -1}))
    den = (LaurentPoly({p: 1, 0: -1})) * (LaurentPoly({q: 1, 0: -1}))
    return num.divide_exact(den).normalized()


def cable_alexander(companion: LaurentPoly, p: int, q: int) -> LaurentPoly:
    """Alexander polynomial of the (p, q)-cable: companion winds p times
    longitudinally, q times meridionally."""
    return (companion.substitute_power(p) * torus_knot_alexander(p, q)).normalized()
