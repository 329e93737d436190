"""Pure-Python move kernels on byte-encoded grids.

State encoding: ``bytes([n, x0..x(n-1), o0..o(n-1)])`` with rows bottom-up.
The compiled kernel in ``_kernels_cy.pyx`` implements the same API; tests
assert bit-identical behaviour between the two.

Move encodings (tuples, also used as wire format by the search layer):
    ("commute", axis, i)        axis "row"/"col", exchange lines i, i+1
    ("cyclic", side)            side in {"top", "bottom", "left", "right"}
    ("stabilize", axis, line, corner)   split the X of the line
    ("destabilize", r, c)       2x2 square with rows r,r+1 cols c,c+1
"""

from __future__ import annotations

SIDES = ("top", "bottom", "left", "right")
CORNERS = ("NE", "NW", "SE", "SW")

# (delta_tb, delta_r) of an X stabilization by lone-O corner, under the
# calibrated cusp convention; frozen by tests/test_calibration.py.
# SW is the positive Legendrian stabilization, NE the negative one; NW and
# SE preserve both classical invariants (plain Legendrian isotopies).
STAB_EFFECT = {
    "NE": (-1, -1),
    "NW": (0, 0),
    "SE": (0, 0),
    "SW": (-1, 1),
}

# Destabilization effect by (doubled marker, lone-marker corner): the
# inverse of the matching stabilization.  O-type squares mirror X-type ones
# with the lone corner reflected through the square's center.
_OPPOSITE = {"NE": "SW", "NW": "SE", "SE": "NW", "SW": "NE"}


def destab_effect(doubled: str, corner: str) -> tuple[int, int]:
    if doubled == "X":
        dt, dr = STAB_EFFECT[corner]
    else:
        dt, dr = STAB_EFFECT[_OPPOSITE[corner]]
    return (-dt, -dr)


def grid_size(state: bytes) -> int:
    return state[0]


def commute_legal(state: bytes, axis: str, i: int) -> bool:
    """Spans of lines i and i+1 disjoint or strictly nested."""
    n = state[0]
    if not 0 <= i <= n - 2:
        return False
    if axis == "row":
        a1, b1 = state[1 + i], state[1 + n + i]
        a2, b2 = state[2 + i], state[2 + n + i]
    else:
        xr = [0] * n
        orr = [0] * n
        for r in range(n):
            xr[state[1 + r]] = r
            orr[state[1 + n + r]] = r
        a1, b1 = xr[i], orr[i]
        a2, b2 = xr[i + 1], orr[i + 1]
    if a1 > b1:
        a1, b1 = b1, a1
    if a2 > b2:
        a2, b2 = b2, a2
    if b1 < a2 or b2 < a1:
        return True
    if a1 < a2 and b2 < b1:
        return True
    if a2 < a1 and b1 < b2:
        return True
    return False


def apply_commute(state: bytes, axis: str, i: int) -> bytes:
    n = state[0]
    x = list(state[1 : 1 + n])
    o = list(state[1 + n : 1 + 2 * n])
    if axis == "row":
        x[i], x[i + 1] = x[i + 1], x[i]
        o[i], o[i + 1] = o[i + 1], o[i]
    else:
        rem = {i: i + 1, i + 1: i}
        x = [rem.get(c, c) for c in x]
        o = [rem.get(c, c) for c in o]
    return bytes([n] + x + o)


def apply_cyclic(state: bytes, side: str) -> bytes:
    n = state[0]
    x = list(state[1 : 1 + n])
    o = list(state[1 + n : 1 + 2 * n])
    if side == "top":  # top row becomes the bottom row
        x = x[-1:] + x[:-1]
        o = o[-1:] + o[:-1]
    elif side == "bottom":  # bottom row becomes the top row
        x = x[1:] + x[:1]
        o = o[1:] + o[:1]
    elif side == "left":  # leftmost column moves to the right edge
        x = [(c - 1) % n for c in x]
        o = [(c - 1) % n for c in o]
    elif side == "right":
        x = [(c + 1) % n for c in x]
        o = [(c + 1) % n for c in o]
    else:
        raise ValueError(f"unknown side {side!r}")
    return bytes([n] + x + o)


def apply_stabilize(state: bytes, axis: str, line: int, corner: str) -> bytes:
    """Split the X marker of the given line; ``corner`` places the lone O
    inside the new 2x2 square."""
    n = state[0]
    x = list(state[1 : 1 + n])
    o = list(state[1 + n : 1 + 2 * n])
    if axis == "row":
        r, c = line, x[line]
    else:
        c = line
        r = x.index(c)
    # Shift rows above r and columns right of c.
    newx = {}
    newo = {}
    for i in range(n):
        if i == r:
            continue
        ri = i + 1 if i > r else i
        cxi = x[i] + 1 if x[i] > c else x[i]
        coi = o[i] + 1 if o[i] > c else o[i]
        newx[ri] = cxi
        newo[ri] = coi
    row_o_col = o[r] + 1 if o[r] > c else o[r]
    col_o_row = o.index(c)
    col_o_row = col_o_row + 1 if col_o_row > r else col_o_row
    qr = r + 1 if corner[0] == "N" else r
    qc = c + 1 if corner[1] == "E" else c
    other_r = r if qr == r + 1 else r + 1
    other_c = c if qc == c + 1 else c + 1
    # Lone O at (qr, qc); X's adjacent to it; old row/col O's in the
    # non-full row/column of the square.
    newo[qr] = qc
    newx[qr] = other_c
    newx[other_r] = qc
    newo[other_r] = row_o_col
    # Reassign the column-c O (some row != r) to the square's other column.
    if newo[col_o_row] == c:
        newo[col_o_row] = other_c
    m = n + 1
    xs = [newx[i] for i in range(m)]
    os_ = [newo[i] for i in range(m)]
    return bytes([m] + xs + os_)


def destab_square(state: bytes, r: int, c: int):
    """Inspect the 2x2 square at rows r,r+1 cols c,c+1.

    Returns (doubled, corner) if it is a destabilization site, else None.
    """
    n = state[0]
    if not (0 <= r <= n - 2 and 0 <= c <= n - 2):
        return None
    x = state[1 : 1 + n]
    o = state[1 + n : 1 + 2 * n]
    cells = {}
    for rr in (r, r + 1):
        if c <= x[rr] <= c + 1:
            cells[(rr, x[rr])] = "X"
        if c <= o[rr] <= c + 1:
            cells[(rr, o[rr])] = "O"
    if len(cells) != 3:
        return None
    empty = [
        (rr, cc)
        for rr in (r, r + 1)
        for cc in (c, c + 1)
        if (rr, cc) not in cells
    ][0]
    qr, qc = 2 * r + 1 - empty[0], 2 * c + 1 - empty[1]
    lone = cells[(qr, qc)]
    doubled = "X" if lone == "O" else "O"
    corner = ("N" if qr == r + 1 else "S") + ("E" if qc == c + 1 else "W")
    return doubled, corner


def apply_destabilize(state: bytes, r: int, c: int) -> bytes:
    info = destab_square(state, r, c)
    if info is None:
        raise ValueError(f"no destabilization at ({r}, {c})")
    doubled, corner = info
    n = state[0]
    x = state[1 : 1 + n]
    o = state[1 + n : 1 + 2 * n]
    qr = r + 1 if corner[0] == "N" else r
    qc = c + 1 if corner[1] == "E" else c
    other_r = r if qr == r + 1 else r + 1
    other_c = c if qc == c + 1 else c + 1
    newx = {}
    newo = {}
    for i in range(n):
        if i == qr:
            continue
        ri = i - 1 if i > qr else i
        for col, mark in ((x[i], "X"), (o[i], "O")):
            if i == other_r and c <= col <= c + 1:
                continue  # square marker, replaced by the merged one
            ci = col - 1 if col > qc else col
            if mark == "X":
                newx[ri] = ci
            else:
                newo[ri] = ci
    mr = other_r - 1 if other_r > qr else other_r
    mc = other_c - 1 if other_c > qc else other_c
    if doubled == "X":
        newx[mr] = mc
    else:
        newo[mr] = mc
    m = n - 1
    xs = [newx[i] for i in range(m)]
    os_ = [newo[i] for i in range(m)]
    return bytes([m] + xs + os_)


def has_destab_sign(state: bytes, want_dtb: int, want_dr: int) -> bool:
    """Whether any destabilization site has the given classical effect."""
    for _, _, doubled, corner in find_destab_sites(state):
        if destab_effect(doubled, corner) == (want_dtb, want_dr):
            return True
    return False


def find_destab_sites(state: bytes) -> list[tuple[int, int, str, str]]:
    """All (r, c, doubled, corner) destabilization sites, scan order."""
    n = state[0]
    x = state[1 : 1 + n]
    o = state[1 + n : 1 + 2 * n]
    out = []
    for r in range(n - 1):
        # Candidate columns: only squares containing >= 3 markers matter,
        # and markers live in rows r, r+1 only.
        cand = set()
        for col in (x[r], o[r], x[r + 1], o[r + 1]):
            if col < n - 1:
                cand.add(col)
            if col > 0:
                cand.add(col - 1)
        for c in sorted(cand):
            info = destab_square(state, r, c)
            if info is not None:
                out.append((r, c, info[0], info[1]))
    return out


def apply_move(state: bytes, move: tuple) -> bytes:
    kind = move[0]
    if kind == "commute":
        if not commute_legal(state, move[1], move[2]):
            raise ValueError(f"illegal commutation {move}")
        return apply_commute(state, move[1], move[2])
    if kind == "cyclic":
        return apply_cyclic(state, move[1])
    if kind == "stabilize":
        return apply_stabilize(state, move[1], move[2], move[3])
    if kind == "destabilize":
        return apply_destabilize(state, move[1], move[2])
    raise ValueError(f"unknown move kind {kind!r}")


def enumerate_moves(
    state: bytes,
    commutation: bool = True,
    cyclic: bool = True,
    stabilize: bool = False,
    destabilize: bool = True,
    max_size: int = 255,
) -> list[tuple]:
    """Applicable moves in canonical order (kind, axis, ascending site)."""
    n = state[0]
    out: list[tuple] = []
    if commutation:
        for axis in ("row", "col"):
            for i in range(n - 1):
                if commute_legal(state, axis, i):
                    out.append(("commute", axis, i))
    if cyclic:
        for side in SIDES:
            out.append(("cyclic", side))
    if stabilize and n + 1 <= max_size:
        # Row-axis only: the column-axis form addresses the same X markers,
        # and the move list must be duplicate-free.
        for line in range(n):
            for corner in CORNERS:
                out.append(("stabilize", "row", line, corner))
    if destabilize:
        for r, c, _, _ in find_destab_sites(state):
            out.append(("destabilize", r, c))
    return out


def expand(
    state: bytes,
    commutation: bool = True,
    cyclic: bool = True,
    stabilize: bool = False,
    destabilize: bool = True,
    max_size: int = 255,
) -> list[tuple[tuple, bytes]]:
    """(move, child) pairs in canonical move order."""
    moves = enumerate_moves(
        state, commutation, cyclic, stabilize, destabilize, max_size
    )
    return [(m, apply_move(state, m)) for m in moves]
