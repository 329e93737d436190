# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled move kernels; API and behaviour identical to _kernels_py.

The search layer spends nearly all its time in expand(), so that path is
kept allocation-light: children are built in C buffers and handed back as
bytes objects.
"""

from libc.string cimport memcpy

SIDES = ("top", "bottom", "left", "right")
CORNERS = ("NE", "NW", "SE", "SW")

STAB_EFFECT = {
    "NE": (-1, -1),
    "NW": (0, 0),
    "SE": (0, 0),
    "SW": (-1, 1),
}

_OPPOSITE = {"NE": "SW", "NW": "SE", "SE": "NW", "SW": "NE"}


def destab_effect(doubled, corner):
    if doubled == "X":
        dt, dr = STAB_EFFECT[corner]
    else:
        dt, dr = STAB_EFFECT[_OPPOSITE[corner]]
    return (-dt, -dr)


def grid_size(state):
    return state[0]


cdef inline bint _commute_legal_rows(const unsigned char* s, int n, int i) nogil:
    cdef int a1 = s[1 + i], b1 = s[1 + n + i]
    cdef int a2 = s[2 + i], b2 = s[2 + n + i]
    cdef int t
    if a1 > b1:
        t = a1; a1 = b1; b1 = t
    if a2 > b2:
        t = a2; a2 = b2; b2 = t
    if b1 < a2 or b2 < a1:
        return True
    if a1 < a2 and b2 < b1:
        return True
    if a2 < a1 and b1 < b2:
        return True
    return False


cdef bint _commute_legal_cols(const unsigned char* s, int n, int i):
    cdef int a1 = -1, b1 = -1, a2 = -1, b2 = -1
    cdef int r, t
    for r in range(n):
        if s[1 + r] == i: a1 = r
        elif s[1 + r] == i + 1: a2 = r
        if s[1 + n + r] == i: b1 = r
        elif s[1 + n + r] == i + 1: b2 = r
    if a1 > b1:
        t = a1; a1 = b1; b1 = t
    if a2 > b2:
        t = a2; a2 = b2; b2 = t
    if b1 < a2 or b2 < a1:
        return True
    if a1 < a2 and b2 < b1:
        return True
    if a2 < a1 and b1 < b2:
        return True
    return False


def commute_legal(bytes state, str axis, int i):
    cdef const unsigned char* s = state
    cdef int n = s[0]
    if i < 0 or i > n - 2:
        return False
    if axis == "row":
        return bool(_commute_legal_rows(s, n, i))
    return bool(_commute_legal_cols(s, n, i))


def apply_commute(bytes state, str axis, int i):
    cdef const unsigned char* s = state
    cdef int n = s[0]
    cdef unsigned char buf[513]
    cdef int k, v
    memcpy(buf, s, 1 + 2 * n)
    if axis == "row":
        buf[1 + i], buf[2 + i] = s[2 + i], s[1 + i]
        buf[1 + n + i], buf[2 + n + i] = s[2 + n + i], s[1 + n + i]
    else:
        for k in range(1, 1 + 2 * n):
            v = s[k]
            if v == i:
                buf[k] = i + 1
            elif v == i + 1:
                buf[k] = i
    return bytes(buf[: 1 + 2 * n])


def apply_cyclic(bytes state, str side):
    cdef const unsigned char* s = state
    cdef int n = s[0]
    cdef unsigned char buf[513]
    cdef int k
    buf[0] = n
    if side == "top":
        for k in range(n - 1):
            buf[2 + k] = s[1 + k]
            buf[2 + n + k] = s[1 + n + k]
        buf[1] = s[n]
        buf[1 + n] = s[2 * n]
    elif side == "bottom":
        for k in range(1, n):
            buf[k] = s[1 + k]
            buf[n + k] = s[1 + n + k]
        buf[n] = s[1]
        buf[2 * n] = s[1 + n]
    elif side == "left":
        for k in range(1, 1 + 2 * n):
            buf[k] = (s[k] + n - 1) % n
    elif side == "right":
        for k in range(1, 1 + 2 * n):
            buf[k] = (s[k] + 1) % n
    else:
        raise ValueError(f"unknown side {side!r}")
    return bytes(buf[: 1 + 2 * n])


def apply_stabilize(bytes state, str axis, int line, str corner):
    cdef const unsigned char* s = state
    cdef int n = s[0]
    cdef int r, c, k, col
    if axis == "row":
        r = line
        c = s[1 + line]
    else:
        c = line
        r = -1
        for k in range(n):
            if s[1 + k] == c:
                r = k
                break
    cdef int m = n + 1
    cdef unsigned char newx[256]
    cdef unsigned char newo[256]
    cdef int ri, cxi, coi
    for k in range(n):
        if k == r:
            continue
        ri = k + 1 if k > r else k
        cxi = s[1 + k] + 1 if s[1 + k] > c else s[1 + k]
        coi = s[1 + n + k] + 1 if s[1 + n + k] > c else s[1 + n + k]
        newx[ri] = cxi
        newo[ri] = coi
    cdef int row_o_col = s[1 + n + r] + 1 if s[1 + n + r] > c else s[1 + n + r]
    cdef int col_o_row = -1
    for k in range(n):
        if s[1 + n + k] == c:
            col_o_row = k
            break
    col_o_row = col_o_row + 1 if col_o_row > r else col_o_row
    cdef int qr = r + 1 if corner[0] == "N" else r
    cdef int qc = c + 1 if corner[1] == "E" else c
    cdef int other_r = r if qr == r + 1 else r + 1
    cdef int other_c = c if qc == c + 1 else c + 1
    newo[qr] = qc
    newx[qr] = other_c
    newx[other_r] = qc
    newo[other_r] = row_o_col
    if newo[col_o_row] == c:
        newo[col_o_row] = other_c
    out = bytearray(1 + 2 * m)
    out[0] = m
    for k in range(m):
        out[1 + k] = newx[k]
        out[1 + m + k] = newo[k]
    return bytes(out)


cdef int _destab_info(const unsigned char* s, int n, int r, int c,
                      int* qr, int* qc, int* doubled_is_x):
    """Returns 1 and fills outputs if (r, c) is a destabilization square."""
    if r < 0 or r > n - 2 or c < 0 or c > n - 2:
        return 0
    cdef int filled[2][2]
    cdef int marks[2][2]
    filled[0][0] = filled[0][1] = filled[1][0] = filled[1][1] = 0
    cdef int count = 0, rr, col, dr, dc
    for dr in range(2):
        rr = r + dr
        col = s[1 + rr]
        if c <= col <= c + 1:
            filled[dr][col - c] = 1
            marks[dr][col - c] = 1  # X
            count += 1
        col = s[1 + n + rr]
        if c <= col <= c + 1:
            filled[dr][col - c] = 1
            marks[dr][col - c] = 0  # O
            count += 1
    if count != 3:
        return 0
    cdef int er = 0, ec = 0
    for dr in range(2):
        for dc in range(2):
            if not filled[dr][dc]:
                er = dr
                ec = dc
    cdef int lr = 1 - er, lc = 1 - ec
    qr[0] = r + lr
    qc[0] = c + lc
    doubled_is_x[0] = 0 if marks[lr][lc] else 1
    return 1


def destab_square(bytes state, int r, int c):
    cdef const unsigned char* s = state
    cdef int n = s[0]
    cdef int qr, qc, dx
    if not _destab_info(s, n, r, c, &qr, &qc, &dx):
        return None
    corner = ("N" if qr == r + 1 else "S") + ("E" if qc == c + 1 else "W")
    return ("X" if dx else "O"), corner


cdef bytes _apply_destab(const unsigned char* s, int n, int r, int c,
                         int qr, int qc, int doubled_is_x):
    cdef int other_r = r if qr == r + 1 else r + 1
    cdef int other_c = c if qc == c + 1 else c + 1
    cdef int m = n - 1
    cdef unsigned char newx[256]
    cdef unsigned char newo[256]
    cdef int k, ri, col, ci
    for k in range(n):
        if k == qr:
            continue
        ri = k - 1 if k > qr else k
        col = s[1 + k]
        if not (k == other_r and c <= col <= c + 1):
            newx[ri] = col - 1 if col > qc else col
        col = s[1 + n + k]
        if not (k == other_r and c <= col <= c + 1):
            newo[ri] = col - 1 if col > qc else col
    cdef int mr = other_r - 1 if other_r > qr else other_r
    cdef int mc = other_c - 1 if other_c > qc else other_c
    if doubled_is_x:
        newx[mr] = mc
    else:
        newo[mr] = mc
    out = bytearray(1 + 2 * m)
    out[0] = m
    for k in range(m):
        out[1 + k] = newx[k]
        out[1 + m + k] = newo[k]
    return bytes(out)


def apply_destabilize(bytes state, int r, int c):
    cdef const unsigned char* s = state
    cdef int n = s[0]
    cdef int qr, qc, dx
    if not _destab_info(s, n, r, c, &qr, &qc, &dx):
        raise ValueError(f"no destabilization at ({r}, {c})")
    return _apply_destab(s, n, r, c, qr, qc, dx)


def find_destab_sites(bytes state):
    cdef const unsigned char* s = state
    cdef int n = s[0]
    out = []
    cdef int r, c, qr, qc, dx
    cdef int cand[8]
    cdef int ncand, k, col, j, dup
    for r in range(n - 1):
        ncand = 0
        for k in range(4):
            if k == 0: col = s[1 + r]
            elif k == 1: col = s[1 + n + r]
            elif k == 2: col = s[2 + r]
            else: col = s[2 + n + r]
            for j in range(2):
                c = col - j
                if 0 <= c <= n - 2:
                    dup = 0
                    for i_ in range(ncand):
                        if cand[i_] == c:
                            dup = 1
                            break
                    if not dup:
                        cand[ncand] = c
                        ncand += 1
        # insertion sort for canonical order
        for k in range(1, ncand):
            col = cand[k]
            j = k - 1
            while j >= 0 and cand[j] > col:
                cand[j + 1] = cand[j]
                j -= 1
            cand[j + 1] = col
        for k in range(ncand):
            c = cand[k]
            if _destab_info(s, n, r, c, &qr, &qc, &dx):
                corner = ("N" if qr == r + 1 else "S") + ("E" if qc == c + 1 else "W")
                out.append((r, c, "X" if dx else "O", corner))
    return out


def has_destab_sign(bytes state, int want_dtb, int want_dr):
    for _, _, doubled, corner in find_destab_sites(state):
        if destab_effect(doubled, corner) == (want_dtb, want_dr):
            return True
    return False


def apply_move(bytes state, tuple move):
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


def enumerate_moves(bytes state, bint commutation=True, bint cyclic=True,
                    bint stabilize=False, bint destabilize=True, int max_size=255):
    cdef const unsigned char* s = state
    cdef int n = s[0]
    cdef int i
    out = []
    if commutation:
        for i in range(n - 1):
            if _commute_legal_rows(s, n, i):
                out.append(("commute", "row", i))
        for i in range(n - 1):
            if _commute_legal_cols(s, n, i):
                out.append(("commute", "col", i))
    if cyclic:
        for side in SIDES:
            out.append(("cyclic", side))
    if stabilize and n + 1 <= max_size:
        for i in range(n):
            for corner in CORNERS:
                out.append(("stabilize", "row", i, corner))
    if destabilize:
        for site in find_destab_sites(state):
            out.append(("destabilize", site[0], site[1]))
    return out


def expand(bytes state, bint commutation=True, bint cyclic=True,
           bint stabilize=False, bint destabilize=True, int max_size=255):
    cdef int n = state[0]
    out = []
    cdef int i
    if commutation:
        cdef_s = state  # keep a reference
        for i in range(n - 1):
            if _commute_legal_rows(<const unsigned char*> state, n, i):
                out.append((("commute", "row", i), apply_commute(state, "row", i)))
        for i in range(n - 1):
            if _commute_legal_cols(<const unsigned char*> state, n, i):
                out.append((("commute", "col", i), apply_commute(state, "col", i)))
    if cyclic:
        for side in SIDES:
            out.append((("cyclic", side), apply_cyclic(state, side)))
    if stabilize and n + 1 <= max_size:
        for i in range(n):
            for corner in CORNERS:
                out.append(
                    (("stabilize", "row", i, corner), apply_stabilize(state, "row", i, corner))
                )
    if destabilize:
        for site in find_destab_sites(state):
            out.append(
                (("destabilize", site[0], site[1]), apply_destabilize(state, site[0], site[1]))
            )
    return out
