"""Exact linear algebra over Q or GF(p).

Dense matrices are lists of row lists.  Sparse vectors are dicts from
integer column index to a nonzero coefficient.  Nothing here knows which
field it works over; entries only need +, -, *, / and comparison with 0.
"""

from fractions import Fraction


def _inv(x):
    # plain ints would otherwise divide into floats
    return Fraction(1, x) if isinstance(x, int) else 1 / x


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return [], []
    ncols = len(A[0]) if ncols is None else ncols
    piv = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = _inv(A[r][c])
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                Ri = A[i]
                Rr = A[r]
                A[i] = [a - f * b for a, b in zip(Ri, Rr)]
        piv.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], piv


def rank(rows):
    rows = [r for r in rows]
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols):
    """Basis of {x : A x = 0} as a list of dense vectors."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        out.append(v)
    return out


def left_nullspace(rows, nrows):
    return nullspace(transpose(rows, nrows), nrows)


def transpose(A, nrows=None):
    if not A:
        return []
    return [list(c) for c in zip(*A)]


def matmul(A, B):
    if not A or not B:
        return [[] for _ in A]
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col) if a != 0 and b != 0), 0) for col in Bt]
            for row in A]


def matvec(A, v):
    return [sum((a * b for a, b in zip(row, v) if a != 0 and b != 0), 0) for row in A]


def identity(n, one=1):
    return [[one if i == j else 0 for j in range(n)] for i in range(n)]


def inverse(A):
    n = len(A)
    aug = [list(A[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    R, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def solve(A, b):
    """One solution x of A x = b, or None when inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [list(r) + [bb] for r, bb in zip(A, b)]
    R, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [0] * ncols
    for i, pc in enumerate(piv):
        x[pc] = R[i][ncols]
    return x


def is_zero_matrix(A):
    return all(x == 0 for row in A for x in row)


class Echelon:
    """Incremental sparse echelon basis.

    ``add`` reduces a sparse vector against the stored pivots and keeps the
    remainder when it is nonzero.  With ``track=True`` every stored row also
    records its expression in terms of the vectors that were added, so
    ``coordinates`` can write a vector in the span as a combination of the
    original inputs.
    """

    def __init__(self, track=False):
        self.rows = {}          # pivot column -> normalized sparse row
        self.combo = {}         # pivot column -> combination of inputs
        self.track = track
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec, combo=None):
        v = {k: c for k, c in vec.items() if c != 0}
        cmb = dict(combo) if combo is not None else None
        # stored rows are fully reduced, so one pass over pivots suffices
        for k in [k for k in v if k in self.rows]:
            f = v.get(k, 0)
            if f == 0:
                continue
            _axpy(v, -f, self.rows[k])
            if cmb is not None:
                _axpy(cmb, -f, self.combo[k])
        return v, cmb

    def add(self, vec):
        idx = self.count
        self.count += 1
        combo = {idx: 1} if self.track else None
        v, cmb = self.reduce(vec, combo)
        if not v:
            return False
        k = min(v)
        inv = _inv(v[k])
        row = {kk: cc * inv for kk, cc in v.items()}
        if cmb is not None:
            cmb = {kk: cc * inv for kk, cc in cmb.items()}
        # keep rows fully reduced with respect to the new pivot
        for pk, r in self.rows.items():
            if k in r:
                f = r[k]
                for kk, cc in row.items():
                    nv = r.get(kk, 0) - f * cc
                    if nv == 0:
                        r.pop(kk, None)
                    else:
                        r[kk] = nv
                if cmb is not None:
                    c2 = self.combo[pk]
                    for kk, cc in cmb.items():
                        nv = c2.get(kk, 0) - f * cc
                        if nv == 0:
                            c2.pop(kk, None)
                        else:
                            c2[kk] = nv
        self.rows[k] = row
        if cmb is not None:
            self.combo[k] = cmb
        return True

    def contains(self, vec):
        return not self.reduce(vec)[0]

    def coordinates(self, vec):
        """Combination of added inputs equal to vec, or None if outside the span."""
        if not self.track:
            raise ValueError("coordinates need track=True")
        v = {k: c for k, c in vec.items() if c != 0}
        out = {}
        rem = dict(v)
        while rem:
            k = min(rem)
            if k not in self.rows:
                return None
            f = rem[k]
            for kk, cc in self.rows[k].items():
                nv = rem.get(kk, 0) - f * cc
                if nv == 0:
                    rem.pop(kk, None)
                else:
                    rem[kk] = nv
            for kk, cc in self.combo[k].items():
                nv = out.get(kk, 0) + f * cc
                if nv == 0:
                    out.pop(kk, None)
                else:
                    out[kk] = nv
        return out


def _axpy(y, a, x):
    """y += a * x for sparse dicts, dropping zeros."""
    for k, c in x.items():
        nv = y.get(k, 0) + a * c
        if nv == 0:
            y.pop(k, None)
        else:
            y[k] = nv
