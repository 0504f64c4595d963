"""Dotted Brauer and oriented Brauer diagrams in normal order.

Conventions.  A diagram of type a -> b has a bottom points (indices
0..a-1, left to right) and b top points (indices a..a+b-1, left to right).
A matching is stored as a ``partner`` tuple.  Dots sit on boundary points:
``dots[P]`` counts the dots next to point P on the strand ending there.

Normal order puts all dots of a strand at one endpoint:

* unoriented: the bottom end of a vertical strand, the left end of a cap,
  the right end of a cup;
* oriented: the end the strand points out of (a top point labelled ``u``
  or a bottom point labelled ``d``).

Oriented objects are words in ``u`` (up) and ``d`` (down).

Composition works on "sandwiches" ``D1 . X^g . D2`` where D1, D2 are plain
matchings and the dot vector g sits on the middle object.  Dots are walked
along strands one crossing at a time with the dot-slide relation, loops
are evaluated from the bubble table, and overfull strands are reduced by
the cyclotomic polynomial on the leftmost strand of a suitable object.
"""

import itertools
import sys

from .errors import DiagstratError
from .params import CB, OB

UP, DOWN = "u", "d"
_ARROWS = {"↑": UP, "↓": DOWN, "u": UP, "d": DOWN, "^": UP, "v": DOWN}

MINUS, CIRC, PLUS, NONE = "MINUS", "CIRC", "PLUS", "NONE"

MAX_DEPTH = 20000


def size(obj):
    return obj if isinstance(obj, int) else len(obj)


def parse_object(x, flavor=CB):
    """Normalize an object label: an int (unoriented) or a u/d word."""
    if flavor == OB:
        if isinstance(x, int):
            raise DiagstratError("TYPE_MISMATCH", "oriented objects are words")
        try:
            return "".join(_ARROWS[ch] for ch in str(x))
        except KeyError:
            raise DiagstratError("TYPE_MISMATCH", "bad oriented word %r" % x)
    if isinstance(x, str):
        if not x.strip().lstrip("-").isdigit():
            raise DiagstratError("TYPE_MISMATCH", "unoriented objects are integers")
        x = int(x)
    if x < 0:
        raise DiagstratError("TYPE_MISMATCH", "negative object")
    return x


def object_class(obj):
    """The equivalence class of an object: a size, or (#up, #down)."""
    if isinstance(obj, int):
        return obj
    return (obj.count(UP), obj.count(DOWN))


def _label(bw, tw, P):
    n = len(bw)
    return bw[P] if P < n else tw[P - n]


def _is_start(bw, tw, P):
    n = len(bw)
    return (bw[P] == UP) if P < n else (tw[P - n] == DOWN)


def normal_point(bw, tw, P, Q):
    """The endpoint of strand {P, Q} that carries dots in normal order."""
    if isinstance(bw, int):
        n = bw
        if P < n and Q < n:
            return min(P, Q)
        if P >= n and Q >= n:
            return max(P, Q)
        return P if P < n else Q
    return Q if _is_start(bw, tw, P) else P


class NormalDiagram:
    """A normally ordered dotted diagram; immutable and hashable."""

    __slots__ = ("bottom", "top", "partner", "dots", "_hash")

    def __init__(self, bottom, top, partner, dots):
        self.bottom = bottom
        self.top = top
        self.partner = tuple(partner)
        self.dots = tuple(dots)
        self._hash = hash((bottom, top, self.partner, self.dots))

    @property
    def n(self):
        return size(self.bottom)

    @property
    def p(self):
        return size(self.top)

    @property
    def oriented(self):
        return isinstance(self.bottom, str)

    def key(self):
        return (self.bottom, self.top, self.partner, self.dots)

    def sort_key(self):
        return (self.pairs(), tuple(self.strand_dots()))

    def __eq__(self, o):
        return isinstance(o, NormalDiagram) and self.key() == o.key()

    def __hash__(self):
        return self._hash

    def __lt__(self, o):
        return self.sort_key() < o.sort_key()

    def pairs(self):
        return tuple((i, j) for i, j in enumerate(self.partner) if i < j)

    def strand_dots(self):
        out = []
        for i, j in self.pairs():
            out.append(self.dots[i] + self.dots[j])
        return out

    def strands(self):
        """(i, j, kind) with kind 'cap', 'cup' or 'vertical'."""
        n = self.n
        out = []
        for i, j in self.pairs():
            if j < n:
                kind = "cap"
            elif i >= n:
                kind = "cup"
            else:
                kind = "vertical"
            out.append((i, j, kind))
        return out

    def raw(self):
        return (self.bottom, self.top, self.partner)

    def bottom_dots(self):
        return self.dots[:self.n]

    def top_dots(self):
        return self.dots[self.n:]

    def __repr__(self):
        return "NormalDiagram(%r -> %r, pairs=%s, dots=%s)" % (
            self.bottom, self.top, list(self.pairs()), list(self.dots))

    def ascii(self):
        parts = []
        for (i, j, kind), k in zip(self.strands(), self.strand_dots()):
            s = "%s(%d,%d)" % (kind, i + 1, j + 1)
            if k:
                s += "*%d" % k
            parts.append(s)
        return "%s -> %s: %s" % (self.bottom, self.top, " ".join(parts) or "empty")


class LinearCombination:
    """Finite formal sum of NormalDiagrams of one type with exact coefficients."""

    __slots__ = ("bottom", "top", "terms")

    def __init__(self, bottom, top, terms=None):
        self.bottom = bottom
        self.top = top
        self.terms = {}
        for d, c in (terms or {}).items():
            if c != 0:
                if d.bottom != bottom or d.top != top:
                    raise DiagstratError("TYPE_MISMATCH", "term of the wrong type")
                self.terms[d] = c

    @staticmethod
    def of(d, coef=1):
        return LinearCombination(d.bottom, d.top, {d: coef})

    def items(self):
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self.terms)

    def coeff(self, d):
        return self.terms.get(d, 0)

    def is_zero(self):
        return not self.terms

    def _check(self, o):
        if (self.bottom, self.top) != (o.bottom, o.top):
            raise DiagstratError("TYPE_MISMATCH", "adding morphisms of different types")

    def __add__(self, o):
        self._check(o)
        t = dict(self.terms)
        _acc(t, o.terms, 1)
        return LinearCombination(self.bottom, self.top, t)

    def __sub__(self, o):
        self._check(o)
        t = dict(self.terms)
        _acc(t, o.terms, -1)
        return LinearCombination(self.bottom, self.top, t)

    def __neg__(self):
        return LinearCombination(self.bottom, self.top, {d: -c for d, c in self.terms.items()})

    def __rmul__(self, a):
        if a == 0:
            return LinearCombination(self.bottom, self.top)
        return LinearCombination(self.bottom, self.top, {d: a * c for d, c in self.terms.items()})

    def __eq__(self, o):
        if isinstance(o, int) and o == 0:
            return self.is_zero()
        return (isinstance(o, LinearCombination) and (self.bottom, self.top) == (o.bottom, o.top)
                and self.terms == o.terms)

    def __hash__(self):
        return hash((self.bottom, self.top, frozenset(self.terms.items())))

    def __repr__(self):
        return "LinearCombination(%s)" % ", ".join("%s*%s" % (c, d.ascii()) for d, c in self.items())


def _acc(target, src, scale):
    for d, c in src.items():
        v = target.get(d, 0) + scale * c
        if v == 0:
            target.pop(d, None)
        else:
            target[d] = v


def _unit(L, P, k=1):
    return tuple(k if i == P else 0 for i in range(L))


def _addv(a, b, s=1):
    return tuple(x + s * y for x, y in zip(a, b))


def _identity_raw(w):
    n = size(w)
    return (w, w, tuple(list(range(n, 2 * n)) + list(range(n))))


class Engine:
    """Rewriting engine bound to one configuration."""

    def __init__(self, cfg):
        if cfg.flavor not in (CB, OB):
            raise DiagstratError("UNSUPPORTED_FLAVOR", "no diagram calculus for flavor %s" % cfg.flavor)
        self.cfg = cfg
        self.m = cfg.m
        fld = cfg.field
        self.fld = fld
        self.one = fld.one
        # elementary symmetric polynomials e_1..e_m of u
        es = [fld.one] + [fld.zero] * cfg.m
        for x in cfg.u:
            for j in range(cfg.m, 0, -1):
                es[j] = es[j] + es[j - 1] * x
        self.esym = es
        # t^m = sum_{j=1}^m (-1)^(j+1) e_j t^(m-j)
        self.top_rel = [fld.zero] * cfg.m
        for j in range(1, cfg.m + 1):
            self.top_rel[cfg.m - j] = (es[j] if j % 2 else -es[j])
        self._rem = {}
        self._bub = list(cfg.bubbles) if cfg.bubbles is not None else None
        self._sand = {}
        self._norm = {}
        self.depth = 0

    # scalars ---------------------------------------------------------

    def remainder(self, k):
        """Coefficients r_0..r_{m-1} with t^k = sum r_j t^j mod f(t)."""
        if k in self._rem:
            return self._rem[k]
        m = self.m
        if k < m:
            r = tuple(self.one if j == k else self.fld.zero for j in range(m))
        else:
            prev = self.remainder(k - 1)
            # multiply by t and fold t^m back
            shifted = [self.fld.zero] + list(prev[:-1])
            lead = prev[-1]
            r = tuple(shifted[j] + lead * self.top_rel[j] for j in range(m))
        self._rem[k] = r
        return r

    def bubble(self, k):
        """Value of a (clockwise, for oriented) loop carrying k dots."""
        if self._bub is None:
            raise DiagstratError("MISSING_BUBBLES", "loop values are required for this computation")
        while len(self._bub) <= k:
            t = len(self._bub)
            v = self.fld.zero
            for j in range(1, self.m + 1):
                term = self.esym[j] * self._bub[t - j]
                v = v + term if j % 2 else v - term
            self._bub.append(v)
        return self._bub[k]

    # single dot slide ------------------------------------------------

    def slide(self, bw, tw, part, B):
        """Move one dot from point B to its partner A.

        Returns (sign, A, corrections) meaning
        x_B D = sign * x_A D + sum(coef * D') over corrections (coef, partner').
        """
        n, p = size(bw), size(tw)
        L = n + p
        A = part[B]

        def pos(x):
            return x if x < n else 2 * n + p - 1 - x

        pB = pos(B)
        span = (pos(A) - pB) % L

        def in_arc(x):
            d = (pos(x) - pB) % L
            return 0 < d < span

        oriented = isinstance(bw, str)
        if oriented:
            b_is_end = not _is_start(bw, tw, B)
            S, E = (A, B) if b_is_end else (B, A)
        else:
            sA = 1 if A < n else -1
            sB = 1 if B >= n else -1
        corr = []
        for c in range(L):
            d = part[c]
            if c > d or c == A or c == B:
                continue
            ic, idd = in_arc(c), in_arc(d)
            if ic == idd:
                continue
            tL, tR = (c, d) if ic else (d, c)
            if oriented:
                tl_es = tL if b_is_end else tR
                t_start = c if _is_start(bw, tw, c) else d
                t_end = d if t_start == c else c
                eps = 1 if t_start != tl_es else -1
                coef = eps if b_is_end else -eps
                corr.append((coef, _resmooth(part, S, t_end, t_start, E)))
            else:
                corr.append((sB, _resmooth(part, A, tL, B, tR)))
                corr.append((-sB, _resmooth(part, A, tR, B, tL)))
        sign = 1 if oriented else sA * sB
        return sign, A, corr

    # composite matchings ---------------------------------------------

    def trace(self, D1, D2):
        """Glue D1 over D2.

        Returns (G partner, hop, loops): hop[mid] is 1 or 2, naming the
        diagram along which a dot at that middle point moves next, or None
        for loop base points; loops lists each loop's middle points in loop
        order starting at its base point.
        """
        pw, qw, part1 = D1
        nw, _, part2 = D2
        n, p, q = size(nw), size(pw), size(qw)
        G = [None] * (n + q)
        hop = [None] * p
        seen = [False] * p
        for start in range(n + q):
            if G[start] is not None:
                continue
            mids = []
            links = []
            if start < n:
                diag, cur = 2, start
            else:
                diag, cur = 1, p + start - n
            while True:
                if diag == 2:
                    nxt = part2[cur]
                    if nxt < n:
                        end = nxt
                        break
                    mid = nxt - n
                    mids.append(mid)
                    links.append(2)
                    diag, cur = 1, mid
                else:
                    nxt = part1[cur]
                    if nxt >= p:
                        end = n + nxt - p
                        break
                    mid = nxt
                    mids.append(mid)
                    links.append(1)
                    diag, cur = 2, n + mid
            links.append(diag)
            G[start] = end
            G[end] = start
            toward_end = normal_point(nw, qw, start, end) == end
            for k, mid in enumerate(mids):
                seen[mid] = True
                hop[mid] = links[k + 1] if toward_end else links[k]
        loops = []
        oriented = isinstance(pw, str)
        for m0 in range(p):
            if seen[m0]:
                continue
            members = []
            x = m0
            while True:
                members.append(x)
                y = part2[n + x] - n
                members.append(y)
                x = part1[y]
                if x == m0:
                    break
            for x in members:
                seen[x] = True
            if oriented:
                base = min(x for x in members if pw[x] == UP)
            else:
                base = min(members)
            order = [base]
            x = base
            while True:
                y = part2[n + x] - n
                order.append(y)
                x = part1[y]
                if x == base:
                    break
                order.append(x)
            for idx, x in enumerate(order):
                hop[x] = None if idx == 0 else (2 if idx % 2 else 1)
            loops.append(order)
        return tuple(G), hop, loops

    def glue(self, D1, D2):
        G, _, loops = self.trace(D1, D2)
        return (D2[0], D1[1], G), len(loops)

    # sandwiches ------------------------------------------------------

    def sandwich(self, D1, b1, g, D2, a2):
        """Normal form of X^b1 . D1 . X^g . D2 . X^a2 as {NormalDiagram: coef}."""
        key = (D1, b1, g, D2, a2)
        hit = self._sand.get(key)
        if hit is not None:
            return hit
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.depth = 0
            raise DiagstratError("REWRITE_DIVERGENCE", "rewriting depth cap exceeded")
        try:
            res = self._sandwich(D1, b1, g, D2, a2)
        finally:
            self.depth -= 1
        self._sand[key] = res
        return res

    def _sandwich(self, D1, b1, g, D2, a2):
        pw, qw, part1 = D1
        nw, _, part2 = D2
        n, p = size(nw), size(pw)
        if not any(g):
            G, hop, loops = self.trace(D1, D2)
            res = self.normalize(nw, qw, G, a2 + b1)
            if loops:
                s = self.bubble(0) ** len(loops)
                res = {d: c * s for d, c in res.items() if c * s != 0}
            return res
        G, hop, loops = self.trace(D1, D2)
        for i in range(p):
            if g[i] and hop[i] is not None:
                gi = _addv(g, _unit(p, i), -1)
                out = {}
                if hop[i] == 2:
                    sign, A, corr = self.slide(nw, pw, part2, n + i)
                    if A < n:
                        _acc(out, self.sandwich(D1, b1, gi, D2, _addv(a2, _unit(n, A))), sign)
                    else:
                        _acc(out, self.sandwich(D1, b1, _addv(gi, _unit(p, A - n)), D2, a2), sign)
                    for c, np_ in corr:
                        _acc(out, self.sandwich(D1, b1, gi, (nw, pw, np_), a2), c)
                else:
                    sign, A, corr = self.slide(pw, qw, part1, i)
                    if A < p:
                        _acc(out, self.sandwich(D1, b1, _addv(gi, _unit(p, A)), D2, a2), sign)
                    else:
                        _acc(out, self.sandwich(D1, _addv(b1, _unit(size(qw), A - p)), gi, D2, a2), sign)
                    for c, np_ in corr:
                        _acc(out, self.sandwich((pw, qw, np_), b1, gi, D2, a2), c)
                return out
        # every dotted middle point is a loop base: evaluate the first dotted loop
        for order in loops:
            if g[order[0]]:
                return self._loop(D1, b1, g, D2, a2, order)
        raise AssertionError("unreachable: dotted middle point with no move")

    def _loop(self, D1, b1, g, D2, a2, order):
        pw, qw, part1 = D1
        nw, _, part2 = D2
        n, p = size(nw), size(pw)
        r2 = len(order)
        onloop = set(order)
        rest = [x for x in range(p) if x not in onloop]
        perm = order + rest
        where = {x: i for i, x in enumerate(perm)}
        if isinstance(pw, str):
            w2 = "".join(pw[x] for x in perm)
            w2rest = w2[r2:]
        else:
            w2 = p
            w2rest = p - r2
        # pi: w2 -> pw, bottom i to top perm[i]
        ppi = [None] * (2 * p)
        for i, x in enumerate(perm):
            ppi[i] = p + x
            ppi[p + x] = i
        pi = (w2, pw, tuple(ppi))
        # W = C (x) D2_rest : nw -> w2
        W = [None] * (n + p)
        for k in range(0, r2, 2):
            W[n + k] = n + k + 1
            W[n + k + 1] = n + k
        for i in range(n):
            y = part2[i]
            W[i] = y if y < n else n + where[y - n]
        for x in rest:
            y = part2[n + x]
            W[n + where[x]] = y if y < n else n + where[y - n]
        W = (nw, w2, tuple(W))
        # U = K (x) D1_rest : w2 -> qw
        q = size(qw)
        U = [None] * (p + q)
        for k in range(1, r2 - 1, 2):
            U[k] = k + 1
            U[k + 1] = k
        U[0] = r2 - 1
        U[r2 - 1] = 0
        for x in rest:
            z = part1[x]
            U[where[x]] = z if z >= p else where[z]
        for j in range(q):
            z = part1[p + j]
            U[p + j] = z if z >= p else where[z]
        U = (w2, qw, tuple(U))
        out = {}
        for (pp, dd), c in self.push(pi, (0,) * p + g, up=False).items():
            bot, topd = dd[:p], dd[p:]
            if pp == pi[2] and not any(topd):
                k = bot[0]
                assert not any(bot[1:r2])
                D1r, D2r = _restrict_top(U, r2, w2rest), _restrict_bottom(W, r2, w2rest)
                sub = self.sandwich(D1r, b1, bot[r2:], D2r, a2)
                _acc(out, sub, c * self.bubble(k))
            else:
                E = (w2, pw, pp)
                _acc(out, self.three_layer(D1, b1, topd, E, bot, W, a2), c)
        return out

    def three_layer(self, D1, b1, beta, E, alpha, D2, a2):
        """Normal form of D1 . X^beta . E . X^alpha . D2 (with outer dots)."""
        out = {}
        inner = self.sandwich(E, beta, alpha, D2, a2)
        for F, c in inner.items():
            sub = self.sandwich(D1, b1, F.top_dots(), F.raw(), F.bottom_dots())
            _acc(out, sub, c)
        return out

    def push(self, D, d, up):
        """Move all dots of a permutation diagram to its top (up) or bottom.

        Returns {(partner, dots): coef}.  Terms whose matching changed are
        correction terms and keep their remaining dots where they are.
        """
        bw, tw, part = D
        n = size(bw)
        out = {}

        def rec(pp, dd, coef):
            if pp != part:
                k = (pp, dd)
                out[k] = out.get(k, 0) + coef
                return
            if up:
                P = next((i for i in range(n) if dd[i]), None)
            else:
                P = next((i for i in range(n, len(dd)) if dd[i]), None)
            if P is None:
                k = (pp, dd)
                out[k] = out.get(k, 0) + coef
                return
            sign, A, corr = self.slide(bw, tw, pp, P)
            d1 = _addv(dd, _unit(len(dd), P), -1)
            rec(pp, _addv(d1, _unit(len(dd), A)), coef * sign)
            for c, np_ in corr:
                rec(np_, d1, coef * c)

        rec(part, d, 1)
        return {k: v for k, v in out.items() if v != 0}

    def middle_reduce(self, D1, b1, g, D2, a2, qpos):
        """Reduce an overfull middle point qpos using f on the leftmost strand."""
        pw = D1[0]
        p = size(pw)
        if isinstance(pw, str):
            w2 = pw[qpos] + pw[:qpos] + pw[qpos + 1:]
        else:
            w2 = p
        perm = [None] * p          # bottom i -> top perm[i]
        for i in range(p):
            perm[i] = 0 if i == qpos else (i + 1 if i < qpos else i)
        pq = [None] * (2 * p)
        for i in range(p):
            pq[i] = p + perm[i]
            pq[p + perm[i]] = i
        Q = (pw, w2, tuple(pq))
        qinv = [None] * (2 * p)
        for i in range(p):
            qinv[perm[i]] = p + i
            qinv[p + i] = perm[i]
        Qi = (w2, pw, tuple(qinv))
        D1Q, l1 = self.glue(D1, Qi)
        QD2, l2 = self.glue(Q, D2)
        assert l1 == 0 and l2 == 0
        out = {}
        for (pp, dd), c in self.push(Q, g + (0,) * p, up=True).items():
            bot, topd = dd[:p], dd[p:]
            if pp == Q[2] and not any(bot):
                k = topd[0]
                for j, r in enumerate(self.remainder(k)):
                    if r != 0:
                        g2 = (j,) + topd[1:]
                        _acc(out, self.sandwich(D1Q, b1, g2, QD2, a2), c * r)
            else:
                E = (pw, w2, pp)
                _acc(out, self.three_layer(D1Q, b1, topd, E, bot, D2, a2), c)
        return out

    # normal form -----------------------------------------------------

    def normalize(self, nw, qw, part, d):
        key = (nw, qw, part, d)
        hit = self._norm.get(key)
        if hit is not None:
            return hit
        res = self._normalize(nw, qw, part, d)
        self._norm[key] = res
        return res

    def _normalize(self, nw, qw, part, d):
        n, q = size(nw), size(qw)
        L = n + q
        for P in range(L):
            if d[P] and normal_point(nw, qw, P, part[P]) != P:
                sign, A, corr = self.slide(nw, qw, part, P)
                d1 = _addv(d, _unit(L, P), -1)
                out = {}
                _acc(out, self.normalize(nw, qw, part, _addv(d1, _unit(L, A))), sign)
                for c, np_ in corr:
                    _acc(out, self.normalize(nw, qw, np_, d1), c)
                return out
        m = self.m
        for P in range(L):
            k = d[P]
            if k < m:
                continue
            G = (nw, qw, part)
            if P >= n:
                j = P - n
                b1 = _addv(d[n:], _unit(q, j, k), -1)
                return self.middle_reduce(_identity_raw(qw), b1, _unit(q, j, k), G, d[:n], j)
            if isinstance(nw, int):
                return self.middle_reduce(G, d[n:], _unit(n, P, k), _identity_raw(nw), _addv(d[:n], _unit(n, P, k), -1), P)
            return self._zigzag(nw, qw, part, d, P, k)
        return {NormalDiagram(nw, qw, part, d): self.one}

    def _zigzag(self, nw, qw, part, d, i, k):
        """Reduce an overfull down-pointing bottom end through a zigzag."""
        n = len(nw)
        w3 = nw[:i] + DOWN + UP + DOWN + nw[i + 1:]
        B = [None] * (n + n + 2)
        for j in range(n):
            t = j if j < i else (i + 2 if j == i else j + 2)
            B[j] = n + t
            B[n + t] = j
        B[n + i] = n + i + 1
        B[n + i + 1] = n + i
        A = [None] * (n + 2 + n)
        for j in range(n + 2):
            if j == i + 1 or j == i + 2:
                continue
            t = j if j <= i else j - 2
            A[j] = n + 2 + t
            A[n + 2 + t] = j
        A[i + 1] = i + 2
        A[i + 2] = i + 1
        GA, loops = self.glue((nw, qw, part), (w3, nw, tuple(A)))
        assert loops == 0
        GA = (w3, qw, GA[2])
        g = _unit(n + 2, i + 1, k)
        a2 = _addv(d[:n], _unit(n, i, k), -1)
        return self.middle_reduce(GA, d[n:], g, (nw, w3, tuple(B)), a2, i + 1)


def _resmooth(part, a, b, c, d):
    lst = list(part)
    lst[a], lst[b], lst[c], lst[d] = b, a, d, c
    return tuple(lst)


def _restrict_top(U, r2, wrest):
    """Drop the first r2 bottom points (paired among themselves) of U."""
    w2, qw, part = U
    p = size(w2)
    keep = list(range(r2, p + size(qw)))
    idx = {x: i for i, x in enumerate(keep)}
    return (wrest, qw, tuple(idx[part[x]] for x in keep))


def _restrict_bottom(W, r2, wrest):
    """Drop the first r2 top points (paired among themselves) of W."""
    nw, w2, part = W
    n = size(nw)
    keep = list(range(n)) + list(range(n + r2, n + size(w2)))
    idx = {x: i for i, x in enumerate(keep)}
    return (nw, wrest, tuple(idx[part[x]] for x in keep))


_ENGINES = {}


def engine_for(cfg):
    eng = _ENGINES.get(cfg)
    if eng is None:
        if sys.getrecursionlimit() < 100000:
            sys.setrecursionlimit(100000)
        eng = Engine(cfg)
        _ENGINES[cfg] = eng
    return eng


def clear_engines():
    _ENGINES.clear()


# enumeration -----------------------------------------------------------

def _matchings(points, ok):
    if not points:
        yield ()
        return
    a = points[0]
    for idx in range(1, len(points)):
        b = points[idx]
        if not ok(a, b):
            continue
        rest = points[1:idx] + points[idx + 1:]
        for mm in _matchings(rest, ok):
            yield ((a, b),) + mm


def enumerate_basis(bottom, top, cfg):
    """All normally ordered diagrams bottom -> top, in canonical order."""
    bottom = parse_object(bottom, cfg.flavor)
    top = parse_object(top, cfg.flavor)
    n, p = size(bottom), size(top)
    if max(n, p) > cfg.N:
        raise DiagstratError("TRUNCATION_EXCEEDED", "object larger than truncation %d" % cfg.N)
    return _enumerate(bottom, top, cfg.m)


def _enumerate(bottom, top, m):
    n, p = size(bottom), size(top)
    if (n + p) % 2:
        return []
    if isinstance(bottom, str):
        def ok(a, b):
            return _is_start(bottom, top, a) != _is_start(bottom, top, b)
    else:
        def ok(a, b):
            return True
    out = []
    for mm in _matchings(list(range(n + p)), ok):
        part = [None] * (n + p)
        for a, b in mm:
            part[a] = b
            part[b] = a
        part = tuple(part)
        normals = [normal_point(bottom, top, a, b) for a, b in mm]
        for ks in itertools.product(range(m), repeat=len(mm)):
            d = [0] * (n + p)
            for P, k in zip(normals, ks):
                d[P] = k
            out.append(NormalDiagram(bottom, top, part, d))
    out.sort(key=NormalDiagram.sort_key)
    return out


def count_law(a, b, m):
    """m^((a+b)/2) (a+b-1)!! for even a+b, else 0."""
    t = a + b
    if t % 2:
        return 0
    df = 1
    for k in range(t - 1, 0, -2):
        df *= k
    return m ** (t // 2) * df


# composition -------------------------------------------------------------

def _as_lc(x):
    if isinstance(x, NormalDiagram):
        return LinearCombination.of(x)
    return x


def compose_diagrams(g, f, cfg):
    """g . f for two normal diagrams, as a dict {NormalDiagram: coef}."""
    if f.top != g.bottom:
        raise DiagstratError("TYPE_MISMATCH", "cannot compose %r after %r" % (g.bottom, f.top))
    eng = engine_for(cfg)
    mid = g.dots[:g.n]
    mid2 = f.dots[f.n:]
    return eng.sandwich(g.raw(), g.top_dots(), _addv(mid, mid2), f.raw(), f.bottom_dots())


def compose(g, f, cfg):
    """Normal form of g . f for diagrams or linear combinations."""
    g, f = _as_lc(g), _as_lc(f)
    if f.top != g.bottom:
        raise DiagstratError("TYPE_MISMATCH", "cannot compose %r after %r" % (g.bottom, f.top))
    out = {}
    for dg, cg in g.terms.items():
        for df, cf in f.terms.items():
            _acc(out, compose_diagrams(dg, df, cfg), cg * cf)
    return LinearCombination(f.bottom, g.top, out)


def normal_form(bottom, top, partner, dots, cfg):
    """Normalize an arbitrary dotted matching."""
    eng = engine_for(cfg)
    res = eng.normalize(bottom, top, tuple(partner), tuple(dots))
    return LinearCombination(bottom, top, res)


# structural maps ---------------------------------------------------------

def _tensor_id_diagram(d, label=UP):
    n, p = d.n, d.p
    if d.oriented:
        bw, tw = d.bottom + label, d.top + label
    else:
        bw, tw = n + 1, p + 1

    def mp(P):
        return P if P < n else P + 1

    part = [None] * (n + p + 2)
    dots = [0] * (n + p + 2)
    for P in range(n + p):
        part[mp(P)] = mp(d.partner[P])
        dots[mp(P)] = d.dots[P]
    part[n] = n + 1 + p
    part[n + 1 + p] = n
    return NormalDiagram(bw, tw, part, dots)


def tensor_with_identity(d, label=UP):
    """Append one identity strand on the right of every term."""
    if isinstance(d, NormalDiagram):
        return LinearCombination.of(_tensor_id_diagram(d, label))
    t = {_tensor_id_diagram(x, label): c for x, c in d.terms.items()}
    if d.terms:
        first = next(iter(t))
        return LinearCombination(first.bottom, first.top, t)
    if isinstance(d.bottom, str):
        return LinearCombination(d.bottom + label, d.top + label)
    return LinearCombination(d.bottom + 1, d.top + 1)


def _flip_raw(d):
    n, p = d.n, d.p

    def mp(P):
        return P + p if P < n else P - n

    part = [None] * (n + p)
    dots = [0] * (n + p)
    for P in range(n + p):
        part[mp(P)] = mp(d.partner[P])
        dots[mp(P)] = d.dots[P]
    return d.top, d.bottom, tuple(part), tuple(dots)


def involution_sigma(d, cfg):
    """Vertical flip (and orientation reversal), renormalized."""
    d = _as_lc(d)
    eng = engine_for(cfg)
    out = {}
    for x, c in d.terms.items():
        bw, tw, part, dots = _flip_raw(x)
        _acc(out, eng.normalize(bw, tw, part, dots), c)
    return LinearCombination(d.top, d.bottom, out)


def _crossings_among(d, idx):
    """True if two vertical strands of d cross."""
    n = d.n
    verts = [(i, d.partner[i] - n) for i in range(n) if d.partner[i] >= n]
    for (a, b), (c, e) in itertools.combinations(verts, 2):
        if (a - c) * (b - e) < 0:
            return True
    return False


def triangular_flags(d):
    kinds = [k for _, _, k in d.strands()]
    has_cap = "cap" in kinds
    has_cup = "cup" in kinds
    vert_dots = any(d.dots[i] + d.dots[j] for i, j, k in d.strands() if k == "vertical")
    cross = _crossings_among(d, None)
    flags = set()
    if not has_cap and not cross and not vert_dots:
        flags.add(MINUS)
    if not has_cup and not cross and not vert_dots:
        flags.add(PLUS)
    if not has_cup and not has_cap:
        flags.add(CIRC)
    return frozenset(flags)


def classify_triangular(d):
    f = triangular_flags(d)
    if CIRC in f:
        return CIRC
    if MINUS in f:
        return MINUS
    if PLUS in f:
        return PLUS
    return NONE


# generators ----------------------------------------------------------------

def identity(obj):
    n = size(obj)
    return NormalDiagram(obj, obj, list(range(n, 2 * n)) + list(range(n)), [0] * (2 * n))


def _perm_diagram(obj, perm, top=None):
    """Diagram with bottom i joined to top perm[i]."""
    n = size(obj)
    part = [None] * (2 * n)
    for i, t in enumerate(perm):
        part[i] = n + t
        part[n + t] = i
    if top is None:
        top = obj if isinstance(obj, int) else "".join(obj[perm.index(j)] for j in range(n))
    return NormalDiagram(obj, top, part, [0] * (2 * n))


def crossing(obj, i):
    """s_i on strands i, i+1 (1-based)."""
    n = size(obj)
    perm = list(range(n))
    perm[i - 1], perm[i] = i, i - 1
    return _perm_diagram(obj, perm)


def dot(obj, i, cfg, k=1):
    """x_i^k: k dots on the i-th strand (1-based), normalized."""
    n = size(obj)
    base = identity(obj)
    d = [0] * (2 * n)
    d[n + i - 1] = k
    return normal_form(obj, obj, base.partner, d, cfg)


def cap(obj, i):
    """Cap joining bottom points i, i+1 (1-based) of obj."""
    n = size(obj)
    part = [None] * (2 * n - 2)
    t = 0
    for j in range(n):
        if j in (i - 1, i):
            continue
        part[j] = n + t
        part[n + t] = j
        t += 1
    part[i - 1] = i
    part[i] = i - 1
    top = obj - 2 if isinstance(obj, int) else obj[:i - 1] + obj[i + 1:]
    return NormalDiagram(obj, top, part, [0] * (2 * n - 2))


def cup(obj, i):
    """Cup joining top points i, i+1 (1-based) of obj."""
    n = size(obj)
    nb = n - 2
    part = [None] * (nb + n)
    t = 0
    for j in range(n):
        if j in (i - 1, i):
            continue
        part[t] = nb + j
        part[nb + j] = t
        t += 1
    part[nb + i - 1] = nb + i
    part[nb + i] = nb + i - 1
    bottom = obj - 2 if isinstance(obj, int) else obj[:i - 1] + obj[i + 1:]
    return NormalDiagram(bottom, obj, part, [0] * (nb + n))


def e_gen(obj, i, cfg):
    """cup_i . cap_i on obj (for oriented words the pair must be opposite)."""
    return compose(cup(obj, i), cap(obj, i), cfg)


# serialization ---------------------------------------------------------------

def diagram_to_json(d):
    pairs = d.pairs()
    dots = {}
    for k, (i, j) in enumerate(pairs):
        c = d.dots[i] + d.dots[j]
        if c:
            dots[str(k)] = c
    out = {"bottom": d.bottom, "top": d.top,
           "pairs": [[i + 1, j + 1] for i, j in pairs], "dots": dots}
    return out


def diagram_from_json(obj, cfg=None):
    bottom, top = obj["bottom"], obj["top"]
    if isinstance(bottom, str) or isinstance(top, str):
        bottom = parse_object(bottom, OB)
        top = parse_object(top, OB)
    n, p = size(bottom), size(top)
    part = [None] * (n + p)
    pairs = sorted(tuple(sorted((a - 1, b - 1))) for a, b in obj["pairs"])
    for a, b in pairs:
        if part[a] is not None or part[b] is not None:
            raise DiagstratError("INVALID_DIAGRAM", "point used twice")
        part[a], part[b] = b, a
    if any(x is None for x in part):
        raise DiagstratError("INVALID_DIAGRAM", "matching is not perfect")
    dots = [0] * (n + p)
    for k, c in obj.get("dots", {}).items():
        i, j = pairs[int(k)]
        dots[normal_point(bottom, top, i, j)] += int(c)
    if isinstance(bottom, str):
        for a, b in pairs:
            if _is_start(bottom, top, a) == _is_start(bottom, top, b):
                raise DiagstratError("INVALID_DIAGRAM", "inconsistent orientation")
    if cfg is not None and any(c >= cfg.m for c in dots):
        res = normal_form(bottom, top, part, dots, cfg)
        if len(res) != 1 or next(iter(res.terms.values())) != 1:
            raise DiagstratError("INVALID_DIAGRAM", "dot count exceeds m - 1")
    return NormalDiagram(bottom, top, part, dots)


def lc_to_json(lc, fld):
    return [{"coeff": fld.fmt(c), "diagram": diagram_to_json(d)} for d, c in lc.items()]


def lc_from_json(arr, fld, bottom=None, top=None, cfg=None):
    terms = {}
    for t in arr:
        d = diagram_from_json(t["diagram"], cfg)
        terms[d] = terms.get(d, 0) + fld.parse(t["coeff"])
        bottom, top = d.bottom, d.top
    if bottom is None:
        raise DiagstratError("INVALID_DIAGRAM", "empty combination needs a type")
    return LinearCombination(bottom, top, terms)
