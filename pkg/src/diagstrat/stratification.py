"""Triangular data, axiom checks, and standard modules.

For a diagram category the three families are read off the normal basis:
Y holds cup diagrams with straight undotted verticals, X their flips, and
H the dotted permutations.  Every morphism c -> a is then a unique
combination of composites y . h . x, which ``verify_wt_axioms`` confirms by
exact rank computations.

The standard module of a multipartition lam with |lam| = k has basis
y (x) v_s, y in Y(b, k) and v_s a basis vector of the Hecke cell module.
A diagram g acts by composing g . y, discarding terms with fewer than k
through strands and splitting each survivor as y' . h' with h' a dotted
permutation that then acts on the cell module.
"""

import itertools
import random

from .algebra import (
    through_class, precedes, objects_up_to, compose_chain, bar_algebra, bar_element,
)
from .cellular import hecke_cell_datum
from .combinatorics import Multipartition
from .diagram import (
    NormalDiagram, LinearCombination, enumerate_basis, triangular_flags, object_class,
    tensor_with_identity, involution_sigma, compose, identity, crossing, dot, cup, cap,
    size, MINUS, PLUS, CIRC,
)
from .errors import DiagstratError
from .linalg import rank, transpose, nullspace, matmul
from .params import CB, make_config


# triangular data --------------------------------------------------------------------

class TriangularData:
    """Y, H and X families for all objects up to N.

    ``Y[(b, a)]`` lists morphisms a -> b, ``X[(a, b)]`` morphisms b -> a and
    ``H[(b, b2)]`` morphisms b2 -> b.
    """

    def __init__(self, cfg, N):
        self.cfg = cfg
        self.N = N
        self.objects = objects_up_to(cfg, N)
        self.Y, self.X, self.H = {}, {}, {}
        for a in self.objects:
            for b in self.objects:
                for d in enumerate_basis(a, b, cfg):
                    flags = triangular_flags(d)
                    if MINUS in flags:
                        self.Y.setdefault((b, a), []).append(d)
                    if PLUS in flags:
                        self.X.setdefault((b, a), []).append(d)
                    if CIRC in flags:
                        self.H.setdefault((b, a), []).append(d)

    @staticmethod
    def cls(o):
        return object_class(o)

    def order(self, x, y):
        """x precedes-or-equals y on object classes."""
        return precedes(self.cls(x), self.cls(y))

    def y(self, b, a):
        return self.Y.get((b, a), [])

    def x(self, a, b):
        return self.X.get((a, b), [])

    def h(self, b, b2):
        return self.H.get((b, b2), [])

    def triples(self, a, c):
        """All (y, h, x, middle class) with y . h . x : c -> a."""
        for b in self.objects:
            ys = self.y(a, b)
            if not ys:
                continue
            for b2 in self.objects:
                hs = self.h(b, b2)
                xs = self.x(b2, c)
                if not hs or not xs:
                    continue
                for y, h, x in itertools.product(ys, hs, xs):
                    yield y, h, x, self.cls(b)


def compute_triangular_data(cfg, N=None):
    N = cfg.N if N is None else int(N)
    if N > cfg.N:
        raise DiagstratError("TRUNCATION_EXCEEDED", "N=%d beyond truncation %d" % (N, cfg.N))
    return TriangularData(cfg, N)


# triangular axioms ------------------------------------------------------------------

def _pair_label(o):
    return o


def _defects(cfg, objects, a, c, probes, rng):
    """Associator defects (h.g).f - h.(g.f) in Hom(c, a) on random probes."""
    out = []
    mids = [o for o in objects]
    for _ in range(probes):
        b1, b2 = rng.choice(mids), rng.choice(mids)
        F, G, Hh = (enumerate_basis(c, b1, cfg), enumerate_basis(b1, b2, cfg),
                    enumerate_basis(b2, a, cfg))
        if not F or not G or not Hh:
            continue
        f, g, h = rng.choice(F), rng.choice(G), rng.choice(Hh)
        left = compose(compose(h, g, cfg), f, cfg)
        right = compose(h, compose(g, f, cfg), cfg)
        diff = left - right
        if not diff.is_zero():
            out.append(diff)
    return out


def _vec_rows(lcs, index):
    n = len(index)
    rows = []
    for lc in lcs:
        r = [0] * n
        for d, c in lc.items():
            r[index[d]] = c
        rows.append(r)
    return rows


def check_pair(T, a, c, probes=12, seed=0):
    """Rank of the y.h.x triples inside Hom(c, a)."""
    cfg = T.cfg
    basis = enumerate_basis(c, a, cfg)
    index = {d: i for i, d in enumerate(basis)}
    trip = list(T.triples(a, c))
    prods = [compose_chain(cfg, y, h, x) for y, h, x, _ in trip]
    rng = random.Random("%s|%s|%s" % (seed, a, c))
    defects = _defects(cfg, T.objects, a, c, probes, rng) if probes else []
    drows = _vec_rows(defects, index)
    prow = _vec_rows(prods, index)
    dr = rank(drows) if drows else 0
    achieved = (rank(prow + drows) if prow else dr) - dr
    expected = len(basis)
    return {"pair": [a, c], "expected_dim": expected, "triples": len(trip),
            "achieved_rank": achieved, "defect_rank": dr,
            "pass": len(trip) == expected and achieved == expected}


def verify_wt_axioms(cfg, N=None, probes=12, seed=0, pairs=None):
    """Check the order vanishing of Y and X, the X/Y count symmetry, and the triple basis on every pair up to N."""
    T = compute_triangular_data(cfg, N)
    w3_bad = []
    for (b, a), ys in T.Y.items():
        if not T.order(b, a):
            w3_bad.append(["Y", b, a])
    for (a, b), xs in T.X.items():
        if not T.order(b, a):
            w3_bad.append(["X", a, b])
    for a in T.objects:
        if T.y(a, a) != [identity(a)] or T.x(a, a) != [identity(a)]:
            w3_bad.append(["diag", a, a])
    sym_bad = [[a, c] for a in T.objects for c in T.objects
               if len(T.x(c, a)) != len(T.y(a, c))]
    reports = []
    todo = pairs if pairs is not None else [(a, c) for a in T.objects for c in T.objects]
    for a, c in todo:
        reports.append(check_pair(T, a, c, probes, seed))
    ok = not w3_bad and not sym_bad and all(r["pass"] for r in reports)
    return {"N": T.N, "vanishing": {"failures": w3_bad, "pass": not w3_bad},
            "X_Y_symmetry": {"failures": sym_bad, "pass": not sym_bad},
            "pairs": reports, "pass": ok}


def bubble_search(u, grid=range(-2, 3), N=3, probes=12, seed=0, flavor=CB):
    """Bubble vectors on a grid for which every triple-rank check passes at N.

    Candidates are rejected at the first associator defect; survivors get
    the full rank check.  Returns the passing vectors as strings.
    """
    m = len(u)
    found = []
    for vals in itertools.product(list(grid), repeat=m):
        raw = {"flavor": flavor, "m": m, "u": [str(x) for x in u],
               "bubbles": [str(x) for x in vals], "N": N}
        try:
            cfg = make_config(raw)
        except DiagstratError:
            continue
        T = compute_triangular_data(cfg, N)
        rng = random.Random(seed)
        bad = False
        for a in T.objects:
            for c in T.objects:
                if _defects(cfg, T.objects, a, c, probes, rng):
                    bad = True
                    break
            if bad:
                break
        if bad:
            continue
        if verify_wt_axioms(cfg, N, probes=0)["pass"]:
            found.append([cfg.field.fmt(x) for x in cfg.bubbles])
    return found


# tau, H and Y assumptions -----------------------------------------------------------

def _d_set(a1, cfg):
    """D(a1) = {S_{i,a1} X_{a1}^j} as (label, LinearCombination) pairs."""
    out = []
    for i in range(1, a1 + 1):
        s = LinearCombination.of(identity(a1))
        for k in range(i, a1):
            s = compose(s, crossing(a1, k), cfg)
        for j in range(cfg.m):
            el = compose(s, dot(a1, a1, cfg, j), cfg) if j else s
            out.append(((i, j), el))
    return out


def verify_A_assumptions(cfg, N=None):
    """tau-stability of Y, H and X, the H factorization and the Y splitting."""
    T = compute_triangular_data(cfg, N)
    if cfg.flavor != CB:
        raise DiagstratError("UNSUPPORTED_FLAVOR", "assumption checks are implemented for CB")
    N = T.N
    a2_bad = []
    for fam, store in (("Y", T.Y), ("X", T.X), ("H", T.H)):
        for (p, q), ds in store.items():
            if max(p, q) + 1 > N:
                continue
            target = set(store.get((p + 1, q + 1), []))
            for d in ds:
                t = next(iter(tensor_with_identity(d).terms))
                if t not in target:
                    a2_bad.append([fam, p, q])
                    break
    a3 = []
    for a in range(0, N):
        Ha = T.h(a, a)
        Hb = T.h(a + 1, a + 1)
        D = _d_set(a + 1, cfg)
        B = bar_algebra(a + 1, cfg)
        literal = set()
        rows = []
        for _, dl in D:
            for h in Ha:
                prod = compose(dl, tensor_with_identity(h), cfg)
                if len(prod) == 1 and next(iter(prod.terms.values())) == 1:
                    literal.add(next(iter(prod.terms)))
                v = bar_element(B, prod)
                rows.append([v.get(i, 0) for i in range(B.dim)])
        r = rank(rows) if rows else 0
        a3.append({"a": a + 1, "H": len(Hb), "D": len(D), "H_prev": len(Ha),
                   "literal": literal == set(Hb), "bar_rank": r,
                   "pass": len(Hb) == len(D) * len(Ha) and r == len(Hb)})
    a4 = []
    for a in range(0, N + 1):
        for c in range(a, N + 1, 2):
            if c == 0:
                # Y(0) = {1_0} has no smaller object to come from
                continue
            Ys = set(T.y(c, a))
            Y1 = set()
            if a >= 1 and c >= 1:
                for f in T.y(c - 1, a - 1):
                    Y1.add(next(iter(tensor_with_identity(f).terms)))
            Y2 = {}
            sign_ok = True
            if c >= a + 2 and a + 1 <= N:
                cup_ = cup(a + 2, a + 1)
                for f in T.y(c - 1, a + 1):
                    for (i, j), dl in _d_set(a + 1, cfg):
                        el = compose(tensor_with_identity(f),
                                     compose(tensor_with_identity(dl), cup_, cfg), cfg)
                        if len(el) != 1:
                            sign_ok = False
                            continue
                        d, coef = next(iter(el.terms.items()))
                        if coef != (-1) ** j:
                            sign_ok = False
                        Y2[d] = coef
            disjoint = not (Y1 & set(Y2))
            union = (Y1 | set(Y2)) == Ys
            a4.append({"a": a, "c": c, "Y": len(Ys), "Y1": len(Y1), "Y2": len(Y2),
                       "sign": sign_ok, "pass": disjoint and union and sign_ok})
    ok = not a2_bad and all(r["pass"] for r in a3) and all(r["pass"] for r in a4)
    return {"N": N, "tau_stable": {"failures": a2_bad, "pass": not a2_bad},
            "h_factorization": a3, "y_splitting": a4, "pass": ok}


# modules ----------------------------------------------------------------------------

class ModulePresentation:
    """A graded module over the truncated category given by diagram actions.

    ``grades`` maps each object to the labels of its basis vectors.
    ``act_diagram(g)`` returns the matrix of g : b -> b' as a list of rows
    indexed by the b' labels, columns by the b labels.
    """

    def __init__(self, cfg, grades, act_diagram, name=""):
        self.cfg = cfg
        self.grades = grades
        self._act = act_diagram
        self._cache = {}
        self.name = name

    @property
    def objects(self):
        return [o for o in self.grades]

    def dim(self, obj=None):
        if obj is None:
            return sum(len(v) for v in self.grades.values())
        return len(self.grades.get(obj, []))

    def graded_dims(self):
        return {o: len(v) for o, v in self.grades.items()}

    def act_diagram(self, g):
        M = self._cache.get(g)
        if M is None:
            M = self._act(g)
            self._cache[g] = M
        return M

    def act(self, lc):
        """Matrix of a LinearCombination (or diagram)."""
        if isinstance(lc, NormalDiagram):
            return self.act_diagram(lc)
        rows, cols = self.dim(lc.top), self.dim(lc.bottom)
        out = [[0] * cols for _ in range(rows)]
        for d, c in lc.items():
            M = self.act_diagram(d)
            for i in range(rows):
                Mi = M[i]
                for j in range(cols):
                    if Mi[j]:
                        out[i][j] += c * Mi[j]
        return out

    def generators(self):
        """Named generator matrices: s_i, e_i, x_i on each grade, cups and caps between grades."""
        cfg = self.cfg
        out = {}
        for b in self.grades:
            n = size(b)
            for i in range(1, n):
                out["s%d@%s" % (i, b)] = self.act(crossing(b, i))
                out["e%d@%s" % (i, b)] = self.act(compose(cup(b, i), cap(b, i), cfg))
            for i in range(1, n + 1):
                out["x%d@%s" % (i, b)] = self.act(dot(b, i, cfg))
            if b + 2 in self.grades:
                for i in range(1, n + 2):
                    out["cup%d@%s" % (i, b)] = self.act(cup(b + 2, i))
            if b - 2 in self.grades and n >= 2:
                for i in range(1, n):
                    out["cap%d@%s" % (i, b)] = self.act(cap(b, i))
        return out

    def check_relations(self, samples=30, seed=0):
        """Spot check that random composable diagrams act compatibly."""
        cfg = self.cfg
        rng = random.Random(seed)
        objs = sorted(self.grades)
        bad = 0
        for _ in range(samples):
            a, b, c = (rng.choice(objs) for _ in range(3))
            F, G = enumerate_basis(a, b, cfg), enumerate_basis(b, c, cfg)
            if not F or not G:
                continue
            f, g = rng.choice(F), rng.choice(G)
            lhs = self.act(compose(g, f, cfg))
            rhs = matmul(self.act(g), self.act(f)) if self.dim(a) and self.dim(c) else lhs
            if lhs != rhs:
                bad += 1
        return bad

    def jm_character(self, n):
        """Joint generalized eigenspace dimensions of X_1..X_n on grade n.

        Returns a dict from content words (tuples of Content) to dimensions.
        """
        from .params import sharp
        cfg = self.cfg
        d = self.dim(n)
        if d == 0:
            return {}
        cands = {}
        for j in range(1, cfg.m + 1):
            for z in range(-n - 1, n + 2):
                c = cfg.content(j, z)
                for cc in (c, sharp(c, cfg)):
                    cands.setdefault(cfg.content_value(cc), cc)
        Xs = [self.act(dot(n, k, cfg)) for k in range(1, n + 1)]
        out = {}
        basis = [[1 if i == j else 0 for i in range(d)] for j in range(d)]
        self._split(Xs, 0, basis, (), cands, out)
        if sum(out.values()) != d:
            raise DiagstratError("CHARACTER_FAILURE",
                                 "eigenvalues outside the content set on grade %d" % n)
        return out

    def _split(self, Xs, k, basis, word, cands, out):
        if not basis:
            return
        if k == len(Xs):
            out[word] = out.get(word, 0) + len(basis)
            return
        X = Xs[k]
        dim = len(basis)
        B = transpose(basis)
        # restriction of X to the invariant subspace spanned by basis
        from .linalg import solve
        R = []
        for v in basis:
            w = [sum(X[i][j] * v[j] for j in range(len(v)) if v[j]) for i in range(len(X))]
            x = solve(B, w)
            if x is None:
                raise DiagstratError("CHARACTER_FAILURE", "subspace is not invariant")
            R.append(x)
        R = transpose(R)
        for val, content in cands.items():
            M = [[R[i][j] - (val if i == j else 0) for j in range(dim)] for i in range(dim)]
            P = M
            for _ in range(dim - 1):
                P = matmul(P, M)
            ker = nullspace(P, dim)
            if not ker:
                continue
            sub = [[sum(B[i][j] * kv[j] for j in range(dim)) for i in range(len(B))] for kv in ker]
            self._split(Xs, k + 1, sub, word + (content,), cands, out)


def _split_cap_free(d, k):
    """Write a diagram k -> b with k through strands as y' . h'."""
    n = d.n
    tops = sorted(d.partner[i] for i in range(n))
    rank_of = {t: r for r, t in enumerate(tops)}
    perm = [rank_of[d.partner[i]] for i in range(n)]
    hdots = [0] * (2 * n)
    for i in range(n):
        hdots[i] = d.dots[i]
    hpart = [None] * (2 * n)
    for i, t in enumerate(perm):
        hpart[i] = n + t
        hpart[n + t] = i
    h = NormalDiagram(k, k, hpart, hdots)
    ypart = list(d.partner)
    ydots = list(d.dots)
    for r, t in enumerate(tops):
        ypart[r] = t
        ypart[t] = r
        ydots[r] = 0
    y = NormalDiagram(k, d.top, ypart, ydots)
    return y, h


def standard_module(lam, cfg, N=None):
    """The truncated standard module of lam as a ModulePresentation."""
    N = cfg.N if N is None else int(N)
    if cfg.flavor != CB:
        raise DiagstratError("UNSUPPORTED_FLAVOR", "standard modules are implemented for CB")
    lam = Multipartition.parse(lam, cfg.m)
    k = lam.size()
    if k > N or N > cfg.N:
        raise DiagstratError("TRUNCATION_EXCEEDED", "layer %d or N=%d beyond truncation" % (k, N))
    T = compute_triangular_data(cfg, N)
    datum = hecke_cell_datum(k, cfg)
    S = datum.cell_module(lam)
    grades = {}
    pos = {}
    for b in range(k, N + 1, 2):
        labels = []
        for y in T.y(b, k):
            for s in range(S.dim):
                pos[(y, s)] = len(labels)
                labels.append((y, s))
        grades[b] = labels

    def act(g):
        b, b2 = g.bottom, g.top
        rows = len(grades.get(b2, []))
        cols = len(grades.get(b, []))
        M = [[0] * cols for _ in range(rows)]
        if not rows or not cols:
            return M
        for y in T.y(b, k):
            prod = compose(g, y, cfg)
            for d, c in prod.items():
                if through_class(d) != k:
                    continue
                y2, h2 = _split_cap_free(d, k)
                R = S.rho_diagram(h2)
                for s in range(S.dim):
                    col = pos[(y, s)]
                    for s2 in range(S.dim):
                        if R[s2][s]:
                            M[pos[(y2, s2)]][col] += c * R[s2][s]
        return M

    mod = ModulePresentation(cfg, grades, act, name="Delta(%s)" % lam)
    mod.lam = lam
    mod.layer = k
    mod.cell = S
    mod.triangular = T

    def gram(b):
        """Invariant form on grade b."""
        labels = grades.get(b, [])
        B = datum.B
        G0 = S.gram()
        G = [[0] * len(labels) for _ in labels]
        rhos = {}
        for i, (y, s) in enumerate(labels):
            for j, (y2, s2) in enumerate(labels):
                R = rhos.get((y, y2))
                if R is None:
                    el = B.project(compose(involution_sigma(y, cfg), y2, cfg).terms)
                    R = rhos[(y, y2)] = S.rho(el)
                G[i][j] = sum(G0[s][t] * R[t][s2] for t in range(S.dim))
        return G

    mod.gram = gram
    return mod


def dual_module(M):
    """Graded dual: g acts by the transpose of sigma(g)."""
    cfg = M.cfg

    def act(g):
        sg = involution_sigma(g, cfg)
        return transpose(M.act(sg), M.dim(g.top)) if M.dim(g.bottom) else \
            [[0] * M.dim(g.bottom) for _ in range(M.dim(g.top))]

    D = ModulePresentation(cfg, {o: [("dual",) + tuple(l) for l in v] for o, v in M.grades.items()},
                           act, name="dual(%s)" % M.name)
    D.parent = M
    return D
