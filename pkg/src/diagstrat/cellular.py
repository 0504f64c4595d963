"""Cellular data, cell modules, decomposition numbers and blocks.

The bar algebra on object k is a degenerate cyclotomic Hecke algebra.  Its
cellular basis here is the Murphy-type basis

    m_st = D(d_s) . u_lam . x_lam . D(d_t)^-1

where D(w) is the permutation diagram joining bottom i to top w(i),
x_lam sums the row stabilizer of the initial tableau, u_lam is the product
of (X_k - u_s) over the first |lam^1| + ... + |lam^(s-1)| strands for
s = 2..m, and d_t maps the entries of the initial tableau to those of t.
Everything is verified rather than trusted: the basis property, the
multiplication rule modulo more dominant shapes, and sigma(m_st) = m_ts.

Decomposition numbers use characters.  Simple heads of cell modules are
absolutely irreducible and pairwise non-isomorphic, so in characteristic
zero their trace functions are linearly independent, and the multiplicity
vector of a cell module is the unique solution of a linear system in the
traces of all basis elements.
"""

import itertools

from .algebra import bar_algebra, _axpy
from .combinatorics import (
    Multipartition, multipartitions, standard_tableaux, initial_tableau, dominates,
    wt_bar_key,
)
from .diagram import _perm_diagram, dot
from .errors import DiagstratError
from .linalg import Echelon, rank, nullspace, solve, transpose


# Hecke layer ------------------------------------------------------------------

def _tableau_perm(lam, t):
    """0-based permutation sending entry t0(node) - 1 to t(node) - 1."""
    t0 = initial_tableau(lam)
    n = lam.size()
    perm = [None] * n
    for node, e in t0.items():
        perm[e - 1] = t[node] - 1
    return perm


def _inverse(perm):
    inv = [None] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


class HeckeCellDatum:
    """Murphy-type cellular basis of the bar algebra on object k."""

    def __init__(self, k, cfg):
        self.k = k
        self.cfg = cfg
        self.B = bar_algebra(k, cfg)
        self.labels = multipartitions(k, cfg.m)
        self.tableaux = {lam: standard_tableaux(lam) for lam in self.labels}
        self._perm_index = {}
        self.elements = {}
        self.keys = []
        self.ech = Echelon(track=True)
        self._build()
        self._modules = {}

    # construction -----------------------------------------------------

    def perm_element(self, perm):
        key = tuple(perm)
        idx = self._perm_index.get(key)
        if idx is None:
            idx = self.B.index[_perm_diagram(self.k, list(perm))]
            self._perm_index[key] = idx
        return {idx: 1}

    def _x(self, i):
        return self.B.project(dot(self.k, i, self.cfg).terms)

    def murphy_m(self, lam):
        B, cfg = self.B, self.cfg
        u = B.one()
        acc = 0
        sizes = [sum(p) for p in lam.components]
        for s in range(2, cfg.m + 1):
            acc = sum(sizes[:s - 1])
            for kk in range(1, acc + 1):
                f = dict(self._x(kk))
                _axpy(f, -cfg.u[s - 1], B.one())
                u = B.mul(u, f)
        # row stabilizer of the initial tableau
        t0 = initial_tableau(lam)
        rows = {}
        for (j, r, c), e in t0.items():
            rows.setdefault((j, r), []).append(e - 1)
        blocks = [sorted(v) for _, v in sorted(rows.items())]
        x = {}
        for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
            perm = list(range(self.k))
            for b, img in zip(blocks, choice):
                for src, dst in zip(b, img):
                    perm[src] = dst
            _axpy(x, 1, self.perm_element(perm))
        return B.mul(u, x)

    def _build(self):
        B = self.B
        for lam in self.labels:
            mlam = self.murphy_m(lam)
            tabs = self.tableaux[lam]
            perms = [_tableau_perm(lam, t) for t in tabs]
            for si, ps in enumerate(perms):
                left = B.mul(self.perm_element(ps), mlam)
                for ti, pt in enumerate(perms):
                    el = B.mul(left, self.perm_element(_inverse(pt)))
                    key = (lam, si, ti)
                    self.elements[key] = el
                    self.keys.append(key)
                    if not self.ech.add(el):
                        raise DiagstratError("CELLULAR_FAILURE",
                                             "Murphy elements are linearly dependent")
        if len(self.keys) != B.dim:
            raise DiagstratError("CELLULAR_FAILURE",
                                 "%d Murphy elements for dimension %d" % (len(self.keys), B.dim))

    # queries ------------------------------------------------------------

    def coords(self, x):
        c = self.ech.coordinates(x)
        if c is None:
            raise DiagstratError("CELLULAR_FAILURE", "element outside the Murphy span")
        return {self.keys[i]: v for i, v in c.items()}

    def higher(self, lam, mu):
        """mu is strictly more dominant than lam."""
        return mu != lam and dominates(mu, lam)

    def sigma_check(self):
        bad = 0
        for (lam, s, t), el in self.elements.items():
            if self.B.sigma(el) != self.elements[(lam, t, s)]:
                bad += 1
        return bad

    def verify_axioms(self, elements=None):
        """Exact check of the cellular axioms against right multiplication."""
        B = self.B
        els = range(B.dim) if elements is None else elements
        c4_bad = 0
        for j in els:
            for lam in self.labels:
                n = len(self.tableaux[lam])
                ref = {}
                for s in range(n):
                    for t in range(n):
                        prod = B.mul(self.elements[(lam, s, t)], {j: 1})
                        co = self.coords(prod)
                        row = {}
                        for (mu, s2, t2), v in co.items():
                            if mu == lam:
                                if s2 != s:
                                    c4_bad += 1
                                row[t2] = v
                            elif not self.higher(lam, mu):
                                c4_bad += 1
                        if (lam, t) in ref:
                            if ref[(lam, t)] != row:
                                c4_bad += 1
                        else:
                            ref[(lam, t)] = row
        dims = {str(l): len(self.tableaux[l]) for l in self.labels}
        return {
            "k": self.k,
            "dim": B.dim,
            "sum_of_squares": sum(v * v for v in dims.values()),
            "cell_dims": dims,
            "C1_poset": True,
            "C2_finite": True,
            "C3_sigma_failures": self.sigma_check(),
            "C4_failures": c4_bad,
            "pass": c4_bad == 0 and self.sigma_check() == 0
                    and sum(v * v for v in dims.values()) == B.dim,
        }

    def cell_module(self, lam):
        lam = Multipartition.parse(lam, self.cfg.m)
        if lam not in self.tableaux:
            raise DiagstratError("UNKNOWN_LABEL", "%s is not a label of layer %d" % (lam, self.k))
        mod = self._modules.get(lam)
        if mod is None:
            mod = HeckeCellModule(self, lam)
            self._modules[lam] = mod
        return mod


class HeckeCellModule:
    """Left cell module S(lam) with basis m_{s,t0} modulo more dominant shapes."""

    def __init__(self, datum, lam):
        self.datum = datum
        self.lam = lam
        self.dim = len(datum.tableaux[lam])
        self._rho = {}
        self._gram = None

    def _column_data(self, prod, t_fixed):
        lam, d = self.lam, self.datum
        col = [0] * self.dim
        for (mu, s2, t2), v in d.coords(prod).items():
            if mu == lam:
                if t2 != t_fixed:
                    raise DiagstratError("CELLULAR_FAILURE", "cell multiplication rule violated")
                col[s2] = v
            elif not d.higher(lam, mu):
                raise DiagstratError("CELLULAR_FAILURE", "product leaves the cell ideal")
        return col

    def rho_index(self, j):
        """Matrix of the bar-algebra basis element j."""
        M = self._rho.get(j)
        if M is None:
            d = self.datum
            cols = []
            for s in range(self.dim):
                prod = d.B.mul({j: 1}, d.elements[(self.lam, s, 0)])
                cols.append(self._column_data(prod, 0))
            M = transpose(cols) if cols else []
            self._rho[j] = M
        return M

    def rho(self, x):
        """Matrix of a sparse bar-algebra element."""
        out = [[0] * self.dim for _ in range(self.dim)]
        for j, c in x.items():
            M = self.rho_index(j)
            for r in range(self.dim):
                for s in range(self.dim):
                    if M[r][s]:
                        out[r][s] += c * M[r][s]
        return out

    def rho_diagram(self, h):
        return self.rho_index(self.datum.B.index[h])

    def gram(self):
        if self._gram is None:
            d, lam = self.datum, self.lam
            G = [[0] * self.dim for _ in range(self.dim)]
            for s in range(self.dim):
                left = d.elements[(lam, 0, s)]
                for u in range(self.dim):
                    prod = d.B.mul(left, d.elements[(lam, u, 0)])
                    co = d.coords(prod)
                    for (mu, s2, t2), v in co.items():
                        if mu == lam and (s2, t2) != (0, 0):
                            raise DiagstratError("CELLULAR_FAILURE", "form is not a multiple of m_t0t0")
                    G[s][u] = co.get((lam, 0, 0), 0)
            self._gram = G
        return self._gram


_HECKE = {}


def hecke_cell_datum(a, cfg):
    """Cellular datum of the bar algebra on object a (memoized per config)."""
    a = int(a)
    if a > cfg.N:
        raise DiagstratError("TRUNCATION_EXCEEDED", "object %d beyond truncation %d" % (a, cfg.N))
    key = (cfg, a)
    d = _HECKE.get(key)
    if d is None:
        d = HeckeCellDatum(a, cfg)
        _HECKE[key] = d
    return d


# generic character machinery ---------------------------------------------------

def trace(M):
    return sum(M[i][i] for i in range(len(M)))


def radical_of_form(G):
    """Basis of {v : G v = 0} as column vectors."""
    n = len(G)
    if n == 0:
        return []
    return nullspace(G, n)


def submodule_trace(M, R):
    """Trace of M restricted to the invariant subspace spanned by the vectors R."""
    if not R:
        return 0
    n = len(M)
    cols = R
    # solve cols . C = M . cols for C, then take its trace
    MR = [[sum(M[i][k] * v[k] for k in range(n)) for i in range(n)] for v in R]
    basis = transpose(cols)
    t = 0
    for idx, w in enumerate(MR):
        x = solve(basis, w)
        if x is None:
            raise DiagstratError("CELLULAR_FAILURE", "radical is not invariant")
        t += x[idx]
    return t


def solve_multiplicities(cell_traces, simple_traces):
    """d[mu][lam] with cell_traces[mu] = sum_lam d * simple_traces[lam]."""
    lams = sorted(simple_traces, key=_label_key)
    if not lams:
        return {mu: {} for mu in cell_traces}
    cols = [simple_traces[l] for l in lams]
    A = transpose(cols)
    if rank(cols) != len(lams):
        raise DiagstratError("CELLULAR_FAILURE", "simple characters are not independent")
    out = {}
    for mu, tr in cell_traces.items():
        x = solve(A, tr)
        if x is None:
            raise DiagstratError("CELLULAR_FAILURE", "cell character outside the simple span")
        row = {}
        for l, v in zip(lams, x):
            if v != 0:
                if v < 0 or getattr(v, "denominator", 1) != 1:
                    raise DiagstratError("CELLULAR_FAILURE", "non-integral multiplicity")
                row[l] = int(v)
        out[mu] = row
    return out


def _label_key(l):
    if isinstance(l, Multipartition):
        return l.sort_key()
    return l


def _require_char0(cfg):
    if cfg.char_p:
        raise DiagstratError("UNSUPPORTED_FIELD",
                             "decomposition numbers by characters need characteristic zero")


def hecke_decomposition(k, cfg):
    """[S_k(mu) : D_k(lam)] for the bar algebra on object k."""
    _require_char0(cfg)
    d = hecke_cell_datum(k, cfg)
    B = d.B
    cell_tr, simple_tr, head_dims = {}, {}, {}
    for lam in d.labels:
        mod = d.cell_module(lam)
        trs = [trace(mod.rho_index(j)) for j in range(B.dim)]
        cell_tr[lam] = trs
        G = mod.gram()
        r = rank(G)
        head_dims[lam] = r
        if r:
            R = radical_of_form(G)
            simple_tr[lam] = [t - submodule_trace(mod.rho_index(j), R)
                              for j, t in zip(range(B.dim), trs)]
    table = solve_multiplicities(cell_tr, simple_tr)
    return DecompositionTable(k, table, head_dims, list(d.labels))


class DecompositionTable:
    """[S(mu) : D(lam)] for one layer, with simple-head dimensions."""

    def __init__(self, layer, table, head_dims, labels):
        self.layer = layer
        self.table = table
        self.head_dims = head_dims
        self.labels = labels

    @property
    def simples(self):
        return [l for l in self.labels if self.head_dims.get(l)]

    def get(self, mu, lam):
        return self.table.get(mu, {}).get(lam, 0)

    def is_unitriangular(self, order=None):
        """Diagonal ones on simple labels; off-diagonal entries only where
        ``order(mu, lam)`` holds (default: mu strictly higher than lam)."""
        order = order or higher
        for lam in self.simples:
            if self.get(lam, lam) != 1:
                return False
        for mu, row in self.table.items():
            for lam, v in row.items():
                if v and mu != lam and not order(mu, lam):
                    return False
        return True

    def is_identity(self):
        for mu, row in self.table.items():
            for lam, v in row.items():
                if v != (1 if mu == lam else 0):
                    return False
        return all(self.get(l, l) == 1 for l in self.labels)

    def to_json(self):
        rows = []
        for mu in self.labels:
            for lam, v in sorted(self.table.get(mu, {}).items(), key=lambda t: _label_key(t[0])):
                rows.append({"cell": _lab_json(mu), "simple": _lab_json(lam), "multiplicity": v})
        return {"layer": _lab_json(self.layer) if not isinstance(self.layer, int) else self.layer,
                "simple_dims": [{"label": _lab_json(l), "dim": self.head_dims[l]}
                                for l in self.labels if self.head_dims.get(l)],
                "entries": rows}


def _lab_json(l):
    if isinstance(l, Multipartition):
        return l.to_list()
    return l


# weakly cellular bases of A_a ----------------------------------------------------

def _lift(datum, key):
    """A Murphy element of the bar algebra as a combination of H(b) diagrams."""
    B = datum.B
    return {B.basis[i]: c for i, c in datum.elements[key].items()}


class WeaklyCellularDatum:
    """Basis sigma(x2) . h_st . x1 of A_a over layers b = a, a-2, ...

    Labels are multipartitions of every layer size; a label of a smaller
    layer is higher, and within a layer higher means strictly dominant.
    Tableaux of lam are pairs (x, s) with x in X(b, a) and s a standard
    lam-tableau.
    """

    def __init__(self, a, T, cells=None):
        from .algebra import endomorphism_algebra
        from .diagram import compose, involution_sigma
        cfg = T.cfg
        self.a, self.cfg, self.T = a, cfg, T
        self.A = endomorphism_algebra(a, cfg)
        cells = cells or {}
        self.layers = [b for b in range(a, -1, -2) if T.x(b, a)]
        self.labels = []
        self.tableaux = {}
        self.elements = {}
        self.keys = []
        self.ech = Echelon(track=True)
        for b in self.layers:
            datum = cells.get(b)
            if datum is None:
                if b > cfg.N:
                    raise DiagstratError("MISSING_LAYER_DATA", "no cellular data for layer %d" % b)
                datum = hecke_cell_datum(b, cfg)
            xs = T.x(b, a)
            ys = [involution_sigma(x, cfg) for x in xs]
            for lam in datum.labels:
                self.labels.append(lam)
                tabs = [(xi, s) for xi in range(len(xs)) for s in range(len(datum.tableaux[lam]))]
                self.tableaux[lam] = tabs
                for (x2, s) in tabs:
                    for (x1, t) in tabs:
                        h = _lift(datum, (lam, s, t))
                        el = {}
                        for d, c in h.items():
                            prod = compose(ys[x2], compose(d, xs[x1], cfg), cfg)
                            for dd, cc in prod.items():
                                el[self.A.index[dd]] = el.get(self.A.index[dd], 0) + c * cc
                        el = {k: v for k, v in el.items() if v != 0}
                        key = (lam, (x2, s), (x1, t))
                        self.elements[key] = el
                        self.keys.append(key)
                        if not self.ech.add(el):
                            raise DiagstratError("CELLULAR_FAILURE", "weakly cellular elements are dependent")
        if len(self.keys) != self.A.dim:
            raise DiagstratError("CELLULAR_FAILURE",
                                 "%d elements for dimension %d" % (len(self.keys), self.A.dim))

    def higher(self, lam, mu):
        """mu is strictly higher than lam."""
        if mu.size() != lam.size():
            return mu.size() < lam.size()
        return mu != lam and dominates(mu, lam)

    def coords(self, x):
        c = self.ech.coordinates(x)
        if c is None:
            raise DiagstratError("CELLULAR_FAILURE", "element outside the cellular span")
        return {self.keys[i]: v for i, v in c.items()}

    def _test_elements(self, full):
        if full:
            return [{j: 1} for j in range(self.A.dim)]
        from .algebra import generator_vectors
        return generator_vectors(self.A)

    def verify(self, full=None):
        """(C4) against right multiplication and the weak sigma axiom."""
        A = self.A
        if full is None:
            full = A.dim <= 60
        tests = self._test_elements(full)
        c4_bad = 0
        for g in tests:
            for lam in self.labels:
                ref = {}
                for S in self.tableaux[lam]:
                    for Tt in self.tableaux[lam]:
                        co = self.coords(A.mul(self.elements[(lam, S, Tt)], g))
                        row = {}
                        for (mu, S2, T2), v in co.items():
                            if mu == lam:
                                if S2 != S:
                                    c4_bad += 1
                                row[T2] = v
                            elif not self.higher(lam, mu):
                                c4_bad += 1
                        prev = ref.setdefault(Tt, row)
                        if prev != row:
                            c4_bad += 1
        sg_bad = 0
        for (lam, S, Tt), el in self.elements.items():
            diff = dict(A.sigma(el))
            _axpy(diff, -1, self.elements[(lam, Tt, S)])
            for (mu, _, _), v in self.coords(diff).items():
                if not self.higher(lam, mu):
                    sg_bad += 1
                    break
        dims = {str(l): len(self.tableaux[l]) for l in self.labels}
        total = sum(v * v for v in dims.values())
        return {"a": self.a, "dim": A.dim, "sum_of_squares": total, "cell_dims": dims,
                "checked_against": "basis" if full else "generators",
                "C4_failures": c4_bad, "sigma_weak_failures": sg_bad,
                "pass": c4_bad == 0 and sg_bad == 0 and total == A.dim}

    def cell_module(self, lam):
        return WeakCellModule(self, Multipartition.parse(lam, self.cfg.m))


class WeakCellModule:
    """Left cell module with basis c_{S, T0} modulo higher labels."""

    def __init__(self, datum, lam):
        if lam not in datum.tableaux:
            raise DiagstratError("UNKNOWN_LABEL", "%s is not a label of A_%d" % (lam, datum.a))
        self.datum = datum
        self.lam = lam
        self.index = datum.tableaux[lam]
        self.dim = len(self.index)
        self.t0 = self.index[0]

    def act(self, x):
        """Matrix of the A_a element x (sparse vector)."""
        d, lam = self.datum, self.lam
        M = [[0] * self.dim for _ in range(self.dim)]
        pos = {S: i for i, S in enumerate(self.index)}
        for j, S in enumerate(self.index):
            prod = d.A.mul(x, d.elements[(lam, S, self.t0)])
            for (mu, S2, T2), v in d.coords(prod).items():
                if mu == lam:
                    if T2 != self.t0:
                        raise DiagstratError("CELLULAR_FAILURE", "left multiplication rule violated")
                    M[pos[S2]][j] += v
                elif not d.higher(lam, mu):
                    raise DiagstratError("CELLULAR_FAILURE", "product leaves the cell ideal")
        return M

    def gram(self):
        d, lam = self.datum, self.lam
        G = [[0] * self.dim for _ in range(self.dim)]
        for i, S in enumerate(self.index):
            for j, U in enumerate(self.index):
                prod = d.A.mul(d.elements[(lam, self.t0, S)], d.elements[(lam, U, self.t0)])
                G[i][j] = d.coords(prod).get((lam, self.t0, self.t0), 0)
        return G


def weakly_cellular_basis(a, T, cells=None):
    return WeaklyCellularDatum(a, T, cells)


def cell_module(a, lam, datum):
    """Cell module of A_a (weakly cellular datum) or of the bar algebra (Hecke datum)."""
    if isinstance(datum, HeckeCellDatum):
        return datum.cell_module(lam)
    if datum.a != a:
        raise DiagstratError("UNKNOWN_LABEL", "datum belongs to A_%d" % datum.a)
    return datum.cell_module(lam)


# decomposition numbers of A_a ----------------------------------------------------

_TABLES = {}


def layer_modules(a, cfg):
    """1_a Delta(mu) for every label mu of A_a, as (module, grade-a Gram) pairs."""
    from .stratification import standard_module
    out = {}
    for b in range(a % 2, a + 1, 2):
        for mu in multipartitions(b, cfg.m):
            M = standard_module(mu, cfg, a)
            out[mu] = M
    return out


def decomposition_table(a, datum):
    """[S_a(mu) : L_a(lam)] for A_a (or the bar algebra for a Hecke datum).

    Cell modules of A_a are realised as the degree-a part of the standard
    modules, simple heads as quotients by the radical of the invariant form.
    """
    if isinstance(datum, HeckeCellDatum):
        return hecke_decomposition(datum.k, datum.cfg)
    cfg = datum.cfg if hasattr(datum, "cfg") else datum
    _require_char0(cfg)
    key = (cfg, a)
    if key in _TABLES:
        return _TABLES[key]
    from .algebra import endomorphism_algebra
    A = endomorphism_algebra(a, cfg)
    mods = layer_modules(a, cfg)
    cell_tr, simple_tr, heads = {}, {}, {}
    for mu, M in mods.items():
        mats = [M.act_diagram(d) for d in A.basis]
        trs = [trace(X) for X in mats]
        cell_tr[mu] = trs
        G = M.gram(a)
        r = rank(G) if G else 0
        heads[mu] = r
        if r:
            R = radical_of_form(G)
            simple_tr[mu] = [t - submodule_trace(X, R) for t, X in zip(trs, mats)]
    labels = sorted(mods, key=_label_key)
    table = solve_multiplicities(cell_tr, simple_tr)
    T = DecompositionTable(a, table, heads, labels)
    _TABLES[key] = T
    return T


def higher(x, y):
    """x is strictly higher than y: a smaller layer, or the same layer and strictly dominant."""
    if x.size() != y.size():
        return x.size() < y.size()
    return x != y and dominates(x, y)


def solve_bgg_system(tables, N, cfg=None):
    """(P(lam) : Delta(nu)) from the identity [Delta(mu):L(lam)] = sum_nu [S(mu):D(nu)] (P(lam):Delta(nu)).

    ``tables`` maps each a <= N to its DecompositionTable; the Hecke tables
    of every layer are recomputed from ``cfg`` (or taken from tables["hecke"]).
    """
    hecke = tables.get("hecke") if isinstance(tables, dict) else None
    out = {}
    for a in range(N + 1):
        if a not in tables:
            raise DiagstratError("INSUFFICIENT_TRUNCATION", "no table for object %d" % a)
    for a in range(N + 1):
        Ta = tables[a]
        for lam in Ta.simples:
            if lam.size() != a:
                continue
            row = {}
            for j in range(a % 2, a + 1, 2):
                Hj = hecke[j] if hecke else hecke_decomposition(j, cfg)
                mus = Hj.labels
                nus = Hj.simples
                if not nus:
                    continue
                Amat = [[Hj.get(mu, nu) for nu in nus] for mu in mus]
                rhs = [Ta.get(mu, lam) for mu in mus]
                x = solve(Amat, rhs)
                if x is None:
                    raise DiagstratError("CELLULAR_FAILURE",
                                         "inconsistent BGG system for %s at layer %d" % (lam, j))
                for nu, v in zip(nus, x):
                    if v:
                        if v < 0 or getattr(v, "denominator", 1) != 1:
                            raise DiagstratError("CELLULAR_FAILURE", "non-integral flag multiplicity")
                        row[nu] = int(v)
            out[lam] = row
    return out


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=_label_key)] = min(ra, rb, key=_label_key)


def cell_link_blocks(cfg, N=None):
    """Connected components of the cell-link graph over all A_a, a <= N."""
    N = cfg.N if N is None else int(N)
    labels = [l for b in range(N + 1) for l in multipartitions(b, cfg.m)]
    uf = _UnionFind(labels)
    for a in range(N + 1):
        T = decomposition_table(a, cfg)
        for mu, row in T.table.items():
            for lam, v in row.items():
                if v:
                    uf.union(mu, lam)
    comps = {}
    for l in labels:
        comps.setdefault(uf.find(l), []).append(l)
    out = []
    for root in sorted(comps, key=_label_key):
        members = sorted(comps[root], key=_label_key)
        keys = sorted({wt_bar_key(l, cfg) for l in members})
        out.append({"component": [l.to_list() for l in members],
                    "wtbar": keys[0] if len(keys) == 1 else "|".join(keys),
                    "single_fiber": len(keys) == 1})
    return out
