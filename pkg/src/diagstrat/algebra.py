"""Finite-dimensional algebras built from the diagram engine.

Elements are sparse vectors: dicts from basis index to a nonzero field
element.  Products of basis elements are computed lazily and memoized, so
an algebra of dimension several hundred costs only the products actually
used.  The product convention is ``x * y = x . y`` (y first, then x).
"""

import itertools
import random

from . import cache
from .diagram import (
    NormalDiagram, LinearCombination, compose_diagrams, enumerate_basis,
    involution_sigma, identity, crossing, dot, e_gen, size, parse_object,
)
from .errors import DiagstratError
from .linalg import Echelon, nullspace, _axpy
from .params import OB


def through_class(d):
    """The object a diagram factors through: its vertical strands."""
    n = d.n
    verts = [i for i in range(n) if d.partner[i] >= n]
    if not d.oriented:
        return len(verts)
    ups = sum(1 for i in verts if d.bottom[i] == "u")
    return (ups, len(verts) - ups)


def precedes(x, y):
    """x precedes-or-equals y in the object order (y is reached by caps)."""
    if isinstance(x, int):
        return x >= y and (x - y) % 2 == 0
    k = x[0] - y[0]
    return k >= 0 and x[1] - y[1] == k


class FiniteAlgebra:
    """Ordered basis with lazily computed structure constants."""

    def __init__(self, basis, mult, field, one=None, sigma=None, name="", key=None):
        self.basis = list(basis)
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self.field = field
        self.name = name
        self._mult = mult
        self._table = {}
        self._one = one
        self._sigma = sigma
        self._sigma_cache = {}
        self.key = key
        self._loaded = False

    # products --------------------------------------------------------

    def mult_basis(self, i, j):
        r = self._table.get((i, j))
        if r is None:
            r = self._mult(i, j)
            self._table[(i, j)] = r
        return r

    def mul(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                _axpy(out, a * b, self.mult_basis(i, j))
        return out

    def one(self):
        if self._one is None:
            raise DiagstratError("INVALID_ALGEBRA", "algebra has no recorded unit")
        return dict(self._one)

    def unit(self, i, c=1):
        return {i: c}

    def sigma(self, x):
        if self._sigma is None:
            raise DiagstratError("INVALID_ALGEBRA", "algebra has no anti-involution")
        out = {}
        for i, c in x.items():
            s = self._sigma_cache.get(i)
            if s is None:
                s = self._sigma(i)
                self._sigma_cache[i] = s
            _axpy(out, c, s)
        return out

    def table(self):
        """All structure constants, loading from or saving to the cache."""
        if self.key and not self._loaded:
            self._load()
        for i in range(self.dim):
            for j in range(self.dim):
                self.mult_basis(i, j)
        if self.key and not self._loaded:
            cache.cache_put(self.key, self._dump_mult())
            self._loaded = True
        return self._table

    def _dump_mult(self):
        fmt = self.field.fmt
        return [[[[k, fmt(c)] for k, c in sorted(self._table[(i, j)].items())]
                 for j in range(self.dim)] for i in range(self.dim)]

    def _load(self):
        data = cache.cache_get(self.key)
        self._loaded = True
        if data is None or len(data) != self.dim:
            self._loaded = False
            return
        parse = self.field.parse
        for i, row in enumerate(data):
            for j, entry in enumerate(row):
                self._table[(i, j)] = {int(k): parse(c) for k, c in entry}

    def left_matrix(self, x):
        """Dense matrix of left multiplication by x (column j = x * b_j)."""
        M = [[0] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.mul(x, {j: 1}).items():
                M[k][j] = c
        return M

    def associativity_failures(self, triples=None, samples=None, seed=0):
        """Basis triples (i, j, k) where (b_i b_j) b_k != b_i (b_j b_k)."""
        if triples is None:
            if samples is None:
                triples = itertools.product(range(self.dim), repeat=3)
            else:
                rng = random.Random(seed)
                triples = [tuple(rng.randrange(self.dim) for _ in range(3))
                           for _ in range(samples)]
        bad = []
        for i, j, k in triples:
            left = self.mul(self.mult_basis(i, j), {k: 1})
            right = self.mul({i: 1}, self.mult_basis(j, k))
            if left != right:
                bad.append((i, j, k))
        return bad

    def to_json(self, label=None):
        """Structure-constant dump {"basis": [...], "mult": [[[[k, c], ...]]]}."""
        from .diagram import diagram_to_json
        self.table()
        label = label or (lambda b: diagram_to_json(b) if isinstance(b, NormalDiagram) else b)
        return {"basis": [label(b) for b in self.basis], "mult": self._dump_mult()}


# constructions ---------------------------------------------------------------

def _vec_of(lc, index):
    out = {}
    for d, c in lc.items():
        out[index[d]] = c
    return out


def _diagram_algebra(basis, cfg, name, key):
    index = {b: i for i, b in enumerate(basis)}

    def mult(i, j):
        x, y = basis[i], basis[j]
        if y.top != x.bottom:
            return {}
        return _vec_of(compose_diagrams(x, y, cfg), index)

    def sig(i):
        return _vec_of(involution_sigma(basis[i], cfg).terms, index)

    return mult, sig, index


def endomorphism_algebra(a, cfg):
    """A_a = End(a) with the normal-diagram basis."""
    a = parse_object(a, cfg.flavor)
    basis = enumerate_basis(a, a, cfg)
    key = "endo|%s|%s" % (cfg.digest(), a)
    mult, sig, index = _diagram_algebra(basis, cfg, "A_%s" % (a,), key)
    one = {index[identity(a)]: 1}
    A = FiniteAlgebra(basis, mult, cfg.field, one=one, sigma=sig, name="A_%s" % (a,), key=key)
    A.objects = [a]
    A.cfg = cfg
    return A


def objects_up_to(cfg, N):
    if cfg.flavor == OB:
        out = []
        for n in range(N + 1):
            out.extend("".join(w) for w in itertools.product("ud", repeat=n))
        return out
    return list(range(N + 1))


def category_algebra(cfg, N, objects=None):
    """The truncated category algebra: all morphisms between objects <= N."""
    objs = objects if objects is not None else objects_up_to(cfg, N)
    basis = []
    for a in objs:
        for b in objs:
            basis.extend(enumerate_basis(a, b, cfg))
    key = "cat|%s|%s" % (cfg.digest(), ",".join(map(str, objs)))
    mult, sig, index = _diagram_algebra(basis, cfg, "A<=%d" % N, key)
    one = {index[identity(a)]: 1 for a in objs}
    A = FiniteAlgebra(basis, mult, cfg.field, one=one, sigma=sig, name="A<=%d" % N, key=key)
    A.objects = list(objs)
    A.cfg = cfg
    return A


class IdealBasis:
    """A two-sided ideal given by an upper set of objects and a spanning basis."""

    def __init__(self, upper, vectors, ambient):
        self.upper = frozenset(upper)
        self.ambient = ambient
        self.echelon = Echelon()
        self.vectors = []
        for v in vectors:
            if self.echelon.add(v):
                self.vectors.append(v)

    @property
    def dim(self):
        return len(self.vectors)

    def contains(self, v):
        return self.echelon.contains(v)

    def reduce(self, v):
        return self.echelon.reduce(v)[0]

    def support(self):
        """Ambient basis indices when the ideal is a coordinate subspace, else None."""
        idx = set()
        for v in self.vectors:
            if len(v) != 1:
                return None
            idx.update(v)
        return sorted(idx)


def _check_upper(upper, ambient_objects):
    classes = set(upper)
    for b in classes:
        for c in ambient_objects:
            if precedes(b, c) and c not in classes:
                raise DiagstratError("NOT_UPPER_SET",
                                     "%s is above %s but missing from the set" % (c, b))


def ideal_basis(A, upper, T, check="generators"):
    """Span of the products y.h.x whose middle object lies in ``upper``.

    ``T`` is a TriangularData covering the objects of A.  With
    ``check="full"`` closure is tested against every basis pair, with
    ``"generators"`` against the standard generators only.
    """
    cfg = A.cfg
    classes = {T.cls(o) for o in T.objects}
    upper = {T.cls(o) for o in upper}
    _check_upper(upper, classes)
    vecs = []
    objs = A.objects
    for a in objs:
        for c in objs:
            for y, h, x, mid in T.triples(a, c):
                if mid in upper:
                    lc = compose_chain(cfg, y, h, x)
                    vecs.append(_vec_of(lc.terms, A.index))
    J = IdealBasis(upper, vecs, A)
    if check:
        verify_ideal(A, J, full=(check == "full"))
    return J


def compose_chain(cfg, *ds):
    """ds[0] . ds[1] . ... as a LinearCombination."""
    from .diagram import compose
    out = ds[-1]
    for d in reversed(ds[:-1]):
        out = compose(d, out, cfg)
    if isinstance(out, NormalDiagram):
        out = LinearCombination.of(out)
    return out


def generator_vectors(A):
    """Standard generators of A (crossings, cap-cups, dots, identities)."""
    cfg = A.cfg
    gens = []
    for a in A.objects:
        n = size(a)
        gens.append(_vec_of({identity(a): 1}, A.index))
        if cfg.flavor == OB:
            continue
        for i in range(1, n):
            gens.append(_vec_of({crossing(a, i): 1}, A.index))
            gens.append(_vec_of(e_gen(a, i, cfg).terms, A.index))
        if n and cfg.m > 1:
            gens.append(_vec_of(dot(a, 1, cfg).terms, A.index))
    return gens


def verify_ideal(A, J, full=False):
    """Raise NOT_IDEAL unless J is closed under multiplication on both sides."""
    others = [{i: 1} for i in range(A.dim)] if full or A.cfg.flavor == OB else generator_vectors(A)
    for v in J.vectors:
        for g in others:
            for w in (A.mul(g, v), A.mul(v, g)):
                if w and not J.contains(w):
                    raise DiagstratError("NOT_IDEAL", "subspace is not closed under multiplication")
    return True


def quotient_algebra(A, J, check=True):
    """A / J on the basis of non-pivot classes."""
    if check:
        verify_ideal(A, J, full=A.dim <= 60)
    pivots = set(J.echelon.rows)
    keep = [i for i in range(A.dim) if i not in pivots]
    pos = {i: k for k, i in enumerate(keep)}

    def proj(v):
        return {pos[i]: c for i, c in J.reduce(v).items()}

    def mult(i, j):
        return proj(A.mult_basis(keep[i], keep[j]))

    one = proj(A.one()) if A._one is not None else None
    sig = (lambda i: proj(A.sigma({keep[i]: 1}))) if A._sigma is not None else None
    Q = FiniteAlgebra([A.basis[i] for i in keep], mult, A.field, one=one, sigma=sig,
                      name="%s/J" % A.name)
    Q.cfg = getattr(A, "cfg", None)
    Q.objects = getattr(A, "objects", [])
    Q.project = proj
    return Q


# the bar algebra ----------------------------------------------------------------

def hecke_basis(a, cfg):
    """H(a): the cap- and cup-free diagrams on a, i.e. dotted permutations."""
    full = through_class(identity(a))
    return [d for d in enumerate_basis(a, a, cfg) if through_class(d) == full]


def bar_algebra(a, cfg):
    """A_a modulo morphisms factoring through smaller objects, on the basis H(a)."""
    a = parse_object(a, cfg.flavor)
    basis = hecke_basis(a, cfg)
    index = {b: i for i, b in enumerate(basis)}
    full = through_class(identity(a))

    def keep(terms):
        return {index[d]: c for d, c in terms.items() if through_class(d) == full}

    def mult(i, j):
        return keep(compose_diagrams(basis[i], basis[j], cfg))

    def sig(i):
        return keep(involution_sigma(basis[i], cfg).terms)

    B = FiniteAlgebra(basis, mult, cfg.field, one={index[identity(a)]: 1}, sigma=sig,
                      name="Abar_%s" % (a,), key="bar|%s|%s" % (cfg.digest(), a))
    B.cfg = cfg
    B.objects = [a]
    B.project = keep
    B.a = a
    return B


def bar_element(B, lc):
    """Image in B of a LinearCombination of endomorphisms of B.a."""
    if isinstance(lc, NormalDiagram):
        lc = LinearCombination.of(lc)
    return B.project(lc.terms)


def verify_bar_ideal(a, cfg):
    """Check that capped diagrams of A_a span a two-sided ideal (generator test)."""
    A = endomorphism_algebra(a, cfg)
    full = through_class(identity(a))
    capped = [i for i, d in enumerate(A.basis) if through_class(d) != full]
    J = IdealBasis(set(), [{i: 1} for i in capped], A)
    verify_ideal(A, J)
    return {"a": a, "dim_A": A.dim, "dim_ideal": J.dim, "dim_quotient": A.dim - J.dim}


def hecke_generators(B):
    """Images of S_i and X_i in the bar algebra B."""
    a, cfg = B.a, B.cfg
    n = size(a)
    S = {i: bar_element(B, crossing(a, i)) for i in range(1, n)}
    X = {i: bar_element(B, dot(a, i, cfg)) for i in range(1, n + 1)}
    return S, X


def _poly(B, x, coeffs):
    """sum_k coeffs[k] * x^k in B."""
    out = {}
    pw = B.one()
    for c in coeffs:
        _axpy(out, c, pw)
        pw = B.mul(pw, x)
    return out


def _sub(x, y):
    out = dict(x)
    _axpy(out, -1, y)
    return out


def verify_hecke_relations(a, cfg):
    """Check the degenerate cyclotomic Hecke relations in the bar algebra."""
    from math import factorial
    B = bar_algebra(a, cfg)
    n = size(a)
    S, X = hecke_generators(B)
    one = B.one()
    rels = []

    def rec(name, lhs, rhs):
        r = _sub(lhs, rhs)
        rels.append({"relation": name, "residual_terms": len(r), "pass": not r})

    m = B.mul
    for i in range(1, n):
        rec("S%d^2=1" % i, m(S[i], S[i]), one)
        rec("X%d=S%dX%dS%d+S%d" % (i + 1, i, i, i, i), X[i + 1], _add(m(m(S[i], X[i]), S[i]), S[i]))
    for i in range(1, n - 1):
        rec("braid%d" % i, m(m(S[i], S[i + 1]), S[i]), m(m(S[i + 1], S[i]), S[i + 1]))
    for i in range(1, n):
        for j in range(i + 2, n):
            rec("S%dS%d=S%dS%d" % (i, j, j, i), m(S[i], S[j]), m(S[j], S[i]))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rec("X%dX%d=X%dX%d" % (i, j, j, i), m(X[i], X[j]), m(X[j], X[i]))
    for i in range(1, n):
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                rec("S%dX%d=X%dS%d" % (i, j, j, i), m(S[i], X[j]), m(X[j], S[i]))
    if n:
        coeffs = _fcoeffs(cfg)
        rec("f(X1)=0", _poly(B, X[1], coeffs), {})
    expected = cfg.m ** n * factorial(n)
    return {"a": a, "dim": B.dim, "expected_dim": expected, "relations": rels,
            "pass": B.dim == expected and all(r["pass"] for r in rels)}


def _add(x, y):
    out = dict(x)
    _axpy(out, 1, y)
    return out


def _fcoeffs(cfg):
    """Coefficients (constant first) of f(t) = prod (t - u_i)."""
    c = [1]
    for u in cfg.u:
        nc = [0] * (len(c) + 1)
        for k, a in enumerate(c):
            nc[k + 1] += a
            nc[k] -= u * a
        c = nc
    return c


# radical and forms ------------------------------------------------------------------

def trace_form(A):
    """Matrix of (x, y) -> Tr(left multiplication by xy) on the basis."""
    A.table()
    tau = [0] * A.dim
    for l in range(A.dim):
        t = 0
        for k in range(A.dim):
            t += A.mult_basis(l, k).get(k, 0)
        tau[l] = t
    T = [[0] * A.dim for _ in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            s = 0
            for l, c in A.mult_basis(i, j).items():
                if tau[l]:
                    s += c * tau[l]
            T[i][j] = s
    return T


def radical(A):
    """Basis of the Jacobson radical (characteristic zero only)."""
    if A.field.p:
        raise DiagstratError("UNSUPPORTED_FIELD",
                             "the trace-form radical needs characteristic zero")
    if A.dim == 0:
        return []
    T = trace_form(A)
    return [{i: c for i, c in enumerate(v) if c != 0} for v in nullspace(T, A.dim)]


def gram_matrix(M, form):
    """Exact Gram matrix of a bilinear form on a module basis.

    ``form`` is either a ready matrix or a callable (i, j) -> value.
    """
    n = M.dim if hasattr(M, "dim") else int(M)
    if callable(form):
        return [[form(i, j) for j in range(n)] for i in range(n)]
    G = [list(r) for r in form]
    if len(G) != n or any(len(r) != n for r in G):
        raise DiagstratError("SHAPE_MISMATCH", "form does not match the module")
    return G
