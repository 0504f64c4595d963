"""Fock space combinatorics and character-level functor identities.

The Fock space has basis v_lam over multipartitions.  e_i removes and f_i
adds an i-node.  The coideal generator is e~_i = e_i + f_{i#}, where e_i
vanishes unless i lies in some orbit and f_{i#} vanishes unless i# does.

Characters of standard modules are dicts from content words to
multiplicities.  The restriction E_i is read off the character one degree
up: the words of length n+1 ending in i, with the last letter dropped.
"""


from .combinatorics import (
    Multipartition, multipartitions, addable_removable, character_standard, node_content,
    wt,
)
from .errors import DiagstratError
from .linalg import rank, solve, transpose
from .params import Content, sharp, CK


def _key(l):
    return l.sort_key()


class FockVector:
    """Finite integer combination of multipartitions."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @staticmethod
    def basis(lam, m=None):
        return FockVector({Multipartition.parse(lam, m): 1})

    def __add__(self, o):
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out.get(k, 0) + v
        return FockVector(out)

    def __sub__(self, o):
        return self + o.scale(-1)

    def scale(self, c):
        return FockVector({k: c * v for k, v in self.terms.items()})

    def __eq__(self, o):
        return isinstance(o, FockVector) and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def items(self):
        return sorted(self.terms.items(), key=lambda t: _key(t[0]))

    def to_json(self):
        return [{"label": k.to_list(), "coeff": int(v)} for k, v in self.items()]

    def __repr__(self):
        return "FockVector(%s)" % ", ".join("%s*%s" % (v, k) for k, v in self.items())


def _lin(v, fn):
    out = {}
    for lam, c in v.terms.items():
        for mu in fn(lam):
            out[mu] = out.get(mu, 0) + c
    return FockVector(out)


def in_orbit(i):
    """i lies in the index set of the orbits (not an outside marker)."""
    return not i.outside


def e_act(i, v, cfg):
    i = cfg.canon(i)
    if not in_orbit(i):
        return FockVector()
    return _lin(v, lambda lam: addable_removable(lam, i, cfg)[1])


def f_act(i, v, cfg):
    i = cfg.canon(i)
    if not in_orbit(i):
        return FockVector()
    return _lin(v, lambda lam: addable_removable(lam, i, cfg)[0])


def resolve_content(x, cfg):
    """A Content from a Content, an "orbit:offset" label, or a field value.

    Values that are neither u_j + z nor -(u_j + z) raise CONTENT_OUTSIDE_I.
    """
    if isinstance(x, Content):
        return cfg.canon(x)
    if isinstance(x, str) and ":" in x:
        return cfg.canon(Content.from_label(x))
    if cfg.flavor == CK:
        raise DiagstratError("CONTENT_OUTSIDE_I", "quantum contents are given as orbit:offset labels")
    val = cfg.field.parse(x) if isinstance(x, str) else cfg.field(x)
    isint = cfg.field.is_integer
    for r in cfg.orbit_reps():
        base = cfg.u[r - 1]
        if isint(val - base):
            return cfg.content(r, cfg.field.to_int(val - base))
    for r in cfg.orbit_reps():
        base = cfg.u[r - 1]
        if isint(-val - base):
            c = cfg.content(r, cfg.field.to_int(-val - base))
            return sharp(c, cfg)
    raise DiagstratError("CONTENT_OUTSIDE_I", "%s lies outside I_0 and its sharp" % (x,))


def e_tilde_act(i, v, cfg):
    """e~_i v = e_i v + f_{i#} v."""
    i = resolve_content(i, cfg)
    return e_act(i, v, cfg) + f_act(sharp(i, cfg), v, cfg)


def touching_contents(lam, cfg):
    """Contents i for which e_i, f_i, e_{i#} or f_{i#} can act on lam."""
    lam = Multipartition.parse(lam, cfg.m)
    cs = set()
    for x in lam.addable() + lam.removable():
        c = node_content(x, cfg)
        cs.add(c)
        cs.add(sharp(c, cfg))
    return sorted(cs, key=lambda c: (c.outside, c.orbit, c.offset))


# Cartan data ------------------------------------------------------------------------

def cartan_entry(i, j, cfg):
    """a_ij for contents in orbits."""
    i, j = cfg.canon(i), cfg.canon(j)
    if i == j:
        return 2
    if i.orbit != j.orbit:
        return 0
    e = cfg.e
    up = cfg.content(i.orbit, i.offset + 1)
    down = cfg.content(i.orbit, i.offset - 1)
    if e == 2:
        return -2 if j == up else 0
    return -1 if j in (up, down) else 0


def weight_pairing(i, lam, cfg):
    """<h_i, wt(lam)> = <h_i, omega_u> - sum over nodes of a_{i, c(x)}."""
    i = cfg.canon(i)
    top = sum(1 for j in range(1, cfg.m + 1) if cfg.content(j, 0) == i)
    return top - sum(cnt * cartan_entry(i, c, cfg) for c, cnt in wt(lam, cfg).items())


def verify_cartan(cfg, max_size=3):
    """(e_i f_i - f_i e_i) v_lam = <h_i, wt(lam)> v_lam, and e_i f_j = f_j e_i when a_ij = 0."""
    bad = []
    checked = 0
    for n in range(max_size + 1):
        for lam in multipartitions(n, cfg.m):
            v = FockVector({lam: 1})
            cs = [c for c in touching_contents(lam, cfg) if in_orbit(c)]
            for i in cs:
                lhs = e_act(i, f_act(i, v, cfg), cfg) - f_act(i, e_act(i, v, cfg), cfg)
                rhs = v.scale(weight_pairing(i, lam, cfg))
                checked += 1
                if lhs != rhs:
                    bad.append([str(lam), i.label(), "diag"])
                for j in cs:
                    if j != i and cartan_entry(i, j, cfg) == 0 and cartan_entry(j, i, cfg) == 0:
                        checked += 1
                        if e_act(i, f_act(j, v, cfg), cfg) != f_act(j, e_act(i, v, cfg), cfg):
                            bad.append([str(lam), i.label(), j.label()])
    return {"checked": checked, "failures": bad, "pass": not bad}


# highest weight submodule ------------------------------------------------------------

def generate_highest_weight(cfg, degree=6):
    """Spans of f-monomials applied to v_empty, by degree and weight fiber."""
    level = [FockVector.basis(Multipartition.empty(cfg.m))]
    out = []
    for d in range(degree + 1):
        if d:
            nxt = []
            seen = set()
            for v in level:
                cs = set()
                for lam in v.terms:
                    for x in lam.addable():
                        cs.add(node_content(x, cfg))
                for i in sorted(cs, key=lambda c: (c.orbit, c.offset)):
                    w = f_act(i, v, cfg)
                    if w and w not in seen:
                        seen.add(w)
                        nxt.append(w)
            level = nxt
        fibers = {}
        for v in level:
            lam0 = next(iter(v.terms))
            k = _wt_key(lam0, cfg)
            fibers.setdefault(k, []).append(v)
        rows = []
        basis = []
        for k in sorted(fibers):
            vecs = fibers[k]
            labels = sorted({l for v in vecs for l in v.terms}, key=_key)
            M = [[v.terms.get(l, 0) for l in labels] for v in vecs]
            r = rank(M)
            rows.append({"weight": k, "dim": r, "labels": len(labels)})
            # keep an independent subset for the next degree
            picked = []
            for v in vecs:
                trial = picked + [v]
                if rank([[w.terms.get(l, 0) for l in labels] for w in trial]) == len(trial):
                    picked.append(v)
            basis.extend(picked)
        level = basis
        out.append({"degree": d, "dim": len(basis), "fibers": rows})
    return out


def _wt_key(lam, cfg):
    return ";".join("%s=%d" % (c.label(), n)
                    for c, n in sorted(wt(lam, cfg).items(), key=lambda t: (t[0].orbit, t[0].offset)))


def in_highest_weight_span(vecs, cfg, degree):
    """True when every vector lies in the generated span of its degree."""
    spans = {}
    for v in vecs:
        if not v:
            continue
        d = next(iter(v.terms)).size()
        if d not in spans:
            spans[d] = _span_at(cfg, d)
        labels, rows = spans[d]
        extra = sorted(set(v.terms) - set(labels), key=_key)
        if extra:
            return False
        M = [list(r) for r in rows]
        vec = [v.terms.get(l, 0) for l in labels]
        if rank(M + [vec]) != rank(M):
            return False
    return True


def _span_at(cfg, d):
    level = [FockVector.basis(Multipartition.empty(cfg.m))]
    for _ in range(d):
        nxt = []
        for v in level:
            cs = {node_content(x, cfg) for lam in v.terms for x in lam.addable()}
            for i in cs:
                w = f_act(i, v, cfg)
                if w:
                    nxt.append(w)
        level = nxt
    labels = sorted({l for v in level for l in v.terms}, key=_key)
    return labels, [[v.terms.get(l, 0) for l in labels] for v in level]


# characters and the short exact sequence --------------------------------------------

_MODULES = {}


def _module(lam, cfg, N):
    from .stratification import standard_module
    key = (cfg, lam, N)
    M = _MODULES.get(key)
    if M is None:
        M = standard_module(lam, cfg, N)
        _MODULES[key] = M
    return M


def module_character(lam, n, cfg, N=None, source="module"):
    """ch of Delta(lam) on words of length n, from the module or from paths."""
    lam = Multipartition.parse(lam, cfg.m)
    if source == "paths" or cfg.flavor != "CB":
        return character_standard(lam, n, cfg)
    N = cfg.N if N is None else N
    if n > N:
        raise DiagstratError("INSUFFICIENT_TRUNCATION", "length %d beyond N=%d" % (n, N))
    if n < lam.size() or (n - lam.size()) % 2:
        return {}
    return _module(lam, cfg, N).jm_character(n)


def restrict_character(ch, i):
    """Words ending in i with the last letter dropped."""
    out = {}
    for w, c in ch.items():
        if w and w[-1] == i:
            out[w[:-1]] = out.get(w[:-1], 0) + c
    return out


def _add_ch(a, b, s=1):
    out = dict(a)
    for w, c in b.items():
        out[w] = out.get(w, 0) + s * c
        if out[w] == 0:
            del out[w]
    return out


def verify_ses_character(lam, i, cfg, N=None, source="module"):
    """ch E_i Delta(lam) = sum over R_{i,lam} + sum over A_{i#,lam}, at every length that fits."""
    N = cfg.N if N is None else int(N)
    lam = Multipartition.parse(lam, cfg.m)
    i = resolve_content(i, cfg)
    if lam.size() > N - 1:
        raise DiagstratError("INSUFFICIENT_TRUNCATION",
                             "layer %d needs N >= %d" % (lam.size(), lam.size() + 1))
    R = addable_removable(lam, i, cfg)[1] if in_orbit(i) else []
    ish = sharp(i, cfg)
    A = addable_removable(lam, ish, cfg)[0] if in_orbit(ish) else []
    rows = []
    for n in range(0, N):
        lhs = restrict_character(module_character(lam, n + 1, cfg, N, source), i)
        rhs = {}
        for mu in R + A:
            rhs = _add_ch(rhs, module_character(mu, n, cfg, N, source))
        rows.append({"length": n, "lhs_total": sum(lhs.values()), "rhs_total": sum(rhs.values()),
                     "pass": lhs == rhs})
    return {"lambda": lam.to_list(), "i": i.label(), "N": N,
            "removed": [m.to_list() for m in R], "added": [m.to_list() for m in A],
            "lengths": rows, "pass": all(r["pass"] for r in rows)}


def restriction_in_standards(lam, i, cfg, N=None, source="module"):
    """[E_i Delta(lam)] as an integer combination of [Delta(mu)], measured from characters.

    Candidates are all mu with |mu| = |lam| +- 1 that fit below N; the
    coefficients solve the character identity at every length up to N - 1.
    """
    N = cfg.N if N is None else int(N)
    lam = Multipartition.parse(lam, cfg.m)
    i = resolve_content(i, cfg)
    k = lam.size()
    cands = [mu for s in (k - 1, k + 1) if 0 <= s <= N - 1 for mu in multipartitions(s, cfg.m)]
    lengths = range(0, N)
    target = {}
    for n in lengths:
        for w, c in restrict_character(module_character(lam, n + 1, cfg, N, source), i).items():
            target[w] = c
    chars = [{} for _ in cands]
    for idx, mu in enumerate(cands):
        for n in lengths:
            chars[idx].update(character_standard(mu, n, cfg))
    words = sorted(set(target) | {w for ch in chars for w in ch},
                   key=lambda w: (len(w), [(c.outside, c.orbit, c.offset) for c in w]))
    if not cands:
        if target:
            raise DiagstratError("INSUFFICIENT_TRUNCATION", "no candidates below N")
        return FockVector()
    A = [[ch.get(w, 0) for ch in chars] for w in words]
    b = [target.get(w, 0) for w in words]
    if rank(transpose(A)) != len(cands):
        raise DiagstratError("INSUFFICIENT_TRUNCATION",
                             "standard characters are not independent below N=%d" % N)
    x = solve(A, b)
    if x is None:
        raise DiagstratError("CHARACTER_FAILURE", "restriction is not a combination of standards")
    return FockVector({mu: int(v) for mu, v in zip(cands, x) if v})


# phi sharp ------------------------------------------------------------------------------

def phi_sharp(lam, tables):
    """sum_mu [S(mu) : D(lam)] v_mu from the Hecke decomposition table of layer |lam|."""
    lam = Multipartition.parse(lam)
    T = tables.get(lam.size())
    if T is None:
        raise DiagstratError("MISSING_TABLE", "no decomposition table for layer %d" % lam.size())
    return FockVector({mu: T.get(mu, lam) for mu in T.labels})


def phi_sharp_vector(v, tables):
    out = FockVector()
    for lam, c in v.terms.items():
        out = out + phi_sharp(lam, tables).scale(c)
    return out


def verify_intertwining(lam, i, cfg, tables, N=None):
    """phi#(e~_i [Delta(lam)]) against (e_i + f_{i#}) phi#([Delta(lam)])."""
    lam = Multipartition.parse(lam, cfg.m)
    i = resolve_content(i, cfg)
    expansion = restriction_in_standards(lam, i, cfg, N)
    left = phi_sharp_vector(expansion, tables)
    right = e_tilde_act(i, phi_sharp(lam, tables), cfg)
    return {"lambda": lam.to_list(), "i": i.label(), "expansion": expansion.to_json(),
            "lhs": left.to_json(), "rhs": right.to_json(), "pass": left == right}
