"""Multipartitions, contents, weights, paths and good nodes.

Contents are symbolic: a node in component j, row r, column c has content
``u_j + (c - r)``, stored as a canonical ``Content`` (orbit representative
plus offset, reduced mod e when e is finite).  Nothing here evaluates u.
"""

import itertools
from collections import Counter

from .errors import DiagstratError
from .params import sharp


class Multipartition:
    """An m-tuple of partitions; immutable and hashable."""

    __slots__ = ("components", "_hash")

    def __init__(self, components):
        comps = []
        for p in components:
            p = tuple(int(x) for x in p)
            if any(x <= 0 for x in p) and any(x < 0 for x in p):
                raise DiagstratError("INVALID_PARTITION", "negative part in %r" % (p,))
            p = tuple(x for x in p if x > 0)
            if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
                raise DiagstratError("INVALID_PARTITION", "parts must weakly decrease: %r" % (p,))
            comps.append(p)
        self.components = tuple(comps)
        self._hash = hash(self.components)

    @staticmethod
    def empty(m):
        return Multipartition([()] * m)

    @staticmethod
    def parse(obj, m=None):
        """Accept [[2,1],[]], a Multipartition, or a bare partition for m = 1."""
        if isinstance(obj, Multipartition):
            return obj
        if isinstance(obj, str):
            import json
            obj = json.loads(obj)
        obj = list(obj)
        if obj and all(isinstance(x, int) for x in obj):
            obj = [obj]
        if m is not None and len(obj) != m:
            if not obj and m:
                obj = [[]] * m
            else:
                raise DiagstratError("UNKNOWN_LABEL", "expected %d components" % m)
        return Multipartition(obj)

    @property
    def m(self):
        return len(self.components)

    def size(self):
        return sum(sum(p) for p in self.components)

    __len__ = size

    def __eq__(self, o):
        return isinstance(o, Multipartition) and self.components == o.components

    def __hash__(self):
        return self._hash

    def __lt__(self, o):
        return self.sort_key() < o.sort_key()

    def sort_key(self):
        return (self.size(), tuple(tuple(-x for x in p) for p in self.components))

    def to_list(self):
        return [list(p) for p in self.components]

    def __repr__(self):
        return "Multipartition(%s)" % self.to_list()

    def __str__(self):
        return "(" + ", ".join("(" + ",".join(map(str, p)) + ")" if p else "-" for p in self.components) + ")"

    def nodes(self):
        """All nodes (j, r, c), 1-based, components left to right, rows top to bottom."""
        out = []
        for j, p in enumerate(self.components, 1):
            for r, row in enumerate(p, 1):
                for c in range(1, row + 1):
                    out.append((j, r, c))
        return out

    def addable(self):
        out = []
        for j, p in enumerate(self.components, 1):
            for r in range(1, len(p) + 2):
                cur = p[r - 1] if r <= len(p) else 0
                above = p[r - 2] if r >= 2 else None
                if above is None or cur < above:
                    out.append((j, r, cur + 1))
        return out

    def removable(self):
        out = []
        for j, p in enumerate(self.components, 1):
            for r, row in enumerate(p, 1):
                below = p[r] if r < len(p) else 0
                if row > below:
                    out.append((j, r, row))
        return out

    def add(self, node):
        j, r, c = node
        comps = [list(p) for p in self.components]
        p = comps[j - 1]
        if r == len(p) + 1:
            p.append(1)
        else:
            p[r - 1] += 1
        return Multipartition(comps)

    def remove(self, node):
        j, r, c = node
        comps = [list(p) for p in self.components]
        comps[j - 1][r - 1] -= 1
        return Multipartition(comps)

    def conjugate_component(self, j):
        p = self.components[j - 1]
        return tuple(sum(1 for x in p if x >= k) for k in range(1, (p[0] if p else 0) + 1))


def node_content(node, cfg):
    j, r, c = node
    return cfg.content(j, c - r)


def partitions(n, maxpart=None):
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def multipartitions(n, m):
    """All m-multipartitions of n, sorted."""
    out = []
    for comp in itertools.product(range(n + 1), repeat=m):
        if sum(comp) != n:
            continue
        for parts in itertools.product(*(list(partitions(k)) for k in comp)):
            out.append(Multipartition(parts))
    return sorted(set(out), key=lambda l: l.sort_key())


def dominates(lam, mu):
    """lam dominates-or-equals mu (component-then-row partial sums)."""
    if lam.size() != mu.size():
        return False
    a = b = 0
    for p, q in zip(lam.components, mu.components):
        for k in range(max(len(p), len(q))):
            a += p[k] if k < len(p) else 0
            b += q[k] if k < len(q) else 0
            if a < b:
                return False
        # the partial sums at component boundaries are compared by the loop above
    return True


def standard_tableaux(lam):
    """Standard lam-tableaux as dicts node -> entry (entries 1..n)."""
    n = lam.size()
    out = []

    def rec(cur, filled, k):
        if k > n:
            out.append(dict(filled))
            return
        for node in cur.addable():
            j, r, c = node
            if node in target:
                filled[node] = k
                rec(cur.add(node), filled, k + 1)
                del filled[node]

    target = set(lam.nodes())
    rec(Multipartition.empty(lam.m), {}, 1)
    out.sort(key=lambda t: tuple(t[x] for x in sorted(t)))
    # put the row-reading tableau first
    first = initial_tableau(lam)
    out.remove(first)
    return [first] + out


def initial_tableau(lam):
    """Entries 1..n filled along rows, components left to right."""
    return {node: k for k, node in enumerate(lam.nodes(), 1)}


# addable / removable sets and weights ------------------------------------

def addable_removable(lam, i, cfg):
    """(multipartitions from adding an i-node, multipartitions from removing one)."""
    i = cfg.canon(i)
    A = [lam.add(x) for x in lam.addable() if node_content(x, cfg) == i]
    R = [lam.remove(x) for x in lam.removable() if node_content(x, cfg) == i]
    return sorted(A, key=Multipartition.sort_key), sorted(R, key=Multipartition.sort_key)


def wt(lam, cfg):
    """The content multiset {c(x) : x in lam} as a Counter of Contents."""
    return Counter(node_content(x, cfg) for x in lam.nodes())


def _sharp_pairs(cfg, contents):
    out = {}
    for c in contents:
        s = sharp(c, cfg)
        out[c] = None if s.outside else s
    return out


def wt_bar_key(lam, cfg):
    """Canonical string for wt(lam) modulo the lattice spanned by a_i + a_{i#}."""
    w = wt(lam, cfg)
    sh = _sharp_pairs(cfg, list(w))
    parts = []
    seen = set()
    for c in sorted(w, key=lambda x: (x.orbit, x.offset)):
        if c in seen:
            continue
        s = sh[c]
        if s is None:
            parts.append("%s=%d" % (c.label(), w[c]))
            seen.add(c)
        elif s == c:
            parts.append("%s=%d%%2" % (c.label(), w[c] % 2))
            seen.add(c)
        else:
            a, b = sorted([c, s], key=lambda x: (x.orbit, x.offset))
            seen.update((a, b))
            d = w.get(a, 0) - w.get(b, 0)
            if d:
                parts.append("%s-%s=%d" % (a.label(), b.label(), d))
    return ";".join(parts) or "0"


def wt_bar_eq(lam, mu, cfg):
    return wt_bar_key(lam, cfg) == wt_bar_key(mu, cfg)


# paths and characters ------------------------------------------------------------

def path_steps(lam, cfg):
    """(colour, next multipartition) for every edge leaving lam."""
    out = []
    for x in lam.addable():
        out.append((node_content(x, cfg), lam.add(x)))
    for x in lam.removable():
        out.append((sharp(node_content(x, cfg), cfg), lam.remove(x)))
    return out


def character_standard(lam, n, cfg):
    """Map content word (tuple of Contents) -> number of length-n paths from the empty multipartition to lam."""
    lam = Multipartition.parse(lam, cfg.m)
    if n < lam.size() or (n - lam.size()) % 2:
        return {}
    layer = {(Multipartition.empty(cfg.m), ()): 1}
    for step in range(n):
        nxt = {}
        remaining = n - step - 1
        for (mu, word), cnt in layer.items():
            for colour, nu in path_steps(mu, cfg):
                # prune states that can no longer reach lam
                if abs(nu.size() - lam.size()) > remaining:
                    continue
                key = (nu, word + (colour,))
                nxt[key] = nxt.get(key, 0) + cnt
        layer = nxt
    out = {}
    for (mu, word), cnt in layer.items():
        if mu == lam:
            out[word] = out.get(word, 0) + cnt
    return out


def count_paths(lam, content_seq, cfg):
    lam = Multipartition.parse(lam, cfg.m)
    word = tuple(cfg.canon(c) for c in content_seq)
    return character_standard(lam, len(word), cfg).get(word, 0)


def word_label(word):
    return [c.label() for c in word]


# crystal ------------------------------------------------------------------------

# Reading order for i-signatures and the cancelled pattern.  Nodes are read
# components left to right and rows top to bottom; an adjacent (removable,
# addable) pair cancels and the good node is the leftmost surviving removable.
READING = "top-down"
CANCEL = "RA"


def _reading_key(node):
    j, r, c = node
    return (j, r)


def signature(lam, i, cfg, reading=READING, cancel=CANCEL):
    """The i-signature as a list of ('A'|'R', node) in reading order."""
    i = cfg.canon(i)
    sig = [("A", x) for x in lam.addable() if node_content(x, cfg) == i]
    sig += [("R", x) for x in lam.removable() if node_content(x, cfg) == i]
    sig.sort(key=lambda t: _reading_key(t[1]), reverse=(reading == "bottom-up"))
    return sig


def reduce_signature(sig, cancel=CANCEL):
    stack = []
    for t in sig:
        if stack and stack[-1][0] == cancel[0] and t[0] == cancel[1]:
            stack.pop()
        else:
            stack.append(t)
    return stack


def good_node_data(lam, i, cfg, reading=READING, cancel=CANCEL):
    """(reduced signature, good removable node or None)."""
    lam = Multipartition.parse(lam, cfg.m)
    red = reduce_signature(signature(lam, i, cfg, reading, cancel), cancel)
    good = next((x for s, x in red if s == "R"), None)
    return red, good


def _residues(lam, cfg):
    return sorted({node_content(x, cfg) for x in lam.removable()}, key=lambda c: (c.orbit, c.offset))


def is_restricted(lam, cfg, reading=READING, cancel=CANCEL):
    """True when lam reduces to the empty multipartition by removing good nodes."""
    return _restricted(Multipartition.parse(lam, cfg.m), cfg, reading, cancel)


def _restricted(lam, cfg, reading, cancel, memo=None):
    if memo is None:
        memo = {}
    if lam.size() == 0:
        return True
    if lam in memo:
        return memo[lam]
    res = False
    for i in _residues(lam, cfg):
        _, good = good_node_data(lam, i, cfg, reading, cancel)
        if good is not None and _restricted(lam.remove(good), cfg, reading, cancel, memo):
            res = True
            break
    memo[lam] = res
    return res


def enumerate_restricted(n, cfg, reading=READING, cancel=CANCEL):
    return [l for l in multipartitions(n, cfg.m) if is_restricted(l, cfg, reading, cancel)]


def level_one_restricted(p, e):
    """Direct definition at level one: consecutive parts differ by less than e."""
    if e is None:
        return True
    parts = list(p) + [0]
    return all(parts[k] - parts[k + 1] < e for k in range(len(parts) - 1))
