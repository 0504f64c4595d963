"""Ground field, category parameters and content bookkeeping.

Everything here is exact: rationals are ``fractions.Fraction`` and prime
field residues are ``GF`` instances.  Contents are kept symbolic as
(orbit, offset) pairs and only evaluated when a concrete scalar is needed.
"""

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DiagstratError

CB = "CB"
OB = "OB"
CK = "CK"

_FLAVORS = {
    "CB": CB, "CYCLOTOMIC_BRAUER": CB,
    "OB": OB, "CYCLOTOMIC_ORIENTED_BRAUER": OB,
    "CK": CK, "CYCLOTOMIC_KAUFFMAN": CK, "QUANTUM": CK,
}


class GF:
    """Residue class modulo a prime p."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.p = p
        if isinstance(v, Fraction):
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = v % p

    def _co(self, o):
        if isinstance(o, GF):
            return o.v
        if isinstance(o, int):
            return o % self.p
        if isinstance(o, Fraction):
            return o.numerator * pow(o.denominator, -1, self.p) % self.p
        return None

    def __add__(self, o):
        c = self._co(o)
        return NotImplemented if c is None else GF(self.v + c, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        c = self._co(o)
        return NotImplemented if c is None else GF(self.v - c, self.p)

    def __rsub__(self, o):
        c = self._co(o)
        return NotImplemented if c is None else GF(c - self.v, self.p)

    def __mul__(self, o):
        c = self._co(o)
        return NotImplemented if c is None else GF(self.v * c, self.p)

    __rmul__ = __mul__

    def __truediv__(self, o):
        c = self._co(o)
        if c is None:
            return NotImplemented
        if c == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GF(self.v * pow(c, -1, self.p), self.p)

    def __rtruediv__(self, o):
        c = self._co(o)
        if c is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GF(c * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return GF(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if k < 0:
            return GF(pow(pow(self.v, -1, self.p), -k, self.p), self.p)
        return GF(pow(self.v, k, self.p), self.p)

    def __eq__(self, o):
        c = self._co(o)
        return c is not None and c == self.v

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "GF(%d, %d)" % (self.v, self.p)


class Field:
    """The prime field Q (p = 0) or GF(p)."""

    def __init__(self, p=0):
        if p != 0 and not _is_prime(p):
            raise DiagstratError("INVALID_CHAR", "characteristic %d is not prime" % p)
        self.p = p
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        if self.p == 0:
            if isinstance(x, GF):
                raise TypeError("cannot coerce GF element into Q")
            return Fraction(x)
        if isinstance(x, GF):
            if x.p != self.p:
                raise TypeError("mixed characteristics")
            return x
        return GF(Fraction(x), self.p)

    def parse(self, s):
        s = str(s).strip()
        try:
            q = Fraction(s)
        except ValueError:
            raise DiagstratError("INVALID_CONFIG", "not a rational number: %r" % s)
        return self(q)

    def fmt(self, x):
        x = self(x)
        if self.p:
            return str(x.v)
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)

    def is_integer(self, x):
        """True when x lies in the prime subring Z.1."""
        if self.p:
            return True
        return Fraction(x).denominator == 1

    def to_int(self, x):
        """Integer representative of an element of Z.1."""
        if self.p:
            return self(x).v
        return Fraction(x).numerator

    def __eq__(self, o):
        return isinstance(o, Field) and o.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(%d)" % self.p


def _is_prime(p):
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class QParam:
    """The symbolic quantum parameter coeff * q**exp."""

    coeff: Fraction
    exp: int

    def __mul__(self, o):
        return QParam(self.coeff * o.coeff, self.exp + o.exp)

    def inverse(self):
        return QParam(1 / self.coeff, -self.exp)

    def __str__(self):
        c = "" if self.coeff == 1 else "%s*" % self.coeff
        return "%sq^%d" % (c, self.exp)


_QRE = re.compile(r"^\s*(?:([0-9/+-]+)\s*\*?\s*)?q(?:\^\s*\(?\s*([+-]?\d+)\s*\)?)?\s*$")


def parse_qparam(s):
    if isinstance(s, QParam):
        return s
    s = str(s).strip()
    mt = _QRE.match(s)
    if mt:
        c = Fraction(mt.group(1)) if mt.group(1) not in (None, "", "+") else Fraction(1)
        if mt.group(1) == "-":
            c = Fraction(-1)
        return QParam(c, int(mt.group(2)) if mt.group(2) is not None else 1)
    try:
        return QParam(Fraction(s), 0)
    except ValueError:
        raise DiagstratError("INVALID_CONFIG", "not a quantum parameter: %r" % s)


@dataclass(frozen=True, order=True)
class Content:
    """u_orbit + offset (or its negative when ``outside`` is set).

    Canonical contents name their orbit by the orbit representative
    (smallest 1-based index).  ``outside`` marks a sharp image that falls
    outside every declared orbit; it evaluates to -(u_orbit + offset).
    """

    orbit: int
    offset: int
    outside: bool = False

    def label(self):
        s = "%d:%d" % (self.orbit, self.offset)
        return "-" + s if self.outside else s

    @staticmethod
    def from_label(s):
        s = s.strip()
        out = s.startswith("-")
        if out:
            s = s[1:]
        a, b = s.split(":")
        return Content(int(a), int(b), out)


@dataclass(frozen=True)
class CategoryConfig:
    flavor: str
    m: int
    u: tuple
    char_p: int = 0
    bubbles: tuple = None
    bubbles_ccw: tuple = None
    orbits: tuple = ()
    rep: tuple = ()
    offsets: tuple = ()
    e: int = None
    N: int = 4
    field: Field = field(default=None, compare=False, hash=False, repr=False)

    @property
    def quantum(self):
        return self.flavor == CK

    @property
    def e_or_infinity(self):
        return self.e

    def to_raw(self):
        fx = self.field.fmt
        raw = {"flavor": self.flavor, "m": self.m, "char_p": self.char_p,
               "truncation_N": self.N}
        if self.quantum:
            raw["u"] = [str(x) for x in self.u]
            raw["e"] = self.e
        else:
            raw["u"] = [fx(x) for x in self.u]
        if self.bubbles is not None:
            if self.flavor == OB:
                raw["bubbles"] = {"cw": [fx(x) for x in self.bubbles]}
                if self.bubbles_ccw is not None:
                    raw["bubbles"]["ccw"] = [fx(x) for x in self.bubbles_ccw]
            else:
                raw["bubbles"] = [fx(x) for x in self.bubbles]
        return raw

    def digest(self):
        blob = json.dumps(self.to_raw(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def replace(self, **kw):
        raw = self.to_raw()
        raw.update(kw)
        return make_config(raw)

    # contents -------------------------------------------------------

    def content(self, j, z, outside=False):
        """Canonical content u_j + z for a 1-based parameter index j."""
        r = self.rep[j - 1]
        off = z + self.offsets[j - 1]
        if self.e:
            off %= self.e
        return Content(r, off, outside)

    def canon(self, c):
        return self.content(c.orbit, c.offset, c.outside)

    def content_value(self, c):
        """Evaluate a content to a field element (or QParam)."""
        if self.quantum:
            v = QParam(self.u[c.orbit - 1].coeff, self.u[c.orbit - 1].exp + 2 * c.offset)
            return v.inverse() if c.outside else v
        v = self.u[c.orbit - 1] + c.offset
        return -v if c.outside else v

    def orbit_reps(self):
        return tuple(sorted(set(self.rep)))


def _frac_or_gf(fld, x):
    return fld(x)


def make_config(raw):
    """Validate a raw configuration mapping and derive orbit data."""
    if not isinstance(raw, dict):
        raise DiagstratError("INVALID_CONFIG", "configuration must be a mapping")
    fl = str(raw.get("flavor", "CB")).upper()
    if fl not in _FLAVORS:
        raise DiagstratError("INVALID_CONFIG", "unknown flavor %r" % raw.get("flavor"))
    flavor = _FLAVORS[fl]
    if "m" not in raw:
        raise DiagstratError("INVALID_CONFIG", "missing field m")
    m = int(raw["m"])
    if m < 1:
        raise DiagstratError("INVALID_CONFIG", "m must be positive")
    p = int(raw.get("char_p", raw.get("p", 0)) or 0)
    if p != 0 and not _is_prime(p):
        raise DiagstratError("INVALID_CHAR", "characteristic %d is not prime" % p)
    if p == 2 and flavor in (CB, CK):
        raise DiagstratError("INVALID_CHAR", "characteristic 2 is excluded for the Brauer flavor")
    fld = Field(p)
    N = int(raw.get("truncation_N", raw.get("N", 4)))
    e_raw = raw.get("e")
    if flavor == CK:
        e = None if e_raw in (None, "inf", "infinity", "oo", 0) else int(e_raw)
        if e is not None and e < 2:
            raise DiagstratError("INVALID_CONFIG", "e must be at least 2")
    else:
        e = p or None
    if e_raw not in (None, "inf", "infinity", "oo", 0) and flavor != CK and int(e_raw) != p:
        raise DiagstratError("INVALID_CONFIG", "e is the characteristic for degenerate flavors")

    u_raw = raw.get("u")
    b_raw = raw.get("bubbles")
    bubbles = None
    bubbles_ccw = None
    if flavor == CK:
        if u_raw is None or len(u_raw) != m:
            raise DiagstratError("LENGTH_MISMATCH", "u must have length m")
        u = tuple(parse_qparam(x) for x in u_raw)
    else:
        if b_raw is not None:
            if flavor == OB:
                if isinstance(b_raw, dict):
                    cw = b_raw.get("cw")
                    ccw = b_raw.get("ccw")
                else:
                    cw, ccw = b_raw, None
                if cw is None or len(cw) != m:
                    raise DiagstratError("LENGTH_MISMATCH", "clockwise bubbles must have length m")
                bubbles = tuple(fld(x) for x in cw)
                if ccw is not None:
                    if len(ccw) != m:
                        raise DiagstratError("LENGTH_MISMATCH", "counterclockwise bubbles must have length m")
                    bubbles_ccw = tuple(fld(x) for x in ccw)
            else:
                if isinstance(b_raw, dict) or len(b_raw) != m:
                    raise DiagstratError("LENGTH_MISMATCH", "bubbles must have length m")
                bubbles = tuple(fld(x) for x in b_raw)
        if u_raw is None:
            if flavor == CB and m == 1 and bubbles is not None:
                # the only admissible loop value at level one is 1 + 2u
                u = ((bubbles[0] - 1) / fld(2),)
            else:
                raise DiagstratError("LENGTH_MISMATCH", "u must have length m")
        else:
            if len(u_raw) != m:
                raise DiagstratError("LENGTH_MISMATCH", "u must have length m")
            u = tuple(fld(x) for x in u_raw)
        if flavor == CB and m == 1:
            admissible = 1 + 2 * u[0]
            if bubbles is None:
                bubbles = (admissible,)
            elif bubbles[0] != admissible:
                raise DiagstratError(
                    "INADMISSIBLE",
                    "at m=1 the loop value must equal 1+2u = %s" % fld.fmt(admissible))

    rep, offsets = _derive_orbits(flavor, u, fld, e)
    declared = raw.get("orbits", raw.get("orbit_data"))
    if declared is not None:
        mine = sorted(sorted(i + 1 for i in range(m) if rep[i] == r) for r in set(rep))
        theirs = sorted(sorted(int(i) for i in blk) for blk in declared)
        if mine != theirs:
            raise DiagstratError("INCONSISTENT_ORBITS",
                                 "declared orbits %s do not match u (%s)" % (theirs, mine))
    orbits = tuple(tuple(i + 1 for i in range(m) if rep[i] == r) for r in sorted(set(rep)))
    return CategoryConfig(flavor=flavor, m=m, u=u, char_p=p, bubbles=bubbles,
                          bubbles_ccw=bubbles_ccw, orbits=orbits, rep=tuple(rep),
                          offsets=tuple(offsets), e=e, N=N, field=fld)


def _derive_orbits(flavor, u, fld, e):
    m = len(u)
    rep = [0] * m
    offsets = [0] * m
    for i in range(m):
        rep[i] = i + 1
        for j in range(i):
            if rep[j] != j + 1:
                continue
            z = _offset(flavor, u[i], u[j], fld)
            if z is not None:
                rep[i] = j + 1
                offsets[i] = z % e if e else z
                break
    return rep, offsets


def _offset(flavor, a, b, fld):
    """Integer z with a = b + z (degenerate) or a = b q^(2z) (quantum), else None."""
    if flavor == CK:
        if a.coeff != b.coeff or (a.exp - b.exp) % 2:
            return None
        return (a.exp - b.exp) // 2
    d = a - b
    return fld.to_int(d) if fld.is_integer(d) else None


def content_eq(c1, c2, cfg):
    return cfg.canon(c1) == cfg.canon(c2)


def sharp(c, cfg):
    """The content of -(value) (degenerate) or value**-1 (quantum)."""
    c = cfg.canon(c)
    if c.outside:
        return Content(c.orbit, c.offset, False)
    v = cfg.content_value(c)
    for r in cfg.orbit_reps():
        if cfg.quantum:
            w = v.inverse()
            z = _offset(CK, w, cfg.u[r - 1], cfg.field)
        else:
            z = _offset(cfg.flavor, -v, cfg.u[r - 1], cfg.field)
        if z is not None:
            return cfg.content(r, z)
    return Content(c.orbit, c.offset, True)


def semisimple_predicate(cfg):
    u, m = cfg.u, cfg.m
    if cfg.quantum:
        if cfg.e is not None:
            return False
        for i in range(m):
            for j in range(m):
                if _in_q2z(u[i] * u[j]):
                    return False
        for i in range(m):
            for j in range(i + 1, m):
                if _in_q2z(u[i] * u[j].inverse()):
                    return False
        return True
    if cfg.char_p:
        return False
    isint = cfg.field.is_integer
    for i in range(m):
        if isint(2 * u[i]):
            return False
        for j in range(m):
            if i != j and (isint(u[i] + u[j]) or isint(u[i] - u[j])):
                return False
    return True


def morita_predicate(cfg):
    u, m = cfg.u, cfg.m
    for i in range(m):
        for j in range(i, m):
            if cfg.quantum:
                if _in_q2z(u[i] * u[j]):
                    return False
            elif cfg.field.is_integer(u[i] + u[j]):
                return False
    return True


def _in_q2z(x):
    return x.coeff == 1 and x.exp % 2 == 0
