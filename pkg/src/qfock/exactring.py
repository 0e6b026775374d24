"""Exact arithmetic in rational-function fields Q(q,p), Q(q), Q(q,x,y), ...

Every coefficient in this package is a :class:`RingElem`: a reduced fraction
of integer-exponent (Laurent) polynomials with exact rational coefficients.
The default field is ``QP`` = Q(q,p); a few checks that need extra spectral
parameters build their own :class:`Field` with more variables.

Canonical form, so that equality is plain structural comparison:

* numerator and denominator share no polynomial factor (multivariate gcd,
  computed after shifting Laurent exponents to be non-negative);
* the denominator is an honest polynomial with minimal exponent 0 in every
  variable (Laurent monomial units are pushed into the numerator);
* the denominator's leading coefficient under lexicographic order (first
  variable most significant) is exactly 1.

Polynomials are sparse dicts ``{exponent tuple: Fraction}``.  Addition and
multiplication never call a gcd when the denominators are 1, which keeps the
hot paths (straightening, operator assembly) cheap; the multivariate gcd and
exact division are delegated to sympy's sparse polynomial rings.
"""

from __future__ import annotations

from fractions import Fraction
from operator import add as _iadd

from sympy import QQ as _QQ
from sympy.polys.rings import ring as _sympy_ring

# Coefficients are plain ints wherever they stay integral, Fractions else;
# the two compare and hash equal at equal values, so canonical forms mix
# them freely.  _coeff/_inv_coeff keep the int fast path intact.


def _coeff(c):
    if type(c) is int:
        return c
    f = Fraction(c)
    return f.numerator if f.denominator == 1 else f


def _inv_coeff(c):
    if type(c) is int:
        if c in (1, -1):
            return c
        return Fraction(1, c)
    inv = 1 / c
    return inv.numerator if inv.denominator == 1 else inv


class DivisionByZero(ZeroDivisionError):
    """Division or inversion by the zero element."""


class PoleAtPOne(ArithmeticError):
    """A rational function genuinely has a pole at the specialized point."""


# ---------------------------------------------------------------------------
# sparse Laurent polynomial helpers (dict {exps: Fraction}, zero coeffs absent)

def _padd(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _pneg(a):
    return {e: -c for e, c in a.items()}


def _pmul(a, b):
    if not a or not b:
        return {}
    if len(a) == 1 and len(b) == 1:
        (ea, ca), = a.items()
        (eb, cb), = b.items()
        return {tuple(map(_iadd, ea, eb)): ca * cb}
    if len(b) < len(a):
        a, b = b, a
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(map(_iadd, ea, eb))
            s = out.get(e)
            if s is None:
                out[e] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def _pscale(a, c):
    if not c:
        return {}
    return {e: v * c for e, v in a.items()}


def _pshift(a, shift):
    if not any(shift):
        return a
    return {tuple(x + y for x, y in zip(e, shift)): c for e, c in a.items()}


def _pminexps(a, nvars):
    mins = [None] * nvars
    for e in a:
        for i, x in enumerate(e):
            if mins[i] is None or x < mins[i]:
                mins[i] = x
    return tuple(0 if m is None else m for m in mins)


def _is_monomial(a):
    return len(a) == 1


class Field:
    """A rational-function field over Q in named variables."""

    _cache: dict[tuple[str, ...], "Field"] = {}

    def __new__(cls, names=("q", "p")):
        names = tuple(names)
        f = cls._cache.get(names)
        if f is not None:
            return f
        f = object.__new__(cls)
        f.names = names
        f.nvars = len(names)
        f._zexp = (0,) * f.nvars
        f._ring = _sympy_ring(" ".join(names), _QQ)[0]
        f._one_poly = {f._zexp: 1}
        f.zero = RingElem(f, {}, None, _reduce=False)
        f.one = RingElem(f, dict(f._one_poly), None, _reduce=False)
        f._intcache = {}
        cls._cache[names] = f
        return f

    def __repr__(self):
        return "Field(%s)" % ",".join(self.names)

    def gen(self, name) -> "RingElem":
        i = self.names.index(name)
        e = tuple(1 if j == i else 0 for j in range(self.nvars))
        return RingElem(self, {e: 1}, None, _reduce=False)

    def monomial(self, coeff, exps) -> "RingElem":
        c = _coeff(coeff)
        if not c:
            return self.zero
        return RingElem(self, {tuple(exps): c}, None, _reduce=False)

    def from_int(self, n) -> "RingElem":
        hit = self._intcache.get(n)
        if hit is None:
            if n == 0:
                hit = self.zero
            else:
                hit = RingElem(self, {self._zexp: int(n)}, None, _reduce=False)
            self._intcache[n] = hit
        return hit

    def from_terms(self, terms) -> "RingElem":
        """Build from an iterable of (coeff, exps) pairs, summing repeats."""
        num = {}
        for coeff, exps in terms:
            c = _coeff(coeff)
            if not c:
                continue
            e = tuple(exps)
            s = num.get(e)
            s = c if s is None else s + c
            if s:
                num[e] = s
            else:
                del num[e]
        return RingElem(self, num, None, _reduce=False)

    # -- sympy bridge ------------------------------------------------------

    def _to_sym(self, a):
        return self._ring.from_dict(
            {e: _QQ(c.numerator, c.denominator) for e, c in a.items()})

    def _from_sym(self, f):
        out = {}
        for m, c in f.terms():
            n, d = int(c.numerator), int(c.denominator)
            out[tuple(m)] = n if d == 1 else Fraction(n, d)
        return out

    def poly_gcd(self, a, b):
        """gcd of two polynomial dicts with non-negative exponents."""
        if not a or not b:
            return dict(a or b)
        ga = self._to_sym(a)
        gb = self._to_sym(b)
        return self._from_sym(ga.gcd(gb))

    def poly_divexact(self, a, b):
        ga = self._to_sym(a)
        gb = self._to_sym(b)
        return self._from_sym(ga.exquo(gb))


class RingElem:
    """An element of a rational-function field, always in canonical form."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den=None, _reduce=True):
        # dicts handed in are owned by the new element and never mutated;
        # den=None means denominator 1 (already canonical for Laurent nums)
        self.field = field
        if den is None:
            self.num = num
            self.den = field._one_poly
            return
        if not _reduce:
            self.num = num
            self.den = den
            return
        if not den:
            raise DivisionByZero("denominator is zero")
        if not num:
            self.num = {}
            self.den = field._one_poly
            return
        self.num, self.den = _normalize(field, num, den)

    # -- basic predicates ----------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == self.field._one_poly and self.den == self.field._one_poly

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    def _coerce(self, other):
        if type(other) is RingElem:
            if other.field is not self.field:
                raise ValueError("mixed fields: %r vs %r" % (self.field, other.field))
            return other
        if isinstance(other, int):
            return self.field.from_int(other)
        if isinstance(other, Fraction):
            c = _coeff(other)
            if not c:
                return self.field.zero
            return RingElem(self.field, {self.field._zexp: c}, None)
        return NotImplemented

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if type(other) is not RingElem:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        elif other.field is not self.field:
            raise ValueError("mixed fields")
        f = self.field
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den is other.den or self.den == other.den:
            num = _padd(self.num, other.num)
            if self.den == f._one_poly:
                return RingElem(f, num, None)
            return RingElem(f, num, self.den)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        return RingElem(f, num, _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RingElem(self.field, _pneg(self.num), self.den, _reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        if type(other) is not RingElem:
            other = self._coerce(other)
            if other is NotImplemented:
                return NotImplemented
        elif other.field is not self.field:
            raise ValueError("mixed fields")
        f = self.field
        if not self.num or not other.num:
            return f.zero
        num = _pmul(self.num, other.num)
        one = f._one_poly
        if (self.den is one or self.den == one) and (other.den is one or other.den == one):
            return RingElem(f, num, None)
        return RingElem(f, num, _pmul(self.den, other.den))

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return RingElem(self.field, dict(self.den), dict(self.num))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise DivisionByZero("division by zero")
        if not self.num:
            return self.field.zero
        return RingElem(self.field,
                        _pmul(self.num, other.den),
                        _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, n):
        if n == 0:
            return self.field.one
        if n < 0:
            return self.inv() ** (-n)
        r = self
        out = None
        while n:
            if n & 1:
                out = r if out is None else out * r
            n >>= 1
            if n:
                r = r * r
        return out

    # -- specialization ---------------------------------------------------------

    def specialize_one(self, name) -> "RingElem":
        """Substitute the named variable by 1.

        Raises :class:`PoleAtPOne` when the reduced denominator vanishes
        there (the numerator cannot also vanish: the fraction is reduced).
        """
        f = self.field
        i = f.names.index(name)

        def sub(poly):
            out = {}
            for e, c in poly.items():
                e2 = e[:i] + (0,) + e[i + 1:]
                s = out.get(e2)
                s = c if s is None else s + c
                if s:
                    out[e2] = s
                else:
                    del out[e2]
            return out

        num = sub(self.num)
        den = sub(self.den)
        if not den:
            raise PoleAtPOne("pole at %s=1 in %s" % (name, self))
        return RingElem(f, num, den)

    def specialize_p1(self) -> "RingElem":
        return self.specialize_one("p")

    def degree_in(self, name):
        """(min, max) exponent of the named variable across num and den; (0, 0) for 0."""
        i = self.field.names.index(name)
        exps = [e[i] for e in self.num] + [e[i] for e in self.den]
        if not exps:
            return (0, 0)
        return (min(exps), max(exps))

    # -- rendering ----------------------------------------------------------------

    def __str__(self):
        if not self.num:
            return "0"
        ns = _render_poly(self.field, self.num)
        if self.den == self.field._one_poly:
            return ns
        return "(%s)/(%s)" % (ns, _render_poly(self.field, self.den))

    __repr__ = __str__


def _normalize(field, num, den):
    """Reduce num/den to the canonical pair of dicts."""
    one = field._one_poly
    nvars = field.nvars

    # pull out Laurent monomial units
    nshift = _pminexps(num, nvars)
    dshift = _pminexps(den, nvars)
    num0 = _pshift(num, tuple(-x for x in nshift))
    den0 = _pshift(den, tuple(-x for x in dshift))
    unit = tuple(a - b for a, b in zip(nshift, dshift))

    if den0 == one:
        pass
    elif _is_monomial(den0):
        # den0 is a constant (min exps are 0): fold into the numerator
        c = next(iter(den0.values()))
        num0 = _pscale(num0, _inv_coeff(c))
        den0 = one
    else:
        g = field.poly_gcd(num0, den0)
        if g != one:
            if _is_monomial(g) and next(iter(g)) == field._zexp:
                c = _inv_coeff(next(iter(g.values())))
                num0 = _pscale(num0, c)
                den0 = _pscale(den0, c)
            else:
                num0 = field.poly_divexact(num0, g)
                den0 = field.poly_divexact(den0, g)
        if _is_monomial(den0):
            # cancellation may leave a monomial (necessarily constant) behind
            c = next(iter(den0.values()))
            num0 = _pscale(num0, _inv_coeff(c))
            den0 = one
        else:
            lc = den0[max(den0)]
            if lc != 1:
                inv = _inv_coeff(lc)
                num0 = _pscale(num0, inv)
                den0 = _pscale(den0, inv)

    return _pshift(num0, unit), den0


def _render_poly(field, poly):
    parts = []
    for e in sorted(poly, reverse=True):
        c = poly[e]
        factors = []
        for name, x in zip(field.names, e):
            if x == 1:
                factors.append(name)
            elif x != 0:
                factors.append("%s^%d" % (name, x))
        mono = "*".join(factors)
        ac = abs(c)
        if not mono:
            body = str(ac)
        elif ac == 1:
            body = mono
        else:
            body = "%s*%s" % (ac, mono)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+" if c > 0 else "-") + body)
    return "".join(parts)


# ---------------------------------------------------------------------------
# the default coefficient field and q-number helpers

QP = Field(("q", "p"))


def qint(field, m) -> RingElem:
    """The q-integer (q^m - q^-m)/(q - q^-1), as a Laurent polynomial."""
    if m < 0:
        return -qint(field, -m)
    i = field.names.index("q")
    terms = {}
    for j in range(m):
        e = [0] * field.nvars
        e[i] = m - 1 - 2 * j
        terms[tuple(e)] = 1
    return RingElem(field, terms, None)


def qbinom(field, m, r) -> RingElem:
    """Gaussian binomial [m over r]_q."""
    if r < 0 or r > m:
        return field.zero
    out = field.one
    for i in range(1, r + 1):
        out = out * qint(field, m - i + 1) / qint(field, i)
    return out
