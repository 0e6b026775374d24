"""Affine Hecke algebra on Laurent polynomials and Macdonald eigenfunctions.

Operators act on C[z_1^±1,...,z_N^±1] with coefficients in Q(q,p).  The
assignment is a *right* action, so composite abstract words apply their
rightmost letter first; the generator images are

    T_i  ->  -q g_{i,i+1}^{-1},
    Y_i  ->  q^(1-N) Y_i^(N)          (first action), or
    Y_i  ->  multiplication by z_i^-1 (second action),

with g_{i,j} = (q^-1 z_i - q z_j)/(z_i - z_j) (K_{i,j} - 1) + q.  The
apparent denominator always divides exactly; apply_g uses the telescoped
closed form per monomial, and g^-1 = g - (q - q^-1) from the quadratic
relation g^2 = (q - q^-1) g + 1.  Products of operators written
side-by-side compose left to right (the right-action reading); this is the
choice under which Y_i^(N) z^(lambda^sigma) has exactly the eigenvalue
p^(lambda_sigma(i)) q^(2 sigma(i) - N - 1) on its leading term, verified
exhaustively on exponent windows.

Monomials are labelled by pairs (lambda, sigma): lambda is the exponent
vector sorted non-decreasingly and sigma the unique permutation in S^lambda
with z^(lambda^sigma) the given monomial.  The triangular order orients
dominance partition-style (partial sums of the *largest* entries), under
which the Cherednik operators produce strictly lower off-diagonal terms;
the eigenvector solver asserts this a posteriori on every closure it
builds, so a violation surfaces as an error rather than a wrong answer.
"""

from __future__ import annotations

import itertools
import json
import os
from functools import lru_cache

from .exactring import QP, Field, RingElem


class UnequalDegree(ValueError):
    """Dominance comparison of sequences with different total degree."""


class ClosureDivergence(RuntimeError):
    """The monomial closure exceeded its safety bound (indicates a bug)."""


CLOSURE_BOUND = 10 ** 4
CACHE_FORMAT_VERSION = 1


class PolyVector:
    """A Laurent polynomial in N variables with RingElem coefficients."""

    __slots__ = ("field", "N", "terms")

    def __init__(self, field, N, terms=None):
        self.field = field
        self.N = N
        self.terms = {} if terms is None else terms

    @classmethod
    def monomial(cls, field, exps, coeff=None):
        exps = tuple(exps)
        c = field.one if coeff is None else coeff
        t = {exps: c} if c else {}
        return cls(field, len(exps), t)

    @classmethod
    def one(cls, field, N):
        return cls.monomial(field, (0,) * N)

    def copy(self):
        return PolyVector(self.field, self.N, dict(self.terms))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, PolyVector) and self.N == other.N
                and self.terms == other.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                del out[e]
        return PolyVector(self.field, self.N, out)

    def __sub__(self, other):
        return self + other.scaled(self.field.from_int(-1))

    def scaled(self, c):
        if not c:
            return PolyVector(self.field, self.N)
        return PolyVector(self.field, self.N,
                          {e: c * x for e, x in self.terms.items()})

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return PolyVector(self.field, self.N, out)

    def specialize_p1(self):
        out = {}
        for e, c in self.terms.items():
            c1 = c.specialize_p1()
            if c1:
                out[e] = c1
        return PolyVector(self.field, self.N, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join("z%d^%d" % (i + 1, x)
                            for i, x in enumerate(e) if x)
            bits.append("(%s)%s" % (self.terms[e], "*" + mono if mono else ""))
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# elementary operators on term dicts (variables are 1-based everywhere)

def _swap_terms(terms, i, j):
    i -= 1
    j -= 1
    out = {}
    for e, c in terms.items():
        le = list(e)
        le[i], le[j] = le[j], le[i]
        e2 = tuple(le)
        s = out.get(e2)
        s = c if s is None else s + c
        if s:
            out[e2] = s
        else:
            del out[e2]
    return out


def _g_monomial(field, e, i, j, N):
    """g_{i,j} applied to the monomial z^e, as a term dict.

    For exponents (a, b) at the slots (i, j) the telescoped form is exact:
    no polynomial division is performed.
    """
    q = field.gen("q")
    a, b = e[i - 1], e[j - 1]
    out = {}

    def put(ei, ej, c):
        le = list(e)
        le[i - 1], le[j - 1] = ei, ej
        k = tuple(le)
        s = out.get(k)
        s = c if s is None else s + c
        if s:
            out[k] = s
        else:
            del out[k]

    if a == b:
        put(a, b, q)
        return out
    qinv = q.inv()
    mid = qinv - q if a < b else q - qinv
    lo, hi = (a, b) if a < b else (b, a)
    # telescoped (q^-1 z_i - q z_j)(K-1)z^e/(z_i - z_j), plus the affine +q:
    #   a < b:  q^-1 * swapped + (q^-1 - q) * middle terms
    #   a > b:  q * swapped + (q - q^-1) * (middle terms + z^e)
    if a < b:
        put(hi, lo, qinv)
    else:
        put(lo, hi, q)
        put(a, b, q - qinv)
    for t in range(lo + 1, hi):
        put(t, lo + hi - t, mid)
    return out


def _apply_termwise(fun, terms):
    out = {}
    for e, c in terms.items():
        for e2, c2 in fun(e).items():
            s = out.get(e2)
            t = c * c2
            s = t if s is None else s + t
            if s:
                out[e2] = s
            else:
                del out[e2]
    return out


def _g_terms(field, terms, i, j, N):
    return _apply_termwise(lambda e: _g_monomial(field, e, i, j, N), terms)


def _ginv_terms(field, terms, i, j, N):
    # g^-1 = g - (q - q^-1)
    q = field.gen("q")
    out = _g_terms(field, terms, i, j, N)
    c0 = q - q.inv()
    for e, c in terms.items():
        s = out.get(e)
        t = c0 * c
        s = -t if s is None else s - t
        if s:
            out[e] = s
        else:
            del out[e]
    return out


def _pD_terms(field, terms, i, invert, pmode):
    if pmode == "one":
        return dict(terms)
    p = field.gen("p")
    out = {}
    for e, c in terms.items():
        k = e[i - 1]
        out[e] = c * p ** (-k if invert else k)
    return out


def apply_g(i, j, f: PolyVector) -> PolyVector:
    if not (1 <= i <= f.N and 1 <= j <= f.N and i != j):
        raise ValueError("bad variable pair (%d, %d)" % (i, j))
    return PolyVector(f.field, f.N, _g_terms(f.field, f.terms, i, j, f.N))


def apply_g_inv(i, j, f: PolyVector) -> PolyVector:
    if not (1 <= i <= f.N and 1 <= j <= f.N and i != j):
        raise ValueError("bad variable pair (%d, %d)" % (i, j))
    return PolyVector(f.field, f.N, _ginv_terms(f.field, f.terms, i, j, f.N))


def hecke_T(i, f: PolyVector) -> PolyVector:
    """T_i acting on polynomials: -q g_{i,i+1}^{-1}."""
    q = f.field.gen("q")
    return apply_g_inv(i, i + 1, f).scaled(-q)


def hecke_T_inv(i, f: PolyVector) -> PolyVector:
    q = f.field.gen("q")
    return apply_g(i, i + 1, f).scaled(-q.inv())


def cherednik_Y(i, f: PolyVector, pmode="generic", invert=False) -> PolyVector:
    """Y_i^(N): unnormalized Cherednik operator (eigenvalue q^(2i-N-1) on 1).

    pmode "one" replaces the p-shift by the identity (coefficients stay in
    Q(q)); invert applies the inverse operator.
    """
    field, N = f.field, f.N
    factors = []  # written left to right
    for b in range(i + 1, N + 1):
        factors.append(("ginv", i, b))
        factors.append(("K", i, b))
    factors.append(("pD", i, invert))
    for a in range(1, i):
        factors.append(("K", a, i))
        factors.append(("g", a, i))
    if invert:
        factors = [_invert_factor(x) for x in reversed(factors)]
    # right-action composition: the factor written first applies first
    terms = f.terms
    for kind, *args in factors:
        if kind == "g":
            terms = _g_terms(field, terms, args[0], args[1], N)
        elif kind == "ginv":
            terms = _ginv_terms(field, terms, args[0], args[1], N)
        elif kind == "K":
            terms = _swap_terms(terms, args[0], args[1])
        else:
            terms = _pD_terms(field, terms, args[0], args[1], pmode)
    return PolyVector(field, N, terms)


def _invert_factor(factor):
    kind, *args = factor
    if kind == "g":
        return ("ginv",) + tuple(args)
    if kind == "ginv":
        return ("g",) + tuple(args)
    return factor  # K is an involution; pD carries its own invert flag


def abstract_Y(i, f: PolyVector, pmode="generic", invert=False) -> PolyVector:
    """The affine Hecke generator Y_i in the first action: q^(1-N) Y_i^(N)."""
    q = f.field.gen("q")
    scale = q ** (f.N - 1) if invert else q ** (1 - f.N)
    return cherednik_Y(i, f, pmode=pmode, invert=invert).scaled(scale)


def elementary_em(k: int, f: PolyVector) -> PolyVector:
    """Multiply by e_{-k} = sum over k-subsets of prod z_{n_t}^{-1}."""
    if not 1 <= k <= f.N:
        raise ValueError("need 1 <= k <= N")
    out = {}
    for subset in itertools.combinations(range(f.N), k):
        for e, c in f.terms.items():
            le = list(e)
            for t in subset:
                le[t] -= 1
            e2 = tuple(le)
            s = out.get(e2)
            s = c if s is None else s + c
            if s:
                out[e2] = s
            else:
                del out[e2]
    return PolyVector(f.field, f.N, out)


# ---------------------------------------------------------------------------
# compositions, the sets S^lambda, and the triangular monomial order

def dominance_cmp(lam, mu):
    """Dominance partial order on non-decreasing sequences of equal degree."""
    lam, mu = tuple(lam), tuple(mu)
    if len(lam) != len(mu) or sum(lam) != sum(mu):
        raise UnequalDegree("%r vs %r" % (lam, mu))
    ge = le = True
    sa = sb = 0
    for a, b in zip(lam, mu):
        sa += a
        sb += b
        if sa < sb:
            ge = False
        if sa > sb:
            le = False
    if ge and le:
        return "EQ"
    if ge:
        return "GT"
    if le:
        return "LT"
    return "INCOMPARABLE"


def in_s_lambda(lam, sigma) -> bool:
    """Membership in S^lambda: positions of equal values stay in order."""
    n = len(lam)
    for i in range(n):
        for j in range(n):
            if lam[sigma[i] - 1] == lam[sigma[j] - 1] and sigma[i] < sigma[j] and i >= j:
                return False
    return True


def s_lambda_cmp(lam, sigma, tau):
    """-1, 0, 1 for the total order on S^lambda (larger = later)."""
    if sigma == tau:
        return 0
    diffs = [lam[sigma[i] - 1] - lam[tau[i] - 1] for i in range(len(lam))]
    for d in reversed(diffs):
        if d:
            return 1 if d < 0 else -1
    return 0


@lru_cache(maxsize=None)
def s_lambda_order(lam):
    """(elements ascending in the total order, minimal element) for S^lambda."""
    lam = tuple(lam)
    if any(lam[i] > lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError("lambda must be non-decreasing: %r" % (lam,))
    n = len(lam)
    elems = [s for s in itertools.permutations(range(1, n + 1))
             if in_s_lambda(lam, s)]
    # sigma > sigma' iff reversed(lambda o sigma) <_lex reversed(lambda o sigma')
    elems.sort(key=lambda s: tuple(-lam[s[i] - 1] for i in range(n - 1, -1, -1)))
    return elems, elems[0]


def s_lambda_min(lam):
    return s_lambda_order(tuple(lam))[1]


def monomial_of_label(lam, sigma):
    """Exponents of z^(lambda^sigma)."""
    return tuple(lam[sigma[i] - 1] for i in range(len(lam)))


def label_of_monomial(exps):
    """The unique (lambda, sigma) with sigma in S^lambda and lambda^sigma = exps."""
    lam = tuple(sorted(exps))
    slots = {}
    for pos, v in enumerate(lam, start=1):
        slots.setdefault(v, []).append(pos)
    used = {v: 0 for v in slots}
    sigma = []
    for v in exps:
        sigma.append(slots[v][used[v]])
        used[v] += 1
    return lam, tuple(sigma)


def monomial_order_key(exps):
    """Total-order key for the triangularity of the Cherednik operators:
    larger key = larger monomial, and Y_i z^m = (eigenvalue) z^m + terms
    with strictly smaller key.  Only meaningful within one total degree.

    Dominance is partition-style (partial sums of the largest entries), so
    for non-decreasing sequences the cumulative sums enter negated; ties
    within one exponent multiset break by the reversed exponent word.
    """
    lam = sorted(exps)
    psums = []
    s = 0
    for a in lam:
        s += a
        psums.append(-s)
    return (tuple(psums), tuple(reversed(exps)))


def xi_eigenvalue(field, lam, sigma, i, N, pmode="generic") -> RingElem:
    """xi_i = p^(lambda_sigma(i)) q^(2 sigma(i) - N - 1), for Y_i^(N)."""
    q = field.gen("q")
    out = q ** (2 * sigma[i - 1] - N - 1)
    if pmode != "one":
        out = out * field.gen("p") ** lam[sigma[i - 1] - 1]
    return out


# ---------------------------------------------------------------------------
# non-symmetric Macdonald polynomials

_phi_cache = {}


def macdonald_phi(lam, sigma=None, field=QP, closure_bound=CLOSURE_BOUND) -> PolyVector:
    """The joint Y-eigenvector with leading monomial z^(lambda^sigma), unit
    leading coefficient, over Q(q,p).

    lam must be non-decreasing; sigma defaults to the minimal element of
    S^lambda.  The monomial span is closed under all Y_i^(N) and the
    triangular system is solved by back-substitution; the exact eigenvalue
    residual is asserted to vanish before returning.
    """
    lam = tuple(lam)
    N = len(lam)
    if sigma is None or sigma == "min":
        sigma = s_lambda_min(lam)
    sigma = tuple(sigma)
    key = (field.names, lam, sigma)
    hit = _phi_cache.get(key)
    if hit is not None:
        return hit
    disk = _disk_cache_load(key)
    if disk is not None:
        _phi_cache[key] = disk
        return disk

    lead = monomial_of_label(lam, sigma)
    span = {lead}
    frontier = [lead]
    cols = [dict() for _ in range(N)]  # cols[i-1][m] = terms of Y_i z^m
    while frontier:
        new = []
        for m in frontier:
            mono = PolyVector.monomial(field, m)
            for i in range(1, N + 1):
                img = cherednik_Y(i, mono)
                cols[i - 1][m] = img.terms
                for e in img.terms:
                    if e not in span:
                        span.add(e)
                        new.append(e)
                        if len(span) > closure_bound:
                            raise ClosureDivergence(
                                "span exceeded %d monomials" % closure_bound)
        frontier = new

    order = sorted(span, key=monomial_order_key, reverse=True)
    if order[0] != lead:
        raise ClosureDivergence(
            "closure contains a monomial above the leading one: %r" % (order[0],))
    lead_key = monomial_order_key(lead)
    for m in order[1:]:
        if dominance_cmp(sorted(m), lam) == "INCOMPARABLE":
            raise ClosureDivergence(
                "non-comparable monomial %r in the Y-closure of %r" % (m, lead))

    xi = [xi_eigenvalue(field, lam, sigma, i, N) for i in range(1, N + 1)]

    coeffs = {lead: field.one}
    for m in order[1:]:
        mu, tau = label_of_monomial(m)
        solved = False
        for i in range(N):
            diag = xi_eigenvalue(field, mu, tau, i + 1, N)
            denom = xi[i] - diag
            if not denom:
                continue
            total = field.zero
            for m2, c2 in coeffs.items():
                a = cols[i][m2].get(m)
                if a is not None and m2 != m:
                    total = total + a * c2
            coeffs[m] = total / denom
            solved = True
            break
        if not solved:
            raise ClosureDivergence(
                "degenerate eigenvalues between %r and %r" % ((lam, sigma), (mu, tau)))
        if not coeffs[m]:
            del coeffs[m]

    phi = PolyVector(field, N, coeffs)
    for i in range(1, N + 1):
        residual = cherednik_Y(i, phi) - phi.scaled(xi[i - 1])
        if not residual.is_zero():
            raise ClosureDivergence(
                "eigen-residual nonzero for Y_%d at %r" % (i, (lam, sigma)))
    _phi_cache[key] = phi
    _disk_cache_store(key, phi)
    return phi


def macdonald_phi_p1(lam, sigma=None, field=QP) -> PolyVector:
    """The Macdonald polynomial specialized at p = 1 (never has a pole)."""
    return macdonald_phi(lam, sigma, field=field).specialize_p1()


def lemma_shift(lam, k):
    """Decrement the k smallest entries of a non-decreasing sequence.

    This is the label shift realized by multiplication with e_{-k} on the
    p=1 Macdonald polynomial with sigma = min, for lambda whose consecutive
    steps are 0 or 1; the result is again non-decreasing.
    """
    lam = list(lam)
    for i in range(k):
        lam[i] -= 1
    return tuple(lam)


# ---------------------------------------------------------------------------
# presentation checks on a finite monomial window

def window_basis(N, lo, hi):
    return list(itertools.product(range(lo, hi + 1), repeat=N))


def hecke_operator_columns(N, lo, hi, field=QP, pmode="generic",
                           second_action=False):
    """Matrices (column dicts keyed by exponent tuples) of the affine Hecke
    generators restricted to the window [lo, hi]^N, which they preserve.

    Returns (T, Tinv, Y, Yinv) as dicts {i: columns}.
    """
    basis = window_basis(N, lo, hi)
    T = {i: {} for i in range(1, N)}
    Tinv = {i: {} for i in range(1, N)}
    Y = {i: {} for i in range(1, N + 1)}
    Yinv = {i: {} for i in range(1, N + 1)}
    for m in basis:
        mono = PolyVector.monomial(field, m)
        for i in range(1, N):
            T[i][m] = hecke_T(i, mono).terms
            Tinv[i][m] = hecke_T_inv(i, mono).terms
        for i in range(1, N + 1):
            if second_action:
                zi = list(m)
                zi[i - 1] -= 1
                Y[i][m] = {tuple(zi): field.one}
                zi2 = list(m)
                zi2[i - 1] += 1
                Yinv[i][m] = {tuple(zi2): field.one}
            else:
                Y[i][m] = abstract_Y(i, mono, pmode=pmode).terms
                Yinv[i][m] = abstract_Y(i, mono, pmode=pmode, invert=True).terms
    return T, Tinv, Y, Yinv


def hecke_relation_suite(N, lo, hi, field=QP, pmode="generic",
                         second_action=False):
    """Check every relation family of the affine Hecke presentation as an
    exact operator identity on the monomial window [lo, hi]^N.  Returns a
    list of (relation name, bool).

    The first action preserves the window; the second one shifts exponents
    by +-1 per Y letter, so its generators are assembled on a padded window
    and the identities are compared on the inner columns only.
    """
    from . import linalg

    pad = 2 if second_action else 0
    T, Tinv, Y, Yinv = hecke_operator_columns(
        N, lo - pad, hi + pad, field=field, pmode=pmode,
        second_action=second_action)
    basis = window_basis(N, lo, hi)
    eye = {m: {m: field.one} for m in basis}
    q = field.gen("q")
    out = []

    def ok(name, a, b):
        out.append((name, all(a.get(m, {}) == b.get(m, {}) for m in basis)))

    for i in range(1, N):
        ok("T%d T%d^-1 = 1" % (i, i), linalg.op_mul(T[i], Tinv[i]), eye)
        ok("T%d^-1 T%d = 1" % (i, i), linalg.op_mul(Tinv[i], T[i]), eye)
        lhs = linalg.op_mul(linalg.op_add(T[i], eye),
                            linalg.op_sub(T[i], linalg.op_scale(eye, q * q)))
        ok("(T%d+1)(T%d-q^2) = 0" % (i, i), lhs, {})
    for i in range(1, N - 1):
        ok("braid T%d T%d T%d" % (i, i + 1, i),
           linalg.op_mul(T[i], linalg.op_mul(T[i + 1], T[i])),
           linalg.op_mul(T[i + 1], linalg.op_mul(T[i], T[i + 1])))
    for i in range(1, N):
        for j in range(i + 2, N):
            ok("T%d T%d commute" % (i, j),
               linalg.op_mul(T[i], T[j]), linalg.op_mul(T[j], T[i]))
    for i in range(1, N + 1):
        ok("Y%d Y%d^-1 = 1" % (i, i), linalg.op_mul(Y[i], Yinv[i]), eye)
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            ok("Y%d Y%d commute" % (i, j),
               linalg.op_mul(Y[i], Y[j]), linalg.op_mul(Y[j], Y[i]))
    for i in range(1, N):
        # right action: the word T_i^-1 Y_i T_i^-1 composes palindromically
        lhs = linalg.op_mul(Tinv[i], linalg.op_mul(Y[i], Tinv[i]))
        ok("T%d^-1 Y%d T%d^-1 = q^-2 Y%d" % (i, i, i, i + 1),
           lhs, linalg.op_scale(Y[i + 1], q ** -2))
    for i in range(1, N):
        for j in range(1, N + 1):
            if j in (i, i + 1):
                continue
            ok("Y%d T%d commute" % (j, i),
               linalg.op_mul(Y[j], T[i]), linalg.op_mul(T[i], Y[j]))
    return out


# ---------------------------------------------------------------------------
# optional on-disk memo cache (content-addressed, versioned)

def _cache_path(key):
    root = os.environ.get("QFOCK_CACHE_DIR")
    if not root:
        return None
    import hashlib
    blob = json.dumps([CACHE_FORMAT_VERSION, list(key[0]), list(key[1]),
                       list(key[2])], sort_keys=True)
    h = hashlib.sha256(blob.encode()).hexdigest()[:24]
    return os.path.join(root, "phi-v%d-%s.json" % (CACHE_FORMAT_VERSION, h))


def _disk_cache_store(key, phi: PolyVector):
    path = _cache_path(key)
    if path is None:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    data = {
        "version": CACHE_FORMAT_VERSION,
        "field": list(phi.field.names),
        "N": phi.N,
        "terms": [[list(e), _ser_elem(c)] for e, c in sorted(phi.terms.items())],
    }
    with open(path, "w") as fh:
        json.dump(data, fh)


def _disk_cache_load(key):
    path = _cache_path(key)
    if path is None or not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            data = json.load(fh)
        if data.get("version") != CACHE_FORMAT_VERSION:
            return None
        field = Field(tuple(data["field"]))
        terms = {tuple(e): _de_elem(field, blob) for e, blob in data["terms"]}
        return PolyVector(field, data["N"], terms)
    except (ValueError, KeyError, OSError):
        return None


def _ser_elem(c: RingElem):
    enc = lambda poly: [[list(e), [x.numerator, x.denominator]]
                        for e, x in sorted(poly.items())]
    return [enc(c.num), enc(c.den)]


def _de_elem(field, blob):
    from fractions import Fraction
    dec = lambda part: {tuple(e): Fraction(a, b) for e, (a, b) in part}
    return RingElem(field, dec(blob[0]), dec(blob[1]))
