"""q-wedge straightening and the q-deformed Fock space.

Basis vectors of V(z) are u_k with k = eps - n*m (eps in 1..n the color,
m the z-exponent); a pure tensor is a word (k_1,...,k_N) and a wedge is
normally ordered when the word strictly decreases.  The straightening rules
rewriting u_k (x) u_l with k <= l into normally ordered pairs are *derived*
here by exact linear algebra from the defining kernel of the wedge quotient
(T^c_i + q^2 (T^s_i)^{-1}, which equals S^s - q g as an operator), then
cached per (n, k mod n, l - k); the derivation also checks that the rule is
independent of k mod n, so the table is really indexed by the distance.

Semi-infinite wedges are stored as (charge M, head): the head is the finite
strictly-decreasing prefix that differs from the vacuum tail
k_i = M - i + 1, stripped to minimal length.  Operations that push head
indices into the tail region extend the head far enough, restraighten and
re-strip, which makes "i >> 1" computable.
"""

from __future__ import annotations

import itertools

from . import linalg
from .exactring import QP
from .heckepoly import PolyVector, _g_terms


class RuleInconsistency(RuntimeError):
    """The straightening-rule linear system failed (arithmetic bug)."""


class NonTermination(RuntimeError):
    """Straightening exceeded its rewrite budget (arithmetic bug)."""


class TailMismatch(ValueError):
    """A semi-infinite wedge does not end in the expected vacuum tail."""


class NoStabilization(RuntimeError):
    """A truncated Heisenberg action failed to stabilize (arithmetic bug)."""


STRAIGHTEN_STEP_BOUND = 10 ** 6


def idx_split(k, n):
    """k = eps - n*m with eps in 1..n."""
    eps = k % n
    if eps == 0:
        eps = n
    m = (eps - k) // n
    return m, eps


def idx_join(m, eps, n):
    return eps - n * m


def color_of(k, n):
    return idx_split(k, n)[1]


# ---------------------------------------------------------------------------
# the two-site color action and the kernel operator

def _shecke_pair(field, e1, e2, n):
    """S^s on v_e1 (x) v_e2: list of ((f1, f2), coeff)."""
    q = field.gen("q")
    if e1 == e2:
        return [((e1, e2), q * q)]
    if e1 < e2:
        return [((e2, e1), q)]
    return [((e2, e1), q), ((e1, e2), q * q - field.one)]


def _kernel_operator_columns(field, n, basis):
    """Columns of S^s - q g on a block of the two-site mixed space.

    Basis keys are (m1, m2, e1, e2); the operator is exactly
    T^c + q^2 (T^s)^{-1} by the two quadratic relations.
    """
    q = field.gen("q")
    cols = {}
    for key in basis:
        m1, m2, e1, e2 = key
        vec = {}
        for (f1, f2), c in _shecke_pair(field, e1, e2, n):
            k2 = (m1, m2, f1, f2)
            vec[k2] = vec.get(k2, field.zero) + c
        gterms = _g_terms(field, {(m1, m2): field.one}, 1, 2, 2)
        for (mm1, mm2), c in gterms.items():
            k2 = (mm1, mm2, e1, e2)
            s = vec.get(k2, field.zero) - q * c
            if s:
                vec[k2] = s
            else:
                vec.pop(k2, None)
        cols[key] = {k: v for k, v in vec.items() if v}
    return cols


class StraightenRules:
    """Lazy table of two-site straightening rules for a fixed n."""

    def __init__(self, n, field=QP):
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        self.field = field
        self._rules = {}  # distance d -> list of ((da, db), coeff), a = l - da

    def _block_basis(self, k, l, pad=0):
        n = self.n
        m1, e1 = idx_split(k, n)
        m2, e2 = idx_split(l, n)
        msum = m1 + m2
        mlo, mhi = min(m1, m2) - pad, max(m1, m2) + pad
        colors = {(e1, e2), (e2, e1)}
        basis = []
        for a in range(mlo, mhi + 1):
            b = msum - a
            if not mlo <= b <= mhi:
                continue
            for f1, f2 in colors:
                basis.append((a, b, f1, f2))
        return basis

    def _derive(self, k, l, pad=0):
        """Solve u_k (x) u_l = sum over normally ordered pairs + kernel."""
        field, n = self.field, self.n
        basis = self._block_basis(k, l, pad=pad)
        cols = _kernel_operator_columns(field, n, basis)
        kernel = linalg.nullspace(cols, field.one)
        solver = linalg.SpanSolver()
        for t, vec in enumerate(kernel):
            solver.add(("ker", t), vec, field.one)
        for key in basis:
            m1, m2, f1, f2 = key
            a = idx_join(m1, f1, n)
            b = idx_join(m2, f2, n)
            if a > b:
                solver.add(("no", a, b), {key: field.one}, field.one)
        mk, ek = idx_split(k, n)
        ml, el = idx_split(l, n)
        target = {(mk, ml, ek, el): field.one}
        sol = solver.solve(target)
        if sol is None:
            raise RuleInconsistency("no straightening rule for (%d, %d)" % (k, l))
        rule = []
        for key, c in sorted(sol.items()):
            if key[0] == "no" and c:
                _, a, b = key
                rule.append(((l - a, l - b), c))
        return rule

    def rule(self, k, l):
        """Expansion of u_k (x) u_l (k <= l) over normally ordered pairs,
        as ((a, b), coeff) with a > b, returned in absolute indices."""
        if k > l:
            raise ValueError("rule expects k <= l")
        d = l - k
        cached = self._rules.get(d)
        if cached is None:
            per_residue = [self._derive(r, r + d) for r in range(self.n)]
            if any(per_residue[i] != per_residue[0] for i in range(1, self.n)):
                raise RuleInconsistency(
                    "straightening rule for distance %d is not translation "
                    "covariant" % d)
            cached = per_residue[0]
            self._rules[d] = cached
        return [((l - da, l - db), c) for (da, db), c in cached]

    def kernel_vectors(self, k, l):
        """A basis of the defining kernel on the block of (k, l); for tests."""
        basis = self._block_basis(k, l)
        cols = _kernel_operator_columns(self.field, self.n, basis)
        return linalg.nullspace(cols, self.field.one), basis


_rules_cache = {}


def derive_rules(n, field=QP) -> StraightenRules:
    key = (n, field.names)
    if key not in _rules_cache:
        _rules_cache[key] = StraightenRules(n, field)
    return _rules_cache[key]


# ---------------------------------------------------------------------------
# straightening of finite wedge words

def straighten_words(n, words, field=QP):
    """Rewrite a dict {word: coeff} into normally ordered form."""
    rules = derive_rules(n, field)
    out = {}
    work = list(words.items())
    steps = 0
    while work:
        w, c = work.pop()
        if not c:
            continue
        steps += 1
        if steps > STRAIGHTEN_STEP_BOUND:
            raise NonTermination("straightening exceeded %d steps"
                                 % STRAIGHTEN_STEP_BOUND)
        for i in range(len(w) - 1):
            if w[i] <= w[i + 1]:
                for (a, b), rc in rules.rule(w[i], w[i + 1]):
                    work.append((w[:i] + (a, b) + w[i + 2:], c * rc))
                break
        else:
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                del out[w]
    return out


class WedgeVector:
    """Element of the N-fold wedge: normally ordered words -> coefficients."""

    __slots__ = ("field", "n", "N", "terms")

    def __init__(self, field, n, N, terms=None):
        self.field = field
        self.n = n
        self.N = N
        self.terms = {} if terms is None else terms

    @classmethod
    def from_words(cls, field, n, N, words):
        return cls(field, n, N, straighten_words(n, words, field))

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, WedgeVector) and self.n == other.n
                and self.N == other.N and self.terms == other.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                del out[w]
        return WedgeVector(self.field, self.n, self.N, out)

    def scaled(self, c):
        if not c:
            return WedgeVector(self.field, self.n, self.N)
        return WedgeVector(self.field, self.n, self.N,
                           {w: c * x for w, x in self.terms.items()})

    def __repr__(self):
        bits = []
        for w in sorted(self.terms, reverse=True):
            bits.append("(%s)u%s" % (self.terms[w], list(w)))
        return " + ".join(bits) if bits else "0"


class TensorVector:
    """Element of C[z^+-] (x) (tensor^N V): (m, e) keys -> coefficients."""

    __slots__ = ("field", "n", "N", "terms")

    def __init__(self, field, n, N, terms=None):
        self.field = field
        self.n = n
        self.N = N
        self.terms = {} if terms is None else terms

    @classmethod
    def from_poly_colors(cls, poly: PolyVector, colors, n):
        e = tuple(colors)
        terms = {(m, e): c for m, c in poly.terms.items()}
        return cls(poly.field, n, poly.N, terms)

    def to_words(self):
        n = self.n
        out = {}
        for (m, e), c in self.terms.items():
            w = tuple(idx_join(mi, ei, n) for mi, ei in zip(m, e))
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                del out[w]
        return out

    def wedge(self) -> WedgeVector:
        return WedgeVector.from_words(self.field, self.n, self.N, self.to_words())


def word_to_me(w, n):
    ms, es = [], []
    for k in w:
        m, e = idx_split(k, n)
        ms.append(m)
        es.append(e)
    return tuple(ms), tuple(es)


# ---------------------------------------------------------------------------
# finite wedge subspaces and the Fock basis

def vacuum_m(M, n, N):
    """The first N vacuum z-exponents m^0_i for charge M."""
    return tuple(idx_split(M - i, n)[0] for i in range(N))


def finite_degree(M, n, word):
    m0 = vacuum_m(M, n, len(word))
    return sum(m0[i] - idx_split(k, n)[0] for i, k in enumerate(word))


def wedge_space_basis(M, l, k, n):
    """Normally ordered words of length s+nl with the last z-exponent bounded
    by the vacuum's and degree exactly k, sorted deterministically.

    Strictly decreasing indices force weakly increasing z-exponents, so the
    stated bound on the last slot caps every slot and the search is finite.
    """
    s = M % n
    N = s + n * l
    if N == 0:
        return [()] if k == 0 else []
    m0 = vacuum_m(M, n, N)
    m_cap = m0[N - 1]
    lo_k = idx_join(m_cap, 1, n)  # smallest admissible index
    out = []

    def grow(word, deg):
        i = len(word)
        if i == N:
            if deg == k:
                out.append(word)
            return
        budget = k - deg
        # later slots can undershoot their vacuum exponents by at most
        # sum(m0_j - m_cap), so this slot's exponent is bounded below
        later_slack = sum(m_cap - m0[j] for j in range(i + 1, N))
        lo_m = m0[i] - budget - later_slack
        hi_k = word[-1] - 1 if word else idx_join(lo_m, n, n)
        hi_k = min(hi_k, idx_join(lo_m, n, n))
        for kk in range(hi_k, lo_k - 1, -1):
            m, _ = idx_split(kk, n)
            contrib = m0[i] - m
            if deg + contrib > k + later_slack:
                continue
            grow(word + (kk,), deg + contrib)

    grow((), 0)
    return sorted(out, reverse=True)


def strip_head(M, head):
    """Canonical minimal head: drop entries matching the vacuum pattern."""
    head = list(head)
    while head and head[-1] == M - len(head) + 1:
        head.pop()
    return tuple(head)


def extend_head(M, head, length):
    head = list(head)
    while len(head) < length:
        head.append(M - len(head))
    return tuple(head)


def semi_degree(M, n, head):
    return finite_degree(M, n, head)


def fock_component_basis(M, k, n):
    """Canonical heads of the degree-k component of the charge-M Fock space.

    Heads are vacuum shifts by a partition beta (k_i = M - i + 1 + beta_i,
    strictly decreasing automatically); every slot contributes a
    non-negative amount to the degree, so the search prunes exactly.  Note
    the degree-0 component is larger than the vacuum alone when M is not
    divisible by n (color-only shifts cost nothing).
    """
    out = [()] if k == 0 else []
    maxlen = n * (k + 1)
    maxpart = n * k + n - 1

    def grow(beta):
        head = tuple(M - j + beta[j] for j in range(len(beta)))
        deg = semi_degree(M, n, head)
        if deg > k:
            return
        if beta and deg == k:
            out.append(head)
        if len(beta) >= maxlen:
            return
        hi = beta[-1] if beta else maxpart
        for b in range(1, hi + 1):
            grow(beta + [b])

    grow([])
    return sorted(set(out), reverse=True)


def rho_bar(M, k, l, w: WedgeVector):
    """Append the vacuum tail: V_M^{s+nl, k} -> F_M^k (heads stripped).

    Valid inputs never collide with the tail: the last vacuum color at a
    length s+nl is 1, so every admissible word stays above M - s - nl.
    """
    N = w.N
    out = {}
    for word, c in w.terms.items():
        if word and word[-1] <= M - N:
            raise TailMismatch("word %r dips into the vacuum tail" % (word,))
        head = strip_head(M, word)
        s = out.get(head)
        s = c if s is None else s + c
        if s:
            out[head] = s
        else:
            del out[head]
    return out


def rho_bar_inverse(M, k, l, semi_terms, n, field=QP) -> WedgeVector:
    """Truncate each head to length s+nl; the discarded part must be vacuum."""
    s = M % n
    N = s + n * l
    out = {}
    for head, c in semi_terms.items():
        if len(head) > N:
            raise TailMismatch("head %r longer than %d" % (head, N))
        word = extend_head(M, head, N)
        out[word] = c
    return WedgeVector(field, n, N, out)


def semi_canonicalize(M, n, words, field=QP):
    """Normalize a dict of equal-length words followed by the vacuum tail of
    matching charge into canonical semi-infinite form (minimal heads).

    Words whose minimum dips into the tail region are extended with tail
    entries and restraightened until the junction is clean.
    """
    pending = dict(words)
    out = {}
    guard = 0
    while pending:
        guard += 1
        if guard > 200:
            raise NonTermination("semi-infinite canonicalization loop")
        batch = {}
        for w, c in pending.items():
            batch.setdefault(len(w), {})
            s = batch[len(w)].get(w)
            s = c if s is None else s + c
            batch[len(w)][w] = s
        pending = {}
        for N, group in batch.items():
            straightened = straighten_words(n, group, field)
            for w, c in straightened.items():
                if not c:
                    continue
                tail_top = M - N  # first index of the remaining tail
                if w and w[-1] <= tail_top:
                    # junction not normally ordered: pull tail entries down
                    # to one below the word's minimum and restraighten
                    need = tail_top - (w[-1] - 1) + 1
                    ext = w + tuple(tail_top - j for j in range(need))
                    s = pending.get(ext)
                    s = c if s is None else s + c
                    pending[ext] = s
                else:
                    h = strip_head(M, w)
                    s = out.get(h)
                    s = c if s is None else s + c
                    if s:
                        out[h] = s
                    else:
                        del out[h]
    return {h: c for h, c in out.items() if c}


# ---------------------------------------------------------------------------
# Heisenberg action

HEIS_STABILIZE_BOUND = 12


def heisenberg_B(a, semi_terms, M, n, field=QP, degree_hint=None):
    """B_a = sum_i z_i^a acting on a semi-infinite vector (canonical heads).

    Truncates at head length N, acts, and grows N by n until two
    consecutive truncations agree.
    """
    if a == 0:
        raise ValueError("a must be nonzero")
    if not semi_terms:
        return {}
    if degree_hint is None:
        degree_hint = max(semi_degree(M, n, h) for h in semi_terms)
    longest = max((len(h) for h in semi_terms), default=0)
    s = M % n
    N = s + n * (degree_hint + abs(a) + 1)
    while N < longest:
        N += n
    prev = None
    for _ in range(HEIS_STABILIZE_BOUND):
        cur = _heis_truncated(a, semi_terms, M, n, N, field)
        if prev is not None and cur == prev:
            return cur
        prev = cur
        N += n
    raise NoStabilization("B_%d did not stabilize by head length %d" % (a, N))


def _heis_truncated(a, semi_terms, M, n, N, field):
    words = {}
    for head, c in semi_terms.items():
        w = extend_head(M, head, N)
        for i in range(N):
            w2 = w[:i] + (w[i] - n * a,) + w[i + 1:]
            words[w2] = words.get(w2, field.zero) + c
    return semi_canonicalize(M, n, words, field)


def heisenberg_ideal_basis(M, k, n, field=QP):
    """Echelonized span of B_-a applied to the lower components, inside the
    degree-k component; returns (Echelon, list of generating vectors)."""
    ech = linalg.Echelon()
    gens = []
    for a in range(1, k + 1):
        for head in fock_component_basis(M, k - a, n):
            vec = heisenberg_B(-a, {head: field.one}, M, n, field,
                               degree_hint=k - a)
            if vec:
                gens.append(vec)
                ech.add(vec)
    return ech, gens
