"""Skew diagrams, border strips, semi-standard tableaux and characters.

Geometry: boxes are unit squares addressed by (x, y) with x growing to the
right and y growing downward, both 1-based.  A border strip <m_1,...,m_r>
has r columns; m_1 is the height of the *rightmost* column and adjacent
columns overlap in exactly one row.  Box numbering sorts by x first, then y.

Characters live in the weight lattice of sl_n: a monomial z_1^c_1...z_n^c_n
only matters up to a common shift of all exponents, and :class:`CharPoly`
stores exponent vectors shifted so their minimum entry is 0.  All q-graded
characters here are normalized so the lowest grade is 0 (the fractional
global prefactors cancel from every comparison we perform).
"""

from __future__ import annotations

from fractions import Fraction

from .exactring import QP, RingElem


class BorderStrip:
    """A border strip, stored as right-to-left column heights."""

    def __init__(self, cols):
        cols = tuple(int(m) for m in cols)
        if any(m < 1 for m in cols):
            raise ValueError("column heights must be positive: %r" % (cols,))
        self.cols = cols

    @property
    def r(self):
        return len(self.cols)

    @property
    def degree(self):
        return sum(self.cols)

    def boxes(self):
        """Boxes in the numbering order (x, then y), as (x, y) pairs."""
        out = []
        r = len(self.cols)
        tops = []
        t = 1
        for m in self.cols:
            tops.append(t)
            t += m - 1
        for c in range(r, 0, -1):
            x = r - c + 1
            for l in range(self.cols[c - 1]):
                out.append((x, tops[c - 1] + l))
        return out

    def __eq__(self, other):
        return isinstance(other, BorderStrip) and self.cols == other.cols

    def __hash__(self):
        return hash(self.cols)

    def __repr__(self):
        return "BorderStrip(%s)" % (",".join(str(m) for m in self.cols))


EMPTY_STRIP = BorderStrip.__new__(BorderStrip)
EMPTY_STRIP.cols = ()


def parse_strip(text) -> BorderStrip:
    text = text.strip()
    if not text:
        return EMPTY_STRIP
    return BorderStrip(int(t) for t in text.split(","))


class SkewDiagram:
    """lambda/mu with both partitions non-increasing and mu inside lambda."""

    def __init__(self, lam, mu):
        lam = tuple(int(a) for a in lam)
        mu = tuple(int(a) for a in mu)
        mu = mu + (0,) * (len(lam) - len(mu))
        if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
            raise ValueError("lambda is not a partition: %r" % (lam,))
        if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
            raise ValueError("mu is not a partition: %r" % (mu,))
        if len(mu) > len(lam) and any(mu[len(lam):]):
            raise ValueError("mu sticks out of lambda")
        if any(m > l for l, m in zip(lam, mu)):
            raise ValueError("mu not contained in lambda")
        self.lam = lam
        self.mu = mu

    @property
    def degree(self):
        return sum(l - m for l, m in zip(self.lam, self.mu))

    def boxes(self):
        """Boxes ordered by x, then y (the content-label numbering order)."""
        out = []
        for y, (l, m) in enumerate(zip(self.lam, self.mu), start=1):
            for x in range(m + 1, l + 1):
                out.append((x, y))
        out.sort()
        return out

    def __eq__(self, other):
        return (isinstance(other, SkewDiagram)
                and self.lam == other.lam and self.mu == other.mu)

    def __repr__(self):
        return "SkewDiagram(%r, %r)" % (self.lam, self.mu)


def strip_to_skew(theta: BorderStrip) -> SkewDiagram:
    """The unique skew diagram realizing a border strip."""
    boxes = set(theta.boxes())
    if not boxes:
        return SkewDiagram((), ())
    rows = {}
    for x, y in boxes:
        rows.setdefault(y, []).append(x)
    height = max(rows)
    lam, mu = [], []
    for y in range(1, height + 1):
        xs = rows[y]
        lam.append(max(xs))
        mu.append(min(xs) - 1)
    return SkewDiagram(lam, mu)


def is_border_strip_shape(boxes) -> bool:
    """Brute-force check: connected and free of 2x2 blocks."""
    boxes = set(boxes)
    if not boxes:
        return True
    for (x, y) in boxes:
        if {(x + 1, y), (x, y + 1), (x + 1, y + 1)} <= boxes:
            return False
    seen = set()
    stack = [next(iter(boxes))]
    while stack:
        b = stack.pop()
        if b in seen:
            continue
        seen.add(b)
        x, y = b
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in boxes and nb not in seen:
                stack.append(nb)
    return seen == boxes


class SSTableau:
    """A semi-standard filling of a fixed skew shape."""

    __slots__ = ("boxes", "entries")

    def __init__(self, boxes, entries):
        self.boxes = boxes          # tuple of (x, y), sorted
        self.entries = entries      # tuple of ints, aligned with boxes

    def weight(self, n):
        w = [0] * n
        for e in self.entries:
            w[e - 1] += 1
        return tuple(w)

    def __eq__(self, other):
        return self.boxes == other.boxes and self.entries == other.entries

    def __hash__(self):
        return hash((self.boxes, self.entries))

    def __repr__(self):
        return "SSTableau(%r)" % (dict(zip(self.boxes, self.entries)),)


def enumerate_sst(shape, n: int):
    """All semi-standard tableaux with entries 1..n, row-weak, column-strict."""
    if isinstance(shape, BorderStrip):
        shape = strip_to_skew(shape)
    boxes = sorted(shape.boxes(), key=lambda b: (b[1], b[0]))  # row-major fill
    box_pos = {b: i for i, b in enumerate(boxes)}
    out = []
    entries = [0] * len(boxes)

    def fill(i):
        if i == len(boxes):
            out.append(SSTableau(tuple(sorted(boxes)), _reorder(boxes, entries)))
            return
        x, y = boxes[i]
        lo = 1
        left = box_pos.get((x - 1, y))
        if left is not None:
            lo = max(lo, entries[left])
        up = box_pos.get((x, y - 1))
        if up is not None:
            lo = max(lo, entries[up] + 1)
        for v in range(lo, n + 1):
            entries[i] = v
            fill(i + 1)
        entries[i] = 0

    fill(0)
    return out


def _reorder(boxes, entries):
    pairs = sorted(zip(boxes, entries))
    return tuple(e for _, e in pairs)


class CharPoly:
    """Weight-lattice character with coefficients in the base field.

    Exponent vectors are class representatives: shifted so min(entries) = 0.
    """

    def __init__(self, nz, field=QP):
        self.nz = nz
        self.field = field
        self.terms = {}

    @staticmethod
    def _canon(exps):
        m = min(exps)
        if m:
            return tuple(e - m for e in exps)
        return tuple(exps)

    def add_term(self, exps, coeff):
        if not coeff:
            return
        e = self._canon(exps)
        s = self.terms.get(e)
        s = coeff if s is None else s + coeff
        if s:
            self.terms[e] = s
        else:
            del self.terms[e]

    def __add__(self, other):
        out = CharPoly(self.nz, self.field)
        out.terms = dict(self.terms)
        for e, c in other.terms.items():
            out.add_term(e, c)
        return out

    def scaled(self, coeff):
        out = CharPoly(self.nz, self.field)
        if coeff:
            out.terms = {e: coeff * c for e, c in self.terms.items()}
        return out

    def __eq__(self, other):
        return (isinstance(other, CharPoly) and self.nz == other.nz
                and self.terms == other.terms)

    def is_zero(self):
        return not self.terms

    def dimension(self) -> RingElem:
        """Evaluation at z = (1,...,1); graded dimension when q-graded."""
        total = self.field.zero
        for c in self.terms.values():
            total = total + c
        return total

    def is_symmetric(self) -> bool:
        for i in range(self.nz - 1):
            for e, c in self.terms.items():
                swapped = list(e)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                if self.terms.get(self._canon(swapped)) != c:
                    return False
        return True

    def to_json(self):
        return {",".join(str(x) for x in e): str(self.terms[e])
                for e in sorted(self.terms)}

    def __repr__(self):
        return "CharPoly(%r)" % (self.terms,)


def skew_schur(shape, n: int, field=QP) -> CharPoly:
    """Sum of z^(weight of T) over semi-standard tableaux of the shape."""
    out = CharPoly(n, field)
    for t in enumerate_sst(shape, n):
        out.add_term(t.weight(n), field.one)
    return out


def t_statistic(theta: BorderStrip) -> int:
    r = theta.r
    return sum((r - i) * m for i, m in enumerate(theta.cols, start=1))


def strip_grade(theta: BorderStrip, n: int, hw: int) -> Fraction:
    """Normalized q-grade of a strip inside the level-1 character of V(Lambda_hw).

    This is |theta|(n-|theta|)/2n + t(theta) with the constant hw(n-hw)/2n
    subtracted, so that the minimal strip of each class sits at grade 0; it
    is an integer whenever |theta| = hw mod n.
    """
    d = theta.degree
    return Fraction(d * (n - d) - hw * (n - hw), 2 * n) + t_statistic(theta)


def border_strips(n: int, hw: int, max_grade: int):
    """Representatives <m_1..m_r> (m_i <= n, m_r < n, or empty) of all
    identification classes with |theta| = hw (mod n) and grade <= max_grade.

    Prepending a column never decreases the grade, which makes the search
    finite; every identification class is enumerated exactly once because
    trailing columns of height n are never produced.
    """
    if not 0 <= hw < n:
        raise ValueError("need 0 <= hw < n")
    found = []
    if hw == 0 and max_grade >= 0:
        found.append(EMPTY_STRIP)
    stack = [(a,) for a in range(1, n)]
    while stack:
        cols = stack.pop()
        theta = BorderStrip(cols)
        g = strip_grade(theta, n, hw)
        if g > max_grade:
            continue
        if theta.degree % n == hw % n:
            found.append(theta)
        for a in range(1, n + 1):
            stack.append((a,) + cols)
    found.sort(key=lambda s: (strip_grade(s, n, hw), s.degree, s.cols))
    return found


def char_level1(n: int, hw: int, q_cutoff: int, field=QP) -> CharPoly:
    """Graded character of the level-1 module with highest weight index hw,
    truncated at normalized q-grade q_cutoff (global prefactor dropped)."""
    if q_cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    qgen = field.gen("q")
    out = CharPoly(n, field)
    for theta in border_strips(n, hw, q_cutoff):
        g = strip_grade(theta, n, hw)
        assert g.denominator == 1 and g >= 0
        coeff = qgen ** int(g)
        for e, c in skew_schur(theta, n, field).terms.items():
            out.add_term(e, coeff * c)
    return out
