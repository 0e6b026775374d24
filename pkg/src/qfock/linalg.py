"""Exact sparse linear algebra over a rational-function field.

Vectors are dicts ``{basis key: RingElem}`` with no stored zeros; basis keys
can be anything hashable and mutually sortable (ints, tuples, ...).  Linear
maps are kept in column form ``{domain key: image vector}``.

The workhorses are :class:`Echelon` (incremental fully-reduced row echelon,
for ranks, membership and quotient projections) and :class:`SpanSolver`
(the same with combination tracking, for solving and nullspaces).  Pivoting
is deterministic: smallest basis key first.
"""

from __future__ import annotations


def vec_is_zero(v):
    return not v


def vec_scale(v, c):
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vec_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        if s is None:
            out[k] = c
        else:
            s = s + c
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def vec_sub(a, b):
    return vec_add(a, {k: -c for k, c in b.items()})


def vec_addmul(a, c, b):
    """a + c*b without building an intermediate vector."""
    if not c or not b:
        return dict(a)
    out = dict(a)
    for k, x in b.items():
        s = out.get(k)
        t = c * x
        s = s + t if s is not None else t
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def op_apply(op, v):
    out = {}
    for j, c in v.items():
        col = op.get(j)
        if not col:
            continue
        for i, x in col.items():
            s = out.get(i)
            t = c * x
            s = t if s is None else s + t
            if s:
                out[i] = s
            else:
                del out[i]
    return out


def op_mul(a, b):
    """The composite map: first b, then a."""
    out = {}
    for j, col in b.items():
        img = op_apply(a, col)
        if img:
            out[j] = img
    return out


def op_add(a, b):
    out = {j: dict(col) for j, col in a.items()}
    for j, col in b.items():
        merged = vec_add(out.get(j, {}), col)
        if merged:
            out[j] = merged
        else:
            out.pop(j, None)
    return out


def op_scale(a, c):
    if not c:
        return {}
    return {j: vec_scale(col, c) for j, col in a.items()}


def op_sub(a, b):
    return op_add(a, op_neg(b))


def op_neg(a):
    return {j: {i: -c for i, c in col.items()} for j, col in a.items()}


def op_eye(keys, one):
    return {k: {k: one} for k in keys}


def op_eq(a, b):
    keys = set(a) | set(b)
    for j in keys:
        if a.get(j, {}) != b.get(j, {}):
            return False
    return True


def op_is_zero(a):
    return all(not col for col in a.values())


class Echelon:
    """Fully-reduced row echelon of a growing set of vectors."""

    def __init__(self):
        self.rows = {}  # pivot key -> row (pivot coefficient is 1)

    @property
    def dim(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, v):
        """Remainder of v modulo the current span (supported off the pivots)."""
        v = dict(v)
        for p in [k for k in v if k in self.rows]:
            c = v.get(p)
            if c is None or not c:
                continue
            row = self.rows[p]
            for k, x in row.items():
                s = v.get(k)
                t = c * x
                s = -t if s is None else s - t
                if s:
                    v[k] = s
                else:
                    del v[k]
        return v

    def add(self, v) -> bool:
        """Insert v; returns True when it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        c = r[p]
        if not c.is_one():
            inv = c.inv()
            r = {k: inv * x for k, x in r.items()}
        for piv, row in self.rows.items():
            c2 = row.get(p)
            if c2:
                for k, x in r.items():
                    s = row.get(k)
                    t = c2 * x
                    s = -t if s is None else s - t
                    if s:
                        row[k] = s
                    else:
                        del row[k]
        self.rows[p] = r
        return True

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def basis(self):
        """The reduced row basis, ordered by pivot."""
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def span_rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.dim


def same_span(vs, ws) -> bool:
    a = Echelon()
    for v in vs:
        a.add(v)
    b = Echelon()
    for w in ws:
        b.add(w)
    if a.dim != b.dim:
        return False
    return all(a.contains(w) for w in ws) and all(b.contains(v) for v in vs)


class SpanSolver:
    """Echelon with combination tracking: solve and nullspace in one pass."""

    def __init__(self):
        self.rows = {}    # pivot -> (row vec, combo over inserted keys)
        self.null = []    # combos that summed to zero

    def _reduce(self, v, combo):
        # rows are not kept fully reduced, but every row's pivot is its
        # minimal key, so eliminating the smallest hit only introduces
        # larger keys and the loop terminates
        v = dict(v)
        while True:
            hits = [k for k in v if k in self.rows]
            if not hits:
                break
            p = min(hits)
            c = v[p]
            row, rcombo = self.rows[p]
            for k, x in row.items():
                s = v.get(k)
                t = c * x
                s = -t if s is None else s - t
                if s:
                    v[k] = s
                else:
                    del v[k]
            for k, x in rcombo.items():
                s = combo.get(k)
                t = c * x
                s = -t if s is None else s - t
                if s:
                    combo[k] = s
                else:
                    del combo[k]
        return v, combo

    def add(self, key, v, one) -> bool:
        """Insert a named vector; False (and a recorded null combo) if dependent."""
        v, combo = self._reduce(v, {key: one})
        if not v:
            self.null.append(combo)
            return False
        p = min(v)
        c = v[p]
        if not c.is_one():
            inv = c.inv()
            v = {k: inv * x for k, x in v.items()}
            combo = {k: inv * x for k, x in combo.items()}
        self.rows[p] = (v, combo)
        return True

    def solve(self, target):
        """Coefficients expressing target in the inserted vectors, or None."""
        rem, combo = self._reduce(target, {})
        if rem:
            return None
        return {k: -c for k, c in combo.items()}

    @property
    def dim(self):
        return len(self.rows)


def nullspace(columns, one):
    """Basis of {x : sum_j x_j columns[j] = 0}, keyed like ``columns``."""
    s = SpanSolver()
    for j in sorted(columns):
        s.add(j, columns[j], one)
    return s.null
