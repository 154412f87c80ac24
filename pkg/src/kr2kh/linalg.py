"""Exact rational linear algebra and bigraded chain complex homology.

Matrices are sparse {(row, col): Fraction} maps.  Rank is computed without
floating point: rows are scaled to integers, easy pivots are peeled off, and
the remainder goes through fraction-free (Bareiss style) elimination so the
intermediate entries stay integral.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class NotAComplex(Exception):
    """d followed by d is not zero."""


class SignInconsistency(Exception):
    """A cube assembly produced a differential that does not square to zero."""


class QMatrix:
    """Sparse matrix over the rationals."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                self.add(r, c, v)

    @classmethod
    def from_rows(cls, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        m = cls(nrows, ncols)
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                m.add(r, c, v)
        return m

    def add(self, r, c, v):
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError((r, c))
        v = v if isinstance(v, Fraction) else Fraction(v)
        if not v:
            return
        key = (r, c)
        new = self.entries.get(key, Fraction(0)) + v
        if new:
            self.entries[key] = new
        else:
            self.entries.pop(key, None)

    def __getitem__(self, key):
        return self.entries.get(key, Fraction(0))

    def is_zero(self):
        return not self.entries

    def transpose(self):
        m = QMatrix(self.ncols, self.nrows)
        for (r, c), v in self.entries.items():
            m.entries[(c, r)] = v
        return m

    def scale(self, factor):
        factor = factor if isinstance(factor, Fraction) else Fraction(factor)
        m = QMatrix(self.nrows, self.ncols)
        if factor:
            for key, v in self.entries.items():
                m.entries[key] = v * factor
        return m

    def compose(self, other):
        """self @ other, applying other first."""
        if other.nrows != self.ncols:
            raise ValueError("shape mismatch")
        by_row = {}
        for (r, c), v in self.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = QMatrix(self.nrows, other.ncols)
        by_col = {}
        for (r, c), v in other.entries.items():
            by_col.setdefault(c, {})[r] = v
        for c_out, col in by_col.items():
            for r_out, pairs in by_row.items():
                acc = Fraction(0)
                for k, v in pairs:
                    w = col.get(k)
                    if w is not None:
                        acc += v * w
                if acc:
                    out.entries[(r_out, c_out)] = acc
        return out

    def __eq__(self, other):
        return (
            isinstance(other, QMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    __hash__ = None

    def __repr__(self):
        return "QMatrix(%dx%d, %d nonzero)" % (
            self.nrows,
            self.ncols,
            len(self.entries),
        )


def _integer_rows(m):
    """Rows of m as {col: int} dicts with denominators cleared."""
    by_row = {}
    for (r, c), v in m.entries.items():
        by_row.setdefault(r, {})[c] = v
    rows = []
    for d in by_row.values():
        mult = 1
        for v in d.values():
            mult = mult * v.denominator // gcd(mult, v.denominator)
        row = {c: int(v * mult) for c, v in d.items()}
        if row:
            rows.append(row)
    return rows


def rank(m):
    """Exact rank of a QMatrix."""
    rows = _integer_rows(m)
    rk = 0

    # Peel off singleton pivots first; cube differentials are mostly unit
    # entries and this keeps the Bareiss core tiny.
    while True:
        progress = False
        col_uses = {}
        for row in rows:
            for c in row:
                col_uses[c] = col_uses.get(c, 0) + 1
        # rows with a single entry
        new_rows = []
        killed_cols = set()
        for row in rows:
            live = {c: v for c, v in row.items() if c not in killed_cols}
            if not live:
                continue
            if len(live) == 1:
                rk += 1
                killed_cols.add(next(iter(live)))
                progress = True
            else:
                new_rows.append(live)
        rows = new_rows
        if killed_cols:
            rows = [
                {c: v for c, v in row.items() if c not in killed_cols}
                for row in rows
            ]
            rows = [r for r in rows if r]
        # columns hit by a single row
        col_uses = {}
        for i, row in enumerate(rows):
            for c in row:
                col_uses.setdefault(c, []).append(i)
        solo = [c for c, idxs in col_uses.items() if len(idxs) == 1]
        if solo:
            dead_rows = set()
            for c in solo:
                i = col_uses[c][0]
                if i not in dead_rows:
                    dead_rows.add(i)
                    rk += 1
                    progress = True
            rows = [r for i, r in enumerate(rows) if i not in dead_rows]
        if not progress:
            break

    # Integer elimination on whatever is left, with per-row gcd reduction
    # to keep entries from growing.
    while rows:
        col_uses = {}
        for i, row in enumerate(rows):
            for c in row:
                col_uses[c] = col_uses.get(c, 0) + 1
        best = None
        for i, row in enumerate(rows):
            for c, v in row.items():
                score = (len(row) - 1) * (col_uses[c] - 1)
                key = (score, abs(v), i, c)
                if best is None or key < best[0]:
                    best = (key, i, c)
        _, pi, pc = best
        prow = rows.pop(pi)
        pv = prow[pc]
        rk += 1
        new_rows = []
        for row in rows:
            rv = row.pop(pc, 0)
            if rv:
                merged = dict((c, pv * v) for c, v in row.items())
                for c, v in prow.items():
                    if c != pc:
                        merged[c] = merged.get(c, 0) - rv * v
                row = {c: v for c, v in merged.items() if v}
                if row:
                    g = 0
                    for v in row.values():
                        g = gcd(g, v)
                    if g > 1:
                        row = {c: v // g for c, v in row.items()}
            if row:
                new_rows.append(row)
        rows = new_rows
    return rk


class BigradedComplex:
    """Chain groups indexed by (homological i, quantum j).

    dims[(i, j)] is the dimension of the (i, j) spot; diffs[(i, j)] is the
    differential block into (i + 1, j).
    """

    def __init__(self, dims, diffs):
        self.dims = {k: v for k, v in dims.items() if v}
        self.diffs = {}
        for (i, j), m in diffs.items():
            if m.ncols != self.dims.get((i, j), 0):
                raise ValueError("block source shape mismatch at %r" % ((i, j),))
            if m.nrows != self.dims.get((i + 1, j), 0):
                raise ValueError("block target shape mismatch at %r" % ((i, j),))
            self.diffs[(i, j)] = m

    def check(self):
        for (i, j), m in self.diffs.items():
            n = self.diffs.get((i + 1, j))
            if n is not None and not n.compose(m).is_zero():
                raise NotAComplex("d^2 != 0 at (%d, %d)" % (i, j))


def homology(c):
    """Dimension table of ker/im for each bidegree."""
    c.check()
    table = {}
    for (i, j), dim in c.dims.items():
        rout = rank(c.diffs[(i, j)]) if (i, j) in c.diffs else 0
        rin = rank(c.diffs[(i - 1, j)]) if (i - 1, j) in c.diffs else 0
        h = dim - rout - rin
        assert h >= 0
        if h:
            table[(i, j)] = h
    return BigradedDimTable(table)


class BigradedDimTable:
    """Map (i, j) -> dimension with Poincare and Euler summaries."""

    def __init__(self, data):
        self.data = {k: v for k, v in data.items() if v}

    def rows(self):
        return [[i, j, self.data[(i, j)]] for i, j in sorted(self.data)]

    def __eq__(self, other):
        if isinstance(other, BigradedDimTable):
            return self.data == other.data
        if isinstance(other, dict):
            return self.data == {k: v for k, v in other.items() if v}
        return NotImplemented

    __hash__ = None

    def mirror_q(self):
        return BigradedDimTable({(i, -j): v for (i, j), v in self.data.items()})

    def euler(self):
        out = {}
        for (i, j), dim in self.data.items():
            out[j] = out.get(j, 0) + (dim if i % 2 == 0 else -dim)
        return {j: c for j, c in out.items() if c}

    def poincare(self):
        """Two-variable Poincare polynomial in t (homological) and q."""
        if not self.data:
            return "0"
        parts = []
        for i, j in sorted(self.data):
            dim = self.data[(i, j)]
            factors = []
            if abs(dim) != 1:
                factors.append(str(abs(dim)))
            if i:
                factors.append("t" if i == 1 else "t^%d" % i)
            if j:
                factors.append("q" if j == 1 else "q^%d" % j)
            body = "*".join(factors) if factors else "1"
            if not parts:
                parts.append(body if dim > 0 else "-" + body)
            else:
                parts.append(("+ " if dim > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self):
        if not self.data:
            return "(empty)"
        lines = []
        for i, j in sorted(self.data):
            lines.append("i=%-3d j=%-4d dim=%d" % (i, j, self.data[(i, j)]))
        return "\n".join(lines)

    def __repr__(self):
        return "BigradedDimTable(%r)" % (self.data,)


# -- Laurent polynomial helpers (exponent -> integer coefficient) ----------


def laurent_add(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def laurent_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def laurent_pow(a, n):
    out = {0: 1}
    for _ in range(n):
        out = laurent_mul(out, a)
    return out


def laurent_invert_var(a):
    """Substitute q -> 1/q."""
    return {-e: c for e, c in a.items()}


def laurent_str(a, var="q"):
    if not a:
        return "0"
    parts = []
    for e in sorted(a):
        c = a[e]
        if e == 0:
            body = str(abs(c))
        else:
            v = var if e == 1 else "%s^%d" % (var, e)
            body = v if abs(c) == 1 else "%d*%s" % (abs(c), v)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)
