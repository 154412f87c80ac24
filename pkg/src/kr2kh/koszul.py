"""Koszul matrix factorizations over the marked-point polynomial ring.

A factorization is a list of rows (a_i, b_i).  States are subsets of rows,
encoded as bitmasks; the module acts on vectors {mask: polynomial}.  The
differential sends u|A> to the signed sum of a_i u|A+i> (bit i clear) and
b_i u|A-i> (bit i set), with sign (-1)^(set bits below i).  Squaring it
multiplies by the potential sum(a_i b_i).

Quantum grading: deg z = 2 and

    deg(u|A>) = deg(u) + sum(s_i for i in A) + sum(ext_i) + global_q

with s_i = deg(b_i) - 3 pinned by requiring the differential to be
homogeneous of degree 3.  ext is an extra per-row shift (the second row of
a thick-edge pair carries ext = -1); it contributes whether or not the bit
is set, so removing a row during elimination moves ext into global_q.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import (
    INHOMOGENEOUS,
    MultiPoly,
    NotLinearIn,
    ONE,
    ZERO,
    ZeroPolynomial,
    q_degree,
    solve_linear,
)


class NonzeroPotential(Exception):
    """Backward transport was requested across an elimination that has
    none (the potential involves the eliminated variable)."""


class ZeroScalar(Exception):
    """Row rescaling by zero."""


def _as_poly(p):
    if isinstance(p, MultiPoly):
        return p
    return MultiPoly.const(p)


class KoszulRow:
    __slots__ = ("a", "b", "s", "ext")

    def __init__(self, a, b, s=None, ext=0):
        self.a = _as_poly(a)
        self.b = _as_poly(b)
        self.ext = ext
        if s is None:
            if self.b:
                s = q_degree(self.b) - 3
            elif self.a:
                s = 3 - q_degree(self.a)
            else:
                raise ValueError("zero row needs an explicit s")
        self.s = s
        if self.a and self.b:
            assert q_degree(self.a) == 3 - self.s, "row not homogeneous"

    def subs(self, mapping):
        return KoszulRow(
            self.a.subs(mapping), self.b.subs(mapping), s=self.s, ext=self.ext
        )

    def __eq__(self, other):
        if not isinstance(other, KoszulRow):
            return NotImplemented
        return (
            self.a == other.a
            and self.b == other.b
            and self.s == other.s
            and self.ext == other.ext
        )

    def __repr__(self):
        return "(%s | %s)" % (self.a, self.b)


def arc_row(frm, to):
    """Row of an oriented arc segment from mark frm to mark to."""
    zf, zt = MultiPoly.var(frm), MultiPoly.var(to)
    return KoszulRow(zt * zt + zt * zf + zf * zf, zt - zf)


def loop_row(mark):
    """Terminal row of a circle that closed up at the given mark."""
    z = MultiPoly.var(mark)
    return KoszulRow(3 * z * z, ZERO, s=-1)


def wide_pair_u(i, j, k, l):
    """Second-row left entry of a thick edge; with S = z_i + z_j and
    e = z_k + z_l this is S^2 + S e + e^2 - 3 z_i z_j."""
    S = MultiPoly.var(i) + MultiPoly.var(j)
    e = MultiPoly.var(k) + MultiPoly.var(l)
    return S * S + S * e + e * e - 3 * (MultiPoly.var(i) * MultiPoly.var(j))


def wide_rows(i, j, k, l):
    """The two rows of a thick edge with outgoing marks i, j and incoming
    marks k, l; their potential is z_i^3 + z_j^3 - z_k^3 - z_l^3."""
    zi, zj = MultiPoly.var(i), MultiPoly.var(j)
    zk, zl = MultiPoly.var(k), MultiPoly.var(l)
    row1 = KoszulRow(-3 * (zk + zl), zi * zj - zk * zl)
    row2 = KoszulRow(wide_pair_u(i, j, k, l), zi + zj - zk - zl, ext=-1)
    return [row1, row2]


# -- vectors ------------------------------------------------------------------


def vec_add(u, v):
    out = dict(u)
    for m, p in v.items():
        q = out.get(m, ZERO) + p
        if q:
            out[m] = q
        elif m in out:
            del out[m]
    return out


def vec_scale(u, c):
    if not c:
        return {}
    return {m: p * c for m, p in u.items()}


def vec_sub(u, v):
    return vec_add(u, vec_scale(v, -1))


def vec_is_zero(u):
    return all(not p for p in u.values())


class KoszulMF:
    def __init__(self, rows, global_q=0, z2=0):
        self.rows = list(rows)
        self.global_q = global_q
        self.z2 = z2 % 2

    @property
    def nrows(self):
        return len(self.rows)

    def potential(self):
        w = ZERO
        for row in self.rows:
            w = w + row.a * row.b
        return w

    def state_q(self, mask, p=ONE):
        """Quantum degree of p|mask>; INHOMOGENEOUS if p is."""
        d = q_degree(p)
        if d is INHOMOGENEOUS:
            return INHOMOGENEOUS
        for i, row in enumerate(self.rows):
            if mask >> i & 1:
                d += row.s
            d += row.ext
        return d + self.global_q

    def vector_q(self, vec):
        """Common degree of all components, or INHOMOGENEOUS."""
        deg = None
        for m, p in vec.items():
            if not p:
                continue
            d = self.state_q(m, p)
            if d is INHOMOGENEOUS or (deg is not None and d != deg):
                return INHOMOGENEOUS
            deg = d
        return deg

    def apply_differential(self, vec, skip=None):
        out = {}
        for mask, p in vec.items():
            if not p:
                continue
            below = 0
            for i, row in enumerate(self.rows):
                if i == skip:
                    if mask >> i & 1:
                        below ^= 1
                    continue
                sign = -1 if below else 1
                if mask >> i & 1:
                    below ^= 1
                    entry = row.b
                    tgt = mask & ~(1 << i)
                else:
                    entry = row.a
                    tgt = mask | (1 << i)
                if entry:
                    q = out.get(tgt, ZERO) + entry * p * sign
                    if q:
                        out[tgt] = q
                    elif tgt in out:
                        del out[tgt]
        return out

    def differential_blocks(self):
        """The two matrices of the factorization, even states to odd and
        back, as nested dicts {target mask: {source mask: poly}}."""
        even = [m for m in range(1 << self.nrows) if bin(m).count("1") % 2 == 0]
        odd = [m for m in range(1 << self.nrows) if bin(m).count("1") % 2 == 1]
        d0, d1 = {}, {}
        for src, block in ((even, d0), (odd, d1)):
            for m in src:
                img = self.apply_differential({m: ONE})
                for t, p in img.items():
                    block.setdefault(t, {})[m] = p
        return d0, d1

    def dump(self):
        lines = [
            "rows: %d   global q shift: %d   z2: %d"
            % (self.nrows, self.global_q, self.z2)
        ]
        for i, row in enumerate(self.rows):
            lines.append(
                "  %2d: (%s | %s) {s=%+d, ext=%+d}"
                % (i, row.a, row.b, row.s, row.ext)
            )
        w = self.potential()
        lines.append("potential: %s" % w)
        return "\n".join(lines)

    def __repr__(self):
        return "KoszulMF(rows=%d, global_q=%d, z2=%d)" % (
            self.nrows,
            self.global_q,
            self.z2,
        )


class MFMap:
    """Map between factorizations, carried as a vector transformer."""

    def __init__(self, source, target, fn, q_degree=0):
        self.source = source
        self.target = target
        self.fn = fn
        self.q_degree = q_degree

    def __call__(self, vec):
        return self.fn(vec)

    def then(self, other):
        """self followed by other."""
        assert other.source is self.target or other.source == self.target

        def fn(vec):
            return other.fn(self.fn(vec))

        return MFMap(
            self.source, other.target, fn, self.q_degree + other.q_degree
        )

    def scale(self, c):
        if not c:
            raise ZeroScalar("cannot scale a map by zero")

        def fn(vec):
            return vec_scale(self.fn(vec), c)

        return MFMap(self.source, self.target, fn, self.q_degree)


def identity_map(m):
    return MFMap(m, m, lambda vec: dict(vec))


def tensor(m, n):
    """Tensor product of factorizations: rows concatenate, shifts add."""
    return KoszulMF(
        list(m.rows) + list(n.rows),
        global_q=m.global_q + n.global_q,
        z2=m.z2 ^ n.z2,
    )


def differential(m):
    """The two halves of the differential as state-basis matrices.

    Returns (d0, d1) with d0 acting on even states and d1 on odd ones,
    each a nested dict {target mask: {source mask: poly}}.  Composing the
    two either way gives potential() times the identity.
    """
    return m.differential_blocks()


# -- row elimination ----------------------------------------------------------


def _mask_drop_bit(mask, j):
    low = mask & ((1 << j) - 1)
    high = (mask >> (j + 1)) << j
    return low | high


def _mask_insert_bit(mask, j, val):
    low = mask & ((1 << j) - 1)
    high = (mask >> j) << (j + 1)
    return low | high | (val << j)


def _parity_below(mask, j):
    return bin(mask & ((1 << j) - 1)).count("1") % 2


def _parity_above(mask, j):
    return bin(mask >> (j + 1)).count("1") % 2


def _quotient_by_linear(p, t, pi_t, alpha):
    """(p - p[t -> pi_t]) / (alpha (t - pi_t)), which is always exact."""
    out = ZERO
    for d, coeff in p.as_univariate(t).items():
        if d == 0:
            continue
        tm = ONE
        # sum of t^m pi^(d-1-m)
        acc = ZERO
        for m in range(d):
            acc = acc + tm * (pi_t ** (d - 1 - m))
            tm = tm * MultiPoly.var(t)
        out = out + coeff * acc
    return out / alpha


def eliminate_row(m, j, side, t):
    """Remove row j by Gaussian elimination at variable t.

    side "b": the row's right entry is linear in t; surviving states have
    bit j clear.  side "a": same with the left entry; surviving states
    have bit j set, so the z2 grading of the result is flipped.

    Returns (reduced MF, forward map, backward map).  The backward map is
    None when the potential involves t, in which case no chain-level
    section exists.
    """
    row = m.rows[j]
    entry = row.b if side == "b" else row.a
    sol = solve_linear(entry, t)
    pi_t = sol[t]
    alpha_c = entry.as_univariate(t)[1].constant_term()

    new_rows = [r.subs(sol) for i, r in enumerate(m.rows) if i != j]
    if side == "b":
        global2 = m.global_q + row.ext
        z2 = m.z2
    else:
        global2 = m.global_q + row.ext + row.s
        z2 = m.z2 ^ 1
    m2 = KoszulMF(new_rows, global_q=global2, z2=z2)

    subs_pi = dict(sol)

    def project(vec):
        # component with the kept bit value, variable t substituted away
        keep = 0 if side == "b" else 1
        out = {}
        for mask, p in vec.items():
            if (mask >> j & 1) != keep:
                continue
            q = p.subs(subs_pi)
            if not q:
                continue
            tgt = _mask_drop_bit(mask, j)
            if side == "a" and _parity_above(mask, j):
                q = -q
            r = out.get(tgt, ZERO) + q
            if r:
                out[tgt] = r.deflated()
            elif tgt in out:
                del out[tgt]
        return out

    def include(vec):
        keep = 0 if side == "b" else 1
        out = {}
        for mask, p in vec.items():
            big = _mask_insert_bit(mask, j, keep)
            if side == "a" and _parity_above(big, j):
                p = -p
            out[big] = p
        return out

    def homotopy(vec):
        # invert the eliminated entry on the complementary bit value
        src_bit = 0 if side == "b" else 1
        out = {}
        for mask, p in vec.items():
            if (mask >> j & 1) != src_bit:
                continue
            q = _quotient_by_linear(p, t, pi_t, alpha_c)
            if not q:
                continue
            if _parity_below(mask, j):
                q = -q
            tgt = mask ^ (1 << j)
            r = out.get(tgt, ZERO) + q
            if r:
                out[tgt] = r
            elif tgt in out:
                del out[tgt]
        return out

    fwd = MFMap(m, m2, project)

    w = m.potential()
    if t in w.variables():
        return m2, fwd, None

    # the homotopy divides by (t - pi), an exact division that kills
    # every t-free product, so the differential feeding it may skip any
    # entry-times-coefficient pair with no t in either factor
    a_has_t = [bool(r.a) and t in r.a.variables() for r in m.rows]
    b_has_t = [bool(r.b) and t in r.b.variables() for r in m.rows]

    def diff_toward_t(vec):
        out = {}
        for mask, p in vec.items():
            if not p:
                continue
            p_has_t = t in p.variables()
            below = 0
            for i, row in enumerate(m.rows):
                if i == j:
                    if mask >> i & 1:
                        below ^= 1
                    continue
                neg = below
                if mask >> i & 1:
                    below ^= 1
                    if not (p_has_t or b_has_t[i]):
                        continue
                    entry = row.b
                    tgt = mask & ~(1 << i)
                else:
                    if not (p_has_t or a_has_t[i]):
                        continue
                    entry = row.a
                    tgt = mask | (1 << i)
                if entry:
                    q = entry * p
                    if neg:
                        q = -q
                    r = out.get(tgt, ZERO) + q
                    if r:
                        out[tgt] = r
                    elif tgt in out:
                        del out[tgt]
        return out

    def backward(vec):
        lifted = include(vec)
        correction = homotopy(diff_toward_t(lifted))
        out = vec_sub(lifted, correction)
        return {mask: p.deflated() for mask, p in out.items()}

    bwd = MFMap(m2, m, backward)
    return m2, fwd, bwd


def _inversions(seq):
    inv = 0
    for p in range(len(seq)):
        for q in range(p + 1, len(seq)):
            if seq[p] > seq[q]:
                inv += 1
    return inv


def permute_rows_map(src, tgt, sigma):
    """Reordering isomorphism between two listings of the same rows.

    sigma[old] = new must satisfy tgt.rows[sigma[p]] == src.rows[p].  A
    state is a wedge of row generators in ascending position order, so
    sending each generator to its new position costs the inversion parity
    of the relabeled sequence.
    """
    assert sorted(sigma) == list(range(src.nrows))
    assert tgt.nrows == src.nrows
    for p in range(src.nrows):
        assert tgt.rows[sigma[p]] == src.rows[p], "row %d changed" % p

    def fn(vec):
        out = {}
        for mask, p in vec.items():
            seq = [sigma[i] for i in range(src.nrows) if mask >> i & 1]
            tgt_mask = 0
            for s in seq:
                tgt_mask |= 1 << s
            if _inversions(seq) % 2:
                p = -p
            q = out.get(tgt_mask, ZERO) + p
            if q:
                out[tgt_mask] = q
            elif tgt_mask in out:
                del out[tgt_mask]
        return out

    return MFMap(src, tgt, fn)


def scale_row(m, j, c):
    """Isomorphic factorization with row j rescaled: a -> c a, b -> b / c.

    Returns (new MF, forward, backward); forward multiplies states with
    bit j set by c."""
    if not isinstance(c, (int, Fraction)):
        c = Fraction(c)
    if not c:
        raise ZeroScalar("row scale factor must be nonzero")
    rows = list(m.rows)
    old = rows[j]
    rows[j] = KoszulRow(old.a * c, old.b / c, s=old.s, ext=old.ext)
    m2 = KoszulMF(rows, global_q=m.global_q, z2=m.z2)

    def mk(factor, src, tgt):
        def fn(vec):
            out = {}
            for mask, p in vec.items():
                out[mask] = p * factor if (mask >> j & 1) else p
            return out

        return MFMap(src, tgt, fn)

    return m2, mk(c, m, m2), mk(Fraction(1) / c, m2, m)


# -- the two thick-edge zip maps ---------------------------------------------


def _chi_table(which, i, j, k, l):
    zi, zj = MultiPoly.var(i), MultiPoly.var(j)
    zk, zl = MultiPoly.var(k), MultiPoly.var(l)
    if which == 0:
        return {
            0b00: ((0b00, zi - zk), (0b11, zi - zj - 2 * zk - zl)),
            0b11: ((0b11, ONE),),
            0b10: ((0b10, zi), (0b01, MultiPoly.const(-1))),
            0b01: ((0b10, -zk), (0b01, ONE)),
        }
    return {
        0b00: ((0b00, ONE), (0b11, -zi + zj + 2 * zk + zl)),
        0b11: ((0b11, zi - zk),),
        0b10: ((0b10, ONE), (0b01, ONE)),
        0b01: ((0b10, zk), (0b01, zi)),
    }


def chi_map(which, src, tgt, marks):
    """Zip (which = 0) or unzip (which = 1) map on the first two rows.

    Source and target must agree on rows 2.. and differ only at the site:
    rows 0, 1 are the two arc rows through the crossing on one side and
    the thick-edge pair on the other.  marks is the (i, j, k, l) tuple of
    the thick edge.  The map is even, so no sign interaction with the
    remaining rows.  Raises quantum degree by 1.
    """
    table = _chi_table(which, *marks)

    def fn(vec):
        out = {}
        for mask, p in vec.items():
            site = mask & 0b11
            rest = mask & ~0b11
            for site2, coeff in table[site]:
                q = coeff * p
                if not q:
                    continue
                tgt_mask = rest | site2
                r = out.get(tgt_mask, ZERO) + q
                if r:
                    out[tgt_mask] = r
                elif tgt_mask in out:
                    del out[tgt_mask]
        return out

    return MFMap(src, tgt, fn, q_degree=1)


def _oriented_site(i, j, k, l):
    return KoszulMF([arc_row(k, j), arc_row(l, i)])


def _wide_site(i, j, k, l):
    return KoszulMF(wide_rows(i, j, k, l))


def chi0(marks):
    """Zip map between the standard local factorizations: two parallel
    arcs (incoming k, l; outgoing j, i) into the thick edge with the same
    boundary.  marks = (i, j, k, l)."""
    return chi_map(0, _oriented_site(*marks), _wide_site(*marks), marks)


def chi1(marks):
    """Unzip map, the other direction; chi1 . chi0 = (z_i - z_k) id."""
    return chi_map(1, _wide_site(*marks), _oriented_site(*marks), marks)


def transport(f, source_steps, target_steps):
    """Express a morphism on reduced bases.

    Each step list holds (reduced MF, forward, backward) triples in the
    order the reductions were performed, as returned by eliminate_row and
    scale_row.  The result applies every source backward map (deepest
    reduction first), then f, then every target forward map.
    """
    g = None
    for _, _, bwd in reversed(source_steps):
        if bwd is None:
            raise NonzeroPotential(
                "a source reduction step has no chain-level section"
            )
        g = bwd if g is None else g.then(bwd)
    h = f if g is None else g.then(f)
    for _, fwd, _ in target_steps:
        h = h.then(fwd)
    return h
