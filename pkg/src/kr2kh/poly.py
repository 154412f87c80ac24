"""Sparse multivariate polynomial arithmetic over exact rationals.

Variables are integer mark ids: variable i prints as ``z<i>`` and carries
quantum degree 2.  Values are immutable; every operation returns a new
polynomial.  Coefficients are :class:`fractions.Fraction` throughout, never
floats: downstream eliminations divide by constants like 3 and -3 and must
stay exact.
"""

from __future__ import annotations

from fractions import Fraction

#: marker returned by q_degree for a nonzero polynomial of mixed degree
INHOMOGENEOUS = "inhomogeneous"


class ZeroPolynomial(Exception):
    """The zero polynomial has no q-degree."""


class NotLinearIn(Exception):
    """The polynomial is not (nonzero rational)*t + (t-free rest)."""


def _fr(c):
    # ints stay ints: way cheaper than Fraction in hot loops, same exactness
    if isinstance(c, (int, Fraction)):
        return c
    return Fraction(c)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    if len(m2) == 1:
        v2, e2 = m2[0]
        for i, (v1, e1) in enumerate(m1):
            if v1 == v2:
                return m1[:i] + ((v1, e1 + e2),) + m1[i + 1 :]
            if v1 > v2:
                return m1[:i] + m2 + m1[i:]
        return m1 + m2
    if len(m1) == 1:
        return _mono_mul(m2, m1)
    # merge two variable-sorted tuples; exponents are positive so no term
    # can vanish here
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


class MultiPoly:
    """Polynomial stored as {monomial: coefficient}.

    A monomial is a tuple of (variable, exponent) pairs sorted by variable,
    with all exponents positive; the empty tuple is the constant monomial.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _fr(c)
                if c:
                    clean[mono] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms):
        # internal: terms must already hold nonzero exact coefficients
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def const(cls, c):
        return cls({(): _fr(c)})

    @classmethod
    def var(cls, i, exp=1):
        return cls({((i, exp),): 1})

    # -- ring operations -------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            acc = terms.get(mono)
            if acc is None:
                acc = c
            elif c.__class__ is Fraction:
                acc = c + acc
            else:
                acc = acc + c
            if acc:
                terms[mono] = acc
            elif mono in terms:
                del terms[mono]
        return MultiPoly._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _fr(other)
            if not c:
                return MultiPoly()
            if c.__class__ is Fraction:
                # Fraction on the left avoids the reflected-operator path
                return MultiPoly._raw(
                    {m: c * v for m, v in self.terms.items()}
                )
            return MultiPoly._raw({m: v * c for m, v in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        terms = {}
        for m1, c1 in self.terms.items():
            c1_fr = c1.__class__ is Fraction
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                if c1_fr or c2.__class__ is not Fraction:
                    p = c1 * c2
                else:
                    p = c2 * c1
                acc = terms.get(m)
                if acc is None:
                    acc = p
                elif p.__class__ is Fraction:
                    acc = p + acc
                else:
                    acc = acc + p
                if acc:
                    terms[m] = acc
                elif m in terms:
                    del terms[m]
        return MultiPoly._raw(terms)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        if c == 1:
            return self
        if c == -1:
            return -self
        inv = Fraction(1) / Fraction(c)
        out = {}
        for m, v in self.terms.items():
            q = inv * v
            out[m] = q.numerator if q.denominator == 1 else q
        return MultiPoly._raw(out)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __ne__(self, other):
        res = self.__eq__(other)
        return res if res is NotImplemented else not res

    __hash__ = None

    # -- queries ---------------------------------------------------------

    def variables(self):
        return {v for mono in self.terms for v, _ in mono}

    def coefficient(self, mono):
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def as_univariate(self, t):
        """Group terms by the exponent of t: {exp: t-free MultiPoly}."""
        out = {}
        for mono, c in self.terms.items():
            e = 0
            rest = []
            for v, k in mono:
                if v == t:
                    e = k
                else:
                    rest.append((v, k))
            d = out.setdefault(e, {})
            rest = tuple(rest)
            d[rest] = d.get(rest, 0) + c
        return {
            e: MultiPoly._raw({m: c for m, c in d.items() if c})
            for e, d in out.items()
        }

    # -- substitution ----------------------------------------------------

    def subs(self, mapping):
        """Apply the ring homomorphism sending var v to mapping[v].

        Unmapped variables are fixed.  mapping values may be MultiPoly,
        int, or Fraction.
        """
        if not mapping or not any(v in mapping for v in self.variables()):
            return self
        acc = {}
        for mono, c in self.terms.items():
            fixed = []
            factors = []
            for v, e in mono:
                if v in mapping:
                    img = mapping[v]
                    if not isinstance(img, MultiPoly):
                        img = MultiPoly.const(img)
                    factors.append((img, e))
                else:
                    fixed.append((v, e))
            piece = MultiPoly._raw({tuple(fixed): c})
            for img, e in factors:
                for _ in range(e):
                    piece = piece * img
            for m2, c2 in piece.terms.items():
                prev = acc.get(m2)
                prev = c2 if prev is None else prev + c2
                if prev:
                    acc[m2] = prev
                elif m2 in acc:
                    del acc[m2]
        return MultiPoly._raw(acc)

    def mod_squares(self):
        """Drop every monomial containing a square (quotient by all v^2)."""
        return MultiPoly._raw(
            {m: c for m, c in self.terms.items() if all(e < 2 for _, e in m)}
        )

    def deflated(self):
        """Demote integral Fraction coefficients to plain ints."""
        fixed = None
        for m, v in self.terms.items():
            if v.__class__ is Fraction and v.denominator == 1:
                if fixed is None:
                    fixed = dict(self.terms)
                fixed[m] = v.numerator
        return self if fixed is None else MultiPoly._raw(fixed)

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        allvars = sorted({v for mono in self.terms for v, _ in mono})

        def key(mono):
            d = dict(mono)
            return (
                sum(d.values()),
                tuple(d.get(v, 0) for v in allvars),
            )

        parts = []
        for mono in sorted(self.terms, key=key):
            c = self.terms[mono]
            factors = [
                "z%d" % v if e == 1 else "z%d^%d" % (v, e) for v, e in mono
            ]
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([str(mag)] + factors)
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return "MultiPoly(%s)" % self


ZERO = MultiPoly()
ONE = MultiPoly.const(1)


def q_degree(p):
    """2 * total exponent degree if homogeneous, else INHOMOGENEOUS."""
    if isinstance(p, (int, Fraction)):
        p = MultiPoly.const(p)
    if not p.terms:
        raise ZeroPolynomial("q_degree of the zero polynomial")
    degs = {sum(e for _, e in mono) for mono in p.terms}
    if len(degs) > 1:
        return INHOMOGENEOUS
    return 2 * degs.pop()


def substitute(p, s):
    return p.subs(s)


def solve_linear(p, t):
    """Solve p = 0 for variable t when p = alpha*t + rest.

    Returns the substitution {t: -rest/alpha}.  Raises NotLinearIn when t is
    absent, appears nonlinearly, or carries a non-constant coefficient.
    """
    alpha = 0
    rest = {}
    for mono, c in p.terms.items():
        t_exp = 0
        others = False
        for v, e in mono:
            if v == t:
                t_exp = e
            else:
                others = True
        if t_exp == 0:
            rest[mono] = c
        elif t_exp == 1 and not others:
            alpha += c
        else:
            raise NotLinearIn(
                "z%d appears nonlinearly or with a polynomial coefficient" % t
            )
    if not alpha:
        raise NotLinearIn("z%d does not appear linearly" % t)
    return {t: MultiPoly._raw(rest) / (-alpha)}
