"""Exact multivariate polynomials over Q with named variables and shift maps.

Polynomials are stored sparsely as a map from exponent vectors to nonzero
rational coefficients.  A variable context fixes the variable names and
their order; the order also fixes the graded reverse lexicographic term
order used for rendering and for Groebner computations.

A context may declare pairs of mutually inverse unit variables (u, u_inv).
Products are normalized so that no monomial carries positive exponents on
both members of a pair; this realizes the relation u * u_inv = 1 without
leaving the polynomial representation.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb


class ContextMismatch(ValueError):
    """Raised when operands live in different variable contexts."""


class VarContext:
    """An ordered list of distinct variable names.

    ``unit_pairs`` is a tuple of index pairs (i, j) meaning the variables
    at i and j are mutual inverses.  ``shiftable`` is the set of variable
    indices on which shift automorphisms may act (defaults to all).
    """

    __slots__ = ("names", "index", "unit_pairs", "shiftable")

    def __init__(self, names, unit_pairs=(), shiftable=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names: %r" % (names,))
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.unit_pairs = tuple(tuple(p) for p in unit_pairs)
        for i, j in self.unit_pairs:
            if not (0 <= i < len(names) and 0 <= j < len(names)):
                raise ValueError("unit pair out of range")
        if shiftable is None:
            self.shiftable = frozenset(range(len(names)))
        else:
            self.shiftable = frozenset(shiftable)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, VarContext)
                and self.names == other.names
                and self.unit_pairs == other.unit_pairs
                and self.shiftable == other.shiftable)

    def __hash__(self):
        return hash((self.names, self.unit_pairs, self.shiftable))

    def __repr__(self):
        return "VarContext(%r)" % (self.names,)

    def var(self, name):
        """The polynomial equal to the named variable."""
        i = self.index[name]
        exp = [0] * len(self.names)
        exp[i] = 1
        return MultiPoly(self, {tuple(exp): Fraction(1)})

    def const(self, c):
        return MultiPoly(self, {(0,) * len(self.names): Fraction(c)})

    @property
    def zero(self):
        return MultiPoly(self, {})

    @property
    def one(self):
        return self.const(1)


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError("not an exact rational: %r" % (c,))


def grevlex_key(exp):
    """Sort key: ascending order is grevlex-ascending."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


class MultiPoly:
    """A multivariate polynomial with Fraction coefficients."""

    __slots__ = ("context", "terms", "_leading_exp")

    def __init__(self, context, terms, _normalized=False):
        self.context = context
        self._leading_exp = None
        if _normalized:
            self.terms = terms
        else:
            self.terms = _normalize(context, terms)

    # -- construction helpers ------------------------------------------

    @staticmethod
    def zero(context):
        return MultiPoly(context, {}, _normalized=True)

    @staticmethod
    def one(context):
        return MultiPoly(context, {(0,) * len(context): Fraction(1)},
                         _normalized=True)

    # -- basic predicates ----------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        z = (0,) * len(self.context)
        return all(e == z for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant: %s" % self)
        return self.terms.get((0,) * len(self.context), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    def _check(self, other):
        if self.context != other.context:
            raise ContextMismatch("operands have distinct variable contexts")

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.context.const(other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(self.context, terms, _normalized=True)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.context, {e: -c for e, c in self.terms.items()},
                         _normalized=True)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.context.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            if c == 0:
                return MultiPoly.zero(self.context)
            return MultiPoly(self.context,
                             {e: k * c for e, k in self.terms.items()},
                             _normalized=True)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        if self.context.unit_pairs:
            return MultiPoly(self.context, out)
        return MultiPoly(self.context, out, _normalized=True)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = self.context.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    # -- degrees and shifts ----------------------------------------------

    def degree_in(self, i):
        """Maximal exponent of variable i; -1 for the zero polynomial."""
        if not (0 <= i < len(self.context)):
            raise IndexError("no variable with index %d" % i)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def shift(self, i, k=1):
        """Substitute variable i by (variable i) - k."""
        if not (0 <= i < len(self.context)):
            raise IndexError("no variable with index %d" % i)
        if k == 0:
            return self
        out = {}
        for e, c in self.terms.items():
            d = e[i]
            # (x - k)^d expanded binomially
            for t in range(d + 1):
                coeff = c * comb(d, t) * Fraction(-k) ** (d - t)
                ne = e[:i] + (t,) + e[i + 1:]
                s = out.get(ne, 0) + coeff
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
        return MultiPoly(self.context, out, _normalized=True)

    def shift_vector(self, v):
        """Apply the product of per-variable shifts given by vector v."""
        p = self
        for i, k in enumerate(v):
            if k:
                p = p.shift(i, k)
        return p

    def eval(self, values):
        """Evaluate at a full assignment (list of Fractions)."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, d in zip(values, e):
                if d:
                    v *= Fraction(x) ** d
            total += v
        return total

    def coefficients_in(self, var_indices):
        """Split into a map {sub-exponent over var_indices: residual poly}.

        The residual polynomials live in the same context but have zero
        exponents at ``var_indices``.
        """
        out = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in var_indices)
            rest = list(e)
            for i in var_indices:
                rest[i] = 0
            rest = tuple(rest)
            bucket = out.setdefault(key, {})
            bucket[rest] = bucket.get(rest, 0) + c
        return {k: MultiPoly(self.context, v) for k, v in out.items()}

    # -- rendering and parsing -------------------------------------------

    def sorted_terms(self):
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]),
                      reverse=True)

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, d in zip(self.context.names, e):
                if d == 1:
                    factors.append(name)
                elif d > 1:
                    factors.append("%s^%d" % (name, d))
            mono = "*".join(factors)
            ac = abs(c)
            if mono and ac == 1:
                body = mono
            elif mono:
                body = "%s*%s" % (ac, mono)
            else:
                body = str(ac)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __str__ = render

    def __repr__(self):
        return "MultiPoly(%s)" % self.render()


def _normalize(context, terms):
    out = {}
    for e, c in terms.items():
        c = _as_fraction(c)
        if not c:
            continue
        e = tuple(e)
        if len(e) != len(context):
            raise ValueError("exponent vector of wrong length")
        for i, j in context.unit_pairs:
            m = min(e[i], e[j])
            if m:
                e = list(e)
                e[i] -= m
                e[j] -= m
                e = tuple(e)
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


_TOKEN = re.compile(r"\s*(?:(?P<sign>[+-])|(?P<num>\d+(?:/\d+)?)"
                    r"|(?P<name>[A-Za-z_][A-Za-z0-9_']*)(?:\^(?P<exp>\d+))?"
                    r"|(?P<mul>\*))")


def parse_poly(context, text):
    """Parse the canonical text form, e.g. ``1/2*H_1^2*H_2 - 3*H_1 + 5``."""
    pos = 0
    n = len(context)
    terms = {}
    sign = 1
    coeff = None
    exp = None

    def flush():
        nonlocal sign, coeff, exp
        if exp is None and coeff is None:
            return
        c = Fraction(sign) * (coeff if coeff is not None else Fraction(1))
        e = tuple(exp) if exp is not None else (0,) * n
        s = terms.get(e, 0) + c
        if s:
            terms[e] = s
        else:
            terms.pop(e, None)
        sign, coeff, exp = 1, None, None

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError("cannot parse polynomial at: %r" % text[pos:])
        pos = m.end()
        if m.group("sign"):
            flush()
            sign = 1 if m.group("sign") == "+" else -1
            coeff = None
        elif m.group("num"):
            c = Fraction(m.group("num"))
            coeff = c if coeff is None else coeff * c
            if exp is None:
                exp = [0] * n
        elif m.group("name"):
            name = m.group("name")
            if name not in context.index:
                raise ValueError("unknown variable %r" % name)
            if exp is None:
                exp = [0] * n
            exp[context.index[name]] += int(m.group("exp") or 1)
        # bare '*' separates factors; nothing to do
    flush()
    return MultiPoly(context, terms)
