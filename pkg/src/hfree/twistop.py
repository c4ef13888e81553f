"""Twisted shift operators on a polynomial ring.

An operator is a finite sum of terms P * S(v) acting on a polynomial g by
g -> sum_v P_v * sigma^v(g), where sigma^v is the product of per-variable
shift automorphisms.  Operators with distinct shift vectors are linearly
independent, so after merging equal shift vectors and dropping zero
coefficients the zero operator is exactly the operator with no terms;
relation checks are therefore decisions, not probes.
"""

from __future__ import annotations

from .exactpoly import ContextMismatch, MultiPoly, VarContext, parse_poly


class TwistedOp:
    """Finite sum of (shift vector -> coefficient polynomial) terms."""

    __slots__ = ("context", "terms")

    def __init__(self, context, terms, _normalized=False):
        self.context = context
        if _normalized:
            self.terms = terms
            return
        out = {}
        for v, p in terms.items():
            v = tuple(v)
            if len(v) != len(context):
                raise ValueError("shift vector of wrong length")
            for i, k in enumerate(v):
                if k and i not in context.shiftable:
                    raise ValueError(
                        "shift on non-shiftable variable %r" % context.names[i])
            if p.is_zero():
                continue
            if v in out:
                q = out[v] + p
                if q.is_zero():
                    del out[v]
                else:
                    out[v] = q
            else:
                out[v] = p
        self.terms = out

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(context):
        return TwistedOp(context, {}, _normalized=True)

    @staticmethod
    def identity(context):
        return TwistedOp(context, {(0,) * len(context): context.one})

    @staticmethod
    def mult(poly):
        """Multiplication by a polynomial (shift vector 0)."""
        return TwistedOp(poly.context, {(0,) * len(poly.context): poly})

    @staticmethod
    def shift_term(poly, v):
        """The single-term operator poly * S(v)."""
        return TwistedOp(poly.context, {tuple(v): poly})

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TwistedOp):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def _check(self, other):
        if self.context != other.context:
            raise ContextMismatch("operators have distinct variable contexts")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for v, p in other.terms.items():
            if v in out:
                q = out[v] + p
                if q.is_zero():
                    del out[v]
                else:
                    out[v] = q
            else:
                out[v] = p
        return TwistedOp(self.context, out, _normalized=True)

    def __neg__(self):
        return TwistedOp(self.context, {v: -p for v, p in self.terms.items()},
                         _normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        """Multiply every coefficient by a scalar or polynomial."""
        out = {}
        for v, p in self.terms.items():
            q = p * c
            if not q.is_zero():
                out[v] = q
        return TwistedOp(self.context, out, _normalized=True)

    # -- action and algebra ---------------------------------------------------

    def apply(self, g):
        """Evaluate the operator on a polynomial."""
        if self.context != g.context:
            raise ContextMismatch("operator and polynomial contexts differ")
        total = MultiPoly.zero(self.context)
        for v, p in self.terms.items():
            total = total + p * g.shift_vector(v)
        return total

    def compose(self, other):
        """Operator composition: (self o other)(g) = self(other(g)).

        Term rule: (P * S(u)) o (Q * S(v)) = P * sigma^u(Q) * S(u + v).
        """
        self._check(other)
        out = {}
        for u, p in self.terms.items():
            for v, q in other.terms.items():
                w = tuple(a + b for a, b in zip(u, v))
                r = p * q.shift_vector(u)
                if r.is_zero():
                    continue
                if w in out:
                    s = out[w] + r
                    if s.is_zero():
                        del out[w]
                    else:
                        out[w] = s
                else:
                    out[w] = r
        return TwistedOp(self.context, out, _normalized=True)

    def bracket(self, other):
        """Commutator [self, other]."""
        return self.compose(other) - other.compose(self)

    def ad_power(self, n, target):
        """Iterated bracket (ad self)^n(target)."""
        if n < 0:
            raise ValueError("negative ad power")
        result = target
        for _ in range(n):
            result = self.bracket(result)
        return result

    # -- rendering ------------------------------------------------------------

    def render(self):
        if not self.terms:
            return "0"
        def key(v):
            return (sum(abs(k) for k in v), v)
        parts = []
        for v in sorted(self.terms, key=key):
            p = self.terms[v]
            parts.append("(%s) * S(%s)" % (p.render(),
                                           ",".join(str(k) for k in v)))
        return " + ".join(parts)

    __str__ = render

    def __repr__(self):
        return "TwistedOp(%s)" % self.render()


def parse_op(context, text):
    """Parse the ``(<poly>) * S(v1,...,vn) + ...`` text form."""
    if text.strip() == "0":
        return TwistedOp.zero(context)
    terms = {}
    depth = 0
    chunks = []
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "+" and depth == 0:
            chunks.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    chunks.append("".join(cur))
    op = TwistedOp.zero(context)
    for chunk in chunks:
        chunk = chunk.strip()
        if "S(" in chunk:
            poly_part, shift_part = chunk.rsplit("* S(", 1)
            v = tuple(int(x) for x in shift_part.rstrip(") ").split(","))
        else:
            poly_part, v = chunk, (0,) * len(context)
        poly_part = poly_part.strip()
        if poly_part.startswith("(") and poly_part.endswith(")"):
            poly_part = poly_part[1:-1]
        elif poly_part.startswith("("):
            poly_part = poly_part[1:].rstrip()
            if poly_part.endswith(")"):
                poly_part = poly_part[:-1]
        op = op + TwistedOp.shift_term(parse_poly(context, poly_part), v)
    return op
