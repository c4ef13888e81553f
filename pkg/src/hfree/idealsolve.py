"""Polynomial system solving over Q via Buchberger's algorithm.

Everything is exact: coefficients are Fractions, the monomial order is
graded reverse lexicographic, and unsatisfiability over the algebraic
closure is certified by the appearance of a nonzero constant in the
reduced basis.  Nonvanishing side conditions are imposed with a fresh
inverse variable (p /= 0 becomes p*t - 1 = 0).
"""

from __future__ import annotations

import heapq
import json

from .exactpoly import MultiPoly, VarContext, grevlex_key, parse_poly


def leading_term(p):
    """(exponent, coefficient) of the grevlex-leading term; None if zero.

    Cached on the polynomial, which is safe because MultiPoly values are
    never mutated after construction."""
    if not p.terms:
        return None
    exp = p._leading_exp
    if exp is None:
        exp = max(p.terms, key=grevlex_key)
        p._leading_exp = exp
    return exp, p.terms[exp]


def _divides(e, f):
    return all(a <= b for a, b in zip(e, f))


def _support_mask(exp):
    """Bitmask of the variables an exponent touches; a monomial can only
    divide another whose mask covers its own."""
    m = 0
    for i, e in enumerate(exp):
        if e:
            m |= 1 << i
    return m


def _quotient(e, f):
    return tuple(b - a for a, b in zip(e, f))


def _lcm(e, f):
    return tuple(max(a, b) for a, b in zip(e, f))


def _mono(context, exp, coeff):
    return MultiPoly(context, {exp: coeff})


def reduce_poly(p, basis):
    """Full normal form of p modulo a list of polynomials."""
    context = p.context
    remainder = MultiPoly.zero(context)
    lts = [leading_term(g) for g in basis]
    masks = [lt if lt is None else _support_mask(lt[0]) for lt in lts]
    while p.terms:
        exp, coeff = leading_term(p)
        emask = _support_mask(exp)
        hit = None
        for g, lt, gm in zip(basis, lts, masks):
            if lt is not None and not (gm & ~emask) and _divides(lt[0], exp):
                hit = (g, lt)
                break
        if hit is None:
            t = _mono(context, exp, coeff)
            remainder = remainder + t
            p = p - t
        else:
            g, (gexp, gcoeff) = hit
            p = p - g * _mono(context, _quotient(gexp, exp), coeff / gcoeff)
    return remainder


def s_polynomial(f, g):
    fexp, fc = leading_term(f)
    gexp, gc = leading_term(g)
    lcm = _lcm(fexp, gexp)
    return (f * _mono(f.context, _quotient(fexp, lcm), 1 / fc)
            - g * _mono(g.context, _quotient(gexp, lcm), 1 / gc))


def _eliminate_linear(polys):
    """Use affine-linear generators to eliminate variables up front.

    Gaussian-style substitution preserves the ideal and collapses the
    large mostly-linear coefficient systems produced by the classifiers
    before the S-pair stage sees them.  Returns None when a nonzero
    constant appears (the system is already unsatisfiable).
    """
    work = [p for p in polys if p.terms]
    linear = []
    changed = True
    while changed:
        changed = False
        rest = []
        for p in work:
            r = reduce_poly(p, linear) if linear else p
            if not r.terms:
                continue
            if max(sum(e) for e in r.terms) == 0:
                return None
            if max(sum(e) for e in r.terms) <= 1:
                linear.append(r)
                changed = True
            else:
                rest.append(r)
        work = rest
    return linear + work


def buchberger(polys, max_basis=2000, degree_cap=None):
    """Reduced Groebner basis (grevlex) of the ideal the polys generate.

    Linear generators are eliminated first; pair selection is by
    increasing lcm order; the coprime (product) criterion and a chain
    criterion prune useless S-pairs.

    With ``degree_cap`` set, S-pairs whose lcm exceeds that total degree
    are skipped.  The result is then only a partial basis, but finding
    the unit ideal under a cap is still a sound inconsistency proof.
    """
    basis = []
    seen = set()
    for p in polys:
        if p.terms and frozenset(p.terms.items()) not in seen:
            seen.add(frozenset(p.terms.items()))
            basis.append(p)
    if not basis:
        return []
    context = basis[0].context
    reduced = _eliminate_linear(basis)
    if reduced is None:
        return [MultiPoly.one(context)]
    basis = _interreduce(reduced)
    lts = [leading_term(p)[0] for p in basis]
    lmasks = [_support_mask(e) for e in lts]
    zero = (0,) * len(context.names)

    heap = []
    alive = set()
    for i in range(len(basis)):
        for j in range(i):
            heapq.heappush(heap, (grevlex_key(_lcm(lts[j], lts[i])), j, i))
            alive.add((j, i))

    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in alive:
            continue
        alive.discard((i, j))
        fe, ge = lts[i], lts[j]
        lcm = _lcm(fe, ge)
        if degree_cap is not None and sum(lcm) > degree_cap:
            continue
        if all(a + b == c for a, b, c in zip(fe, ge, lcm)):
            continue  # coprime leading monomials
        skip = False
        lcm_mask = lmasks[i] | lmasks[j]
        for k, ke in enumerate(lts):
            if k in (i, j):
                continue
            if ((not (lmasks[k] & ~lcm_mask)) and _divides(ke, lcm)
                    and (min(i, k), max(i, k)) not in alive
                    and (min(j, k), max(j, k)) not in alive):
                skip = True
                break
        if skip:
            continue
        r = reduce_poly(s_polynomial(basis[i], basis[j]), basis)
        if r.terms:
            if len(basis) >= max_basis:
                raise RuntimeError("basis size limit exceeded")
            basis.append(r)
            t = len(basis) - 1
            rt = leading_term(r)[0]
            lts.append(rt)
            lmasks.append(_support_mask(rt))
            if rt == zero:
                return [MultiPoly.one(context)]
            for k in range(t):
                heapq.heappush(heap, (grevlex_key(_lcm(lts[k], rt)), k, t))
                alive.add((k, t))
    return _interreduce(basis)


def _interreduce(basis):
    """Minimal reduced basis: monic, no leading term divides another,
    every polynomial fully reduced against the rest."""
    basis = [p for p in basis if p.terms]
    changed = True
    while changed:
        changed = False
        out = []
        for idx, p in enumerate(basis):
            others = out + basis[idx + 1:]
            r = reduce_poly(p, others) if others else p
            if r.terms != p.terms:
                changed = True
            if r.terms:
                out.append(r)
        basis = out
    monic = []
    for p in basis:
        _, c = leading_term(p)
        monic.append(p * _mono(p.context, (0,) * len(p.context.names), 1 / c))
    monic.sort(key=lambda p: grevlex_key(leading_term(p)[0]))
    return monic


def normal_form(p, basis):
    return reduce_poly(p, basis)


def is_unsat(basis):
    """Whether the reduced basis shows the system has no solution over
    the algebraic closure (it contains a nonzero constant)."""
    zero_exp = None
    for p in basis:
        if not p.terms:
            continue
        if zero_exp is None:
            zero_exp = (0,) * len(p.context.names)
        if set(p.terms) == {zero_exp}:
            return True
    return False


class PolySystem:
    """Equations p = 0 plus nonvanishing conditions q != 0 over Q."""

    def __init__(self, context, equations=(), nonzero=()):
        self.context = context
        self.equations = list(equations)
        self.nonzero = list(nonzero)

    def add_equation(self, p):
        self.equations.append(p)

    def add_nonzero(self, q):
        self.nonzero.append(q)

    def saturated(self):
        """(context, equations) with each q != 0 encoded as q*t_i - 1 = 0
        in an extended context with one fresh variable per condition."""
        if not self.nonzero:
            return self.context, list(self.equations)
        names = list(self.context.names)
        fresh = []
        for k in range(len(self.nonzero)):
            name = "_inv%d" % (k + 1)
            while name in names:
                name = "_" + name
            fresh.append(len(names))
            names.append(name)
        big = VarContext(tuple(names),
                         unit_pairs=self.context.unit_pairs,
                         shiftable=self.context.shiftable)
        pad = len(fresh)

        def lift(p):
            return MultiPoly(big, {exp + (0,) * pad: c
                                   for exp, c in p.terms.items()})

        eqs = [lift(p) for p in self.equations]
        for k, q in enumerate(self.nonzero):
            texp = [0] * len(names)
            texp[fresh[k]] = 1
            eqs.append(lift(q) * MultiPoly(big, {tuple(texp): 1}) - MultiPoly.one(big))
        return big, eqs

    def solve(self):
        """SystemResult with the reduced basis of the saturated system."""
        big, eqs = self.saturated()
        basis = buchberger(eqs)
        return SystemResult(big, basis, self.context)

    def to_json(self):
        return {
            "variables": list(self.context.names),
            "equations": [p.render() for p in self.equations],
            "nonzero": [q.render() for q in self.nonzero],
        }

    @staticmethod
    def from_json(obj):
        names = obj["variables"]
        context = VarContext(tuple(names))
        sys = PolySystem(context)
        for text in obj.get("equations", ()):
            sys.add_equation(parse_poly(context, text))
        for text in obj.get("nonzero", ()):
            sys.add_nonzero(parse_poly(context, text))
        return sys

    @staticmethod
    def load(path):
        with open(path) as fh:
            return PolySystem.from_json(json.load(fh))


class SystemResult:
    """Reduced basis of a saturated system, with value extraction."""

    def __init__(self, context, basis, original_context):
        self.context = context
        self.basis = basis
        self.original_context = original_context

    @property
    def unsat(self):
        return is_unsat(self.basis)

    def value_of(self, name):
        """The forced constant value of a variable, if the basis pins it
        down (normal form of the variable is a constant); else None."""
        if self.unsat:
            return None
        idx = self.context.names.index(name)
        exp = [0] * len(self.context.names)
        exp[idx] = 1
        nf = normal_form(MultiPoly(self.context, {tuple(exp): 1}), self.basis)
        if not nf.terms:
            return 0
        zero = (0,) * len(self.context.names)
        if set(nf.terms) == {zero}:
            return nf.terms[zero]
        return None

    def to_json(self):
        return {
            "unsat": self.unsat,
            "basis": [p.render() for p in self.basis],
        }
