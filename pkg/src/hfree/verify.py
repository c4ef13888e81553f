"""Relation checking and an operational simplicity probe.

Relation residuals are computed in the twisted-operator algebra, where
zero is syntactic after normalization, so every check is a decision.
The simplicity probe reduces an arbitrary nonzero polynomial to a
nonzero constant using only generator actions and linear combinations,
certifying that the submodule the polynomial generates is everything.
"""

from __future__ import annotations

from .exactpoly import MultiPoly
from .idealsolve import leading_term
from .twistop import TwistedOp


class RelationReport:
    """Residual operators for the full defining relation set.

    Keys are relation names; values are TwistedOp residuals (zero
    operator = relation holds).  Advisory relations do not affect the
    verdict: the higher-order relations are only forced when the matrix
    is symmetrizable, so elsewhere they are informational.
    """

    def __init__(self, residuals, advisory=()):
        self.residuals = dict(residuals)
        self.advisory = frozenset(advisory)

    @property
    def holds(self):
        return all(r.is_zero() for k, r in self.residuals.items()
                   if k not in self.advisory)

    def failures(self):
        return sorted(k for k, r in self.residuals.items() if not r.is_zero())

    def to_json(self):
        items = []
        for name in sorted(self.residuals):
            r = self.residuals[name]
            items.append({
                "relation": name,
                "residual": r.render(),
                "holds": r.is_zero(),
                "advisory": name in self.advisory,
            })
        return {"verdict": "holds" if self.holds else "fails",
                "relations": items}

    def __repr__(self):
        bad = self.failures()
        return ("RelationReport(holds)" if not bad
                else "RelationReport(fails: %s)" % ", ".join(bad))


def relation_residuals(m):
    """Check every defining relation of the module m.

    Covers [H_j, e_i] - delta e_i, [H_j, f_i] + delta f_i (delta = 1 when
    j is the variable generator i shifts), [e_i, f_j] - delta_ij
    alpha_i^vee, and both Serre families for i != j.
    """
    residuals = {}
    advisory = set()
    n = m.ngen
    for i in range(1, n + 1):
        e_i, f_i = m.e(i), m.f(i)
        axis = m._gen_axis(i - 1)
        for j in range(1, m.rank + 1):
            h = m.h_mult(j)
            delta = int(axis == j - 1)
            res_e = h.bracket(e_i)
            res_f = h.bracket(f_i)
            if delta:
                res_e = res_e - e_i
                res_f = res_f + f_i
            residuals["[H_%d,e_%d] - %d*e_%d" % (j, i, delta, i)] = res_e
            residuals["[H_%d,f_%d] + %d*f_%d" % (j, i, delta, i)] = res_f
        for j in range(1, n + 1):
            br = e_i.bracket(m.f(j))
            if i == j:
                br = br - TwistedOp.mult(m.coroot(i))
                residuals["[e_%d,f_%d] - coroot_%d" % (i, j, i)] = br
            else:
                residuals["[e_%d,f_%d]" % (i, j)] = br
    symmetrizable = m.gcm.is_symmetrizable()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            re, rf = verify_serre(m, i, j)
            ne = "serre_e(%d,%d)" % (i, j)
            nf = "serre_f(%d,%d)" % (i, j)
            residuals[ne] = re
            residuals[nf] = rf
            if not symmetrizable:
                advisory.update((ne, nf))
    return RelationReport(residuals, advisory)


def verify_serre(m, i, j):
    """Residuals of (ad e_i)^{1-a_ij}(e_j) and (ad f_i)^{1-a_ij}(f_j)."""
    if i == j:
        raise ValueError("Serre relations need distinct generator indices")
    power = 1 - m.gcm.a[i - 1][j - 1]
    return (m.e(i).ad_power(power, m.e(j)),
            m.f(i).ad_power(power, m.f(j)))


class ReductionTrace:
    """Record of a simplicity probe run.

    Each step names the module operation applied (an e_i application, or
    a scale-and-subtract combination) together with the resulting
    polynomial, so the run is auditable step by step.
    """

    def __init__(self, start):
        self.start = start
        self.steps = []      # (description, polynomial after the step)
        self.status = "inconclusive"

    @property
    def terminal(self):
        return self.steps[-1][1] if self.steps else self.start

    @property
    def success(self):
        return self.status == "success"

    def record(self, description, poly):
        self.steps.append((description, poly))

    def to_json(self):
        return {
            "status": self.status,
            "start": self.start.render(),
            "steps": [{"op": d, "result": p.render()} for d, p in self.steps],
            "terminal": self.terminal.render(),
        }


def simplicity_probe(m, g, max_steps=200):
    """Reduce g to a nonzero constant inside the submodule it generates.

    The workhorse is the difference map v -> sigma_i(v) - v, which
    strictly lowers the degree in H_i.  When E_i is constant (in the
    Cartan variables) the map is (1/E_i) e_i - Id directly; otherwise
    e_i(v) is a single polynomial of degree one in H_{i+1} times
    sigma_i(v), and recursing on the difference map for H_{i+1} isolates
    a unit multiple of sigma_i(v).  Every intermediate value is a module
    image or linear combination of earlier ones, so a constant terminal
    value certifies the submodule contains 1.  Failure of any exactness
    check aborts with status "inconclusive" - the probe never claims
    non-simplicity.
    """
    if g.is_zero():
        raise ValueError("probe requires a nonzero polynomial")
    trace = ReductionTrace(g)
    cur = g
    budget = [max_steps]
    while True:
        if _is_cartan_constant(cur, m):
            trace.status = "success" if not cur.is_zero() else "inconclusive"
            return trace
        i = _highest_var(cur, m)
        nxt = _sigma_difference(m, i, cur, trace, budget)
        if nxt is None:
            return trace
        if nxt.is_zero():
            # degree already minimal along this axis at top coefficient;
            # sigma-difference of a nonzero poly is zero only for
            # H_i-free polys, which _highest_var excludes
            return trace
        cur = nxt


def _sigma_difference(m, i, v, trace, budget):
    """Compute sigma_i(v) - v via module operations; None on failure."""
    if budget[0] <= 0:
        return None
    budget[0] -= 1
    if i > m.rank:
        return None
    u = m.e(i).apply(v)
    trace.record("apply e_%d" % i, u)
    target = v.shift(i - 1, 1)
    ratio = _single_term_ratio(u, target)
    if ratio is None:
        # recurse: remove the H_{i+1} dependence of u, leaving a unit
        # multiple of sigma_i(v)
        w = _sigma_difference(m, i + 1, u, trace, budget)
        if w is None:
            return None
        ratio = _single_term_ratio(w, target)
        if ratio is None:
            return None
        u = w
    inv = _invert_single_term(ratio)
    if inv is None:
        return None
    out = u * inv - v
    trace.record("scale by (%s) and subtract previous (axis %d)"
                 % (inv.render(), i), out)
    if not out.is_zero() and out.degree_in(i - 1) >= v.degree_in(i - 1):
        return None
    return out


def _highest_var(p, m):
    for i in range(m.rank, 0, -1):
        if p.degree_in(i - 1) > 0:
            return i
    return None


def _is_cartan_constant(p, m):
    return all(p.degree_in(i) <= 0 for i in range(m.rank))


def _single_term_ratio(p, q):
    """Single-term c with p = c * q, else None."""
    if p.is_zero() or q.is_zero():
        return None
    pe, pc = leading_term(p)
    qe, qc = leading_term(q)
    if any(a > b for a, b in zip(qe, pe)):
        return None
    c = MultiPoly(p.context, {tuple(a - b for a, b in zip(qe, pe)): pc / qc})
    if q * c == p:
        return c
    return None


def _invert_single_term(ratio):
    """Inverse of a single-term polynomial whose variables are all unit
    pairs; None when a non-unit variable appears."""
    (exp, c), = ratio.terms.items()
    names = ratio.context.names
    inv_exp = [0] * len(exp)
    for k, e in enumerate(exp):
        if e == 0:
            continue
        name = names[k]
        if name.startswith("a_"):
            partner = "ainv_" + name.split("_", 1)[1]
        elif name.startswith("ainv_"):
            partner = "a_" + name.split("_", 1)[1]
        else:
            return None
        inv_exp[names.index(partner)] = e
    return MultiPoly(ratio.context, {tuple(inv_exp): 1 / c})
