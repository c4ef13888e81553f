"""Constructors for the explicit families of rank-one module structures.

Each constructor returns an HFreeModule: the polynomial ring C[H_1..H_l]
(possibly extended by central variables) with every Chevalley generator
acting as a single twisted shift term, e_i as E_i * S(+eps_i) and f_i as
F_i * S(-eps_i).  Unit parameters a_i may be exact rationals or symbolic
unit variables a_i, ainv_i with a_i*ainv_i = 1 enforced by normalization.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cartan import GCM, coroot_polynomial, finite_gcm
from .exactpoly import MultiPoly, VarContext, parse_poly
from .twistop import TwistedOp


class FamilyError(ValueError):
    """Invalid parameters for a module family constructor."""


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise FamilyError("expected an exact rational, got %r" % (x,))


def _fraction_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


class UnitSet:
    """The l invertible scale parameters, numeric or symbolic.

    Numeric units are nonzero Fractions; symbolic units are the variable
    pairs (a_i, ainv_i) of the module context.
    """

    def __init__(self, context, count, values=None):
        self.context = context
        self.count = count
        if values is None:
            self.values = None
        else:
            values = [_as_fraction(v) for v in values]
            if len(values) != count:
                raise FamilyError("expected %d unit values, got %d" % (count, len(values)))
            if any(v == 0 for v in values):
                raise FamilyError("unit parameters must be nonzero")
            self.values = values

    @property
    def symbolic(self):
        return self.values is None

    def unit(self, i):
        """a_i as a polynomial (1-based)."""
        if self.values is None:
            return self.context.var("a_%d" % i)
        return self.context.const(self.values[i - 1])

    def inverse(self, i):
        """a_i^{-1} as a polynomial (1-based)."""
        if self.values is None:
            return self.context.var("ainv_%d" % i)
        return self.context.const(1 / self.values[i - 1])

    def describe(self):
        if self.values is None:
            return "symbolic"
        return [_fraction_str(v) for v in self.values]


def module_context(l, count_units, symbolic_units, central=()):
    """Context with H_1..H_l shiftable, optional central variables, and
    optional symbolic unit pairs."""
    names = ["H_%d" % (i + 1) for i in range(l)]
    names.extend(central)
    pairs = []
    if symbolic_units:
        base = len(names)
        for i in range(count_units):
            names.append("a_%d" % (i + 1))
            names.append("ainv_%d" % (i + 1))
            pairs.append((base + 2 * i, base + 2 * i + 1))
    return VarContext(tuple(names), unit_pairs=tuple(pairs),
                      shiftable=frozenset(range(l)))


class HFreeModule:
    """A module structure on the polynomial ring, one twisted shift term
    per Chevalley generator."""

    def __init__(self, gcm, family, params, context, rank, e_ops, f_ops,
                 coroots, central=()):
        self.gcm = gcm
        self.family = family
        self.params = params
        self.context = context
        self.rank = rank              # number of Cartan variables H_i
        self.e_ops = list(e_ops)
        self.f_ops = list(f_ops)
        self.coroots = list(coroots)  # MultiPoly per generator
        self.central = tuple(central)
        self.ngen = len(e_ops)
        self._check_shape()

    def _check_shape(self):
        n = len(self.context)
        for i in range(self.ngen):
            vi = self._gen_axis(i)
            up = tuple(1 if k == vi else 0 for k in range(n))
            down = tuple(-1 if k == vi else 0 for k in range(n))
            if set(self.e_ops[i].terms) != {up}:
                raise FamilyError("e_%d is not a single raising shift term" % (i + 1))
            if set(self.f_ops[i].terms) != {down}:
                raise FamilyError("f_%d is not a single lowering shift term" % (i + 1))

    def _gen_axis(self, i):
        """Index of the Cartan variable shifted by generator i (0-based)."""
        return i if self.ngen == self.rank else i % self.rank

    def e(self, i):
        """Action operator of e_i (1-based)."""
        return self.e_ops[i - 1]

    def f(self, i):
        return self.f_ops[i - 1]

    def h_mult(self, j):
        """Multiplication operator by H_j (1-based)."""
        return TwistedOp.mult(self.context.var("H_%d" % j))

    def coroot(self, i):
        return self.coroots[i - 1]

    def E(self, i):
        """The polynomial E_i = e_i . 1."""
        return self.e_ops[i - 1].apply(self.context.one)

    def F(self, i):
        return self.f_ops[i - 1].apply(self.context.one)

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {
            "gcm": self.gcm.to_json(),
            "family": self.family,
            "parameters": self.params,
            "variables": list(self.context.names),
            "central": list(self.central),
            "E": [self.E(i + 1).render() for i in range(self.ngen)],
            "F": [self.F(i + 1).render() for i in range(self.ngen)],
        }

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    @staticmethod
    def from_json(obj):
        """Rebuild a module from its serialized operators.

        The E_i/F_i texts are re-parsed, so edits to the file show up as
        relation residuals under verification rather than load errors.
        """
        gcm = GCM.from_json(obj["gcm"])
        names = tuple(obj["variables"])
        rank = sum(1 for n in names if n.startswith("H_"))
        pairs = []
        units = sorted(
            (n for n in names if n.startswith("a_")),
            key=lambda n: int(n.split("_")[1]))
        for u in units:
            inv = "ainv_" + u.split("_")[1]
            if inv in names:
                pairs.append((names.index(u), names.index(inv)))
        context = VarContext(names, unit_pairs=tuple(pairs),
                             shiftable=frozenset(range(rank)))
        ngen = len(obj["E"])
        e_ops, f_ops, coroots = [], [], []
        for i in range(ngen):
            vi = i if ngen == rank else i % rank
            up = tuple(1 if k == vi else 0 for k in range(len(names)))
            down = tuple(-1 if k == vi else 0 for k in range(len(names)))
            e_ops.append(TwistedOp.shift_term(parse_poly(context, obj["E"][i]), up))
            f_ops.append(TwistedOp.shift_term(parse_poly(context, obj["F"][i]), down))
            if gcm.det() != 0:
                coroots.append(coroot_polynomial(gcm, context, i))
            else:
                raise FamilyError("serialized module with singular GCM")
        return HFreeModule(gcm, obj["family"], obj["parameters"], context,
                           rank, e_ops, f_ops, coroots,
                           central=tuple(obj.get("central", ())))

    @staticmethod
    def load(path):
        with open(path) as fh:
            return HFreeModule.from_json(json.load(fh))

    def __repr__(self):
        return "HFreeModule(%s, rank %d, %d generators)" % (
            self.family, self.rank, self.ngen)


def _validate_subset(S, universe, what):
    S = frozenset(S)
    if not S <= frozenset(universe):
        raise FamilyError("%s must be a subset of %r" % (what, sorted(universe)))
    return S


# -- A-type table -------------------------------------------------------------


def a_type_coeffs(i, S, H, b):
    """(E_i, F_i) coefficients of the A-family table, without units.

    H is a list indexed 0..l+1 with H[0] and H[l+1] the zero polynomial;
    b may be any polynomial constant under the shifts in play.
    """
    lo = i in S
    hi = (i + 1) in S
    left = H[i] - H[i - 1]      # H_i - H_{i-1}
    right = H[i + 1] - H[i]     # H_{i+1} - H_i
    one = b.context.one
    if lo and hi:
        E = right - b
        F = left - b
    elif lo and not hi:
        E = one
        F = (left - b) * (right - b - 1)
    elif not lo and hi:
        E = (left - b - 1) * (right - b)
        F = one
    else:
        E = left - b - 1
        F = right - b - 1
    return E, F


def build_A(l, a, b, S):
    """Module family on C[H_1..H_l] for the rank-l type-A matrix.

    a: list of l nonzero rationals, or None for symbolic units;
    b: exact rational; S: subset of {1, ..., l+1}.
    """
    if l < 1:
        raise FamilyError("rank must be at least 1")
    S = _validate_subset(S, range(1, l + 2), "S")
    b_val = _as_fraction(b)
    context = module_context(l, l, a is None)
    units = UnitSet(context, l, a)
    H = [context.zero] + [context.var("H_%d" % k) for k in range(1, l + 1)] + [context.zero]
    bp = context.const(b_val)
    gcm = finite_gcm("A", l)
    e_ops, f_ops, coroots = [], [], []
    n = len(context)
    for i in range(1, l + 1):
        E, F = a_type_coeffs(i, S, H, bp)
        up = tuple(1 if k == i - 1 else 0 for k in range(n))
        down = tuple(-1 if k == i - 1 else 0 for k in range(n))
        e_ops.append(TwistedOp.shift_term(units.unit(i) * E, up))
        f_ops.append(TwistedOp.shift_term(units.inverse(i) * F, down))
        coroots.append(coroot_polynomial(gcm, context, i - 1))
    params = {"l": l, "a": units.describe(), "b": _fraction_str(b_val),
              "S": sorted(S)}
    return HFreeModule(gcm, "A", params, context, l, e_ops, f_ops, coroots)


# -- rank-one with central extension ------------------------------------------


def sl2_central_coeffs(S, H, b):
    """(E, F) coefficients of the three-case rank-one table."""
    one = b.context.one
    if (1 in S) == (2 in S):
        return H + b, -H + b
    if 1 in S:
        return one, -(H * H + H + b)
    return -H * H + H + b, one


def build_sl2_central(central, a, b, S):
    """Rank-one module structure on C[H] extended by central variables.

    central: names of the central variables (may be empty); a: nonzero
    rational or None for a symbolic unit; b: polynomial text or rational,
    in the central variables only; S: subset of {1, 2}.
    """
    S = _validate_subset(S, (1, 2), "S")
    central = tuple(central)
    context = module_context(1, 1, a is None, central=central)
    units = UnitSet(context, 1, None if a is None else [a])
    H = context.var("H_1")
    if isinstance(b, MultiPoly):
        bp = b
    elif isinstance(b, str) and not b.lstrip("+- ")[:1].isdigit():
        bp = parse_poly(context, b)
    else:
        bp = context.const(_as_fraction(b))
    if bp.degree_in(0) > 0 or any(
            bp.degree_in(context.names.index(n)) > 0
            for n in context.names if n.startswith(("a_", "ainv_"))):
        raise FamilyError("b must be a polynomial in the central variables")
    E, F = sl2_central_coeffs(S, H, bp)
    n = len(context)
    up = tuple(1 if k == 0 else 0 for k in range(n))
    down = tuple(-1 if k == 0 else 0 for k in range(n))
    e_op = TwistedOp.shift_term(units.unit(1) * E, up)
    f_op = TwistedOp.shift_term(units.inverse(1) * F, down)
    gcm = GCM([[2]])
    coroot = context.var("H_1") * 2
    params = {"a": units.describe()[0] if a is not None else "symbolic",
              "b": bp.render(), "S": sorted(S), "central": list(central)}
    return HFreeModule(gcm, "sl2z", params, context, 1, [e_op], [f_op],
                       [coroot], central=central)


# -- rank-two double-edge table -----------------------------------------------


def b2_type_coeffs(S, H1, H2):
    """The eight-case (E_1, F_1, E_2, F_2) table on the matrix
    [[2,-1],[-2,2]], without units."""
    ctx = H1.context
    one = ctx.one
    half = Fraction(1, 2)
    if 1 in S:
        E1 = one
        F1 = -(H1 - half * H2 + Fraction(3, 4)) * (H1 - half * H2 + Fraction(1, 4))
    else:
        E1 = -(H1 - half * H2 - Fraction(3, 4)) * (H1 - half * H2 - Fraction(1, 4))
        F1 = one
    if 1 in S and 2 in S:
        E2 = -2 * H1 + H2 - half
        F2 = -(H2 + half)
    elif 1 in S:
        E2 = (H2 - half) * (2 * H1 - H2 + half)
        F2 = one
    elif 2 in S:
        E2 = one
        F2 = (H2 + half) * (2 * H1 - H2 - half)
    else:
        E2 = H2 - half
        F2 = 2 * H1 - H2 - half
    return E1, F1, E2, F2


def build_B2(a, S):
    """Module family on C[H_1, H_2] for the matrix [[2,-1],[-2,2]].

    a: two nonzero rationals or None for symbolic units; S: subset of {1,2}.
    """
    S = _validate_subset(S, (1, 2), "S")
    context = module_context(2, 2, a is None)
    units = UnitSet(context, 2, a)
    H1, H2 = context.var("H_1"), context.var("H_2")
    E1, F1, E2, F2 = b2_type_coeffs(S, H1, H2)
    gcm = GCM([[2, -1], [-2, 2]])
    n = len(context)
    ops = []
    for i, (E, F) in enumerate(((E1, F1), (E2, F2)), start=1):
        up = tuple(1 if k == i - 1 else 0 for k in range(n))
        down = tuple(-1 if k == i - 1 else 0 for k in range(n))
        ops.append((TwistedOp.shift_term(units.unit(i) * E, up),
                    TwistedOp.shift_term(units.inverse(i) * F, down)))
    coroots = [coroot_polynomial(gcm, context, i) for i in range(2)]
    params = {"a": units.describe(), "S": sorted(S)}
    return HFreeModule(gcm, "B2", params, context, 2, [ops[0][0], ops[1][0]],
                       [ops[0][1], ops[1][1]], coroots)


# -- C-family table ------------------------------------------------------------


def c_type_coeffs(l, S, H):
    """(E_k, F_k) coefficients for all generators of the rank-l C family,
    without units.  H is indexed 0..l with H[0] = 0."""
    ctx = H[1].context
    one = ctx.one
    half = Fraction(1, 2)
    out = []
    for k in range(1, l - 1):
        lo, hi = k in S, (k + 1) in S
        left = H[k] - H[k - 1]
        right = H[k + 1] - H[k]
        if lo and hi:
            E, F = right + half, left + half
        elif lo:
            E, F = one, (left + half) * (right - half)
        elif hi:
            E, F = (left - half) * (right + half), one
        else:
            E, F = left - half, right - half
        out.append((E, F))
    # generator l-1: the double-edge neighbour
    lo, hi = (l - 1) in S, l in S
    left = H[l - 1] - H[l - 2]
    tip = 2 * H[l] - H[l - 1]
    if lo and hi:
        E, F = tip + half, left + half
    elif lo:
        E, F = one, (left + half) * (tip - half)
    elif hi:
        E, F = (left - half) * (tip + half), one
    else:
        E, F = left - half, tip - half
    out.append((E, F))
    # generator l: the short end
    u = H[l] - half * H[l - 1]
    if l in S:
        E = one
        F = -(u + Fraction(3, 4)) * (u + Fraction(1, 4))
    else:
        E = -(u - Fraction(3, 4)) * (u - Fraction(1, 4))
        F = one
    out.append((E, F))
    return out


def build_C(l, a, S):
    """Module family on C[H_1..H_l] for the rank-l C-type matrix
    (double edge between l-1 and l, |a_{l-1,l}| = 2).

    a: list of l nonzero rationals or None for symbolic units;
    S: subset of {1, ..., l}.
    """
    if l < 2:
        raise FamilyError("rank must be at least 2")
    S = _validate_subset(S, range(1, l + 1), "S")
    context = module_context(l, l, a is None)
    units = UnitSet(context, l, a)
    H = [context.zero] + [context.var("H_%d" % k) for k in range(1, l + 1)]
    gcm = finite_gcm("C", l)
    coeffs = c_type_coeffs(l, S, H)
    n = len(context)
    e_ops, f_ops, coroots = [], [], []
    for i, (E, F) in enumerate(coeffs, start=1):
        up = tuple(1 if k == i - 1 else 0 for k in range(n))
        down = tuple(-1 if k == i - 1 else 0 for k in range(n))
        e_ops.append(TwistedOp.shift_term(units.unit(i) * E, up))
        f_ops.append(TwistedOp.shift_term(units.inverse(i) * F, down))
        coroots.append(coroot_polynomial(gcm, context, i - 1))
    params = {"l": l, "a": units.describe(), "S": sorted(S)}
    return HFreeModule(gcm, "C", params, context, l, e_ops, f_ops, coroots)


def build_family(family, params):
    """Dispatch on a family name and a JSON-style parameter dict."""
    def units(key="a", count=None):
        v = params.get(key)
        if v in (None, "symbolic"):
            return None
        return v
    if family == "A":
        return build_A(params["l"], units(), params.get("b", 0), params.get("S", ()))
    if family == "B2":
        return build_B2(units(), params.get("S", ()))
    if family == "C":
        return build_C(params["l"], units(), params.get("S", ()))
    if family == "sl2z":
        return build_sl2_central(params.get("central", ()), units(),
                                 params.get("b", 0), params.get("S", ()))
    raise FamilyError("unknown family %r" % family)
