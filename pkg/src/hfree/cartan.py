"""Generalized Cartan matrices, Dynkin diagrams and type classification.

Classification uses the principal-minor criterion for indecomposable
matrices: finite type iff every principal minor is positive; affine type
iff the determinant vanishes and every proper principal minor is positive;
indefinite otherwise.  Finite and affine labels are recovered by labeled
graph isomorphism against a catalog of standard matrices.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations, permutations

from .exactpoly import MultiPoly, VarContext


class GCMError(ValueError):
    """A matrix violating the generalized Cartan matrix axioms."""


class GCM:
    """A validated generalized Cartan matrix."""

    __slots__ = ("a", "size", "indecomposable")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise GCMError("matrix must be square and nonempty")
        for i in range(n):
            for j in range(n):
                v = rows[i][j]
                if not isinstance(v, int):
                    raise GCMError("entry a_%d%d is not an integer" % (i + 1, j + 1))
                if i == j and v != 2:
                    raise GCMError("diagonal entry a_%d%d = %d != 2" % (i + 1, j + 1, v))
                if i != j and v > 0:
                    raise GCMError("off-diagonal entry a_%d%d = %d > 0" % (i + 1, j + 1, v))
        for i in range(n):
            for j in range(i + 1, n):
                if (rows[i][j] == 0) != (rows[j][i] == 0):
                    raise GCMError(
                        "a_%d%d = %d but a_%d%d = %d breaks the zero symmetry"
                        % (i + 1, j + 1, rows[i][j], j + 1, i + 1, rows[j][i]))
        self.a = tuple(tuple(r) for r in rows)
        self.size = n
        self.indecomposable = self._connected()

    def _connected(self):
        n = self.size
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and self.a[i][j] != 0 and j not in seen:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == n

    def __eq__(self, other):
        return isinstance(other, GCM) and self.a == other.a

    def __hash__(self):
        return hash(self.a)

    def __repr__(self):
        return "GCM(%r)" % (list(map(list, self.a)),)

    def diagram(self):
        return DynkinDiagram.from_gcm(self)

    def submatrix(self, vertices):
        """Principal submatrix on a vertex tuple (0-based)."""
        return GCM([[self.a[i][j] for j in vertices] for i in vertices])

    def det(self):
        return _det([[Fraction(v) for v in row] for row in self.a])

    def is_symmetrizable(self):
        """Whether a positive diagonal D with D A symmetric exists."""
        n = self.size
        d = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if i == j or self.a[i][j] == 0:
                        continue
                    val = d[i] * Fraction(self.a[i][j], self.a[j][i])
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        return False
        return True

    def to_json(self):
        return {"matrix": [list(r) for r in self.a]}

    @staticmethod
    def from_json(obj):
        if "matrix" not in obj:
            raise GCMError("missing 'matrix' field")
        return GCM(obj["matrix"])


def validate_gcm(rows):
    """Validate a square integer matrix as a GCM."""
    return GCM(rows)


def _det(m):
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    out = Fraction(sign)
    for i in range(n):
        out *= m[i][i]
    return out


class DynkinDiagram:
    """Labeled graph of a GCM: edge (i, j) carries (|a_ij|, |a_ji|)."""

    __slots__ = ("n", "edges")

    def __init__(self, n, edges):
        self.n = n
        norm = {}
        for (i, j), (p, q) in edges.items():
            if i == j:
                raise ValueError("loop edge")
            if i > j:
                i, j, p, q = j, i, q, p
            norm[(i, j)] = (p, q)
        self.edges = norm

    @staticmethod
    def from_gcm(g):
        edges = {}
        for i in range(g.size):
            for j in range(i + 1, g.size):
                if g.a[i][j] != 0:
                    edges[(i, j)] = (abs(g.a[i][j]), abs(g.a[j][i]))
        return DynkinDiagram(g.size, edges)

    def label(self, i, j):
        """Ordered label (|a_ij|, |a_ji|) or None if no edge."""
        if i < j:
            return self.edges.get((i, j))
        e = self.edges.get((j, i))
        return (e[1], e[0]) if e else None

    def degree(self, i):
        return sum(1 for (a, b) in self.edges if a == i or b == i)

    def render(self):
        lines = []
        for (i, j), (p, q) in sorted(self.edges.items()):
            lines.append("%d -(%d,%d)- %d" % (i + 1, p, q, j + 1))
        return "\n".join(lines) if lines else "(no edges)"

    def __repr__(self):
        return "DynkinDiagram(%d vertices; %s)" % (self.n, self.render().replace("\n", "; "))


def diagram_isomorphism(pattern, target, target_vertices=None):
    """A vertex bijection carrying pattern onto target exactly, or None.

    Brute force over permutations with a degree/label-multiset pruning
    step; adequate for desk-scale ranks.
    """
    if target_vertices is None:
        target_vertices = tuple(range(target.n))
    if pattern.n != len(target_vertices):
        return None

    def profile(diag, verts):
        out = {}
        for v in verts:
            labels = []
            for w in verts:
                if w == v:
                    continue
                lab = diag.label(v, w)
                if lab:
                    labels.append(lab)
            out[v] = tuple(sorted(labels))
        return out

    pprof = profile(pattern, range(pattern.n))
    tprof = profile(target, target_vertices)
    if sorted(pprof.values()) != sorted(tprof.values()):
        return None
    for perm in permutations(target_vertices):
        if any(pprof[i] != tprof[perm[i]] for i in range(pattern.n)):
            continue
        ok = True
        for i in range(pattern.n):
            for j in range(i + 1, pattern.n):
                if pattern.label(i, j) != target.label(perm[i], perm[j]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return perm
    return None


def find_subdiagram(g, pattern):
    """A vertex subset of g whose induced subdiagram matches pattern.

    Returns the tuple of 0-based ambient vertices (ordered so that
    pattern vertex i maps to result[i]) or None.
    """
    diag = g.diagram() if isinstance(g, GCM) else g
    if pattern.n > diag.n:
        return None
    for subset in combinations(range(diag.n), pattern.n):
        perm = diagram_isomorphism(pattern, diag, subset)
        if perm is not None:
            return perm
    return None


# -- catalog -----------------------------------------------------------------


def _empty(n):
    return [[2 if i == j else 0 for j in range(n)] for i in range(n)]


def _edge(m, i, j, aij=-1, aji=-1):
    m[i][j] = aij
    m[j][i] = aji


def finite_gcm(family, rank):
    """Standard Cartan matrix of a finite type.

    Conventions: B_l has its double edge (l-1, l) with |a_{l,l-1}| = 2
    (arrow toward l); C_l has |a_{l-1,l}| = 2 (arrow toward l-1); D_l
    branches at l-2; E_l attaches vertex l to vertex 3 of the path;
    F_4 is 1-2=>3-4 with |a_32| = 2; G_2 is [[2,-1],[-3,2]].
    """
    n = rank
    if family == "A":
        if n < 1:
            raise ValueError("A_l needs l >= 1")
        m = _empty(n)
        for i in range(n - 1):
            _edge(m, i, i + 1)
        return GCM(m)
    if family == "B":
        if n < 2:
            raise ValueError("B_l needs l >= 2")
        m = _empty(n)
        for i in range(n - 2):
            _edge(m, i, i + 1)
        _edge(m, n - 2, n - 1, aij=-1, aji=-2)
        return GCM(m)
    if family == "C":
        if n < 2:
            raise ValueError("C_l needs l >= 2")
        m = _empty(n)
        for i in range(n - 2):
            _edge(m, i, i + 1)
        _edge(m, n - 2, n - 1, aij=-2, aji=-1)
        return GCM(m)
    if family == "D":
        if n < 4:
            raise ValueError("D_l needs l >= 4")
        m = _empty(n)
        for i in range(n - 2):
            _edge(m, i, i + 1)
        _edge(m, n - 3, n - 1)
        return GCM(m)
    if family == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_l needs l in {6,7,8}")
        m = _empty(n)
        for i in range(n - 2):
            _edge(m, i, i + 1)
        _edge(m, 2, n - 1)
        return GCM(m)
    if family == "F":
        if n != 4:
            raise ValueError("F_4 has rank 4")
        m = _empty(4)
        _edge(m, 0, 1)
        _edge(m, 1, 2, aij=-1, aji=-2)
        _edge(m, 2, 3)
        return GCM(m)
    if family == "G":
        if n != 2:
            raise ValueError("G_2 has rank 2")
        return GCM([[2, -1], [-3, 2]])
    raise ValueError("unknown finite family %r" % family)


def finite_catalog(max_rank=8):
    """All finite types with rank <= max_rank, as (label, GCM) pairs."""
    out = []
    for n in range(1, max_rank + 1):
        out.append(("A%d" % n, finite_gcm("A", n)))
    for n in range(2, max_rank + 1):
        out.append(("B%d" % n, finite_gcm("B", n)))
        out.append(("C%d" % n, finite_gcm("C", n)))
    for n in range(4, max_rank + 1):
        out.append(("D%d" % n, finite_gcm("D", n)))
    for n in (6, 7, 8):
        if n <= max_rank:
            out.append(("E%d" % n, finite_gcm("E", n)))
    if max_rank >= 4:
        out.append(("F4", finite_gcm("F", 4)))
    out.append(("G2", finite_gcm("G", 2)))
    return out


def affine_gcm(label):
    """Standard Cartan matrix of an affine type, by label string."""
    kind, arg = label[0], label[1:]
    if label == "A1~1":
        return GCM([[2, -2], [-2, 2]])
    if label == "A2~2":
        return GCM([[2, -4], [-1, 2]])
    if label == "G2~1":
        m = _empty(3)
        _edge(m, 0, 1)
        _edge(m, 1, 2, aij=-1, aji=-3)
        return GCM(m)
    if label == "D4~3":
        m = _empty(3)
        _edge(m, 0, 1)
        _edge(m, 1, 2, aij=-3, aji=-1)
        return GCM(m)
    if label == "F4~1":
        m = _empty(5)
        for i in range(2):
            _edge(m, i, i + 1)
        _edge(m, 2, 3, aij=-1, aji=-2)
        _edge(m, 3, 4)
        return GCM(m)
    if label == "E6~2":
        m = _empty(5)
        for i in range(2):
            _edge(m, i, i + 1)
        _edge(m, 2, 3, aij=-2, aji=-1)
        _edge(m, 3, 4)
        return GCM(m)
    l = int(arg.split("~")[0])
    twist = int(arg.split("~")[1])
    if kind == "A" and twist == 1:
        # (l+1)-cycle, all single edges
        m = _empty(l + 1)
        for i in range(l):
            _edge(m, i, i + 1)
        _edge(m, 0, l)
        return GCM(m)
    if kind == "B" and twist == 1:
        # branch 0,1 at vertex 2; double edge toward the far end
        m = _empty(l + 1)
        _edge(m, 0, 2)
        for i in range(1, l - 1):
            _edge(m, i, i + 1)
        _edge(m, l - 1, l, aij=-1, aji=-2)
        return GCM(m)
    if kind == "C" and twist == 1:
        # chain with both double edges pointing inward
        m = _empty(l + 1)
        _edge(m, 0, 1, aij=-1, aji=-2)
        for i in range(1, l - 1):
            _edge(m, i, i + 1)
        _edge(m, l - 1, l, aij=-2, aji=-1)
        return GCM(m)
    if kind == "D" and twist == 1:
        # branches at both ends of the chain
        m = _empty(l + 1)
        _edge(m, 0, 2)
        for i in range(1, l - 2):
            _edge(m, i, i + 1)
        _edge(m, l - 2, l - 1)
        _edge(m, l - 2, l)
        return GCM(m)
    if kind == "E" and twist == 1:
        base = finite_gcm("E", l)
        m = [list(r) + [0] for r in base.a]
        m.append([0] * (l + 1))
        m[l][l] = 2
        # affine node attaches to the end of the longest leg
        attach = {6: 5, 7: 0, 8: 6}[l]
        _edge(m, attach, l)
        return GCM(m)
    if kind == "A" and twist == 2 and l % 2 == 0:
        # A_{2l'}^{(2)}: chain with both double edges pointing one way
        lp = l // 2
        m = _empty(lp + 1)
        _edge(m, 0, 1, aij=-2, aji=-1)
        for i in range(1, lp - 1):
            _edge(m, i, i + 1)
        _edge(m, lp - 1, lp, aij=-2, aji=-1)
        return GCM(m)
    if kind == "A" and twist == 2 and l % 2 == 1:
        # A_{2l'-1}^{(2)}: branch at one end, double edge at the other
        lp = (l + 1) // 2
        m = _empty(lp + 1)
        _edge(m, 0, 2)
        for i in range(1, lp - 1):
            _edge(m, i, i + 1)
        _edge(m, lp - 1, lp, aij=-2, aji=-1)
        return GCM(m)
    if kind == "D" and twist == 2:
        # D_{l'+1}^{(2)}: chain with both double edges pointing outward
        lp = l - 1
        m = _empty(lp + 1)
        _edge(m, 0, 1, aij=-2, aji=-1)
        for i in range(1, lp - 1):
            _edge(m, i, i + 1)
        _edge(m, lp - 1, lp, aij=-1, aji=-2)
        return GCM(m)
    raise ValueError("unknown affine label %r" % label)


def affine_catalog(max_rank=9):
    """All affine labels: untwisted series plus the twisted ones."""
    out = [("A1~1", affine_gcm("A1~1"))]
    for l in range(2, max_rank):
        out.append(("A%d~1" % l, affine_gcm("A%d~1" % l)))
    for l in range(3, max_rank):
        out.append(("B%d~1" % l, affine_gcm("B%d~1" % l)))
    for l in range(2, max_rank):
        out.append(("C%d~1" % l, affine_gcm("C%d~1" % l)))
    for l in range(4, max_rank):
        out.append(("D%d~1" % l, affine_gcm("D%d~1" % l)))
    for l in (6, 7, 8):
        if l + 1 <= max_rank:
            out.append(("E%d~1" % l, affine_gcm("E%d~1" % l)))
    out.append(("F4~1", affine_gcm("F4~1")))
    out.append(("G2~1", affine_gcm("G2~1")))
    out.append(("A2~2", affine_gcm("A2~2")))
    for l in range(2, max_rank):           # A_{2l}^{(2)}, rank l+1
        if l + 1 <= max_rank:
            out.append(("A%d~2" % (2 * l), affine_gcm("A%d~2" % (2 * l))))
    for l in range(3, max_rank):           # A_{2l-1}^{(2)}, rank l+1
        if l + 1 <= max_rank:
            out.append(("A%d~2" % (2 * l - 1), affine_gcm("A%d~2" % (2 * l - 1))))
    for l in range(2, max_rank):           # D_{l+1}^{(2)}, rank l+1
        if l + 1 <= max_rank:
            out.append(("D%d~2" % (l + 1), affine_gcm("D%d~2" % (l + 1))))
    out.append(("E6~2", affine_gcm("E6~2")))
    out.append(("D4~3", affine_gcm("D4~3")))
    # drop permutation-equivalent duplicates, keeping the first label
    seen = []
    uniq = []
    for label, g in out:
        d = g.diagram()
        if any(gg.size == g.size and diagram_isomorphism(d, gg.diagram())
               for _, gg in seen):
            continue
        seen.append((label, g))
        uniq.append((label, g))
    return uniq


class TypeResult:
    """Outcome of classify_type."""

    __slots__ = ("kind", "label")

    def __init__(self, kind, label=None):
        self.kind = kind      # "finite" | "affine" | "indefinite"
        self.label = label

    def __repr__(self):
        return ("TypeResult(%r, %r)" % (self.kind, self.label)
                if self.label else "TypeResult(%r)" % self.kind)

    def __eq__(self, other):
        return (isinstance(other, TypeResult)
                and (self.kind, self.label) == (other.kind, other.label))


def classify_type(g):
    """Finite/affine/indefinite classification of an indecomposable GCM."""
    if not g.indecomposable:
        raise GCMError("classification requires an indecomposable GCM")
    n = g.size
    all_proper_positive = True
    for size in range(1, n):
        for verts in combinations(range(n), size):
            if g.submatrix(verts).det() <= 0:
                all_proper_positive = False
                break
        if not all_proper_positive:
            break
    d = g.det()
    if all_proper_positive and d > 0:
        kind = "finite"
    elif all_proper_positive and d == 0:
        kind = "affine"
    else:
        return TypeResult("indefinite")
    diag = g.diagram()
    catalog = finite_catalog(n) if kind == "finite" else affine_catalog(n)
    for label, cg in catalog:
        if cg.size == n and diagram_isomorphism(diag, cg.diagram()):
            return TypeResult(kind, label)
    return TypeResult(kind)


def cartan_context(g, units=False):
    """Variable context H_1..H_l for an invertible GCM, optionally with
    symbolic unit parameters a_i, ainv_i (non-shiftable)."""
    names = ["H_%d" % (i + 1) for i in range(g.size)]
    pairs = []
    if units:
        base = len(names)
        for i in range(g.size):
            names.append("a_%d" % (i + 1))
            names.append("ainv_%d" % (i + 1))
            pairs.append((base + 2 * i, base + 2 * i + 1))
    shiftable = frozenset(range(g.size))
    return VarContext(names, unit_pairs=tuple(pairs), shiftable=shiftable)


def coroot_polynomial(g, context, i):
    """The coroot of generator i as a polynomial: sum_j a_ij H_j.

    Requires an invertible GCM (the H-basis is only defined then).
    """
    if g.det() == 0:
        raise GCMError("singular Cartan matrix: use the affine basis "
                       "h_1..h_l, K, d instead")
    if not (0 <= i < g.size):
        raise IndexError("generator index out of range")
    p = MultiPoly.zero(context)
    for j in range(g.size):
        if g.a[i][j]:
            p = p + context.var("H_%d" % (j + 1)) * g.a[i][j]
    return p


def load_gcm(path):
    with open(path) as fh:
        return GCM.from_json(json.load(fh))
