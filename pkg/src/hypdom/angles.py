"""Exact angle systems: vertex equations, edge-class equations, feasibility.

All angles live in units of pi as exact rationals.  An exterior dihedral
angle q means q*pi radians; the interior angle is (1-q)*pi.  The linear
system for a polyhedron with a chosen edge partition has one row per vertex
(incident angles sum to 2) and one row per class (angles sum to size-2).
Strict inequalities (0 < q < 1 per edge, sum > 2 over every non-facial
simple circuit of the dual) are decided exactly by Fourier-Motzkin
elimination on the solution family.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import polytope


class AngleDomainError(ValueError):
    """Angle value outside the open interval (0, 1)."""


class ClassCountError(ValueError):
    """No torsion-free class count exists (parity or sign failure)."""


class PartitionError(ValueError):
    """Classes do not partition the edge set, or a class is too small."""


class DimensionCapExceeded(RuntimeError):
    """Feasibility elimination asked to eliminate too many variables."""


FEASIBILITY_DIMENSION_CAP = 8


@dataclass(frozen=True)
class AngleAssignment:
    """Exterior dihedral angle per edge, as rationals in units of pi."""
    values: dict  # edge id -> Fraction in (0, 1)

    def __post_init__(self):
        for eid, q in self.values.items():
            if not 0 < q < 1:
                raise AngleDomainError(f"edge {eid}: q={q} outside (0, 1)")

    def interior(self, eid):
        return 1 - self.values[eid]

    def to_json_dict(self):
        return {str(eid): f"{q.numerator}/{q.denominator}"
                for eid, q in sorted(self.values.items())}

    @classmethod
    def from_json_dict(cls, doc):
        return cls({int(k): Fraction(v) for k, v in doc.items()})


@dataclass(frozen=True)
class LinearSystem:
    columns: tuple     # edge ids, in column order
    rows: tuple        # (coefficient tuple, rhs), all Fraction
    provenance: tuple  # ("vertex", name) or ("class", index) per row


@dataclass(frozen=True)
class SolutionSet:
    status: str        # "infeasible" | "unique" | "affine-family"
    particular: dict   # edge id -> Fraction, or None when infeasible
    basis: tuple       # null-space basis vectors (tuples over columns)
    rank: int
    columns: tuple
    free_columns: tuple = ()

    def point(self, coeffs):
        """particular + sum coeffs[j]*basis[j], as an edge->value dict."""
        vals = dict(self.particular)
        for t, vec in zip(coeffs, self.basis):
            for eid, x in zip(self.columns, vec):
                vals[eid] += t * x
        return vals

    def contains(self, values):
        """Does the given edge->Fraction map solve every row exactly?"""
        if self.status == "infeasible":
            return False
        res = _solve_in_span(self, values)
        return res is not None


def required_class_count(poly):
    """(edges - vertices) / 2; the only class count a torsion-free domain
    on this polyhedron can have."""
    e, v = poly.edge_count(), poly.vertex_count()
    if (e - v) % 2 != 0:
        raise ClassCountError(f"E - V = {e - v} is odd; no torsion-free domain")
    k = (e - v) // 2
    if k <= 0:
        raise ClassCountError(f"E - V = {e - v} is not positive")
    return k


def assemble_system(poly, classes, inc=None):
    """Vertex rows plus one row per edge class.

    `classes` is a partition of the edge-id set; classes of size 1 or 2 are
    rejected up front (their interior angles would have to sum to 2*pi with
    too few strictly-positive terms, forcing an exterior angle sum of zero).
    """
    inc = inc or polytope.build_incidence(poly)
    all_edges = set(range(len(inc.edges)))
    seen = set()
    for cl in classes:
        cl = set(cl)
        if cl & seen:
            raise PartitionError("classes overlap")
        if not cl <= all_edges:
            raise PartitionError("class contains unknown edge id")
        if len(cl) < 3:
            raise PartitionError(
                f"class of size {len(cl)} is analytically infeasible")
        seen |= cl
    if seen != all_edges:
        raise PartitionError("classes do not cover the edge set")
    columns = tuple(sorted(all_edges))
    col = {eid: i for i, eid in enumerate(columns)}
    rows = []
    provenance = []
    for v in poly.vertices:
        coef = [Fraction(0)] * len(columns)
        for eid in inc.vertex_edges[v]:
            coef[col[eid]] = Fraction(1)
        rows.append((tuple(coef), Fraction(2)))
        provenance.append(("vertex", v))
    for i, cl in enumerate(classes):
        coef = [Fraction(0)] * len(columns)
        for eid in cl:
            coef[col[eid]] = Fraction(1)
        rows.append((tuple(coef), Fraction(len(cl) - 2)))
        provenance.append(("class", i))
    return LinearSystem(columns, tuple(rows), tuple(provenance))


def solve_exact(system):
    """Gauss-Jordan over the rationals; everything returned is exact."""
    rows = [([Fraction(x) for x in coef], Fraction(rhs))
            for coef, rhs in system.rows]
    ncol = len(system.columns)
    pivots = []
    r = 0
    for c in range(ncol):
        p = next((i for i in range(r, len(rows)) if rows[i][0][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        coef, rhs = rows[r]
        inv = 1 / coef[c]
        rows[r] = ([x * inv for x in coef], rhs * inv)
        for i in range(len(rows)):
            if i != r and rows[i][0][c] != 0:
                f = rows[i][0][c]
                rows[i] = ([a - f * b for a, b in zip(rows[i][0], rows[r][0])],
                           rows[i][1] - f * rows[r][1])
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for coef, rhs in rows[r:]:
        if all(x == 0 for x in coef) and rhs != 0:
            return SolutionSet("infeasible", None, (), r, system.columns, ())
    particular = {eid: Fraction(0) for eid in system.columns}
    for (coef, rhs), c in zip(rows[:r], pivots):
        particular[system.columns[c]] = rhs
    free = [c for c in range(ncol) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncol
        vec[fcol] = Fraction(1)
        for (coef, rhs), c in zip(rows[:r], pivots):
            vec[c] = -coef[fcol]
        basis.append(tuple(vec))
    status = "unique" if not free else "affine-family"
    return SolutionSet(status, particular, tuple(basis), r, system.columns,
                       tuple(free))


def _solve_in_span(sol, values):
    """Coefficients t with particular + basis.t == values, or None.

    Each basis vector carries a 1 on its own free column and 0 on the other
    free columns, so the coefficients can be read off directly.
    """
    diff = [values[eid] - sol.particular[eid] for eid in sol.columns]
    if not sol.basis:
        return () if all(d == 0 for d in diff) else None
    coeffs = [diff[c] for c in sol.free_columns]
    residual = list(diff)
    for t, vec in zip(coeffs, sol.basis):
        residual = [r - t * x for r, x in zip(residual, vec)]
    return tuple(coeffs) if all(r == 0 for r in residual) else None


def nonfacial_circuits(dual, cap=polytope.DEFAULT_CIRCUIT_CAP):
    return [seq for seq, facial in polytope.simple_circuits(dual, cap) if not facial]


def check_inequalities(poly, dual, assignment, cap=polytope.DEFAULT_CIRCUIT_CAP):
    """Strict Rivin checks for a full assignment.

    Returns (ok, failures); each failure is ("edge", id, value) for a range
    violation or ("circuit", link sequence, total) for a non-facial simple
    circuit whose angle sum is not > 2.
    """
    vals = assignment.values if isinstance(assignment, AngleAssignment) else assignment
    failures = []
    for eid in sorted(vals):
        if not 0 < vals[eid] < 1:
            failures.append(("edge", eid, vals[eid]))
    for seq in nonfacial_circuits(dual, cap):
        total = sum(vals[eid] for eid in seq)
        if not total > 2:
            failures.append(("circuit", seq, total))
    return (not failures), failures


def _norm_constraint(a, b):
    scale = max((abs(x) for x in a), default=Fraction(0))
    scale = max(scale, abs(b))
    if scale == 0:
        return tuple(a), b
    return tuple(x / scale for x in a), b / scale


def _eliminate(cons, k, width):
    """One Fourier-Motzkin step on strict constraints a.t < b."""
    pos, neg, out = [], [], {}

    def keep(a, b):
        if all(x == 0 for x in a):
            return b > 0 or None  # None signals infeasible, True means drop
        a, b = _norm_constraint(a, b)
        if a not in out or b < out[a]:
            out[a] = b
        return True

    for a, b in cons:
        if a[k] > 0:
            pos.append((a, b))
        elif a[k] < 0:
            neg.append((a, b))
        else:
            if keep(a, b) is None:
                return None
    for ap, bp in pos:
        for an, bn in neg:
            a = tuple(ap[i] * (-an[k]) + an[i] * ap[k] for i in range(width))
            b = bp * (-an[k]) + bn * ap[k]
            if keep(a, b) is None:
                return None
    return sorted(out.items())


def feasible(system, dual, cap=polytope.DEFAULT_CIRCUIT_CAP,
             dimension_cap=FEASIBILITY_DIMENSION_CAP):
    """Decide whether the open Rivin polytope meets the solution family.

    Returns (solution_set, witness) where witness is an AngleAssignment
    satisfying every equation and every strict inequality, or None when the
    region is empty.  Exact Fourier-Motzkin elimination over the null-space
    coordinates; midpoint back-substitution produces the rational witness.
    """
    sol = solve_exact(system)
    if sol.status == "infeasible":
        return sol, None
    m = len(sol.basis)
    if m > dimension_cap:
        raise DimensionCapExceeded(f"{m} free variables exceeds cap {dimension_cap}")
    col = {eid: i for i, eid in enumerate(sol.columns)}
    cons = []

    def add(a, b):
        cons.append((tuple(a), b))

    for i, eid in enumerate(sol.columns):
        a = [sol.basis[j][i] for j in range(m)]
        add([-x for x in a], sol.particular[eid])       # q > 0
        add(a, 1 - sol.particular[eid])                 # q < 1
    for seq in nonfacial_circuits(dual, cap):
        idxs = [col[eid] for eid in seq]
        a = [sum(sol.basis[j][i] for i in idxs) for j in range(m)]
        b = sum(sol.particular[sol.columns[i]] for i in idxs)
        add([-x for x in a], b - 2)                     # sum > 2
    # eliminate in the cheapest order: fewest pairwise products first
    cur = sorted({_norm_constraint(a, b) for a, b in cons})
    remaining = list(range(m))
    order, layers = [], []
    while remaining:
        def cost(k):
            pos = sum(1 for a, _ in cur if a[k] > 0)
            neg = sum(1 for a, _ in cur if a[k] < 0)
            return pos * neg
        k = min(remaining, key=cost)
        remaining.remove(k)
        order.append(k)
        layers.append(cur)
        cur = _eliminate(cur, k, m)
        if cur is None:
            return sol, None
    for a, b in cur:
        if all(x == 0 for x in a) and b <= 0:
            return sol, None
    t = [None] * m
    for k, constraints in zip(reversed(order), reversed(layers)):
        lo = hi = None
        for a, b in constraints:
            if a[k] == 0:
                continue
            rest = b - sum(a[j] * t[j] for j in range(m)
                           if j != k and t[j] is not None and a[j] != 0)
            bound = rest / a[k]
            if a[k] > 0:
                hi = bound if hi is None else min(hi, bound)
            else:
                lo = bound if lo is None else max(lo, bound)
        if lo is None and hi is None:
            t[k] = Fraction(0)
        elif lo is None:
            t[k] = hi - 1
        elif hi is None:
            t[k] = lo + 1
        else:
            if not lo < hi:
                return sol, None
            t[k] = (lo + hi) / 2
    witness = AngleAssignment(sol.point(t))
    return sol, witness
