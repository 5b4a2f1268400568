"""Integer lattice linear algebra on the torus (Q/Z)^d: Smith normal form,
fixed-point sets of affine maps, orbits of torsion points, and centralizer
actions on fixed-set components and their cohomology."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .finite_group import AffineLatticeMap, FiniteActionGroup, GroupError
from .linalg import int_identity, principal_minor_trace, solve


class TorusError(ValueError):
    pass


def normalize_point(coords) -> tuple[Fraction, ...]:
    return tuple(Fraction(c) % 1 for c in coords)


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(mat) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """U, S, V with U*mat*V = S diagonal, s1 | s2 | ..., U and V unimodular."""
    S = [[int(x) for x in row] for row in mat]
    m = len(S)
    n = len(S[0]) if m else 0
    U = int_identity(m)
    V = int_identity(n)

    def row_op(i, j, q):
        S[i] = [a - q * b for a, b in zip(S[i], S[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):
        for r in range(m):
            S[r][i] -= q * S[r][j]
        for r in range(n):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(m):
            S[r][i], S[r][j] = S[r][j], S[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(m, n):
        entries = [(i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not entries:
            break
        while True:
            i0, j0 = min(entries, key=lambda ij: abs(S[ij[0]][ij[1]]))
            if i0 != t:
                swap_rows(t, i0)
            if j0 != t:
                swap_cols(t, j0)
            clean = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    row_op(i, t, q)
                    if S[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    col_op(j, t, q)
                    if S[t][j]:
                        clean = False
            if clean:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if S[i][j] % S[t][t]), None)
                if bad is None:
                    break
                row_op(t, bad[0], -1)
            entries = [(i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, S, V


# ---------------------------------------------------------------------------
# fixed-point sets

@dataclass(frozen=True)
class FixedPointSet:
    """The fixed locus X^phi: a finite disjoint union of subtorus cosets."""

    empty: bool
    dimension: int
    subtorus_basis: tuple[tuple[int, ...], ...]      # saturated lattice basis vectors
    component_reps: tuple[tuple[Fraction, ...], ...]
    invariant_factors: tuple[int, ...]               # the nonzero ones of (A - I)
    _membership_u: tuple[tuple[int, ...], ...]       # U of the SNF of the basis matrix

    @property
    def component_count(self) -> int:
        return len(self.component_reps)

    def in_subtorus(self, vec) -> bool:
        """Is vec in the subtorus modulo Z^d?"""
        u = self._membership_u
        d = len(u)
        r = self.dimension
        for i in range(r, d):
            val = sum(Fraction(u[i][j]) * vec[j] for j in range(d))
            if val.denominator != 1:
                return False
        return True

    def component_of(self, point) -> int:
        """Index of the component containing the point; raises if outside."""
        point = normalize_point(point)
        for idx, rep in enumerate(self.component_reps):
            if self.in_subtorus([p - r for p, r in zip(point, rep)]):
                return idx
        raise TorusError("point lies outside the fixed-point set")


def fixed_point_set(phi: AffineLatticeMap) -> FixedPointSet:
    """Solve (A - I) x = -b in (Q/Z)^d via the Smith form of A - I.

    Components are cosets of one rational subtorus; representatives are
    enumerated in lexicographic order of the Smith-coordinate offsets.
    """
    d = phi.rank
    a_minus_i = [[phi.matrix[i][j] - (1 if i == j else 0) for j in range(d)]
                 for i in range(d)]
    u, s, v = smith_normal_form(a_minus_i)
    c = [-sum(Fraction(u[i][j]) * phi.translation[j] for j in range(d))
         for i in range(d)]
    diag = [s[i][i] for i in range(d)]
    zero_rows = [i for i in range(d) if not diag[i]]
    for i in zero_rows:
        if c[i].denominator != 1:
            return FixedPointSet(True, 0, (), (), (), ())
    factors = tuple(diag[i] for i in range(d) if diag[i])
    basis = tuple(tuple(v[r][i] for r in range(d)) for i in zero_rows)
    if basis:
        bu, _, _ = smith_normal_form([list(col) for col in zip(*basis)])
        membership_u = tuple(tuple(row) for row in bu)
    else:
        membership_u = tuple(tuple(row) for row in int_identity(d))
    reps = []
    nonzero_rows = [i for i in range(d) if diag[i]]
    for offsets in product(*(range(diag[i]) for i in nonzero_rows)):
        y = [Fraction(0)] * d
        for pos, i in enumerate(nonzero_rows):
            y[i] = (c[i] + offsets[pos]) / diag[i]
        x = tuple((sum(Fraction(v[r][j]) * y[j] for j in range(d))) % 1
                  for r in range(d))
        reps.append(x)
    return FixedPointSet(False, len(zero_rows), basis, tuple(reps), factors,
                         membership_u)


# ---------------------------------------------------------------------------
# centralizer action on a fixed-point set

@dataclass(frozen=True)
class ComponentAction:
    """How a commuting affine map permutes components of X^phi and acts on the
    subtorus lattice."""

    permutation: tuple[int, ...]
    linear_part: tuple[tuple[int, ...], ...]  # square, size = subtorus dimension

    @property
    def fixed_components(self) -> int:
        return sum(1 for i, j in enumerate(self.permutation) if i == j)


def component_action(z: AffineLatticeMap, fixed: FixedPointSet,
                     phi: AffineLatticeMap) -> ComponentAction:
    if fixed.empty:
        return ComponentAction((), ())
    if z.compose(phi) != phi.compose(z):
        raise GroupError("map does not commute with the fixed-point map")
    d = z.rank
    r = fixed.dimension
    perm = []
    for rep in fixed.component_reps:
        image = z.apply(rep)
        perm.append(fixed.component_of(image))
    if sorted(perm) != list(range(fixed.component_count)):
        raise TorusError("component action is not a permutation")
    if r == 0:
        return ComponentAction(tuple(perm), ())
    # linear part L with A_z * B = B * L on the saturated basis B
    b_cols = [list(col) for col in fixed.subtorus_basis]   # each a d-vector
    b_mat = [[Fraction(b_cols[j][i]) for j in range(r)] for i in range(d)]
    lin = []
    for j in range(r):
        rhs = [sum(Fraction(z.matrix[i][k]) * b_cols[j][k] for k in range(d))
               for i in range(d)]
        sol = solve(b_mat, rhs)
        if sol is None or any(x.denominator != 1 for x in sol):
            raise TorusError("linear part does not preserve the subtorus lattice")
        lin.append([x.numerator for x in sol])
    linear = tuple(tuple(lin[j][i] for j in range(r)) for i in range(r))
    return ComponentAction(tuple(perm), linear)


def cohomology_trace(act: ComponentAction, n: int) -> int:
    """Trace of the induced map on degree-n de Rham cohomology of the fixed set.

    Each component fixed by the permutation contributes the trace of the n-th
    exterior power of the linear part; permutted components contribute 0.
    """
    r = len(act.linear_part)
    if n < 0 or n > r:
        return 0
    lam = principal_minor_trace([list(row) for row in act.linear_part], n)
    return act.fixed_components * lam


# ---------------------------------------------------------------------------
# orbits of torsion points

def orbit_of_point(group: FiniteActionGroup, point) -> tuple[list[tuple[Fraction, ...]], list[int]]:
    """Orbit (in first-appearance order over the group) and stabilizer indices."""
    point = normalize_point(point)
    orbit: list[tuple[Fraction, ...]] = []
    seen = set()
    stab = []
    for i, g in enumerate(group.elements):
        image = g.apply(point)
        if image == point:
            stab.append(i)
        if image not in seen:
            seen.add(image)
            orbit.append(image)
    if len(orbit) * len(stab) != group.order:
        raise TorusError("orbit-stabilizer identity failed")  # pragma: no cover
    return orbit, stab
