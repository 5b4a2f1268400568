"""Independent brute-force verification layer: finite quotient algebras by
structure constants, exact decomposition of twisted group algebras into
irreducibles, and certification of module lists.

The decomposition runs Dixon's method on a finite central extension of Gamma
(all arithmetic mod p, lifted exactly into a cyclotomic field), producing
central idempotents whose defining identities are verified exactly; a minimal
submodule of each isotypic block is then cut out with eigenspaces of basis
elements, whose eigenvalues are roots of unity of known order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from .finite_group import Cocycle, FiniteActionGroup
from .linalg import EchelonSpan, identity, kernel_basis, mat_mul, rref
from .scalars import Cyc


class OracleError(ValueError):
    pass


class DecompositionError(OracleError):
    """Raised when the exact decomposition cannot complete (spec error path)."""


ASSOCIATIVITY_FULL_LIMIT = 64
ASSOCIATIVITY_SAMPLES = 1000


# ---------------------------------------------------------------------------
# finite algebras by structure constants

class FiniteAlgebra:
    """Finite-dimensional algebra given by sparse structure constants.

    structure[(i, j)] is a dict k -> Cyc with e_i * e_j = sum_k c_k e_k.
    """

    def __init__(self, dimension: int, structure: dict, unit: dict,
                 labels: list | None = None, conductor: int = 1,
                 seed: int = 0, check: bool = True) -> None:
        self.dimension = dimension
        self.structure = structure
        self.unit = {k: c for k, c in unit.items() if c}
        self.labels = labels or list(range(dimension))
        self.conductor = conductor
        self.associativity_mode = ("full" if dimension <= ASSOCIATIVITY_FULL_LIMIT
                                   else f"sampled({ASSOCIATIVITY_SAMPLES},seed={seed})")
        if check:
            self._check_associativity(seed)
            self._check_unit()

    def product(self, a: dict, b: dict) -> dict:
        out: dict[int, Cyc] = {}
        for i, ca in a.items():
            for j, cb in b.items():
                for k, c in self.structure.get((i, j), {}).items():
                    term = ca * cb * c
                    out[k] = out[k] + term if k in out else term
        return {k: c for k, c in out.items() if c}

    def _check_associativity(self, seed: int) -> None:
        n = self.dimension
        if n <= ASSOCIATIVITY_FULL_LIMIT:
            triples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                       for _ in range(ASSOCIATIVITY_SAMPLES))
        for i, j, k in triples:
            lhs = self.product(self.structure.get((i, j), {}), {k: Cyc.one(self.conductor)})
            rhs = self.product({i: Cyc.one(self.conductor)}, self.structure.get((j, k), {}))
            if not _sparse_eq(lhs, rhs):
                raise OracleError(f"associativity fails on basis triple {(i, j, k)}")

    def _check_unit(self) -> None:
        for i in range(self.dimension):
            e = {i: Cyc.one(self.conductor)}
            if not (_sparse_eq(self.product(self.unit, e), e)
                    and _sparse_eq(self.product(e, self.unit), e)):
                raise OracleError("unit element fails on basis element %d" % i)

    def center_dimension(self) -> int:
        """Kernel dimension of the commutator-with-basis linear system."""
        n = self.dimension
        one = Cyc.one(self.conductor)
        zero = Cyc.zero(self.conductor)
        basis = identity(n, one)           # candidate space, shrinks per constraint
        for j in range(n):
            if not basis:
                break
            commutators = []
            for v in basis:
                as_elem = {i: c for i, c in enumerate(v) if c}
                lhs = self.product(as_elem, {j: one})
                rhs = self.product({j: one}, as_elem)
                diff = dict(lhs)
                for k, c in rhs.items():
                    diff[k] = diff.get(k, zero) - c
                commutators.append([diff.get(k, zero) for k in range(n)])
            # coefficients c with sum_t c_t [basis_t, e_j] = 0
            ker = kernel_basis([list(col) for col in zip(*commutators)], one)
            new_basis = []
            for coeffs in ker:
                vec = [zero] * n
                for t, c in enumerate(coeffs):
                    if c:
                        vec = [x + c * y for x, y in zip(vec, basis[t])]
                new_basis.append(vec)
            basis = new_basis
        return len(basis)


def _sparse_eq(a: dict, b: dict) -> bool:
    for k in set(a) | set(b):
        av, bv = a.get(k), b.get(k)
        if av is None or bv is None:
            if (av is not None and av) or (bv is not None and bv):
                return False
        elif av != bv:
            return False
    return True


def finite_quotient_algebra(group: FiniteActionGroup, cocycle: Cocycle,
                            orbit: list, conductor: int | None = None,
                            seed: int = 0) -> FiniteAlgebra:
    """B / I_{Gamma x} B with basis 1_y (x) T_g over the orbit points y.

    Structure: (1_y T_g)(1_{y'} T_h) = [y = g y'] natural(g,h) 1_y T_{gh}.
    """
    pts = [tuple(p) for p in orbit]
    n = group.order
    m = len(pts) * n
    cond = conductor or cocycle.conductor
    structure: dict = {}
    for yi, y in enumerate(pts):
        for g in range(n):
            row_idx = yi * n + g
            for yj, yp in enumerate(pts):
                gy = group.elements[g].apply(yp)
                if gy != y:
                    continue
                for h in range(n):
                    col_idx = yj * n + h
                    k = yi * n + group.mult[g][h]
                    structure[(row_idx, col_idx)] = {
                        k: Cyc.root_of_unity(cocycle.table[g][h], cond)}
    unit = {yi * n + group.identity: Cyc.one(cond) for yi in range(len(pts))}
    labels = [(pts[i // n], i % n) for i in range(m)]
    return FiniteAlgebra(m, structure, unit, labels, cond, seed)


# ---------------------------------------------------------------------------
# modules over a FiniteAlgebra and certificates

def algebra_module_matrices(alg: FiniteAlgebra, images: list) -> bool:
    """True iff the basis-element images satisfy every structure relation."""
    n = alg.dimension
    dim = len(images[0])
    zero = Cyc.zero(alg.conductor)
    for i in range(n):
        for j in range(n):
            prod = mat_mul(images[i], images[j])
            expect = [[zero] * dim for _ in range(dim)]
            for k, c in alg.structure.get((i, j), {}).items():
                expect = [[e + c * x for e, x in zip(er, xr)]
                          for er, xr in zip(expect, images[k])]
            if any(prod[a][b] != expect[a][b] for a in range(dim) for b in range(dim)):
                return False
    # the unit must act as the identity
    u = [[zero] * dim for _ in range(dim)]
    for k, c in alg.unit.items():
        u = [[e + c * x for e, x in zip(er, xr)] for er, xr in zip(u, images[k])]
    return all(u[a][b] == (Cyc.one(alg.conductor) if a == b else zero)
               for a in range(dim) for b in range(dim))


def burnside_irreducible(matrices: list) -> bool:
    """True iff the unital algebra generated by the matrices has dimension n^2.

    Over an algebraically closed field this certifies irreducibility; span
    dimensions are stable under field extension, so checking over the exact
    coefficient field suffices.
    """
    if not matrices:
        return False
    n = len(matrices[0])
    one = matrices[0][0][0] ** 0
    span = EchelonSpan()
    ident = identity(n, one)
    worklist = [ident]
    span.insert([x for row in ident for x in row])
    for m in matrices:
        if span.insert([x for row in m for x in row]):
            worklist.append(m)
    while worklist and span.dim < n * n:
        current = worklist.pop()
        for g in matrices:
            prod = mat_mul(g, current)
            if span.insert([x for row in prod for x in row]):
                worklist.append(prod)
    return span.dim == n * n


def submodule_test(matrices: list, vectors: list) -> bool:
    """True iff the span of the vectors is invariant under all matrices."""
    span = EchelonSpan()
    for v in vectors:
        span.insert(list(v))
    for m in matrices:
        for v in vectors:
            image = [sum((m[i][j] * v[j] for j in range(len(v)) if v[j]),
                         v[0] * 0) for i in range(len(m))]
            if not span.contains(image):
                return False
    return True


@dataclass
class CertificateReport:
    ok: bool
    failures: list[str]


def completeness_certificate(alg: FiniteAlgebra, module_images: list[list]) -> CertificateReport:
    """Certify a claimed complete list of irreducibles of a semisimple algebra:
    relations hold, each is Burnside-irreducible, characters pairwise distinct,
    count matches the centre dimension and sum of squared dimensions matches."""
    failures = []
    dims = [len(m[0]) for m in module_images]
    for idx, images in enumerate(module_images):
        if not algebra_module_matrices(alg, images):
            failures.append(f"module {idx} fails algebra relations")
        if not burnside_irreducible(images):
            failures.append(f"module {idx} is not Burnside-irreducible")
    chars = []
    for images in module_images:
        chars.append(tuple(_trace_str(m) for m in images))
    for i in range(len(chars)):
        for j in range(i + 1, len(chars)):
            if chars[i] == chars[j]:
                failures.append(f"modules {i} and {j} have equal characters")
    zdim = alg.center_dimension()
    if len(module_images) != zdim:
        failures.append(f"module count {len(module_images)} != centre dimension {zdim}")
    total = sum(d * d for d in dims)
    if total != alg.dimension:
        failures.append(f"sum of squares {total} != {alg.dimension}")
    return CertificateReport(not failures, failures)


def _trace_str(m) -> str:
    t = m[0][0]
    for i in range(1, len(m)):
        t = t + m[i][i]
    return str(t)


def relation_check(module, ambient) -> bool:
    """Exact matrix verification of the ambient algebra's defining relations."""
    if isinstance(ambient, FiniteAlgebra):
        return algebra_module_matrices(ambient, module)
    return ambient.relations_hold(module)


# ---------------------------------------------------------------------------
# Dixon character computation for a finite group given by tables

class _TableGroup:
    def __init__(self, mult: list[list[int]]):
        self.mult = mult
        self.order = len(mult)
        self.identity = next(i for i in range(self.order)
                             if all(mult[i][j] == j for j in range(self.order)))
        self.inv = [next(j for j in range(self.order)
                         if mult[i][j] == self.identity)
                    for i in range(self.order)]
        self.class_of = [-1] * self.order
        self.classes: list[tuple[int, tuple[int, ...]]] = []
        for g in range(self.order):
            if self.class_of[g] >= 0:
                continue
            members = sorted({mult[mult[h][g]][self.inv[h]] for h in range(self.order)})
            ci = len(self.classes)
            for x in members:
                self.class_of[x] = ci
            self.classes.append((g, tuple(members)))

    def element_order(self, g: int) -> int:
        n, x = 1, g
        while x != self.identity:
            x = self.mult[x][g]
            n += 1
        return n

    def power(self, g: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = self.mult[out][g]
        return out


def _find_prime(e: int, minimum: int) -> int:
    p = e + 1
    while True:
        if p > minimum and all(p % q for q in range(2, isqrt(p) + 1)):
            return p
        p += e


def _root_of_order(p: int, e: int) -> int:
    factors = set()
    m = e
    q = 2
    while q * q <= m:
        if m % q == 0:
            factors.add(q)
            while m % q == 0:
                m //= q
        q += 1
    if m > 1:
        factors.add(m)
    for a in range(2, p):
        z = pow(a, (p - 1) // e, p)
        if all(pow(z, e // q, p) != 1 for q in factors):
            return z
    raise OracleError("no element of required order mod p")  # pragma: no cover


def _charpoly_mod_p(mat: list[list[int]], p: int) -> list[int]:
    """Characteristic polynomial mod p by Faddeev-LeVerrier (needs p > dim)."""
    n = len(mat)
    coeffs = [1]
    m = [[x % p for x in row] for row in mat]
    am = [row[:] for row in m]
    for k in range(1, n + 1):
        tr = sum(am[i][i] for i in range(n)) % p
        c = (-tr * pow(k, p - 2, p)) % p
        coeffs.append(c)
        if k == n:
            break
        for i in range(n):
            am[i][i] = (am[i][i] + c) % p
        am = [[sum(m[i][t] * am[t][j] for t in range(n)) % p for j in range(n)]
              for i in range(n)]
    return coeffs  # coeffs[i] multiplies lambda^(n-i)


def _fp_rref(mat: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    m = [[x % p for x in row] for row in mat]
    rows, cols = len(m), len(m[0]) if m else 0
    pivots, r = [], 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def _fp_kernel(mat: list[list[int]], p: int) -> list[list[int]]:
    if not mat:
        return []
    cols = len(mat[0])
    red, pivots = _fp_rref(mat, p)
    basis = []
    for f in range(cols):
        if f in pivots:
            continue
        v = [0] * cols
        v[f] = 1
        for r, piv in enumerate(pivots):
            v[piv] = (-red[r][f]) % p
        basis.append(v)
    return basis


def _character_table(tg: _TableGroup) -> tuple[int, list[tuple[int, list[Cyc]]]]:
    """Exponent e and the irreducible characters (degree, value per class)."""
    ncl = len(tg.classes)
    orders = [tg.element_order(rep) for rep, _ in tg.classes]
    e = lcm(*orders) if orders else 1
    p = _find_prime(e, max(2 * tg.order, e, ncl))
    z = _root_of_order(p, e)

    # class-sum structure constants: C_i C_j = sum_k a[i][j][k] C_k
    reps = [rep for rep, _ in tg.classes]
    a = [[[0] * ncl for _ in range(ncl)] for _ in range(ncl)]
    for i in range(ncl):
        for j in range(ncl):
            for x in tg.classes[i][1]:
                for y in tg.classes[j][1]:
                    k = tg.class_of[tg.mult[x][y]]
                    a[i][j][k] += 1
            for k in range(ncl):
                size = len(tg.classes[k][1])
                if a[i][j][k] % size:
                    raise OracleError("class-sum count not constant on classes")
                a[i][j][k] //= size
    # normalize: column k of M_i at row j means coefficient of C_k in C_i C_j
    mats = []
    for i in range(ncl):
        mats.append([[a[i][j][k] % p for j in range(ncl)] for k in range(ncl)])

    # refine common eigenspaces over F_p
    spaces = [[[1 if r == c else 0 for c in range(ncl)] for r in range(ncl)]]
    for mi in mats:
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            # restrict mi to span(basis): mi * b_t = sum_s rest[s][t] b_s
            bt = [list(col) for col in zip(*basis)]      # ncl x dim
            images = [[sum(mi[r][t] * bt[t][s] for t in range(ncl)) % p
                       for s in range(len(basis))] for r in range(ncl)]
            aug = [bt[r] + images[r] for r in range(ncl)]
            red, pivots = _fp_rref(aug, p)
            dim = len(basis)
            if any(piv >= dim for piv in pivots):
                raise OracleError("class-sum matrix does not preserve the subspace")
            rest = [[0] * dim for _ in range(dim)]
            for rr, piv in enumerate(pivots):
                for s in range(dim):
                    rest[piv][s] = red[rr][dim + s]
            charpoly = _charpoly_mod_p(rest, p)
            roots = [lam for lam in range(p)
                     if _poly_eval_mod(charpoly, lam, p) == 0]
            total = 0
            for lam in sorted(roots):
                shifted = [[(rest[r][c] - (lam if r == c else 0)) % p
                            for c in range(dim)] for r in range(dim)]
                piece = [[sum(kv[t] * basis[t][c] for t in range(dim)) % p
                          for c in range(ncl)] for kv in _fp_kernel(shifted, p)]
                if piece:
                    total += len(piece)
                    new_spaces.append(piece)
            if total != dim:
                raise OracleError("eigenspace refinement lost dimension")
        spaces = new_spaces
    if len(spaces) != ncl or any(len(s) != 1 for s in spaces):
        raise OracleError("central character refinement incomplete")

    class_sizes = [len(members) for _, members in tg.classes]
    inv_class = [tg.class_of[tg.inv[rep]] for rep in reps]
    chars: list[tuple[int, list[Cyc]]] = []
    for (vec,) in spaces:
        # central character values omega_i
        t0 = next(i for i, x in enumerate(vec) if x)
        omegas = []
        for mi in mats:
            img = sum(mi[t0][t] * vec[t] for t in range(ncl)) % p
            omegas.append((img * pow(vec[t0], p - 2, p)) % p)
        denom = sum(omegas[i] * omegas[inv_class[i]] * pow(class_sizes[i], p - 2, p)
                    for i in range(ncl)) % p
        d2 = (tg.order * pow(denom, p - 2, p)) % p
        degree = next((d for d in range(1, isqrt(tg.order) + 1)
                       if (d * d) % p == d2), None)
        if degree is None:
            raise OracleError("character degree not recovered")
        # chi(g) mod p for representatives of each class
        chi_p = [(degree * omegas[i] * pow(class_sizes[i], p - 2, p)) % p
                 for i in range(ncl)]
        values = []
        for ci, (rep, _) in enumerate(tg.classes):
            mults = []
            for k in range(e):
                s = 0
                for t in range(e):
                    cls_t = tg.class_of[tg.power(rep, t)]
                    s += chi_p[cls_t] * pow(z, (-k * t) % (p - 1), p)
                m_k = (s * pow(e, p - 2, p)) % p
                if m_k > degree:
                    raise OracleError("eigenvalue multiplicity lift out of range")
                mults.append(m_k)
            if sum(mults) != degree:
                raise OracleError("multiplicities do not sum to the degree")
            values.append(Cyc(e, {k: Fraction(m_k) for k, m_k in enumerate(mults) if m_k}))
        chars.append((degree, values))
    return e, chars


def _poly_eval_mod(coeffs: list[int], x: int, p: int) -> int:
    acc = 0
    for c in coeffs:
        acc = (acc * x + c) % p
    return acc


# ---------------------------------------------------------------------------
# decomposition of C[Gamma, natural]

@dataclass
class TwistedIrreducible:
    """One irreducible module of C[Gamma, natural]: a matrix per T_g."""

    dimension: int
    t_images: list            # Cyc matrices, indexed by group element
    character: tuple          # trace of each t_image, as strings for comparison
    conductor: int


_DECOMP_CACHE: dict = {}


def decompose_twisted_group_algebra(cocycle: Cocycle) -> list[TwistedIrreducible]:
    """All irreducible modules of C[Gamma, natural], exactly, with certificates."""
    group = cocycle.group
    key = (tuple(g.key() for g in group.elements), cocycle.table)
    if key in _DECOMP_CACHE:
        return _DECOMP_CACHE[key]

    n = group.order
    m_tors = lcm(1, *(v.denominator for row in cocycle.table for v in row))
    # central extension: elements (j, h) with j mod m_tors
    ext_mult = [[0] * (m_tors * n) for _ in range(m_tors * n)]
    for j1 in range(m_tors):
        for h1 in range(n):
            for j2 in range(m_tors):
                for h2 in range(n):
                    c = int(cocycle.table[h1][h2] * m_tors)
                    j = (j1 + j2 + c) % m_tors
                    ext_mult[j1 * n + h1][j2 * n + h2] = j * n + group.mult[h1][h2]
    tg = _TableGroup(ext_mult)
    e, chars = _character_table(tg)
    conductor = lcm(e, m_tors, 2)

    # keep characters where the central subgroup acts by the identity embedding
    zeta_m = Cyc.root_of_unity(Fraction(1, m_tors), conductor)
    kept = []
    for degree, values in chars:
        central = values[tg.class_of[1 * n + group.identity]] if m_tors > 1 else values[
            tg.class_of[group.identity]]
        if m_tors == 1 or central.promote(conductor) == zeta_m * degree:
            kept.append((degree, values))
    if sum(d * d for d, _ in kept) != n:
        raise OracleError("isotypic filter lost dimensions")

    reg = _regular_matrices(cocycle, conductor)
    one = Cyc.one(conductor)
    zero = Cyc.zero(conductor)
    modules = []
    for degree, values in kept:
        # idempotent e_chi = (d/|G|) sum_h chi(T_h^{-1}) T_h
        coeffs = []
        for h in range(n):
            hinv = group.inv[h]
            chi_hinv = values[tg.class_of[hinv]].promote(conductor)
            rot = Cyc.root_of_unity((-cocycle.table[h][hinv]) % 1, conductor)
            coeffs.append(chi_hinv * rot * Fraction(degree, n))
        _verify_idempotent(cocycle, coeffs, conductor)
        proj = _left_mult_matrix(cocycle, coeffs, conductor)
        block = EchelonSpan()
        basis = []
        for col in range(n):
            vec = [proj[r][col] for r in range(n)]
            if block.insert(vec):
                basis.append(vec)
        if len(basis) != degree * degree:
            raise OracleError("isotypic block has wrong dimension")
        w_basis = _extract_minimal(cocycle, reg, basis, degree, conductor, coeffs)
        t_images = _module_matrices(reg, w_basis, one, zero)
        character = tuple(str(_trace(mat)) for mat in t_images)
        modules.append(TwistedIrreducible(degree, t_images, character, conductor))
    modules.sort(key=lambda md: (md.dimension, md.character))
    _DECOMP_CACHE[key] = modules
    return modules


def _trace(mat):
    t = mat[0][0]
    for i in range(1, len(mat)):
        t = t + mat[i][i]
    return t


def _regular_matrices(cocycle: Cocycle, conductor: int) -> list[list[list[Cyc]]]:
    """Left-regular matrices of all T_g (columns indexed by basis T_h)."""
    group = cocycle.group
    n = group.order
    zero = Cyc.zero(conductor)
    out = []
    for g in range(n):
        mat = [[zero] * n for _ in range(n)]
        for h in range(n):
            mat[group.mult[g][h]][h] = Cyc.root_of_unity(cocycle.table[g][h], conductor)
        out.append(mat)
    return out


def _left_mult_matrix(cocycle: Cocycle, coeffs: list[Cyc], conductor: int):
    group = cocycle.group
    n = group.order
    zero = Cyc.zero(conductor)
    mat = [[zero] * n for _ in range(n)]
    for g in range(n):
        cg = coeffs[g]
        if not cg:
            continue
        for h in range(n):
            mat[group.mult[g][h]][h] = mat[group.mult[g][h]][h] + \
                cg * Cyc.root_of_unity(cocycle.table[g][h], conductor)
    return mat


def _algebra_mul(cocycle: Cocycle, a: list[Cyc], b: list[Cyc], conductor: int) -> list[Cyc]:
    group = cocycle.group
    n = group.order
    out = [Cyc.zero(conductor)] * n
    for g in range(n):
        if not a[g]:
            continue
        for h in range(n):
            if not b[h]:
                continue
            k = group.mult[g][h]
            out[k] = out[k] + a[g] * b[h] * Cyc.root_of_unity(cocycle.table[g][h], conductor)
    return out


def _verify_idempotent(cocycle: Cocycle, coeffs: list[Cyc], conductor: int) -> None:
    sq = _algebra_mul(cocycle, coeffs, coeffs, conductor)
    if any(x != y for x, y in zip(sq, coeffs)):
        raise OracleError("central idempotent identity e*e = e fails")
    group = cocycle.group
    n = group.order
    for g in range(n):
        tg_vec = [Cyc.zero(conductor)] * n
        tg_vec[g] = Cyc.one(conductor)
        if any(x != y for x, y in zip(
                _algebra_mul(cocycle, tg_vec, coeffs, conductor),
                _algebra_mul(cocycle, coeffs, tg_vec, conductor))):
            raise OracleError("idempotent is not central")


def _eigenvalue_candidates(cocycle: Cocycle, g: int, conductor: int) -> list[Fraction]:
    """Eigenvalue rotations of T_g: solutions of zeta^o = scalar(T_g^o)."""
    group = cocycle.group
    o = group.element_order(g)
    rot = Fraction(0)
    x = g
    for _ in range(o - 1):
        rot += cocycle.table[x][g]
        x = group.mult[x][g]
    rot %= 1
    return [((rot + k) / o) % 1 for k in range(o)]


def _subspace_eigen_refine(reg, basis, lam_matrix, zeta: Cyc, one):
    """Basis of span(basis) intersected with ker(lam_matrix - zeta)."""
    n = len(reg[0])
    cols = len(basis)
    mapped = []
    for v in basis:
        img = [sum((lam_matrix[r][c] * v[c] for c in range(n) if v[c]),
                   one * 0) for r in range(n)]
        mapped.append([img[r] - zeta * v[r] for r in range(n)])
    coeff_kernel = kernel_basis([list(col) for col in zip(*mapped)], one)
    out = []
    for kv in coeff_kernel:
        vec = [sum((kv[t] * basis[t][r] for t in range(cols) if kv[t]), one * 0)
               for r in range(n)]
        out.append(vec)
    return out


def _spin_up(reg, vec, one) -> list:
    """Basis of the left submodule generated by vec (span of all T_g * vec)."""
    n = len(reg[0])
    span = EchelonSpan()
    basis = []
    for g in range(len(reg)):
        img = [sum((reg[g][r][c] * vec[c] for c in range(n) if vec[c]), one * 0)
               for r in range(n)]
        if span.insert(img):
            basis.append(img)
    return basis


def _extract_minimal(cocycle: Cocycle, reg, block_basis, degree, conductor, idem):
    """One irreducible submodule (dimension = degree) inside an isotypic block."""
    one = Cyc.one(conductor)
    if len(block_basis) == degree:
        return block_basis
    group = cocycle.group

    def settle(line_times_cd):
        # any vector of E (x) C^d with dim E = 1 is a pure tensor; its spin-up
        # is an irreducible left submodule of dimension degree
        w = _spin_up(reg, line_times_cd[0], one)
        if len(w) != degree:
            raise OracleError("spin-up of eigen-line vector has wrong dimension")
        return w

    # eigenspace chains: left eigenspaces meet the block in U (x) C^degree
    stack = [block_basis]
    budget = 500
    while stack and budget > 0:
        budget -= 1
        basis = stack.pop()
        if len(basis) == degree:
            return settle(basis)
        refinements = []
        for g in range(1, group.order):
            for rot in _eigenvalue_candidates(cocycle, g, conductor):
                zeta = Cyc.root_of_unity(rot, conductor)
                sub = _subspace_eigen_refine(reg, basis, reg[g], zeta, one)
                if 0 < len(sub) < len(basis):
                    if len(sub) == degree:
                        return settle(sub)
                    refinements.append(sub)
        stack.extend(sorted(refinements, key=len))

    # fallback: shrink the rank of an algebra element by one-sided projectors
    u = list(idem)
    rank = len(_spin_up(reg, u, one)) // degree
    progress = True
    while rank > 1 and progress:
        progress = False
        for g in range(1, group.order):
            for rot in _eigenvalue_candidates(cocycle, g, conductor):
                proj = _lagrange_projector(cocycle, g, rot, conductor)
                for cand in (_algebra_mul(cocycle, u, proj, conductor),
                             _algebra_mul(cocycle, proj, u, conductor)):
                    if not any(cand):
                        continue
                    r2 = len(_spin_up(reg, cand, one))
                    if r2 % degree:
                        continue
                    r2 //= degree
                    if 0 < r2 < rank:
                        u, rank, progress = cand, r2, True
                        break
                if progress:
                    break
            if progress:
                break
    if rank == 1:
        return _spin_up(reg, u, one)
    raise DecompositionError(
        "decomposition incomplete: no eigenspace chain reaches a minimal module")


def _lagrange_projector(cocycle: Cocycle, g: int, rot: Fraction, conductor: int):
    """f(T_g) with f the Lagrange poly that is 1 at exp(2 pi i rot), 0 at the
    other eigenvalue candidates; an element of the twisted group algebra."""
    group = cocycle.group
    n = group.order
    cands = _eigenvalue_candidates(cocycle, g, conductor)
    target = Cyc.root_of_unity(rot, conductor)
    out = [Cyc.zero(conductor)] * n
    out[group.identity] = Cyc.one(conductor)
    denom = Cyc.one(conductor)
    for other in cands:
        if other == rot:
            continue
        z = Cyc.root_of_unity(other, conductor)
        # multiply out by (T_g - z)
        tg_vec = [Cyc.zero(conductor)] * n
        tg_vec[g] = Cyc.one(conductor)
        shifted = _algebra_mul(cocycle, out, tg_vec, conductor)
        out = [a - z * b for a, b in zip(shifted, out)]
        denom = denom * (target - z)
    dinv = denom.inverse()
    return [c * dinv for c in out]


def _module_matrices(reg, w_basis, one, zero):
    """Matrices of all T_g on the invariant subspace with the given basis."""
    n = len(reg[0])
    dim = len(w_basis)
    bt = [[w_basis[t][r] for t in range(dim)] for r in range(n)]
    out = []
    for g in range(len(reg)):
        aug_cols = []
        for t in range(dim):
            img = [sum((reg[g][r][c] * w_basis[t][c] for c in range(n)
                        if w_basis[t][c]), zero) for r in range(n)]
            aug_cols.append(img)
        aug = [bt[r] + [aug_cols[t][r] for t in range(dim)] for r in range(n)]
        red, pivots = rref(aug)
        if any(p >= dim for p in pivots):
            raise OracleError("subspace is not invariant")
        mat = [[zero] * dim for _ in range(dim)]
        for rr, piv in enumerate(pivots):
            for t in range(dim):
                mat[piv][t] = red[rr][dim + t]
        out.append(mat)
    return out
