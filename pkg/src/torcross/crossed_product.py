"""The twisted crossed product O(X) x| C[Gamma, natural] over the torus:
element arithmetic, centre membership, induced irreducible modules pi(x, rho)
at torsion points, extended-quotient fibers, and opposite-algebra transport."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .finite_group import Cocycle, FiniteActionGroup
from .lattice_torus import normalize_point, orbit_of_point
from .linalg import (identity, int_mat_inverse, mat_eq, mat_mul, mat_trace,
                     transpose)
from .oracle import (FiniteAlgebra, burnside_irreducible, CertificateReport,
                     completeness_certificate, decompose_twisted_group_algebra,
                     finite_quotient_algebra)
from .scalars import Cyc, MultiPoly


class CrossedProductError(ValueError):
    pass


class CrossedProductAlgebra:
    """O(X) x| C[Gamma, natural]: Laurent polynomials in d variables with Cyc
    coefficients, twisted by the cocycle."""

    def __init__(self, group: FiniteActionGroup, cocycle: Cocycle,
                 conductor: int | None = None) -> None:
        if cocycle.group is not group:
            raise CrossedProductError("cocycle defined on a different group")
        self.group = group
        self.cocycle = cocycle
        trans_dens = [t.denominator for g in group.elements for t in g.translation]
        self.conductor = conductor or lcm(cocycle.conductor, *(trans_dens or [1]))
        self.rank = group.rank
        # transpose-inverse matrices: exponent transform of the function action
        self._exp_mats = [transpose(int_mat_inverse([list(r) for r in g.matrix]))
                          for g in group.elements]

    # -- scalars -------------------------------------------------------------

    def root(self, rotation) -> Cyc:
        return Cyc.root_of_unity(Fraction(rotation) % 1, self.conductor)

    def zero_poly(self) -> MultiPoly:
        return MultiPoly(self.rank, {}, laurent=True)

    def monomial(self, exps, coeff: Cyc | None = None) -> MultiPoly:
        return MultiPoly.monomial(tuple(exps), coeff or Cyc.one(self.conductor), True)

    def coordinate(self, i: int) -> "CrossedElement":
        e = [0] * self.rank
        e[i] = 1
        return self.element({self.group.identity: self.monomial(e)})

    def t_basis(self, g: int) -> "CrossedElement":
        one = MultiPoly.constant(self.rank, Cyc.one(self.conductor), True)
        return self.element({g: one})

    def element(self, coeffs: dict[int, MultiPoly]) -> "CrossedElement":
        return CrossedElement(self, coeffs)

    def act_on_poly(self, g: int, f: MultiPoly) -> MultiPoly:
        """(g . f)(x) = f(g^{-1} x): exponents transform by the transpose
        inverse of the matrix, translations contribute root-of-unity scalars."""
        mat = self._exp_mats[g]
        b = self.group.elements[g].translation
        out: dict[tuple, Cyc] = {}
        for exps, c in f.terms.items():
            new = tuple(sum(mat[r][k] * exps[k] for k in range(self.rank))
                        for r in range(self.rank))
            rot = -sum(Fraction(new[k]) * b[k] for k in range(self.rank))
            val = c * self.root(rot)
            out[new] = out[new] + val if new in out else val
        return MultiPoly(self.rank, {e: c for e, c in out.items() if c}, True)

    def evaluate_poly(self, f: MultiPoly, point) -> Cyc:
        """Evaluate at a torsion point: monomial z^m takes value e(m . x)."""
        total = Cyc.zero(self.conductor)
        for exps, c in f.terms.items():
            rot = sum(Fraction(e) * x for e, x in zip(exps, point))
            total = total + c * self.root(rot)
        return total

    def generators(self) -> list["CrossedElement"]:
        coords = [self.coordinate(i) for i in range(self.rank)]
        ts = [self.t_basis(g) for g in range(self.group.order)]
        return coords + ts


class CrossedElement:
    """Element sum_g f_g (x) T_g with Laurent-polynomial coefficients."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: CrossedProductAlgebra, coeffs: dict[int, MultiPoly]):
        self.algebra = algebra
        self.coeffs = {g: f for g, f in coeffs.items() if f}

    def __add__(self, other: CrossedElement) -> CrossedElement:
        self._check(other)
        out = dict(self.coeffs)
        for g, f in other.coeffs.items():
            out[g] = out[g] + f if g in out else f
        return CrossedElement(self.algebra, out)

    def __sub__(self, other: CrossedElement) -> CrossedElement:
        self._check(other)
        out = dict(self.coeffs)
        for g, f in other.coeffs.items():
            out[g] = out[g] - f if g in out else -f
        return CrossedElement(self.algebra, out)

    def __mul__(self, other: CrossedElement) -> CrossedElement:
        self._check(other)
        alg = self.algebra
        grp = alg.group
        out: dict[int, MultiPoly] = {}
        for g1, f1 in self.coeffs.items():
            for g2, f2 in other.coeffs.items():
                g = grp.mult[g1][g2]
                f = f1 * alg.act_on_poly(g1, f2) * alg.root(alg.cocycle.table[g1][g2])
                out[g] = out[g] + f if g in out else f
        return CrossedElement(alg, out)

    def _check(self, other: CrossedElement):
        if self.algebra is not other.algebra:
            raise CrossedProductError("elements of different crossed products")

    def __eq__(self, other) -> bool:
        if not isinstance(other, CrossedElement):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all((self.coeffs.get(k) or self.algebra.zero_poly())
                   == (other.coeffs.get(k) or self.algebra.zero_poly()) for k in keys)

    __hash__ = None

    def __repr__(self) -> str:
        return " + ".join(f"({f!r})T_{g}" for g, f in sorted(self.coeffs.items())) or "0"


def multiply(a: CrossedElement, b: CrossedElement) -> CrossedElement:
    return a * b


def is_central(a: CrossedElement) -> bool:
    """True iff a commutes with every coordinate variable and every T_g."""
    return all(a * g == g * a for g in a.algebra.generators())


def symmetrize(alg: CrossedProductAlgebra, f: MultiPoly) -> CrossedElement:
    """sum_g (g . f) (x) T_e, an invariant function in the centre."""
    total = alg.zero_poly()
    for g in range(alg.group.order):
        total = total + alg.act_on_poly(g, f)
    return alg.element({alg.group.identity: total})


# ---------------------------------------------------------------------------
# induced modules

@dataclass
class CrossedModule:
    """A finite-dimensional module given by exact matrices per generator.

    Matrices are over Cyc; coordinate images are invertible (evaluations at
    torsion points), t_images is indexed by all of Gamma.
    """

    algebra: CrossedProductAlgebra
    dimension: int
    coord_images: list           # one invertible matrix per torus coordinate
    t_images: list               # one matrix per group element
    orbit: list                  # orbit points (block order)
    block_dim: int               # dimension of each orbit block (dim rho)
    rho_dimension: int
    label: tuple = ()

    def monomial_image(self, exps) -> list:
        out = identity(self.dimension, Cyc.one(self.algebra.conductor))
        for i, e in enumerate(exps):
            if e:
                m = self.coord_images[i]
                if e < 0:
                    m = _mat_inverse_cyc(m)
                    e = -e
                for _ in range(e):
                    out = mat_mul(out, m)
        return out

    def poly_image(self, f: MultiPoly) -> list:
        zero = Cyc.zero(self.algebra.conductor)
        out = [[zero] * self.dimension for _ in range(self.dimension)]
        for exps, c in f.terms.items():
            mono = self.monomial_image(exps)
            out = [[o + c * x for o, x in zip(orow, mrow)]
                   for orow, mrow in zip(out, mono)]
        return out

    def element_image(self, a: CrossedElement) -> list:
        zero = Cyc.zero(self.algebra.conductor)
        out = [[zero] * self.dimension for _ in range(self.dimension)]
        for g, f in a.coeffs.items():
            m = mat_mul(self.poly_image(f), self.t_images[g])
            out = [[o + x for o, x in zip(orow, mrow)]
                   for orow, mrow in zip(out, m)]
        return out

    def block_projector(self, block: int) -> list:
        one = Cyc.one(self.algebra.conductor)
        zero = Cyc.zero(self.algebra.conductor)
        lo = block * self.block_dim
        hi = lo + self.block_dim
        return [[one if (i == j and lo <= i < hi) else zero
                 for j in range(self.dimension)] for i in range(self.dimension)]

    def quotient_basis_images(self, alg: FiniteAlgebra) -> list:
        """Images of the finite quotient algebra's basis 1_y (x) T_g."""
        images = []
        for (pt, g) in alg.labels:
            blk = self.orbit.index(tuple(pt))
            images.append(mat_mul(self.block_projector(blk), self.t_images[g]))
        return images

    def extended_character(self) -> tuple:
        """Traces over the basis (orbit point, group element); a module invariant."""
        out = []
        for blk, pt in enumerate(self.orbit):
            p = self.block_projector(blk)
            for g in range(self.algebra.group.order):
                out.append((tuple(pt), g, str(mat_trace(mat_mul(p, self.t_images[g])))))
        return tuple(sorted(out))

    def relations_hold(self) -> bool:
        return crossed_relations_hold(self.algebra, self.coord_images, self.t_images)


def _mat_inverse_cyc(m):
    from .linalg import mat_inverse
    return mat_inverse(m, Cyc.one(1))


def crossed_relations_hold(alg: CrossedProductAlgebra, coord_images, t_images) -> bool:
    """Defining relations of the twisted crossed product as matrix identities."""
    grp = alg.group
    n = len(coord_images[0]) if coord_images else len(t_images[0])
    # coordinates commute and are invertible
    for i in range(alg.rank):
        for j in range(i + 1, alg.rank):
            if not mat_eq(mat_mul(coord_images[i], coord_images[j]),
                          mat_mul(coord_images[j], coord_images[i])):
                return False
    # T_g T_h = natural(g,h) T_{gh}
    for g in range(grp.order):
        for h in range(grp.order):
            lhs = mat_mul(t_images[g], t_images[h])
            z = alg.root(alg.cocycle.table[g][h])
            rhs = [[z * x for x in row] for row in t_images[grp.mult[g][h]]]
            if not mat_eq(lhs, rhs):
                return False
    # T_g z_i = (g . z_i) T_g
    helper = CrossedModule(alg, n, coord_images, t_images, [], 0, 0)
    for g in range(grp.order):
        for i in range(alg.rank):
            e = [0] * alg.rank
            e[i] = 1
            lhs = mat_mul(t_images[g], coord_images[i])
            acted = alg.act_on_poly(g, alg.monomial(e))
            rhs = mat_mul(helper.poly_image(acted), t_images[g])
            if not mat_eq(lhs, rhs):
                return False
    return True


def induced_module(alg: CrossedProductAlgebra, x, rho_t_images: list,
                   label: tuple = ()) -> CrossedModule:
    """pi(x, rho): induction of the stabilizer module rho from the point x.

    rho_t_images is indexed by the elements of the stabilizer subgroup of x in
    its own deterministic order.  Coset representatives are chosen by minimal
    group-element index; O(X) acts by evaluation at the orbit points.
    """
    grp = alg.group
    x = normalize_point(x)
    orbit, stab_indices = orbit_of_point(grp, x)
    sub, embedding = grp.subgroup(stab_indices)
    sub_cocycle = alg.cocycle.restrict(sub, embedding)
    dim_rho = len(rho_t_images[0])
    if not _twisted_relations(sub, sub_cocycle, rho_t_images, alg.conductor):
        raise CrossedProductError("rho fails the twisted group-algebra relations")

    # cosets g Gamma_x, representatives by minimal index
    stab_set = set(embedding)
    coset_of = {}
    reps = []
    for g in range(grp.order):
        if g in coset_of:
            continue
        rep = len(reps)
        reps.append(g)
        for s in embedding:
            coset_of[grp.mult[g][s]] = rep
    m = len(reps)
    dim = m * dim_rho
    orbit_pts = [grp.elements[r].apply(x) for r in reps]

    local_index = {old: new for new, old in enumerate(embedding)}
    zero = Cyc.zero(alg.conductor)
    t_images = []
    for g in range(grp.order):
        mat = [[zero] * dim for _ in range(dim)]
        for i, rep_i in enumerate(reps):
            gi = grp.mult[g][rep_i]
            j = coset_of[gi]
            h = grp.mult[grp.inv[reps[j]]][gi]
            if h not in stab_set:
                raise CrossedProductError("coset bookkeeping failure")
            scale = alg.root(alg.cocycle.table[g][rep_i]
                             - alg.cocycle.table[reps[j]][h])
            block = rho_t_images[local_index[h]]
            for a in range(dim_rho):
                for b in range(dim_rho):
                    v = scale * block[a][b]
                    if v:
                        mat[j * dim_rho + a][i * dim_rho + b] = v
        t_images.append(mat)

    coord_images = []
    for c in range(alg.rank):
        mat = [[zero] * dim for _ in range(dim)]
        for i, pt in enumerate(orbit_pts):
            val = alg.root(pt[c])
            for a in range(dim_rho):
                mat[i * dim_rho + a][i * dim_rho + a] = val
        coord_images.append(mat)

    module = CrossedModule(alg, dim, coord_images, t_images,
                           [tuple(p) for p in orbit_pts], dim_rho, dim_rho, label)
    if not module.relations_hold():
        raise CrossedProductError("induced module fails crossed-product relations")
    gens = coord_images + t_images
    if not burnside_irreducible(gens):
        raise CrossedProductError(
            "induced module failed irreducibility certification")
    return module


def _twisted_relations(sub, cocycle, t_images, conductor) -> bool:
    for g in range(sub.order):
        for h in range(sub.order):
            lhs = mat_mul(t_images[g], t_images[h])
            z = Cyc.root_of_unity(cocycle.table[g][h], conductor)
            rhs = [[z * x for x in row] for row in t_images[sub.mult[g][h]]]
            if not mat_eq(lhs, rhs):
                return False
    return True


# ---------------------------------------------------------------------------
# extended quotient fibers

@dataclass
class FiberLabel:
    rho_dimension: int
    induced_dimension: int
    character: tuple


@dataclass
class ExtendedQuotientFiber:
    orbit: list
    stabilizer_order: int
    labels: list[FiberLabel]
    modules: list[CrossedModule]
    certificate: CertificateReport

    @property
    def label_count(self) -> int:
        return len(self.labels)


def extended_quotient_fiber(alg: CrossedProductAlgebra, x,
                            seed: int = 0) -> ExtendedQuotientFiber:
    """The fiber of the twisted extended quotient over the orbit of x.

    The stabilizer's twisted group algebra is decomposed exactly; each
    irreducible is induced and certified against the finite quotient algebra.
    """
    grp = alg.group
    x = normalize_point(x)
    orbit, stab_indices = orbit_of_point(grp, x)
    sub, embedding = grp.subgroup(stab_indices)
    sub_cocycle = alg.cocycle.restrict(sub, embedding)
    irreducibles = decompose_twisted_group_algebra(sub_cocycle)

    regular_count = len(sub_cocycle.regular_classes())
    if len(irreducibles) != regular_count:
        raise CrossedProductError(
            f"label count {len(irreducibles)} contradicts the regular-class "
            f"count {regular_count}")

    modules = []
    for t, irr in enumerate(irreducibles):
        modules.append(induced_module(alg, x, irr.t_images, label=(t, irr.dimension)))

    index = len(orbit)
    total = sum(md.dimension ** 2 for md in modules)
    if total != index * grp.order:
        raise CrossedProductError(
            f"sum of squared dimensions {total} != {index * grp.order}")

    quotient = finite_quotient_algebra(grp, alg.cocycle, modules[0].orbit,
                                       conductor=alg.conductor, seed=seed)
    images = [md.quotient_basis_images(quotient) for md in modules]
    cert = completeness_certificate(quotient, images)
    if not cert.ok:
        raise CrossedProductError("oracle decomposition incomplete: "
                                  + "; ".join(cert.failures))
    labels = [FiberLabel(md.rho_dimension, md.dimension, md.extended_character())
              for md in modules]
    return ExtendedQuotientFiber([tuple(p) for p in modules[0].orbit],
                                 sub.order, labels, modules, cert)


# ---------------------------------------------------------------------------
# opposite algebra transport

def opposite_transport(module: CrossedModule) -> CrossedModule:
    """Re-express the module as a left module over the inverse-cocycle crossed
    product, via a T_g  ->  T_g^{-1} a and matrix transposition."""
    alg = module.algebra
    grp = alg.group
    opp = CrossedProductAlgebra(grp, alg.cocycle.inverse_cocycle(), alg.conductor)
    coord_images = [transpose(m) for m in module.coord_images]
    t_images = []
    for g in range(grp.order):
        ginv = grp.inv[g]
        scale = opp.root(-alg.cocycle.table[g][ginv])
        t_images.append([[scale * x for x in row]
                         for row in transpose(module.t_images[ginv])])
    out = CrossedModule(opp, module.dimension, coord_images, t_images,
                        module.orbit, module.block_dim, module.rho_dimension,
                        module.label)
    if not out.relations_hold():
        raise CrossedProductError("opposite transport failed relation checks")
    return out
