"""Twisted graded Hecke algebras H(t, W Gamma, k, natural): Bernstein-Lusztig
normal form, induced modules I(lambda), weight computations, temperedness and
discrete-series predicates, centre checks, and the localized intertwiners
tau_{s_alpha}.

Polynomial coefficients are Gaussian rationals; weights live in GaussRat^d so
that the real-part cone tests are exact.  Optional formal parameters (the
W-orbit values of k, and the central element r) become extra polynomial
variables on which W Gamma acts trivially.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .finite_group import Cocycle, FiniteActionGroup
from .linalg import (identity, kernel_basis, mat_eq, mat_mul, mat_inverse,
                     solve, transpose)
from .oracle import burnside_irreducible as _burnside
from .oracle import submodule_test as _submodule_test
from .scalars import GaussRat, MultiPoly, PolyFraction, poly_divide_linear


class HeckeError(ValueError):
    pass


_GAUSS_ROOTS = {Fraction(0): GaussRat(1), Fraction(1, 4): GaussRat(0, 1),
                Fraction(1, 2): GaussRat(-1), Fraction(3, 4): GaussRat(0, -1)}


def _gauss_root(rotation: Fraction) -> GaussRat:
    rot = Fraction(rotation) % 1
    if rot not in _GAUSS_ROOTS:
        raise HeckeError(
            "cocycle values on the Hecke side must be 4th roots of unity")
    return _GAUSS_ROOTS[rot]


# ---------------------------------------------------------------------------
# the Weyl group as rational matrices

class MatrixGroup:
    """Finite group of rational matrices, ordered breadth first from 1."""

    def __init__(self, generators: list, cap: int = 10000) -> None:
        self.d = len(generators[0])
        gens = [tuple(tuple(Fraction(x) for x in row) for row in g)
                for g in generators]
        ident = tuple(tuple(Fraction(1 if i == j else 0) for j in range(self.d))
                      for i in range(self.d))
        seen = {ident}
        self.elements = [ident]
        frontier = [ident]
        while frontier:
            new = set()
            for m in frontier:
                for s in gens:
                    prod = _mat_mul_frac(m, s)
                    if prod not in seen and prod not in new:
                        new.add(prod)
            frontier = sorted(new)
            self.elements.extend(frontier)
            seen.update(frontier)
            if len(self.elements) > cap:
                raise HeckeError(f"group order exceeds cap {cap}")
        self.index = {m: i for i, m in enumerate(self.elements)}
        n = len(self.elements)
        self.mult = [[self.index[_mat_mul_frac(a, b)] for b in self.elements]
                     for a in self.elements]
        self.identity = 0
        self.inv = [next(j for j in range(n) if self.mult[i][j] == 0)
                    for i in range(n)]

    @property
    def order(self) -> int:
        return len(self.elements)


def _mat_mul_frac(a, b):
    d = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(d)) for j in range(d))
                 for i in range(d))


def _pair(x, v) -> Fraction:
    """<x, v> for x in the dual space and v in t (coordinate dot product)."""
    return sum(Fraction(a) * Fraction(b) for a, b in zip(x, v))


# ---------------------------------------------------------------------------
# root data

@dataclass
class RootDatum:
    """Rank, simple roots (in the dual space), coroots, parameters, and the
    extra diagram-automorphism group with its cocycle."""

    rank: int
    simple_roots: tuple
    coroots: tuple
    k_values: tuple | None            # one Fraction per simple root; None = formal
    gamma: FiniteActionGroup
    cocycle: Cocycle

    def __post_init__(self):
        d = self.rank
        self.simple_roots = tuple(tuple(Fraction(x) for x in a)
                                  for a in self.simple_roots)
        self.coroots = tuple(tuple(Fraction(x) for x in a) for a in self.coroots)
        n = len(self.simple_roots)
        if len(self.coroots) != n:
            raise HeckeError("need one coroot per simple root")
        self.cartan = tuple(tuple(_pair(a, bv) for bv in self.coroots)
                            for a in self.simple_roots)
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise HeckeError("<alpha, alpha^vee> must equal 2")
            for j in range(n):
                if i != j and self.cartan[i][j] > 0:
                    raise HeckeError("off-diagonal Cartan pairings must be <= 0")
        # reflection matrices on the dual space: s(x) = x - <x, alpha^vee> alpha
        self.reflections = []
        for a, av in zip(self.simple_roots, self.coroots):
            mat = [[Fraction(1 if r == c else 0) - a[r] * av[c] for c in range(d)]
                   for r in range(d)]
            self.reflections.append(tuple(tuple(row) for row in mat))
        self.weyl = MatrixGroup(self.reflections)
        self.s_index = [self.weyl.index[m] for m in self.reflections]
        self.roots = self._root_closure()
        self.positive_roots = self._positives()
        if self.k_values is not None:
            self.k_values = tuple(Fraction(v) for v in self.k_values)
            self._check_k_invariance()
        self.n_k_params = len(self._k_orbits()) if self.k_values is None else 0
        self._check_gamma()

    def _root_closure(self) -> tuple:
        roots = set(self.simple_roots)
        frontier = list(roots)
        while frontier:
            new = []
            for beta in frontier:
                for s in self.reflections:
                    img = tuple(sum(s[r][c] * beta[c] for c in range(self.rank))
                                for r in range(self.rank))
                    if img not in roots:
                        roots.add(img)
                        new.append(img)
            frontier = new
        return tuple(sorted(roots))

    def _positives(self) -> frozenset:
        pos = set()
        cols = [list(a) for a in self.simple_roots]
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(self.rank)]
        for beta in self.roots:
            sol = solve([[Fraction(x) for x in row] for row in mat],
                        [Fraction(x) for x in beta])
            if sol is not None and all(c >= 0 for c in sol):
                pos.add(beta)
        return frozenset(pos)

    def _k_orbits(self) -> list[list[int]]:
        """W Gamma-orbits on the simple roots (as index classes on Delta)."""
        gens = [self.weyl.elements[s] for s in self.s_index]
        gens += [tuple(tuple(Fraction(x) for x in row) for row in g.matrix)
                 for g in self.gamma.elements]
        assigned: set[tuple] = set()
        orbits: list[list[int]] = []
        for idx, a in enumerate(self.simple_roots):
            if a in assigned:
                continue
            members = {a}
            frontier = [a]
            while frontier:
                new = []
                for b in frontier:
                    for m in gens:
                        img = tuple(sum(m[r][c] * b[c] for c in range(self.rank))
                                    for r in range(self.rank))
                        if img not in members:
                            members.add(img)
                            new.append(img)
                frontier = new
            orbits.append([j for j, sr in enumerate(self.simple_roots)
                           if sr in members])
            assigned |= members
        return orbits

    def _check_k_invariance(self):
        for orbit in self._k_orbits():
            vals = {self.k_values[i] for i in orbit}
            if len(vals) > 1:
                raise HeckeError("parameter k must be constant on W Gamma-orbits")

    def _check_gamma(self):
        simple_set = set(self.simple_roots)
        for g in self.gamma.elements:
            if any(g.translation):
                raise HeckeError("gamma must act linearly")
            for idx, a in enumerate(self.simple_roots):
                img = tuple(sum(Fraction(g.matrix[r][c]) * a[c]
                                for c in range(self.rank)) for r in range(self.rank))
                if img not in simple_set:
                    raise HeckeError("gamma does not stabilize the simple roots")
                if self.k_values is not None:
                    j = self.simple_roots.index(img)
                    if self.k_values[j] != self.k_values[idx]:
                        raise HeckeError("gamma does not stabilize k")

    def simple_root_permutation(self, gamma_idx: int) -> list[int]:
        g = self.gamma.elements[gamma_idx]
        out = []
        for a in self.simple_roots:
            img = tuple(sum(Fraction(g.matrix[r][c]) * a[c]
                            for c in range(self.rank)) for r in range(self.rank))
            out.append(self.simple_roots.index(img))
        return out

    def length(self, w_idx: int) -> int:
        w = self.weyl.elements[w_idx]
        count = 0
        for beta in self.positive_roots:
            img = tuple(sum(w[r][c] * beta[c] for c in range(self.rank))
                        for r in range(self.rank))
            if img not in self.positive_roots:
                count += 1
        return count

    def min_left_descent(self, w_idx: int) -> int:
        """Smallest i with length(s_i w) < length(w); requires w != e."""
        winv = self.weyl.elements[self.weyl.inv[w_idx]]
        for i, a in enumerate(self.simple_roots):
            img = tuple(sum(winv[r][c] * a[c] for c in range(self.rank))
                        for r in range(self.rank))
            if img not in self.positive_roots:
                return i
        raise HeckeError("no descent: element is the identity")

    def contragredient(self, mat) -> list[list[Fraction]]:
        inv = mat_inverse([[Fraction(x) for x in row] for row in mat], Fraction(1))
        return transpose(inv)


def default_gamma(rank: int) -> tuple[FiniteActionGroup, Cocycle]:
    from .finite_group import trivial_group
    g = trivial_group(rank)
    return g, Cocycle.trivial(g)


# ---------------------------------------------------------------------------
# the algebra

class GradedHeckeAlgebra:
    """H(t, W, k) x| C[Gamma, natural] in Bernstein-Lusztig normal form:
    elements are tables (w, gamma) -> polynomial, with polynomials on the left.

    With formal_r the central variable r is kept as an indeterminate of degree
    two; by default it is specialized to 1.
    """

    def __init__(self, datum: RootDatum, formal_r: bool = False) -> None:
        self.datum = datum
        self.formal_r = formal_r
        self.d = datum.rank
        self.formal_k = datum.k_values is None
        self.n_params = (datum.n_k_params if self.formal_k else 0) + (1 if formal_r else 0)
        self.nvars = self.d + self.n_params
        self.weyl = datum.weyl
        self.gamma = datum.gamma
        if self.formal_k:
            orbits = datum._k_orbits()
            self._k_param_of_simple = {}
            for pi, orbit in enumerate(orbits):
                for i in orbit:
                    self._k_param_of_simple[i] = self.d + pi
        # conjugation table gamma w gamma^{-1}
        self._w_conj = []
        for g in self.gamma.elements:
            gmat = tuple(tuple(Fraction(x) for x in row) for row in g.matrix)
            ginv = tuple(tuple(Fraction(x) for x in row)
                         for row in mat_inverse([list(r) for r in gmat], Fraction(1)))
            row = []
            for w in self.weyl.elements:
                prod = _mat_mul_frac(_mat_mul_frac(gmat, w), ginv)
                row.append(self.weyl.index[prod])
            self._w_conj.append(row)

    # -- polynomial helpers --------------------------------------------------

    def one_poly(self) -> MultiPoly:
        return MultiPoly.constant(self.nvars, GaussRat(1))

    def zero_poly(self) -> MultiPoly:
        return MultiPoly(self.nvars, {})

    def x_poly(self, i: int) -> MultiPoly:
        return MultiPoly.variable(i, self.nvars, GaussRat(1))

    def alpha_poly(self, i: int) -> MultiPoly:
        coeffs = [GaussRat(c) for c in self.datum.simple_roots[i]]
        coeffs += [GaussRat(0)] * self.n_params
        return MultiPoly.linear_form(coeffs)

    def linear_poly(self, vector) -> MultiPoly:
        coeffs = [GaussRat(c) for c in vector] + [GaussRat(0)] * self.n_params
        return MultiPoly.linear_form(coeffs)

    def k_poly(self, i: int) -> MultiPoly:
        if self.formal_k:
            return MultiPoly.variable(self._k_param_of_simple[i], self.nvars,
                                      GaussRat(1))
        return MultiPoly.constant(self.nvars, GaussRat(self.datum.k_values[i]))

    def kr_poly(self, i: int) -> MultiPoly:
        out = self.k_poly(i)
        if self.formal_r:
            out = out * MultiPoly.variable(self.nvars - 1, self.nvars, GaussRat(1))
        return out

    def _subst_images(self, mat) -> list[MultiPoly]:
        images = []
        for i in range(self.d):
            coeffs = [GaussRat(mat[r][i]) for r in range(self.d)]
            coeffs += [GaussRat(0)] * self.n_params
            images.append(MultiPoly.linear_form(coeffs))
        for p in range(self.n_params):
            images.append(MultiPoly.variable(self.d + p, self.nvars, GaussRat(1)))
        return images

    def act_weyl(self, w_idx: int, f: MultiPoly) -> MultiPoly:
        return f.substitute_linear(self._subst_images(self.weyl.elements[w_idx]))

    def act_gamma(self, g_idx: int, f: MultiPoly) -> MultiPoly:
        return f.substitute_linear(self._subst_images(self.gamma.elements[g_idx].matrix))

    def divided_difference(self, i: int, f: MultiPoly) -> MultiPoly:
        """(f - s_i f) / alpha_i, exact; failure signals misuse of the relation."""
        num = f - self.act_weyl(self.s_index(i), f)
        if not num:
            return self.zero_poly()
        return poly_divide_linear(num, self.alpha_poly(i))

    def s_index(self, i: int) -> int:
        return self.datum.s_index[i]

    # -- elements -------------------------------------------------------------

    def element(self, terms: dict) -> "HeckeElement":
        return HeckeElement(self, terms)

    def one(self) -> "HeckeElement":
        return self.element({(0, 0): self.one_poly()})

    def from_poly(self, f: MultiPoly) -> "HeckeElement":
        return self.element({(0, 0): f})

    def n_s(self, i: int) -> "HeckeElement":
        return self.element({(self.s_index(i), 0): self.one_poly()})

    def t_gamma(self, g: int) -> "HeckeElement":
        return self.element({(0, g): self.one_poly()})

    def generators(self) -> list["HeckeElement"]:
        gens = [self.from_poly(self.x_poly(j)) for j in range(self.d)]
        gens += [self.n_s(i) for i in range(len(self.datum.simple_roots))]
        gens += [self.t_gamma(g) for g in range(1, self.gamma.order)]
        return gens

    def _move_left(self, w_idx: int, f: MultiPoly) -> dict[int, MultiPoly]:
        """Normal form of N_w f: a table v -> h_v with N_w f = sum h_v N_v."""
        if not f:
            return {}
        if w_idx == 0:
            return {0: f}
        i = self.datum.min_left_descent(w_idx)
        si = self.s_index(i)
        u = self.weyl.mult[si][w_idx]
        out: dict[int, MultiPoly] = {}
        for v, h in self._move_left(u, f).items():
            # N_{s_i} (h N_v) = (s_i h) N_{s_i v} + k_i r ((h - s_i h)/alpha_i) N_v
            sh = self.act_weyl(si, h)
            _accumulate(out, self.weyl.mult[si][v], sh)
            num = h - sh
            if num:
                delta = poly_divide_linear(num, self.alpha_poly(i))
                _accumulate(out, v, self.kr_poly(i) * delta)
        return {v: h for v, h in out.items() if h}

    def _move_right(self, f: MultiPoly, w_idx: int) -> dict[int, MultiPoly]:
        """Table v -> g_v with f N_w = sum N_v g_v (polynomials on the right)."""
        if not f:
            return {}
        if w_idx == 0:
            return {0: f}
        i = self.datum.min_left_descent(w_idx)
        si = self.s_index(i)
        u = self.weyl.mult[si][w_idx]
        sf = self.act_weyl(si, f)
        out: dict[int, MultiPoly] = {}
        for v, g in self._move_right(sf, u).items():
            _accumulate(out, self.weyl.mult[si][v], g)
        num = f - sf
        if num:
            delta = poly_divide_linear(num, self.alpha_poly(i))
            for v, g in self._move_right(self.kr_poly(i) * delta, u).items():
                _accumulate(out, v, g)
        return {v: g for v, g in out.items() if g}

    def multiply(self, a: "HeckeElement", b: "HeckeElement") -> "HeckeElement":
        out: dict[tuple[int, int], MultiPoly] = {}
        for (w1, g1), f1 in a.terms.items():
            for (w2, g2), f2 in b.terms.items():
                acted = self.act_gamma(g1, f2)
                w2c = self._w_conj[g1][w2]
                scalar = _gauss_root(self.datum.cocycle.table[g1][g2])
                gg = self.gamma.mult[g1][g2]
                for v, h in self._move_left(w1, acted).items():
                    key = (self.weyl.mult[v][w2c], gg)
                    _accumulate(out, key, (f1 * h) * scalar)
        return HeckeElement(self, {k: f for k, f in out.items() if f})


def _accumulate(table: dict, key, poly) -> None:
    if key in table:
        table[key] = table[key] + poly
    else:
        table[key] = poly


class HeckeElement:
    """Normal form sum_{w, gamma} f_{w,gamma} N_w T_gamma, polynomials left."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedHeckeAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = {k: f for k, f in terms.items() if f}

    def __add__(self, other: HeckeElement) -> HeckeElement:
        out = dict(self.terms)
        for k, f in other.terms.items():
            out[k] = out[k] + f if k in out else f
        return HeckeElement(self.algebra, out)

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        out = dict(self.terms)
        for k, f in other.terms.items():
            out[k] = out[k] - f if k in out else -f
        return HeckeElement(self.algebra, out)

    def __mul__(self, other: HeckeElement) -> HeckeElement:
        return self.algebra.multiply(self, other)

    def scale(self, c) -> HeckeElement:
        return HeckeElement(self.algebra, {k: f * c for k, f in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        zero = self.algebra.zero_poly()
        return all((self.terms.get(k) or zero) == (other.terms.get(k) or zero)
                   for k in keys)

    __hash__ = None

    def degree(self) -> int:
        """Filtration degree: coordinates and r count 2, group parts count 0.

        Formal k parameters count 0 (they are scalars of the ground ring).
        """
        alg = self.algebra
        best = -1
        for (w, g), f in self.terms.items():
            for exps in f.terms:
                deg = 2 * sum(exps[:alg.d])
                if alg.formal_r:
                    deg += 2 * exps[alg.nvars - 1]
                best = max(best, deg)
        return best

    def __repr__(self) -> str:
        parts = [f"[w{w},g{g}]({f!r})" for (w, g), f in sorted(self.terms.items())]
        return " + ".join(parts) or "0"


def hecke_multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a * b


def center_check(alg: GradedHeckeAlgebra, f: MultiPoly) -> bool:
    """True iff f is W Gamma-invariant and commutes with all generators."""
    invariant = all(alg.act_weyl(alg.s_index(i), f) == f
                    for i in range(len(alg.datum.simple_roots)))
    invariant = invariant and all(alg.act_gamma(g, f) == f
                                  for g in range(alg.gamma.order))
    elem = alg.from_poly(f)
    commutes = all(elem * g == g * elem for g in alg.generators())
    if invariant != commutes and alg.gamma.order == 1:
        # for faithful actions the two tests must agree
        raise HeckeError("invariance and commutation disagree")
    return invariant and commutes


# ---------------------------------------------------------------------------
# localized algebra and the tau elements

class LocalizedHecke:
    """C(t/W Gamma) (x) H: same normal form with PolyFraction coefficients."""

    def __init__(self, alg: GradedHeckeAlgebra) -> None:
        self.alg = alg

    def frac(self, num: MultiPoly, den: MultiPoly | None = None) -> PolyFraction:
        if den is None:
            den = self.alg.one_poly()
        return PolyFraction(num, den)

    def act_weyl(self, w_idx: int, fr: PolyFraction) -> PolyFraction:
        return PolyFraction(self.alg.act_weyl(w_idx, fr.num),
                            self.alg.act_weyl(w_idx, fr.den))

    def act_gamma(self, g_idx: int, fr: PolyFraction) -> PolyFraction:
        return PolyFraction(self.alg.act_gamma(g_idx, fr.num),
                            self.alg.act_gamma(g_idx, fr.den))

    def _move_left(self, w_idx: int, fr: PolyFraction) -> dict[int, PolyFraction]:
        if not fr:
            return {}
        if w_idx == 0:
            return {0: fr}
        alg = self.alg
        i = alg.datum.min_left_descent(w_idx)
        si = alg.s_index(i)
        u = alg.weyl.mult[si][w_idx]
        out: dict[int, PolyFraction] = {}
        for v, h in self._move_left(u, fr).items():
            sh = self.act_weyl(si, h)
            _accumulate(out, alg.weyl.mult[si][v], sh)
            diff = h - sh
            if diff:
                delta = diff * self.frac(alg.one_poly(), alg.alpha_poly(i))
                _accumulate(out, v, delta * self.frac(alg.kr_poly(i)))
        return {v: h for v, h in out.items() if h}

    def multiply(self, a: dict, b: dict) -> dict:
        out: dict[tuple[int, int], PolyFraction] = {}
        alg = self.alg
        for (w1, g1), f1 in a.items():
            for (w2, g2), f2 in b.items():
                acted = self.act_gamma(g1, f2)
                w2c = alg._w_conj[g1][w2]
                scalar = _gauss_root(alg.datum.cocycle.table[g1][g2])
                gg = alg.gamma.mult[g1][g2]
                for v, h in self._move_left(w1, acted).items():
                    key = (alg.weyl.mult[v][w2c], gg)
                    _accumulate(out, key, (f1 * h) * scalar)
        return {k: f for k, f in out.items() if f}

    def tau(self, i: int) -> dict:
        """tau_{s_i} = (1 + N_{s_i}) alpha_i/(alpha_i + k_i) - 1."""
        alg = self.alg
        a = alg.alpha_poly(i)
        shift = self.frac(a, a + alg.k_poly(i))
        # (1 + N_s) * fraction, multiplied out in the localized algebra
        out = self.multiply({(0, 0): self.frac(alg.one_poly()),
                             (alg.s_index(i), 0): self.frac(alg.one_poly())},
                            {(0, 0): shift})
        one = self.frac(alg.one_poly())
        out[(0, 0)] = out.get((0, 0), self.frac(alg.zero_poly())) - one
        return {k: f for k, f in out.items() if f}


def tau_square_check(alg: GradedHeckeAlgebra, i: int) -> bool:
    """Verify tau_{s_alpha}^2 = 1 symbolically in the localized algebra."""
    loc = LocalizedHecke(alg)
    tau = loc.tau(i)
    square = loc.multiply(tau, tau)
    one = PolyFraction(alg.one_poly(), alg.one_poly())
    if set(square) != {(0, 0)}:
        return False
    return square[(0, 0)] == one


# ---------------------------------------------------------------------------
# modules

@dataclass
class HeckeModule:
    """Finite-dimensional module: exact matrices for coordinates, simple
    reflections and the T_gamma, over Gaussian rationals."""

    algebra: GradedHeckeAlgebra
    dimension: int
    x_images: list
    n_images: list
    t_images: list

    def generator_matrices(self) -> list:
        return list(self.x_images) + list(self.n_images) + list(self.t_images[1:])

    def poly_image(self, f: MultiPoly) -> list:
        zero = GaussRat(0)
        out = [[zero] * self.dimension for _ in range(self.dimension)]
        for exps, c in f.terms.items():
            mono = identity(self.dimension, GaussRat(1))
            for j, e in enumerate(exps):
                if j >= self.algebra.d and e:
                    raise HeckeError("module requires specialized parameters")
                for _ in range(e):
                    mono = mat_mul(mono, self.x_images[j])
            out = [[o + c * x for o, x in zip(orow, mrow)]
                   for orow, mrow in zip(out, mono)]
        return out

    def relations_hold(self) -> bool:
        return hecke_relations_hold(self.algebra, self)


def hecke_relations_hold(alg: GradedHeckeAlgebra, mod: HeckeModule) -> bool:
    """All defining relations as exact matrix identities (r specialized to 1)."""
    if alg.formal_k or alg.formal_r:
        raise HeckeError("module relation checks need specialized parameters")
    d, dat = alg.d, alg.datum
    n = mod.dimension
    one = identity(n, GaussRat(1))
    xs, ns, ts = mod.x_images, mod.n_images, mod.t_images
    for a in range(d):
        for b in range(a + 1, d):
            if not mat_eq(mat_mul(xs[a], xs[b]), mat_mul(xs[b], xs[a])):
                return False
    nsimple = len(dat.simple_roots)
    for i in range(nsimple):
        if not mat_eq(mat_mul(ns[i], ns[i]), one):
            return False
        for j in range(i + 1, nsimple):
            si, sj = dat.s_index[i], dat.s_index[j]
            m_ij = 1
            prod = dat.weyl.mult[si][sj]
            cur = prod
            while cur != 0:
                cur = dat.weyl.mult[cur][prod]
                m_ij += 1
            lhs = identity(n, GaussRat(1))
            for _ in range(m_ij):
                lhs = mat_mul(lhs, mat_mul(ns[i], ns[j]))
            if not mat_eq(lhs, one):
                return False
    # cross relation on coordinates: x N_i - N_i s_i(x) = k_i <x, alpha_i^vee>
    for i in range(nsimple):
        av = dat.coroots[i]
        k_i = GaussRat(dat.k_values[i])
        alpha_mat = mod.poly_image(alg.alpha_poly(i))
        for j in range(d):
            pairing = GaussRat(av[j])
            s_x = [[xs[j][r][c] - pairing * alpha_mat[r][c] for c in range(n)]
                   for r in range(n)]
            lhs = mat_mul(xs[j], ns[i])
            rhs = mat_mul(ns[i], s_x)
            diff = [[lhs[r][c] - rhs[r][c] for c in range(n)] for r in range(n)]
            expect = [[k_i * pairing * one[r][c] for c in range(n)] for r in range(n)]
            if not mat_eq(diff, expect):
                return False
    # T_gamma relations
    for g1 in range(alg.gamma.order):
        for g2 in range(alg.gamma.order):
            z = _gauss_root(dat.cocycle.table[g1][g2])
            lhs = mat_mul(ts[g1], ts[g2])
            rhs = [[z * x for x in row] for row in ts[alg.gamma.mult[g1][g2]]]
            if not mat_eq(lhs, rhs):
                return False
    for g in range(alg.gamma.order):
        perm = dat.simple_root_permutation(g)
        for i in range(nsimple):
            if not mat_eq(mat_mul(ts[g], ns[i]), mat_mul(ns[perm[i]], ts[g])):
                return False
        for j in range(d):
            acted = alg.act_gamma(g, alg.x_poly(j))
            if not mat_eq(mat_mul(ts[g], xs[j]),
                          mat_mul(mod.poly_image(acted), ts[g])):
                return False
    return True


def induced_module_I(alg: GradedHeckeAlgebra, lam) -> HeckeModule:
    """I(lambda) = ind_{O(t)}^H(C_lambda) on the basis {N_w T_gamma}."""
    if alg.formal_k or alg.formal_r:
        raise HeckeError("I(lambda) needs specialized parameters")
    lam = [v if isinstance(v, GaussRat) else GaussRat(v) for v in lam]
    if len(lam) != alg.d:
        raise HeckeError("weight length mismatch")
    nw = alg.weyl.order
    ng = alg.gamma.order
    dim = nw * ng
    zero = GaussRat(0)

    def bidx(w, g):
        return w * ng + g

    x_images = []
    for j in range(alg.d):
        mat = [[zero] * dim for _ in range(dim)]
        for w in range(nw):
            right = alg._move_right(alg.x_poly(j), w)
            for g in range(ng):
                ginv = alg.gamma.inv[g]
                for v, poly in right.items():
                    moved = alg.act_gamma(ginv, poly)
                    val = moved.evaluate(lam, zero=zero)
                    if val:
                        mat[bidx(v, g)][bidx(w, g)] = mat[bidx(v, g)][bidx(w, g)] + val
        x_images.append(mat)

    n_images = []
    for i in range(len(alg.datum.simple_roots)):
        si = alg.s_index(i)
        mat = [[zero] * dim for _ in range(dim)]
        for w in range(nw):
            for g in range(ng):
                mat[bidx(alg.weyl.mult[si][w], g)][bidx(w, g)] = GaussRat(1)
        n_images.append(mat)

    t_images = []
    for g0 in range(ng):
        mat = [[zero] * dim for _ in range(dim)]
        for w in range(nw):
            for g in range(ng):
                z = _gauss_root(alg.datum.cocycle.table[g0][g])
                mat[bidx(alg._w_conj[g0][w], alg.gamma.mult[g0][g])][bidx(w, g)] = z
        t_images.append(mat)

    mod = HeckeModule(alg, dim, x_images, n_images, t_images)
    if not mod.relations_hold():
        raise HeckeError("I(lambda) construction violates the relations")
    return mod


# ---------------------------------------------------------------------------
# weights, temperedness

@dataclass
class WeightReport:
    weights: list            # list of GaussRat tuples
    multiplicities: list[int]

    def as_dict(self) -> dict:
        return {tuple(w): m for w, m in zip(self.weights, self.multiplicities)}


def weight_orbit(alg: GradedHeckeAlgebra, lam) -> list[tuple]:
    """The W Gamma-orbit of lambda in t (contragredient action)."""
    lam = tuple(v if isinstance(v, GaussRat) else GaussRat(v) for v in lam)
    mats = [alg.datum.contragredient(m) for m in alg.weyl.elements]
    mats += [alg.datum.contragredient(g.matrix) for g in alg.gamma.elements]
    seen = []
    for m in mats:
        pt = tuple(sum((GaussRat(m[r][c]) * lam[c] for c in range(alg.d)),
                       GaussRat(0)) for r in range(alg.d))
        if pt not in seen:
            seen.append(pt)
    return seen


def weights(mod: HeckeModule, candidates) -> WeightReport:
    """Generalized O(t)-eigenspace dimensions over the candidate weights."""
    alg = mod.algebra
    n = mod.dimension
    out_w, out_m = [], []
    total = 0
    for lam in candidates:
        lam = tuple(v if isinstance(v, GaussRat) else GaussRat(v) for v in lam)
        stacked = []
        for j in range(alg.d):
            m = [[mod.x_images[j][r][c] - (lam[j] if r == c else GaussRat(0))
                  for c in range(n)] for r in range(n)]
            power = identity(n, GaussRat(1))
            for _ in range(n):
                power = mat_mul(power, m)
            stacked.extend(power)
        kern = kernel_basis(stacked, GaussRat(1))
        if kern:
            out_w.append(lam)
            out_m.append(len(kern))
            total += len(kern)
    if total != n:
        raise HeckeError(
            f"candidate weights cover {total} of {n} dimensions")
    return WeightReport(out_w, out_m)


def real_part(lam) -> tuple[Fraction, ...]:
    return tuple(v.re if isinstance(v, GaussRat) else Fraction(v) for v in lam)


def _coroot_coefficients(alg: GradedHeckeAlgebra, re_lam) -> list[Fraction] | None:
    """Solve re(lambda) = sum_i c_i alpha_i^vee; None if outside the span."""
    cor = alg.datum.coroots
    if not cor:
        return [] if not any(re_lam) else None
    mat = [[Fraction(cor[i][r]) for i in range(len(cor))] for r in range(alg.d)]
    sol = solve(mat, [Fraction(x) for x in re_lam])
    if sol is None:
        return None
    # verify (solve returns a least-structured solution; substitute back)
    for r in range(alg.d):
        if sum(mat[r][i] * sol[i] for i in range(len(cor))) != re_lam[r]:
            return None
    return sol


def is_tempered(mod: HeckeModule, report: WeightReport | None = None,
                candidates=None) -> bool:
    """Wt(pi) inside the obtuse negative cone spanned by the negated coroots
    (the component orthogonal to the coroot span must vanish)."""
    report = report or weights(mod, candidates)
    alg = mod.algebra
    for lam in report.weights:
        c = _coroot_coefficients(alg, real_part(lam))
        if c is None or any(v > 0 for v in c):
            return False
    return True


def is_discrete_series_weights(mod: HeckeModule, report: WeightReport | None = None,
                               candidates=None) -> bool:
    """All weight real parts interior to the negative cone within the span."""
    report = report or weights(mod, candidates)
    alg = mod.algebra
    if not alg.datum.coroots:
        return False
    for lam in report.weights:
        c = _coroot_coefficients(alg, real_part(lam))
        if c is None or any(v >= 0 for v in c):
            return False
    return True


def burnside_irreducible(mod: HeckeModule) -> bool:
    return _burnside(mod.generator_matrices())


def submodule_test(mod: HeckeModule, vectors) -> bool:
    return _submodule_test(mod.generator_matrices(), vectors)


def one_dimensional_modules(alg: GradedHeckeAlgebra) -> list[HeckeModule]:
    """Exhaustive search over characters of the generators (trivial gamma)."""
    if alg.gamma.order != 1:
        raise HeckeError("one-dimensional search implemented for trivial gamma")
    from itertools import product as iproduct
    dat = alg.datum
    nsimple = len(dat.simple_roots)
    found = []
    for signs in iproduct((1, -1), repeat=nsimple):
        # c(alpha_i) = sign_i * k_i determines c on the root span
        mat = [[Fraction(dat.simple_roots[i][r]) for r in range(alg.d)]
               for i in range(nsimple)]
        rhs = [Fraction(signs[i]) * dat.k_values[i] for i in range(nsimple)]
        sol = solve(mat, rhs)
        if sol is None:
            continue
        mod = HeckeModule(alg, 1,
                          [[[GaussRat(sol[j])]] for j in range(alg.d)],
                          [[[GaussRat(signs[i])]] for i in range(nsimple)],
                          [[[GaussRat(1)]]])
        if mod.relations_hold():
            found.append(mod)
    return found
