"""Finite groups of affine lattice maps on a torus, 2-cocycles with values in
Q/Z, and the twisted group algebra C[Gamma, natural].

Group elements are indexed 0..|Gamma|-1 in a deterministic order (breadth
first from the identity, ties broken by serialized form), so multiplication
tables and all downstream reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

from .linalg import int_det, int_identity, int_mat_inverse, int_mat_mul
from .scalars import Cyc, RotationNumber, format_rat


class GroupError(ValueError):
    pass


class CocycleError(ValueError):
    def __init__(self, message: str, triple: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.triple = triple


class AffineLatticeMap:
    """x -> A x + b on the torus (Q/Z)^d, with A integral of determinant +-1."""

    __slots__ = ("matrix", "translation")

    def __init__(self, matrix, translation) -> None:
        mat = tuple(tuple(int(x) for x in row) for row in matrix)
        d = len(mat)
        if any(len(row) != d for row in mat):
            raise GroupError("matrix must be square")
        if int_det([list(r) for r in mat]) not in (1, -1):
            raise GroupError("matrix must be invertible over the integers")
        trans = tuple(Fraction(t) % 1 for t in translation)
        if len(trans) != d:
            raise GroupError("translation length mismatch")
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "translation", trans)

    def __setattr__(self, name, val):  # pragma: no cover
        raise AttributeError("AffineLatticeMap is immutable")

    @staticmethod
    def identity(d: int) -> AffineLatticeMap:
        return AffineLatticeMap(int_identity(d), [0] * d)

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def compose(self, other: AffineLatticeMap) -> AffineLatticeMap:
        """self after other: (A1,b1)(A2,b2) = (A1 A2, A1 b2 + b1)."""
        a = int_mat_mul([list(r) for r in self.matrix], [list(r) for r in other.matrix])
        b = [sum(Fraction(self.matrix[i][j]) * other.translation[j]
                 for j in range(self.rank)) + self.translation[i]
             for i in range(self.rank)]
        return AffineLatticeMap(a, b)

    def inverse(self) -> AffineLatticeMap:
        ainv = int_mat_inverse([list(r) for r in self.matrix])
        b = [-sum(Fraction(ainv[i][j]) * self.translation[j] for j in range(self.rank))
             for i in range(self.rank)]
        return AffineLatticeMap(ainv, b)

    def apply(self, point) -> tuple[Fraction, ...]:
        return tuple(
            (sum(Fraction(self.matrix[i][j]) * point[j] for j in range(self.rank))
             + self.translation[i]) % 1
            for i in range(self.rank))

    def is_identity(self) -> bool:
        return (self.matrix == tuple(tuple(r) for r in int_identity(self.rank))
                and not any(self.translation))

    def key(self):
        """Serialized form used for deterministic ordering."""
        return (self.matrix,
                tuple((t.numerator, t.denominator) for t in self.translation))

    def __eq__(self, other) -> bool:
        return (isinstance(other, AffineLatticeMap)
                and self.matrix == other.matrix
                and self.translation == other.translation)

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"AffineLatticeMap({[list(r) for r in self.matrix]}, " \
               f"{[str(t) for t in self.translation]})"


@dataclass(frozen=True)
class ConjugacyClassData:
    representative: int
    members: tuple[int, ...]
    centralizer: tuple[int, ...]


class FiniteActionGroup:
    """A finite group of affine lattice maps with precomputed tables."""

    def __init__(self, elements: list[AffineLatticeMap]) -> None:
        self.elements = list(elements)
        self.rank = elements[0].rank
        index = {g.key(): i for i, g in enumerate(elements)}
        if len(index) != len(elements):
            raise GroupError("duplicate elements")
        n = len(elements)
        self.mult = [[0] * n for _ in range(n)]
        for i, gi in enumerate(elements):
            for j, gj in enumerate(elements):
                k = index.get(gi.compose(gj).key())
                if k is None:
                    raise GroupError("element set not closed under composition")
                self.mult[i][j] = k
        self.inv = [0] * n
        for i, g in enumerate(elements):
            k = index.get(g.inverse().key())
            if k is None:
                raise GroupError("element set not closed under inverse")
            self.inv[i] = k
        self.identity = index[AffineLatticeMap.identity(self.rank).key()]
        if self.identity != 0:
            raise GroupError("identity must be element 0")
        self._index = index

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_index(self, g: AffineLatticeMap) -> int:
        try:
            return self._index[g.key()]
        except KeyError:
            raise GroupError("element not in group") from None

    def element_order(self, i: int) -> int:
        n, j = 1, i
        while j != self.identity:
            j = self.mult[j][i]
            n += 1
        return n

    def conjugate(self, g: int, by: int) -> int:
        return self.mult[self.mult[by][g]][self.inv[by]]

    @cached_property
    def conjugacy_classes(self) -> list[ConjugacyClassData]:
        seen = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            members = sorted({self.conjugate(g, h) for h in range(self.order)})
            seen.update(members)
            cent = tuple(z for z in range(self.order)
                         if self.mult[z][g] == self.mult[g][z])
            assert len(members) * len(cent) == self.order
            classes.append(ConjugacyClassData(g, tuple(members), cent))
        return classes

    def class_of(self, g: int) -> ConjugacyClassData:
        for c in self.conjugacy_classes:
            if g in c.members:
                return c
        raise GroupError("element outside group")  # pragma: no cover

    def centralizer(self, g: int) -> tuple[int, ...]:
        return tuple(z for z in range(self.order)
                     if self.mult[z][g] == self.mult[g][z])

    def is_abelian(self) -> bool:
        return all(self.mult[i][j] == self.mult[j][i]
                   for i in range(self.order) for j in range(self.order))

    def subgroup(self, indices) -> tuple["FiniteActionGroup", list[int]]:
        """Subgroup on the given closed index set.

        Returns the subgroup (with its own deterministic ordering) and the
        list mapping new indices to indices in self.
        """
        idx = sorted(set(indices))
        if self.identity not in idx:
            raise GroupError("subgroup must contain the identity")
        members = set(idx)
        for i in idx:
            if self.inv[i] not in members:
                raise GroupError("index set not closed under inverse")
            for j in idx:
                if self.mult[i][j] not in members:
                    raise GroupError("index set not closed under composition")
        ordered = [self.identity] + sorted(
            (i for i in idx if i != self.identity),
            key=lambda i: self.elements[i].key())
        sub = FiniteActionGroup([self.elements[i] for i in ordered])
        return sub, ordered


def generate_group(generators: list[AffineLatticeMap],
                   max_order: int = 10000) -> FiniteActionGroup:
    """Closure of the generators under composition, breadth first from the
    identity with ties broken by serialized form."""
    if not generators:
        raise GroupError("need at least one generator (or an explicit rank)")
    d = generators[0].rank
    if any(g.rank != d for g in generators):
        raise GroupError("generator rank mismatch")
    ident = AffineLatticeMap.identity(d)
    seen = {ident.key(): ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        new = {}
        for g in frontier:
            for s in generators:
                h = g.compose(s)
                if h.key() not in seen and h.key() not in new:
                    new[h.key()] = h
        frontier = [new[k] for k in sorted(new)]
        for h in frontier:
            seen[h.key()] = h
            order.append(h)
        if len(order) > max_order:
            raise GroupError(f"group order exceeds cap {max_order}")
    return FiniteActionGroup(order)


def trivial_group(d: int) -> FiniteActionGroup:
    return FiniteActionGroup([AffineLatticeMap.identity(d)])


# ---------------------------------------------------------------------------
# cocycles

class Cocycle:
    """A 2-cocycle on Gamma with root-of-unity values, stored additively as
    rotation numbers: table[g][h] represents natural(g,h) = exp(2 pi i r)."""

    def __init__(self, group: FiniteActionGroup, table, *, validate: bool = True,
                 strict: bool = True) -> None:
        self.group = group
        tab = [[Fraction(v) % 1 for v in row] for row in table]
        n = group.order
        if len(tab) != n or any(len(r) != n for r in tab):
            raise CocycleError("cocycle table must be |Gamma| x |Gamma|")
        e = group.identity
        if tab[e][e]:
            if strict:
                raise CocycleError(
                    "natural(e,e) must be 1; re-run with strict=False to renormalize",
                    (e, e, e))
            # the forced coboundary: replace T_e by natural(e,e)^{-1} T_e
            f = [Fraction(0)] * n
            f[e] = -tab[e][e]
            tab = _rescaled_table(group, tab, f)
        self.table = tuple(tuple(row) for row in tab)
        if validate:
            self._validate()

    def _validate(self) -> None:
        g = self.group
        n = g.order
        t = self.table
        for i in range(n):
            for j in range(n):
                ij = g.mult[i][j]
                for k in range(n):
                    lhs = (t[ij][k] + t[i][j]) % 1
                    rhs = (t[i][g.mult[j][k]] + t[j][k]) % 1
                    if lhs != rhs:
                        raise CocycleError(
                            f"cocycle identity fails on triple {(i, j, k)}", (i, j, k))
        e = g.identity
        if any(t[e][i] or t[i][e] for i in range(n)):
            raise CocycleError("cocycle not unit-normalized", (e, e, e))

    @staticmethod
    def trivial(group: FiniteActionGroup) -> Cocycle:
        n = group.order
        return Cocycle(group, [[0] * n for _ in range(n)], validate=False)

    @staticmethod
    def from_entries(group: FiniteActionGroup, entries, *, strict: bool = True) -> Cocycle:
        """entries: iterable of (i, j, rotation) with unspecified entries 0."""
        n = group.order
        tab = [[Fraction(0)] * n for _ in range(n)]
        for i, j, v in entries:
            tab[i][j] = Fraction(v) % 1
        return Cocycle(group, tab, strict=strict)

    @staticmethod
    def bilinear(group: FiniteActionGroup, generators: list[int],
                 matrix, mod: int) -> Cocycle:
        """Elementary-abelian shortcut: natural(g,h) = e(g)^T M e(h) / mod,
        where e(g) is an exponent vector of g over the given generators."""
        if not group.is_abelian():
            raise CocycleError("bilinear cocycles require an abelian group")
        r = len(generators)
        coords: dict[int, tuple[int, ...]] = {group.identity: (0,) * r}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for t, s in enumerate(generators):
                    h = group.mult[g][s]
                    if h not in coords:
                        e = list(coords[g])
                        e[t] = (e[t] + 1) % mod
                        coords[h] = tuple(e)
                        nxt.append(h)
            frontier = nxt
        if len(coords) != group.order:
            raise CocycleError("generators do not generate the group")
        n = group.order
        tab = [[Fraction(0)] * n for _ in range(n)]
        for g in range(n):
            for h in range(n):
                eg, eh = coords[g], coords[h]
                val = sum(eg[a] * matrix[a][b] * eh[b] for a in range(r) for b in range(r))
                tab[g][h] = Fraction(val, mod) % 1
        return Cocycle(group, tab)

    @property
    def conductor(self) -> int:
        return lcm(1, *(v.denominator for row in self.table for v in row))

    def value(self, i: int, j: int) -> Fraction:
        return self.table[i][j]

    def inverse_cocycle(self) -> Cocycle:
        n = self.group.order
        return Cocycle(self.group,
                       [[(-self.table[i][j]) % 1 for j in range(n)] for i in range(n)],
                       validate=False)

    def rescale(self, f) -> Cocycle:
        """The cohomologous cocycle natural * b(f); f maps indices to rotations,
        with f(e) = 0."""
        f = [Fraction(v) % 1 for v in f]
        if f[self.group.identity]:
            raise CocycleError("rescaling function must vanish at the identity")
        return Cocycle(self.group, _rescaled_table(self.group, self.table, f),
                       validate=False)

    def restrict(self, sub: FiniteActionGroup, embedding: list[int]) -> Cocycle:
        """Restriction along a subgroup embedding (new index -> old index)."""
        n = sub.order
        tab = [[self.table[embedding[i]][embedding[j]] for j in range(n)]
               for i in range(n)]
        return Cocycle(sub, tab, validate=False)

    # -- algebra scalars -----------------------------------------------------

    def group_inverse_value(self, i: int) -> Fraction:
        """Rotation r with T_i^{-1} = exp(-2 pi i r) T_{i^{-1}}."""
        return self.table[i][self.group.inv[i]]

    def natural_character(self, g: int) -> tuple[Fraction, ...]:
        """The map natural^g, as rotations indexed by all of Gamma.

        natural^g(c) is the scalar with T_c T_g T_c^{-1} = natural^g(c) T_{cgc^{-1}};
        its restriction to the centralizer Z_Gamma(g) is verified to be a
        character (any failure indicates a corrupted cocycle table).
        """
        grp = self.group
        out = []
        for c in range(grp.order):
            cinv = grp.inv[c]
            val = (self.table[c][g] + self.table[grp.mult[c][g]][cinv]
                   - self.table[c][cinv]) % 1
            out.append(val)
        cent = grp.centralizer(g)
        for a in cent:
            for b in cent:
                if (out[a] + out[b]) % 1 != out[grp.mult[a][b]]:
                    raise CocycleError(
                        f"natural^{g} is not a character on the centralizer")
        return tuple(out)

    def regular_classes(self) -> list[ConjugacyClassData]:
        """Conjugacy classes [g] with natural^g trivial on Z_Gamma(g)."""
        out = []
        for c in self.group.conjugacy_classes:
            chi = self.natural_character(c.representative)
            if all(not chi[z] for z in c.centralizer):
                out.append(c)
        return out

    @property
    def irr_count(self) -> int:
        return len(self.regular_classes())


def _rescaled_table(group: FiniteActionGroup, table, f) -> list[list[Fraction]]:
    n = group.order
    return [[(Fraction(table[i][j]) + f[i] + f[j] - f[group.mult[i][j]]) % 1
             for j in range(n)] for i in range(n)]


def validate_cocycle(group: FiniteActionGroup, table, *, strict: bool = True) -> Cocycle:
    """Check Eq-style cocycle identities on all |Gamma|^3 triples and
    normalization; returns the validated Cocycle."""
    return Cocycle(group, table, strict=strict)


def coboundary(group: FiniteActionGroup, f) -> Cocycle:
    """The coboundary b(f)(g,h) = f(g) + f(h) - f(gh) of f with f(e) = 0."""
    return Cocycle.trivial(group).rescale(f)


# ---------------------------------------------------------------------------
# twisted group algebra

class TwistedGroupAlgebra:
    """C[Gamma, natural] with basis T_g over the cyclotomic field."""

    def __init__(self, cocycle: Cocycle, conductor: int | None = None) -> None:
        self.cocycle = cocycle
        self.group = cocycle.group
        n = conductor or lcm(cocycle.conductor,
                             *(self.group.element_order(i)
                               for i in range(self.group.order)))
        self.conductor = n

    def scalar(self, rotation: Fraction) -> Cyc:
        return Cyc.root_of_unity(rotation, self.conductor)

    def basis_element(self, g: int) -> "TwistedGroupAlgebraElement":
        return TwistedGroupAlgebraElement(self, {g: Cyc.one(self.conductor)})

    def element(self, coeffs: dict[int, Cyc]) -> "TwistedGroupAlgebraElement":
        return TwistedGroupAlgebraElement(self, coeffs)


class TwistedGroupAlgebraElement:
    """Finite Cyc-linear combination of the basis elements T_g."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: TwistedGroupAlgebra, coeffs: dict[int, Cyc]):
        self.algebra = algebra
        self.coeffs = {g: c for g, c in coeffs.items() if c}

    def __add__(self, other: TwistedGroupAlgebraElement) -> TwistedGroupAlgebraElement:
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            s = out.get(g, Cyc.zero(self.algebra.conductor)) + c
            out[g] = s
        return TwistedGroupAlgebraElement(self.algebra, out)

    def __sub__(self, other):
        return self + other.__mul__(-1)

    def __mul__(self, other):
        if not isinstance(other, TwistedGroupAlgebraElement):
            return TwistedGroupAlgebraElement(
                self.algebra, {g: c * other for g, c in self.coeffs.items()})
        alg = self.algebra
        grp = alg.group
        out: dict[int, Cyc] = {}
        for g, cg in self.coeffs.items():
            for h, ch in other.coeffs.items():
                k = grp.mult[g][h]
                term = cg * ch * alg.scalar(alg.cocycle.table[g][h])
                out[k] = out[k] + term if k in out else term
        return TwistedGroupAlgebraElement(alg, out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedGroupAlgebraElement):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        zero = Cyc.zero(self.algebra.conductor)
        return all(self.coeffs.get(k, zero) == other.coeffs.get(k, zero) for k in keys)

    __hash__ = None

    def __repr__(self) -> str:
        parts = [f"({c})*T_{g}" for g, c in sorted(self.coeffs.items())]
        return " + ".join(parts) if parts else "0"


class TraceFunctional:
    """nu_C: sends T_g to 1 for g in the regular class C, else to 0."""

    def __init__(self, class_data: ConjugacyClassData) -> None:
        self.class_data = class_data
        self.members = frozenset(class_data.members)

    def __call__(self, elem: TwistedGroupAlgebraElement) -> Cyc:
        total = Cyc.zero(elem.algebra.conductor)
        for g, c in elem.coeffs.items():
            if g in self.members:
                total = total + c
        return total

    def __repr__(self) -> str:
        return f"TraceFunctional(class of {self.class_data.representative})"


def trace_basis(cocycle: Cocycle) -> list[TraceFunctional]:
    """One trace functional per natural-regular class (a basis of all traces)."""
    return [TraceFunctional(c) for c in cocycle.regular_classes()]
