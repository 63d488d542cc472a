"""Finite matrix groups over cyclotomic fields.

Closure is a deterministic BFS (queue seeded with the identity, multiplied
on the right by the generators in declaration order), deduplicated by the
canonical reduced form of every entry, so element indices and conjugacy
class ordering are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from .cyclotomic import Cyclotomic, root_of_unity
from .errors import (
    CapExceeded,
    InfiniteOrderSuspected,
    KTooSmall,
    NotInvertible,
)

__all__ = [
    "GroupElement",
    "ConjugacyClass",
    "FiniteMatrixGroup",
    "closure",
    "conjugacy_classes",
    "power_map",
    "commutator_subgroup",
    "central_scalars",
    "eigenvalue_multiplicities",
    "is_reflection",
    "contains_reflections",
    "contains_diagonal_torus",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 200_000


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class GroupElement:
    """Square matrix of cyclotomic values, entries at one shared conductor."""

    __slots__ = ("rows", "m", "degree", "_hash", "_nz", "_order")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        m = 1
        for r in rows:
            for x in r:
                if not isinstance(x, Cyclotomic):
                    raise TypeError("entries must be Cyclotomic")
                m = _lcm(m, x.m)
        self.m = m
        self.degree = n
        self.rows = tuple(
            tuple(x.embed(m) for x in r) for r in rows
        )
        self._hash = None
        self._nz = None
        self._order = None

    @staticmethod
    def identity(degree: int, m: int = 1) -> "GroupElement":
        one = Cyclotomic.one(m)
        zero = Cyclotomic.zero(m)
        return GroupElement(
            [[one if i == j else zero for j in range(degree)]
             for i in range(degree)]
        )

    @staticmethod
    def from_rational_rows(rows, m: int = 1) -> "GroupElement":
        return GroupElement(
            [[Cyclotomic.from_rational(Fraction(x), m) for x in r]
             for r in rows]
        )

    def _nonzeros(self):
        nz = self._nz
        if nz is None:
            nz = tuple(
                tuple((j, x) for j, x in enumerate(r) if not x.is_zero())
                for r in self.rows
            )
            self._nz = nz
        return nz

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(tuple(x for r in self.rows for x in r))
            self._hash = h
        return h

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if self.degree != other.degree:
            return False
        return all(
            a == b for ra, rb in zip(self.rows, other.rows)
            for a, b in zip(ra, rb)
        )

    def __repr__(self):
        return f"GroupElement({self.degree}x{self.degree}, conductor {self.m})"

    def sort_key(self):
        return tuple(x.sort_key() for r in self.rows for x in r)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if self.m != other.m:
            mm = _lcm(self.m, other.m)
            return self.conductor_at(mm) * other.conductor_at(mm)
        n = self.degree
        zero = Cyclotomic.zero(self.m)
        bnz = other._nonzeros()
        out = []
        for i in range(n):
            acc = [None] * n
            for k, a in self._nonzeros()[i]:
                for j, b in bnz[k]:
                    p = a * b
                    acc[j] = p if acc[j] is None else acc[j] + p
            out.append([zero if x is None else x for x in acc])
        return GroupElement(out)

    def conductor_at(self, m2: int) -> "GroupElement":
        if m2 == self.m:
            return self
        return GroupElement([[x.embed(m2) for x in r] for r in self.rows])

    def trace(self) -> Cyclotomic:
        t = self.rows[0][0]
        for i in range(1, self.degree):
            t = t + self.rows[i][i]
        return t

    def is_identity(self) -> bool:
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if i == j:
                    if x != 1:
                        return False
                elif not x.is_zero():
                    return False
        return True

    def is_scalar(self) -> bool:
        d = self.rows[0][0]
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if i == j:
                    if x != d:
                        return False
                elif not x.is_zero():
                    return False
        return True

    def det(self) -> Cyclotomic:
        n = self.degree
        work = [list(r) for r in self.rows]
        det = Cyclotomic.one(self.m)
        for col in range(n):
            piv = next(
                (r for r in range(col, n) if not work[r][col].is_zero()), None
            )
            if piv is None:
                return Cyclotomic.zero(self.m)
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                det = -det
            pval = work[col][col]
            det = det * pval
            inv = pval.inverse()
            work[col] = [x * inv for x in work[col]]
            for r in range(col + 1, n):
                fac = work[r][col]
                if not fac.is_zero():
                    work[r] = [x - fac * y
                               for x, y in zip(work[r], work[col])]
        return det

    def order(self, cap: int = DEFAULT_CAP) -> int:
        """Multiplicative order; InfiniteOrderSuspected past the cap."""
        if self._order is not None:
            return self._order
        x = self
        for k in range(1, cap + 1):
            if x.is_identity():
                self._order = k
                return k
            x = x * self
        raise InfiniteOrderSuspected(
            f"element powers exceeded cap {cap} without cycling"
        )

    def inverse(self, cap: int = DEFAULT_CAP) -> "GroupElement":
        """g^(order-1); exact, no numerical inversion."""
        r = self.order(cap)
        return self ** (r - 1)

    def __pow__(self, k: int) -> "GroupElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = GroupElement.identity(self.degree, self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out


@dataclass(frozen=True)
class ConjugacyClass:
    representative: GroupElement
    rep_index: int
    size: int
    element_order: int
    member_indices: frozenset[int]


class FiniteMatrixGroup:
    """Fully enumerated finite subgroup of GL_n over a cyclotomic field."""

    def __init__(self, degree, conductor, generators, elements, index,
                 inverse_index, classes, class_of, exponent):
        self.degree = degree
        self.conductor = conductor
        self.generators = tuple(generators)
        self.elements = tuple(elements)
        self.index = index
        self.inverse_index = tuple(inverse_index)
        self.classes = tuple(classes)
        self.class_of = tuple(class_of)
        self.exponent = exponent
        self._power_cycles: dict[int, tuple[int, ...]] = {}
        self._commutator = None
        self._linear_characters = None
        self._table = None
        self._reflections = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    @property
    def class_element_orders(self) -> tuple[int, ...]:
        return tuple(c.element_order for c in self.classes)

    @property
    def identity_class(self) -> int:
        return self.class_of[0]

    def __contains__(self, g: GroupElement) -> bool:
        return g in self.index

    def __repr__(self):
        return (f"FiniteMatrixGroup(degree={self.degree}, order={self.order},"
                f" classes={self.num_classes})")

    def power_cycle(self, i: int) -> tuple[int, ...]:
        """Class index of rep_i^k for k = 0 .. order(rep_i)-1."""
        cyc = self._power_cycles.get(i)
        if cyc is None:
            cls = self.classes[i]
            g = cls.representative
            out = [self.identity_class]
            x = g
            for _ in range(cls.element_order - 1):
                out.append(self.class_of[self.index[x]])
                x = x * g
            cyc = tuple(out)
            self._power_cycles[i] = cyc
        return cyc

    def power_class(self, i: int, k: int) -> int:
        cyc = self.power_cycle(i)
        return cyc[k % len(cyc)]


def closure(generators, cap: int | None = None) -> FiniteMatrixGroup:
    """Breadth-first closure of the generators, with conjugacy structure.

    Raises NotInvertible for a singular generator, InfiniteOrderSuspected if
    a generator's powers do not cycle within the cap, and CapExceeded when
    the group order passes the cap.
    """
    cap = DEFAULT_CAP if cap is None else cap
    generators = list(generators)
    if generators:
        degree = generators[0].degree
        if any(g.degree != degree for g in generators):
            raise ValueError("generators have mixed degrees")
        conductor = reduce(_lcm, (g.m for g in generators), 1)
        generators = [g.conductor_at(conductor) for g in generators]
        for g in generators:
            if g.det().is_zero():
                raise NotInvertible("generator is singular")
            g.order(cap)
    else:
        raise ValueError("need at least one generator (use the identity)")

    ident = GroupElement.identity(degree, conductor)
    elements = [ident]
    index = {ident: 0}
    parent: list[tuple[int, int]] = [(-1, -1)]  # (previous element, generator)
    head = 0
    while head < len(elements):
        v = elements[head]
        for gi, g in enumerate(generators):
            w = v * g
            if w not in index:
                if len(elements) >= cap:
                    raise CapExceeded(
                        f"group order exceeds cap {cap}"
                    )
                index[w] = len(elements)
                elements.append(w)
                parent.append((head, gi))
        head += 1

    gen_inverses = [g.inverse(cap) for g in generators]
    inverse_index = [0] * len(elements)
    for i in range(1, len(elements)):
        prev, gi = parent[i]
        # (v*g)^-1 = g^-1 * v^-1
        w = gen_inverses[gi] * elements[inverse_index[prev]]
        inverse_index[i] = index[w]

    # conjugation orbits under the generators
    n = len(elements)
    class_of_raw = [-1] * n
    orbits: list[list[int]] = []
    conj_pairs = list(zip(generators, gen_inverses))
    for i in range(n):
        if class_of_raw[i] >= 0:
            continue
        cid = len(orbits)
        orbit = [i]
        class_of_raw[i] = cid
        queue = [i]
        while queue:
            j = queue.pop()
            ej = elements[j]
            for g, ginv in conj_pairs:
                t = index[g * ej * ginv]
                if class_of_raw[t] < 0:
                    class_of_raw[t] = cid
                    orbit.append(t)
                    queue.append(t)
        orbits.append(orbit)

    raw_classes = []
    for orbit in orbits:
        rep_idx = min(orbit)
        rep = elements[rep_idx]
        raw_classes.append(
            ConjugacyClass(
                representative=rep,
                rep_index=rep_idx,
                size=len(orbit),
                element_order=rep.order(cap),
                member_indices=frozenset(orbit),
            )
        )
    order_key = [
        (c.element_order, c.size, c.representative.sort_key())
        for c in raw_classes
    ]
    perm = sorted(range(len(raw_classes)), key=lambda i: order_key[i])
    classes = [raw_classes[i] for i in perm]
    relabel = {old: new for new, old in enumerate(perm)}
    class_of = [relabel[c] for c in class_of_raw]
    exponent = reduce(_lcm, (c.element_order for c in classes), 1)

    return FiniteMatrixGroup(
        degree=degree,
        conductor=conductor,
        generators=generators,
        elements=elements,
        index=index,
        inverse_index=inverse_index,
        classes=classes,
        class_of=class_of,
        exponent=exponent,
    )


def conjugacy_classes(G: FiniteMatrixGroup) -> tuple[ConjugacyClass, ...]:
    return G.classes


def power_map(G: FiniteMatrixGroup, k: int) -> tuple[int, ...]:
    """Class index of g^k per class; well defined on classes."""
    return tuple(G.power_class(i, k) for i in range(G.num_classes))


def _mulclose(gens, cap) -> tuple[list[GroupElement], dict]:
    if not gens:
        raise ValueError("empty generating set")
    conductor = reduce(_lcm, (g.m for g in gens), 1)
    gens = [g.conductor_at(conductor) for g in gens]
    ident = GroupElement.identity(gens[0].degree, conductor)
    elements = [ident]
    index = {ident: 0}
    head = 0
    while head < len(elements):
        v = elements[head]
        for g in gens:
            w = v * g
            if w not in index:
                if len(elements) >= cap:
                    raise CapExceeded(f"subgroup order exceeds cap {cap}")
                index[w] = len(elements)
                elements.append(w)
        head += 1
    return elements, index


def commutator_subgroup(G: FiniteMatrixGroup,
                        cap: int | None = None) -> FiniteMatrixGroup:
    """Normal closure of the generator commutators, as its own group."""
    if G._commutator is not None:
        return G._commutator
    cap = DEFAULT_CAP if cap is None else cap
    ident = GroupElement.identity(G.degree, G.conductor)
    gens: list[GroupElement] = []
    seen = {ident}
    gen_inv = [g.inverse(cap) for g in G.generators]
    for i, a in enumerate(G.generators):
        for j, b in enumerate(G.generators):
            c = a * b * gen_inv[i] * gen_inv[j]
            if c not in seen:
                seen.add(c)
                gens.append(c)
    if not gens:
        K = closure([ident], cap)
        G._commutator = K
        return K
    while True:
        elements, index = _mulclose(gens, cap)
        new = []
        for g, ginv in zip(G.generators, gen_inv):
            for s in gens:
                t = g * s * ginv
                if t not in index:
                    new.append(t)
        if not new:
            break
        gens.extend(new)
    K = closure(gens, cap)
    G._commutator = K
    return K


def central_scalars(G: FiniteMatrixGroup) -> list[Cyclotomic]:
    """All lambda with lambda*I in G, sorted canonically."""
    out = [e.rows[0][0] for e in G.elements if e.is_scalar()]
    out.sort(key=lambda x: x.sort_key())
    return out


def eigenvalue_multiplicities(g: GroupElement) -> dict[Cyclotomic, int]:
    """Multiplicity of each eigenvalue zeta_r^j of a finite-order g,
    computed exactly from traces of powers."""
    r = g.order()
    traces = []
    x = GroupElement.identity(g.degree, g.m)
    for _ in range(r):
        traces.append(x.trace())
        x = x * g
    out: dict[Cyclotomic, int] = {}
    total = 0
    for j in range(r):
        acc = Cyclotomic.zero(max(g.m, 1))
        for k in range(r):
            acc = acc + traces[k] * root_of_unity(r, (-j * k) % r)
        val = acc / r
        if not val.is_zero():
            mult = val.as_fraction()
            assert mult.denominator == 1 and mult > 0, "non-integral multiplicity"
            out[root_of_unity(r, j)] = int(mult)
            total += int(mult)
    assert total == g.degree, "eigenvalue multiplicities do not sum to degree"
    return out


def is_reflection(g: GroupElement) -> bool:
    """Non-scalar with exactly two distinct eigenvalues, one of
    multiplicity degree-1 (so its projective image fixes a hyperplane).

    In degree 2 that condition holds for every non-scalar semisimple
    element, so there the hyperplane is required to be genuinely fixed:
    eigenvalues {1, mu} with mu != 1."""
    if g.is_scalar():
        return False
    mults = eigenvalue_multiplicities(g)
    if len(mults) != 2:
        return False
    if g.degree == 2:
        return any(v == 1 for v in mults)
    return max(mults.values()) == g.degree - 1


def contains_reflections(
    G: FiniteMatrixGroup,
) -> tuple[bool, GroupElement | None]:
    """First reflection witness in canonical class order, if any."""
    if G._reflections is None:
        found: tuple[bool, GroupElement | None] = (False, None)
        for cls in G.classes:
            if is_reflection(cls.representative):
                found = (True, cls.representative)
                break
        G._reflections = found
    return G._reflections


def diagonal_torus_generators(degree: int, k: int) -> list[GroupElement]:
    """The n = degree-1 diagonal generators with zeta_k^-1 in slot 0 and
    zeta_k in slot i."""
    zeta = root_of_unity(k, 1)
    zeta_inv = root_of_unity(k, -1)
    one = Cyclotomic.one(k)
    zero = Cyclotomic.zero(k)
    gens = []
    for i in range(1, degree):
        rows = [[zero] * degree for _ in range(degree)]
        for j in range(degree):
            rows[j][j] = one
        rows[0][0] = zeta_inv
        rows[i][i] = zeta
        gens.append(GroupElement(rows))
    return gens


def contains_diagonal_torus(G: FiniteMatrixGroup, k: int) -> bool:
    """Literal containment of the k-torsion diagonal rank-n subgroup
    in the ambient coordinates."""
    if k < G.degree:
        raise KTooSmall(f"k = {k} < degree {G.degree}")
    return all(g in G.index for g in diagonal_torus_generators(G.degree, k))
