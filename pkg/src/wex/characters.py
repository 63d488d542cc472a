"""Exact character computations for finite matrix groups.

Everything downstream of a group or an ingested character table runs
through the same class-function API: natural/dual/symmetric-power
characters, inner products, semi-invariant counts (two independent paths:
commutator-average and linear-character sums), full tables via the
Dixon-Schneider method over F_p with exact cyclotomic lifting, constituent
analysis and isotypic projections.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, gcd, isqrt

from .cyclotomic import Cyclotomic, root_of_unity, _factorize
from .errors import (
    CapExceeded,
    GroupMismatch,
    MissingLinearFlags,
    MissingPowerMap,
    NonIntegralMultiplicity,
    OrthogonalityFailure,
)
from .groups import FiniteMatrixGroup, GroupElement, commutator_subgroup

__all__ = [
    "ClassFunction",
    "CharacterTable",
    "SemiInvariantProfile",
    "natural_character",
    "char_inner",
    "dual_character",
    "sym_power_character",
    "sym_power_matrix",
    "monomial_basis",
    "semiinvariant_count",
    "semiinvariant_profile",
    "linear_characters",
    "central_obstruction",
    "dixon_table",
    "constituent_multiplicities",
    "subrep_dimension_reachable",
    "subrep_dimension_realization",
    "isotypic_projector",
    "isotypic_basis",
]

DIXON_CLASS_CAP = 512
LINEAR_QUOTIENT_CAP = 65_536


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# class functions

@dataclass(frozen=True)
class ClassFunction:
    source: object
    values: tuple[Cyclotomic, ...]

    @property
    def dim(self) -> int:
        v = self.values[_identity_class(self.source)]
        return v.as_integer()

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.source, tuple(v.conjugate()
                                                for v in self.values))

    def inner(self, other: "ClassFunction") -> Fraction:
        return char_inner(self, other)


def _identity_class(source) -> int:
    return source.identity_class


def _compatible(a: ClassFunction, b: ClassFunction) -> bool:
    sa, sb = a.source, b.source
    if sa is sb:
        return True
    if getattr(sa, "source_group", None) is sb:
        return True
    if getattr(sb, "source_group", None) is sa:
        return True
    return False


def natural_character(G: FiniteMatrixGroup) -> ClassFunction:
    """Traces of the class representatives."""
    return ClassFunction(G, tuple(c.representative.trace() for c in G.classes))


def char_inner(chi: ClassFunction, psi: ClassFunction) -> Fraction:
    """(1/|G|) * sum over classes of size * chi * conj(psi); exact."""
    if not _compatible(chi, psi):
        raise GroupMismatch("class functions live over different class data")
    src = chi.source
    sizes = src.class_sizes
    acc = Cyclotomic.zero(1)
    for s, a, b in zip(sizes, chi.values, psi.values):
        acc = acc + a * b.conjugate() * s
    val = acc / src.order
    return val.as_fraction()


def dual_character(chi: ClassFunction) -> ClassFunction:
    """Character of the dual representation (complex conjugate values)."""
    return chi.conjugate()


def sym_power_character(chi: ClassFunction, d: int) -> ClassFunction:
    """Character of Sym^d via the Newton-type recursion
    chi_d(g) = (1/d) * sum_{k=1..d} chi(g^k) chi_{d-k}(g)."""
    src = chi.source
    r = len(chi.values)
    if d == 0:
        one = Cyclotomic.one(1)
        return ClassFunction(src, tuple(one for _ in range(r)))
    rows = [[Cyclotomic.one(1)] * r]
    for t in range(1, d + 1):
        row = []
        for i in range(r):
            acc = Cyclotomic.zero(1)
            for k in range(1, t + 1):
                acc = acc + chi.values[src.power_class(i, k)] * rows[t - k][i]
            row.append(acc / t)
        rows.append(row)
    return ClassFunction(src, tuple(rows[d]))


# ---------------------------------------------------------------------------
# symmetric-power matrices

def monomial_basis(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree, descending lexicographic order
    in x0 > x1 > ... (x0^d first)."""
    out: list[tuple[int, ...]] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for a in range(remaining, -1, -1):
            rec(prefix + (a,), remaining - a, slots - 1)

    rec((), degree, nvars)
    return out


def sym_power_matrix(g: GroupElement, d: int,
                     ginv: GroupElement | None = None) -> GroupElement:
    """Matrix of the induced action on degree-d monomials, lex ordered.

    A polynomial transforms by (g.F)(x) = F(g^-1 x), so semi-invariants are
    eigenvectors of these matrices; at d = 1 this is the inverse-transpose.
    """
    n = g.degree
    if ginv is None:
        ginv = g.inverse()
    B = ginv.rows
    basis = monomial_basis(n, d)
    pos = {mono: i for i, mono in enumerate(basis)}
    m = ginv.m
    zero = Cyclotomic.zero(m)
    cols: list[list[Cyclotomic]] = []
    nz_rows = [[(j, x) for j, x in enumerate(B[i]) if not x.is_zero()]
               for i in range(n)]
    for alpha in basis:
        poly = {(0,) * n: Cyclotomic.one(m)}
        for i, a in enumerate(alpha):
            for _ in range(a):
                nxt: dict[tuple[int, ...], Cyclotomic] = {}
                for mono, c in poly.items():
                    for j, b in nz_rows[i]:
                        key = mono[:j] + (mono[j] + 1,) + mono[j + 1:]
                        p = c * b
                        got = nxt.get(key)
                        nxt[key] = p if got is None else got + p
                poly = nxt
        col = [zero] * len(basis)
        for mono, c in poly.items():
            col[pos[mono]] = c
        cols.append(col)
    rows = [[cols[c][r] for c in range(len(basis))]
            for r in range(len(basis))]
    return GroupElement(rows)


# ---------------------------------------------------------------------------
# character tables

class CharacterTable:
    """Class data plus exact irreducible characters.

    Built either from an enumerated group (dixon_table) or from an ingested
    document (specio.table_from_spec).  Power maps from documents cover
    k <= 6 only; asking beyond that without a backing group raises
    MissingPowerMap.
    """

    def __init__(self, *, order, class_sizes, class_element_orders,
                 irreducible_values, natural_values, power_maps=None,
                 source_group=None, metadata=None):
        self.order = order
        self.class_sizes = tuple(class_sizes)
        self.class_element_orders = tuple(class_element_orders)
        if self.class_element_orders[0] != 1:
            raise ValueError("class 0 must be the identity class")
        self.source_group = source_group
        self.metadata = dict(metadata or {})
        self.exponent = reduce(_lcm, self.class_element_orders, 1)
        self._power_maps = {int(k): tuple(v) for k, v in
                            (power_maps or {}).items()}
        self.irreducibles = tuple(
            ClassFunction(self, tuple(vals)) for vals in irreducible_values
        )
        self.linear_flags = tuple(chi.dim == 1 for chi in self.irreducibles)
        self.natural = ClassFunction(self, tuple(natural_values))

    @property
    def num_classes(self) -> int:
        return len(self.class_sizes)

    @property
    def identity_class(self) -> int:
        return 0

    def power_class(self, i: int, k: int) -> int:
        r = self.class_element_orders[i]
        k %= r
        if k == 0:
            return 0
        if k == 1:
            return i
        if self.source_group is not None:
            return self.source_group.power_class(i, k)
        got = self._power_maps.get(k)
        if got is None:
            raise MissingPowerMap(
                f"table carries no power map for k = {k}"
            )
        return got[i]

    def linear_characters(self) -> list[ClassFunction]:
        return [chi for chi, f in zip(self.irreducibles, self.linear_flags)
                if f]

    def dims(self) -> tuple[int, ...]:
        return tuple(chi.dim for chi in self.irreducibles)

    def __repr__(self):
        return (f"CharacterTable(order={self.order},"
                f" classes={self.num_classes}, dims={self.dims()})")


def _validate_orthogonality(sizes, values, order) -> None:
    r = len(sizes)
    for i in range(r):
        for j in range(i, r):
            acc = Cyclotomic.zero(1)
            for c in range(r):
                acc = acc + values[i][c] * values[j][c].conjugate() * sizes[c]
            want = order if i == j else 0
            if acc != want:
                raise OrthogonalityFailure(
                    f"row orthogonality fails at ({i}, {j})"
                )
    for c in range(r):
        for c2 in range(c, r):
            acc = Cyclotomic.zero(1)
            for i in range(r):
                acc = acc + values[i][c] * values[i][c2].conjugate()
            want = Fraction(order, sizes[c]) if c == c2 else 0
            if acc != want:
                raise OrthogonalityFailure(
                    f"column orthogonality fails at ({c}, {c2})"
                )


# ---------------------------------------------------------------------------
# mod-p helpers for the Dixon engine

def _isprime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primitive_root(p: int) -> int:
    fac = _factorize(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    raise ValueError(f"no primitive root mod {p}")


def _sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks; a must be a quadratic residue mod odd prime p."""
    a %= p
    if a == 0:
        return 0
    assert pow(a, (p - 1) // 2, p) == 1, "not a quadratic residue"
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = next(z for z in range(2, p) if pow(z, (p - 1) // 2, p) == p - 1)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _rref_mod_p(rows, p):
    rows = [list(r) for r in rows]
    cols = len(rows[0]) if rows else 0
    pivots = []
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(x - f * y) % p
                           for x, y in zip(rows[r], rows[rank])]
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _nullspace_mod_p(mat, p):
    """Basis rows of {v : mat @ v = 0} over F_p."""
    n = len(mat[0])
    rref, pivots = _rref_mod_p(mat, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-rref[r][f]) % p
        basis.append(v)
    return basis


def _charpoly_mod_p(A, p):
    """Characteristic polynomial det(xI - A) mod p, low-to-high, via
    Hessenberg reduction."""
    n = len(A)
    H = [[x % p for x in row] for row in A]
    for col in range(n - 2):
        piv = next((r for r in range(col + 1, n) if H[r][col]), None)
        if piv is None:
            continue
        if piv != col + 1:
            H[piv], H[col + 1] = H[col + 1], H[piv]
            for r in range(n):
                H[r][piv], H[r][col + 1] = H[r][col + 1], H[r][piv]
        inv = pow(H[col + 1][col], p - 2, p)
        for r in range(col + 2, n):
            f = H[r][col] * inv % p
            if f:
                Hc = H[col + 1]
                H[r] = [(x - f * y) % p for x, y in zip(H[r], Hc)]
                for i in range(n):
                    H[i][col + 1] = (H[i][col + 1] + f * H[i][r]) % p
    polys = [[1]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        a = H[k - 1][k - 1]
        newp = [0] + prev
        newp = [(x - a * y) % p
                for x, y in zip(newp, prev + [0])]
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = prod * H[i][i - 1] % p
            f = H[i - 1][k - 1] * prod % p
            if f:
                pi = polys[i - 1]
                newp = [(x - f * (pi[t] if t < len(pi) else 0)) % p
                        for t, x in enumerate(newp)]
        polys.append(newp)
    return polys[n]


def _poly_roots_mod_p(coeffs, p):
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


# ---------------------------------------------------------------------------
# Dixon-Schneider engine

def _dixon_prime(order: int, exponent: int, num_classes: int) -> int:
    """Smallest prime p = 1 mod exponent with p^2 > 4*order and p > classes."""
    p = exponent + 1
    while True:
        if p > num_classes and p * p > 4 * order and _isprime(p):
            return p
        p += exponent


def dixon_engine(order, sizes, orders, cycles, cmat_fn):
    """Irreducible character values from class structure.

    cycles[i][k] is the class of rep_i^k; cmat_fn(i) returns the class
    multiplication matrix M_i with M_i[j][k] = #{x in C_i : x^-1 z_k in C_j}.
    Rows are returned unsorted, values at the element-order conductors.
    """
    r = len(sizes)
    assert orders[0] == 1, "identity class must come first"
    e = reduce(_lcm, orders, 1)
    p = _dixon_prime(order, e, r)

    ident = [0] * r
    start = []
    for i in range(r):
        row = [0] * r
        row[i] = 1
        start.append(row)
    spaces = [(start, list(range(r)))]

    for i in range(r):
        if len(spaces) == r:
            break
        M = cmat_fn(i)
        MT = [[M[j][k] % p for j in range(r)] for k in range(r)]
        new_spaces = []
        for S, piv in spaces:
            dim = len(S)
            if dim == 1:
                new_spaces.append((S, piv))
                continue
            T = [[sum(S[a][k] * MT[k][j] for k in range(r)) % p
                  for j in range(r)] for a in range(dim)]
            C = [[T[a][q] for q in piv] for a in range(dim)]
            charpoly = _charpoly_mod_p(C, p)
            covered = 0
            for lam in _poly_roots_mod_p(charpoly, p):
                BT = [[(C[a][b] - (lam if a == b else 0)) % p
                       for a in range(dim)] for b in range(dim)]
                block = []
                for x in _nullspace_mod_p(BT, p):
                    block.append(
                        [sum(x[a] * S[a][j] for a in range(dim)) % p
                         for j in range(r)]
                    )
                if block:
                    covered += len(block)
                    new_spaces.append(_rref_mod_p(block, p))
            assert covered == dim, "class algebra failed to split mod p"
        spaces = new_spaces

    assert len(spaces) == r, "simultaneous splitting incomplete"

    z = pow(_primitive_root(p), (p - 1) // e, p)
    inv_class = [cycles[j][(orders[j] - 1) % orders[j]] for j in range(r)]
    size_inv = [pow(s, p - 2, p) for s in sizes]

    out_rows = []
    for S, _piv in spaces:
        v = S[0]
        v0 = v[0]
        assert v0 != 0, "identity coordinate vanished mod p"
        inv0 = pow(v0, p - 2, p)
        u = [x * inv0 % p for x in v]
        dot = sum(u[j] * u[inv_class[j]] * size_inv[j] for j in range(r)) % p
        d2 = order * pow(dot, p - 2, p) % p
        d = _sqrt_mod(d2, p)
        if d > p // 2:
            d = p - d
        vals_p = [d * u[j] * size_inv[j] % p for j in range(r)]
        row = []
        for j in range(r):
            rj = orders[j]
            zj = pow(z, e // rj, p)
            zj_inv = pow(zj, p - 2, p)
            w = [vals_p[cycles[j][k]] for k in range(rj)]
            rj_inv = pow(rj, p - 2, p)
            val = Cyclotomic.zero(1)
            msum = 0
            for t in range(rj):
                acc = 0
                zpow = 1
                ztk = pow(zj_inv, t, p)
                for k in range(rj):
                    acc = (acc + w[k] * zpow) % p
                    zpow = zpow * ztk % p
                mt = acc * rj_inv % p
                msum += mt
                if mt:
                    val = val + root_of_unity(rj, t) * mt
            assert msum == d, "eigenvalue multiplicities do not sum to degree"
            row.append(val)
        out_rows.append(row)
    return out_rows


def dixon_table(G: FiniteMatrixGroup) -> CharacterTable:
    """Full irreducible character table of an enumerated group."""
    if G._table is not None:
        return G._table
    r = G.num_classes
    if r > DIXON_CLASS_CAP:
        raise CapExceeded(
            f"{r} classes exceeds the Dixon cap {DIXON_CLASS_CAP};"
            " ingest a character table instead"
        )
    sizes = list(G.class_sizes)
    orders = list(G.class_element_orders)
    cycles = [G.power_cycle(i) for i in range(r)]
    reps = [c.rep_index for c in G.classes]
    inv_idx = G.inverse_index

    def cmat(i):
        M = [[0] * r for _ in range(r)]
        members = sorted(G.classes[i].member_indices)
        for k, zk in enumerate(reps):
            zel = G.elements[zk]
            for x in members:
                y = G.index[G.elements[inv_idx[x]] * zel]
                M[G.class_of[y]][k] += 1
        return M

    rows = dixon_engine(G.order, sizes, orders, cycles, cmat)
    _validate_orthogonality(sizes, rows, G.order)

    def row_key(row):
        dim = row[0].as_integer()
        return (dim, tuple(v.sort_key() for v in row))

    trivial = [row for row in rows if all(v == 1 for v in row)]
    rest = sorted((row for row in rows if not all(v == 1 for v in row)),
                  key=row_key)
    ordered = trivial + rest
    natural_values = [c.representative.trace() for c in G.classes]
    table = CharacterTable(
        order=G.order,
        class_sizes=sizes,
        class_element_orders=orders,
        irreducible_values=ordered,
        natural_values=natural_values,
        source_group=G,
    )
    G._table = table
    return table


# ---------------------------------------------------------------------------
# semi-invariants

@dataclass(frozen=True)
class SemiInvariantProfile:
    counts: dict[int, int]

    def __getitem__(self, d: int) -> int:
        return self.counts[d]


def _natural_of(source) -> ClassFunction:
    if isinstance(source, FiniteMatrixGroup):
        return natural_character(source)
    if isinstance(source, CharacterTable):
        return source.natural
    raise TypeError(f"unsupported source {type(source).__name__}")


def semiinvariant_count(source, d: int) -> int:
    """Number of independent degree-d semi-invariants: the multiplicity of
    one-dimensional constituents in Sym^d of the dual natural representation.

    Group path: dimension of the commutator-fixed subspace, by averaging.
    Table path: sum of inner products against the linear characters.
    """
    sym = sym_power_character(dual_character(_natural_of(source)), d)
    if isinstance(source, FiniteMatrixGroup):
        K = commutator_subgroup(source)
        acc = Cyclotomic.zero(1)
        for i, cls in enumerate(source.classes):
            if cls.representative in K.index:
                acc = acc + sym.values[i] * cls.size
        val = (acc / K.order).as_fraction()
        assert val.denominator == 1 and val >= 0
        return int(val)
    if not any(source.linear_flags):
        raise MissingLinearFlags("table carries no linear characters")
    total = 0
    for lam in source.linear_characters():
        m = char_inner(sym, lam)
        assert m.denominator == 1 and m >= 0
        total += int(m)
    return total


def semiinvariant_profile(source, degrees) -> SemiInvariantProfile:
    return SemiInvariantProfile(
        {d: semiinvariant_count(source, d) for d in degrees}
    )


def linear_characters(G: FiniteMatrixGroup) -> list[ClassFunction]:
    """All degree-1 characters, as characters of G/[G,G] pulled back."""
    if G._linear_characters is not None:
        return G._linear_characters
    K = commutator_subgroup(G)
    q = G.order // K.order
    if q > LINEAR_QUOTIENT_CAP:
        raise CapExceeded(
            f"abelianization of order {q} exceeds cap {LINEAR_QUOTIENT_CAP}"
        )
    coset_of, labels, relations = _coset_structure(G, K)
    ngens = len(G.generators)
    sols = _solve_characters_mod(relations, ngens, q)
    assert len(sols) == q, "character count != index of commutator subgroup"
    chars = []
    for c in sols:
        vals = []
        for cls in G.classes:
            v = labels[coset_of[cls.rep_index]]
            expo = sum(ci * vi for ci, vi in zip(c, v)) % q
            vals.append(root_of_unity(q, expo) if q > 1
                        else Cyclotomic.one(1))
        chars.append(ClassFunction(G, tuple(vals)))
    trivial = [ch for ch in chars if all(v == 1 for v in ch.values)]
    rest = sorted((ch for ch in chars if not all(v == 1 for v in ch.values)),
                  key=lambda ch: tuple(v.sort_key() for v in ch.values))
    out = trivial + rest
    G._linear_characters = out
    return out


def _coset_structure(G, K):
    kin = sorted(G.index[e] for e in K.elements)
    n = G.order
    coset_of = [-1] * n
    for t in kin:
        coset_of[t] = 0
    cosets = [kin]
    labels = {0: (0,) * len(G.generators)}
    relations = []
    head = 0
    while head < len(cosets):
        cid = head
        v = labels[cid]
        rep = cosets[cid][0]
        for gi, g in enumerate(G.generators):
            t = G.index[G.elements[rep] * g]
            w = v[:gi] + (v[gi] + 1,) + v[gi + 1:]
            tc = coset_of[t]
            if tc < 0:
                newset = sorted(G.index[G.elements[x] * g]
                                for x in cosets[cid])
                ncid = len(cosets)
                cosets.append(newset)
                for s in newset:
                    coset_of[s] = ncid
                labels[ncid] = w
            else:
                rel = tuple(a - b for a, b in zip(w, labels[tc]))
                if any(rel):
                    relations.append(rel)
        head += 1
    return coset_of, labels, relations


def _solve_characters_mod(relations, ngens, modulus):
    """All c in (Z/modulus)^ngens with <c, rel> = 0 mod modulus for every
    relation, via a Smith-style diagonalization tracking the right
    transform."""
    if modulus == 1:
        return [(0,) * ngens]
    if not relations:
        raise AssertionError("finite quotient must produce relations")
    A = [list(r) for r in relations]
    k, m = len(A), ngens
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def col_op(j1, j2, f):
        for row in A:
            row[j2] -= f * row[j1]
        for row in V:
            row[j2] -= f * row[j1]

    def col_swap(j1, j2):
        for row in A:
            row[j1], row[j2] = row[j2], row[j1]
        for row in V:
            row[j1], row[j2] = row[j2], row[j1]

    t = 0
    while t < min(k, m):
        piv = None
        for i in range(t, k):
            for j in range(t, m):
                if A[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        A[t], A[i0] = A[i0], A[t]
        if j0 != t:
            col_swap(t, j0)
        while True:
            # clear column t below the pivot by row ops
            for i in range(k):
                if i != t and A[i][t]:
                    f = A[i][t] // A[t][t]
                    A[i] = [x - f * y for x, y in zip(A[i], A[t])]
            if any(A[i][t] for i in range(k) if i != t):
                # remainders persist: swap a smaller entry into the pivot
                i0 = min((i for i in range(k) if A[i][t]),
                         key=lambda i: abs(A[i][t]))
                A[t], A[i0] = A[i0], A[t]
                continue
            # clear row t to the right of the pivot by column ops
            for j in range(m):
                if j != t and A[t][j]:
                    f = A[t][j] // A[t][t]
                    col_op(t, j, f)
            if any(A[t][j] for j in range(m) if j != t):
                j0 = min((j for j in range(m) if j != t and A[t][j]),
                         key=lambda j: abs(A[t][j]))
                col_swap(t, j0)
                continue
            break
        t += 1

    diag = [A[i][i] if i < k else 0 for i in range(m)]
    choice_sets = []
    for d in diag:
        g = gcd(d, modulus)
        if g == 0:
            g = modulus  # d = 0 mod anything: free coordinate
        step = modulus // g
        choice_sets.append(range(0, modulus, step))
    total = 1
    for cs in choice_sets:
        total *= len(cs)
    if total > LINEAR_QUOTIENT_CAP:
        raise CapExceeded("linear character solution space too large")
    sols = []

    def rec(idx, y):
        if idx == len(choice_sets):
            c = tuple(sum(V[i][j] * y[j] for j in range(m)) % modulus
                      for i in range(m))
            sols.append(c)
            return
        for val in choice_sets[idx]:
            rec(idx + 1, y + [val])

    rec(0, [])
    return sorted(set(sols))


def central_obstruction(source, d: int) -> bool:
    """True when some scalar zeta*I in the acting group admits no linear
    character with value zeta^-d; then s_d = 0 with no Sym^d computation."""
    nat = _natural_of(source)
    dim = nat.dim
    if isinstance(source, FiniteMatrixGroup):
        lams = linear_characters(source)
    else:
        lams = source.linear_characters()
        if not lams:
            raise MissingLinearFlags("table carries no linear characters")
    r = len(nat.values)
    for i in range(r):
        v = nat.values[i]
        if v * v.conjugate() == dim * dim:
            omega = v / dim
            target = omega ** (-d)
            if all(lam.values[i] != target for lam in lams):
                return True
    return False


# ---------------------------------------------------------------------------
# constituents and isotypic pieces

def constituent_multiplicities(chi: ClassFunction,
                               table: CharacterTable) -> list[tuple[int, int]]:
    """Nonzero multiplicities <chi, chi_i> against the table's irreducibles;
    the decomposition is verified to reconstruct chi exactly."""
    out = []
    for i, irr in enumerate(table.irreducibles):
        m = char_inner(chi, irr)
        if m.denominator != 1 or m < 0:
            raise NonIntegralMultiplicity(
                f"<chi, irr[{i}]> = {m} is not a non-negative integer"
            )
        if m:
            out.append((i, int(m)))
    r = len(chi.values)
    for c in range(r):
        acc = Cyclotomic.zero(1)
        for i, m in out:
            acc = acc + table.irreducibles[i].values[c] * m
        if acc != chi.values[c]:
            raise NonIntegralMultiplicity(
                "constituents do not reconstruct the character"
                " (not a true character, or table mismatch)"
            )
    return out


def subrep_dimension_realization(constituents, t: int):
    """Counts realizing t as a bounded sum of constituent dimensions, or
    None. constituents: sequence of (dim, mult)."""
    if t == 0:
        return [0] * len(constituents)
    reach: list[list[int] | None] = [None] * (t + 1)
    reach[0] = [0] * len(constituents)
    for idx, (dim, mult) in enumerate(constituents):
        for s in range(t, -1, -1):
            if reach[s] is None:
                continue
            if reach[s][idx]:
                continue
            for c in range(1, mult + 1):
                tot = s + c * dim
                if tot > t:
                    break
                if reach[tot] is None:
                    counts = list(reach[s])
                    counts[idx] = c
                    reach[tot] = counts
    return reach[t]


def subrep_dimension_reachable(constituents, t: int) -> bool:
    """True iff t = sum of chosen constituent dimensions with choices
    bounded by multiplicities."""
    return subrep_dimension_realization(constituents, t) is not None


def _rref_cyclo(rows):
    """Reduced row echelon form over the cyclotomic field; returns
    (rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows))
                    if not rows[r][c].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][c].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not rows[r][c].is_zero():
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(c)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def isotypic_projector(G: FiniteMatrixGroup, d: int,
                       irrep_index: int) -> list[list[Cyclotomic]]:
    """P = (dim_i/|G|) sum_g conj(chi_i(g)) Sym^d(g), exactly."""
    table = dixon_table(G)
    chi = table.irreducibles[irrep_index]
    n = len(monomial_basis(G.degree, d))
    acc: list[list[Cyclotomic | None]] = [[None] * n for _ in range(n)]
    for idx, g in enumerate(G.elements):
        coef = chi.values[G.class_of[idx]].conjugate()
        if coef.is_zero():
            continue
        ginv = G.elements[G.inverse_index[idx]]
        M = sym_power_matrix(g, d, ginv=ginv)
        for a in range(n):
            row = M.rows[a]
            for b in range(n):
                x = row[b]
                if not x.is_zero():
                    p = coef * x
                    acc[a][b] = p if acc[a][b] is None else acc[a][b] + p
    scale = Fraction(chi.dim, G.order)
    zero = Cyclotomic.zero(1)
    return [[zero if x is None else x * scale for x in row] for row in acc]


def isotypic_basis(G: FiniteMatrixGroup, d: int,
                   irrep_index: int) -> list[tuple[Cyclotomic, ...]]:
    """Exact monomial-coefficient basis of the chi_i-isotypic component of
    Sym^d of the dual natural representation."""
    P = isotypic_projector(G, d, irrep_index)
    n = len(P)
    cols = [[P[a][b] for a in range(n)] for b in range(n)]
    rref, _ = _rref_cyclo(cols)
    basis = [tuple(row) for row in rref]
    table = dixon_table(G)
    chi = table.irreducibles[irrep_index]
    sym = sym_power_character(dual_character(table.natural), d)
    mult = char_inner(sym, chi)
    assert len(basis) == int(mult) * chi.dim, "isotypic dimension mismatch"
    return basis
