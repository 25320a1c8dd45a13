"""Finite abelian groups, homomorphisms, and Smith-normal-form subquotients.

Groups are Z_{n1} + ... + Z_{nk} given by their list of orders, elements are
canonically reduced residue vectors, and homomorphisms are integer matrices
(codomain rows x domain columns).  Kernels, images and subquotients such as
(ker F1 ∩ ker F2)/im G are computed exactly with integer Smith normal form.
All values are immutable and every operation is a pure function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod

import numpy as np

from .errors import (
    GroupMismatch,
    ImageNotInKernel,
    InternalDisagreement,
    InvalidOrder,
    OrderOverflow,
    ShapeMismatch,
    SizeGuardExceeded,
)

# Each modulus squared must stay below this, so that any single product of two
# reduced residues is certified exact even on fixed-width backends.
EXACT_BOUND = 2**62

ENUM_GUARD = 10**6


@dataclass(frozen=True)
class FinAbGroup:
    orders: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return prod(self.orders)

    def __repr__(self) -> str:
        return "Z" + "+Z".join(str(n) for n in self.orders) if self.orders else "Z1"


@dataclass(frozen=True)
class GroupElement:
    group: FinAbGroup
    coords: tuple[int, ...]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __repr__(self) -> str:
        return f"({','.join(str(c) for c in self.coords)})"


@dataclass(frozen=True)
class Homomorphism:
    domain: FinAbGroup
    codomain: FinAbGroup
    matrix: tuple[tuple[int, ...], ...]  # codomain rows x domain columns


@dataclass(frozen=True)
class Subquotient:
    """Invariant factors d_1 | d_2 | ... of (∩ kernels)/image plus one
    transversal representative per quotient generator."""

    group: FinAbGroup
    invariant_factors: tuple[int, ...]
    transversal: tuple[GroupElement, ...]

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)


def make_group(orders) -> FinAbGroup:
    orders = tuple(int(n) for n in orders)
    for n in orders:
        if n < 1:
            raise InvalidOrder(f"group order {n} must be >= 1")
        if n * n > EXACT_BOUND:
            raise OrderOverflow(f"order {n} exceeds the exact-arithmetic bound")
    return FinAbGroup(orders)


def elem(g: FinAbGroup, coords) -> GroupElement:
    coords = tuple(int(c) for c in coords)
    if len(coords) != g.rank:
        raise ShapeMismatch(f"{len(coords)} coordinates for rank-{g.rank} group")
    return GroupElement(g, tuple(c % n for c, n in zip(coords, g.orders)))


def zero(g: FinAbGroup) -> GroupElement:
    return GroupElement(g, (0,) * g.rank)


def _same_group(g: FinAbGroup, *xs: GroupElement) -> None:
    for x in xs:
        if x.group != g:
            raise GroupMismatch(f"element of {x.group} used in {g}")


def elem_add(g: FinAbGroup, x: GroupElement, y: GroupElement) -> GroupElement:
    _same_group(g, x, y)
    return GroupElement(g, tuple((a + b) % n for a, b, n in zip(x.coords, y.coords, g.orders)))


def elem_neg(g: FinAbGroup, x: GroupElement) -> GroupElement:
    _same_group(g, x)
    return GroupElement(g, tuple((-a) % n for a, n in zip(x.coords, g.orders)))


def elem_sub(g: FinAbGroup, x: GroupElement, y: GroupElement) -> GroupElement:
    return elem_add(g, x, elem_neg(g, y))


def elem_scale(c: int, x: GroupElement) -> GroupElement:
    g = x.group
    return GroupElement(g, tuple((c * a) % n for a, n in zip(x.coords, g.orders)))


def enumerate_elements(g: FinAbGroup, guard: int = ENUM_GUARD):
    """All elements in lexicographic coordinate order."""
    if g.order > guard:
        raise SizeGuardExceeded(f"|g| = {g.order} exceeds enumeration guard {guard}")
    for coords in itertools.product(*(range(n) for n in g.orders)):
        yield GroupElement(g, coords)


# ---------------------------------------------------------------------------
# homomorphisms


def make_hom(domain: FinAbGroup, codomain: FinAbGroup, matrix) -> Homomorphism:
    rows = [tuple(int(v) for v in row) for row in matrix]
    if len(rows) != codomain.rank or any(len(r) != domain.rank for r in rows):
        raise ShapeMismatch(
            f"matrix must be {codomain.rank}x{domain.rank}, got {len(rows)} rows"
        )
    reduced = tuple(tuple(v % m for v in row) for row, m in zip(rows, codomain.orders))
    return Homomorphism(domain, codomain, reduced)


def hom_validate(h: Homomorphism) -> bool:
    """True iff the matrix respects the order relations of both groups."""
    for i, m in enumerate(h.codomain.orders):
        for j, n in enumerate(h.domain.orders):
            if (h.matrix[i][j] * n) % m != 0:
                return False
    return True


def identity_hom(g: FinAbGroup) -> Homomorphism:
    return make_hom(g, g, [[1 if i == j else 0 for j in range(g.rank)] for i in range(g.rank)])


def zero_hom(domain: FinAbGroup, codomain: FinAbGroup) -> Homomorphism:
    return make_hom(domain, codomain, [[0] * domain.rank for _ in range(codomain.rank)])


def scalar_hom(g: FinAbGroup, c: int) -> Homomorphism:
    return make_hom(g, g, [[c if i == j else 0 for j in range(g.rank)] for i in range(g.rank)])


def hom_apply(h: Homomorphism, x: GroupElement) -> GroupElement:
    if x.group != h.domain:
        raise GroupMismatch("element not in the domain")
    vals = [
        sum(h.matrix[i][j] * x.coords[j] for j in range(h.domain.rank)) % m
        for i, m in enumerate(h.codomain.orders)
    ]
    return GroupElement(h.codomain, tuple(vals))


def hom_compose(h2: Homomorphism, h1: Homomorphism) -> Homomorphism:
    """h2 after h1."""
    if h1.codomain != h2.domain:
        raise GroupMismatch("codomain of inner map differs from domain of outer map")
    rows = [
        [
            sum(h2.matrix[i][k] * h1.matrix[k][j] for k in range(h2.domain.rank))
            for j in range(h1.domain.rank)
        ]
        for i in range(h2.codomain.rank)
    ]
    return make_hom(h1.domain, h2.codomain, rows)


def hom_add(h1: Homomorphism, h2: Homomorphism) -> Homomorphism:
    if h1.domain != h2.domain or h1.codomain != h2.codomain:
        raise GroupMismatch("mismatched domains or codomains")
    return make_hom(
        h1.domain,
        h1.codomain,
        [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(h1.matrix, h2.matrix)],
    )


def hom_scale(c: int, h: Homomorphism) -> Homomorphism:
    return make_hom(h.domain, h.codomain, [[c * v for v in row] for row in h.matrix])


def hom_sub(h1: Homomorphism, h2: Homomorphism) -> Homomorphism:
    return hom_add(h1, hom_scale(-1, h2))


def hom_power(h: Homomorphism, e: int) -> Homomorphism:
    """e-fold composite of an endomorphism, by repeated squaring; e >= 0."""
    if h.domain != h.codomain:
        raise GroupMismatch("hom_power needs an endomorphism")
    if e < 0:
        raise ShapeMismatch("exponent must be nonnegative")
    result = identity_hom(h.domain)
    base = h
    while e:
        if e & 1:
            result = hom_compose(result, base)
        base = hom_compose(base, base)
        e >>= 1
    return result


def is_zero_hom(h: Homomorphism) -> bool:
    return all(v == 0 for row in h.matrix for v in row)


def direct_sum_group(*gs: FinAbGroup) -> FinAbGroup:
    return make_group([n for g in gs for n in g.orders])


def split_element(x: GroupElement, gs) -> list[GroupElement]:
    parts, at = [], 0
    for g in gs:
        parts.append(GroupElement(g, x.coords[at : at + g.rank]))
        at += g.rank
    if at != x.group.rank:
        raise ShapeMismatch("split ranks do not add up")
    return parts


def join_elements(g: FinAbGroup, xs) -> GroupElement:
    return elem(g, [c for x in xs for c in x.coords])


def hom_hcat(h1: Homomorphism, h2: Homomorphism) -> Homomorphism:
    """[h1 | h2] on the direct sum of the domains; common codomain."""
    if h1.codomain != h2.codomain:
        raise GroupMismatch("hcat needs a common codomain")
    dom = direct_sum_group(h1.domain, h2.domain)
    rows = [list(r1) + list(r2) for r1, r2 in zip(h1.matrix, h2.matrix)]
    return make_hom(dom, h1.codomain, rows)


def hom_vcat(h1: Homomorphism, h2: Homomorphism) -> Homomorphism:
    """Stack h1 over h2 into the direct sum of the codomains; common domain."""
    if h1.domain != h2.domain:
        raise GroupMismatch("vcat needs a common domain")
    cod = direct_sum_group(h1.codomain, h2.codomain)
    rows = [list(r) for r in h1.matrix] + [list(r) for r in h2.matrix]
    return make_hom(h1.domain, cod, rows)


# ---------------------------------------------------------------------------
# integer Smith normal form (naive elementary operations, desk scale)


def _identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(matrix, nrows: int, ncols: int):
    """Return (diag, U, Uinv, V) with U*A*V diagonal and U, V unimodular.

    diag has length min(nrows, ncols), entries nonnegative with d1 | d2 | ...
    """
    a = [list(map(int, row)) for row in matrix]
    U = _identity_matrix(nrows)
    Uinv = _identity_matrix(nrows)
    V = _identity_matrix(ncols)

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def row_addmul(dst, src, q):
        # row dst += q * row src; inverse tracked on Uinv columns
        ad, asrc = a[dst], a[src]
        for k in range(ncols):
            ad[k] += q * asrc[k]
        ud, usrc = U[dst], U[src]
        for k in range(nrows):
            ud[k] += q * usrc[k]
        for r in Uinv:
            r[src] -= q * r[dst]

    def col_addmul(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]

    def row_negate(i):
        a[i] = [-v for v in a[i]]
        U[i] = [-v for v in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        best = None
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                v = abs(row[j])
                if v and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_addmul(i, t, -q)
                    if a[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_addmul(j, t, -q)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
            if not dirty:
                if all(a[i][t] == 0 for i in range(t + 1, nrows)) and all(
                    a[t][j] == 0 for j in range(t + 1, ncols)
                ):
                    break
        if a[t][t] < 0:
            row_negate(t)
        piv = a[t][t]
        advanced = True
        for i in range(t + 1, nrows):
            bad = next((j for j in range(t + 1, ncols) if a[i][j] % piv != 0), None)
            if bad is not None:
                row_addmul(t, i, 1)
                advanced = False
                break
        if advanced:
            t += 1
    diag = [a[i][i] for i in range(limit)]
    return diag, U, Uinv, V


def _mat_vec(m, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in m]


def _mat_mul(m1, m2):
    cols = len(m2[0]) if m2 else 0
    return [
        [sum(m1[i][t] * m2[t][j] for t in range(len(m2))) for j in range(cols)]
        for i in range(len(m1))
    ]


def solve_integer(mat: list[list[int]], target_cols: list[list[int]]) -> list[list[int]]:
    """Solve mat * x = t over Z for each target column; mat square nonsingular,
    every target must lie in the column lattice of mat."""
    n = len(mat)
    diag, U, _uinv, V = smith_normal_form(mat, n, n)
    xs = []
    for col in target_cols:
        uc = _mat_vec(U, col)
        y = []
        for i in range(n):
            d = diag[i]
            if d == 0:
                if uc[i] != 0:
                    raise InternalDisagreement("target not in lattice")
                y.append(0)
            else:
                q, r = divmod(uc[i], d)
                if r != 0:
                    raise InternalDisagreement("target not in lattice")
                y.append(q)
        xs.append(_mat_vec(V, y))
    return xs


def _echelon_rows_mod(rows: np.ndarray, e: int) -> np.ndarray:
    """Reduce condition rows to at most ncols generators of the same row span
    inside (Z_e)^ncols.  Entries stay in [0, e)."""
    R = np.asarray(rows, dtype=np.int64) % e
    R = R[np.any(R, axis=1)]
    if R.size == 0:
        return R
    R = np.unique(R, axis=0)
    nr, nc = R.shape
    piv = 0
    for col in range(nc):
        if piv >= nr:
            break
        while True:
            colvals = R[piv:, col]
            nz = np.nonzero(colvals)[0]
            if len(nz) == 0:
                break
            k = int(nz[np.argmin(colvals[nz])]) + piv
            if k != piv:
                R[[piv, k]] = R[[k, piv]]
            pv = int(R[piv, col])
            rest = R[piv + 1 :, col]
            if not np.any(rest):
                piv += 1
                break
            q = rest // pv
            R[piv + 1 :] = (R[piv + 1 :] - q[:, None] * R[piv]) % e
            if not np.any(R[piv + 1 :, col]):
                piv += 1
                break
    return R[np.any(R, axis=1)]


def _identity_basis(g: FinAbGroup) -> list[list[int]]:
    return [[1 if i == j else 0 for i in range(g.rank)] for j in range(g.rank)]


def kernel_lattice(h_list: list[Homomorphism]) -> list[list[int]]:
    """Basis vectors of {x in Z^k : h(x) = 0 in the codomain, for every h},
    a full-rank sublattice of Z^k for the common domain of rank k."""
    if not h_list:
        raise ShapeMismatch("kernel_lattice needs at least one map")
    domain = h_list[0].domain
    for h in h_list:
        if h.domain != domain:
            raise GroupMismatch("kernel maps must share their domain")
    k = domain.rank
    if k == 0:
        return []
    rows, mods = [], []
    for h in h_list:
        for row, m in zip(h.matrix, h.codomain.orders):
            if m > 1:
                rows.append(list(row))
                mods.append(m)
    if not rows:
        return _identity_basis(domain)
    e = 1
    for m in mods:
        e = e * m // gcd(e, m)
    scaled = np.array(
        [[(v * (e // m)) % e for v in row] for row, m in zip(rows, mods)], dtype=np.int64
    )
    R = _echelon_rows_mod(scaled, e)
    b = R.shape[0]
    if b == 0:
        return _identity_basis(domain)
    # integer kernel of [R | e*I], projected to the first k coordinates
    aug = [
        [int(R[i][j]) for j in range(k)] + [e if c == i else 0 for c in range(b)]
        for i in range(b)
    ]
    diag, _u, _uinv, V = smith_normal_form(aug, b, k + b)
    rank = sum(1 for d in diag if d != 0)
    gens = [[V[i][j] for i in range(k)] for j in range(rank, k + b)]
    for j in range(k):
        gens.append([domain.orders[j] if i == j else 0 for i in range(k)])
    return lattice_basis(gens, k)


def lattice_basis(gens: list[list[int]], dim: int) -> list[list[int]]:
    """Triangular basis (list of vectors) of the full-rank lattice in Z^dim
    spanned by the generating vectors."""
    cols = [list(v) for v in gens if any(v)]
    basis: list[list[int]] = []
    for row in range(dim):
        while True:
            nz = [c for c in cols if c[row] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[row]))
            c0 = nz[0]
            for c in nz[1:]:
                q = c[row] // c0[row]
                if q:
                    for i in range(dim):
                        c[i] -= q * c0[i]
            cols = [c for c in cols if any(c)]
        carriers = [c for c in cols if c[row] != 0]
        if not carriers:
            raise InternalDisagreement("generators do not span a full-rank lattice")
        carrier = carriers[0]
        if carrier[row] < 0:
            carrier[:] = [-v for v in carrier]
        basis.append(list(carrier))
        cols.remove(carrier)
        cols = [c for c in cols if any(c)]
    return basis


def kernel_gens(h: Homomorphism) -> list[GroupElement]:
    """Generators of ker(h) as a subgroup of the domain."""
    basis = kernel_lattice([h])
    g = h.domain
    out, seen = [], set()
    for vec in basis:
        x = elem(g, vec)
        if not x.is_zero() and x.coords not in seen:
            seen.add(x.coords)
            out.append(x)
    return out


def image_gens(h: Homomorphism) -> list[GroupElement]:
    """Images of the domain generators."""
    return [
        elem(h.codomain, [h.matrix[i][j] for i in range(h.codomain.rank)])
        for j in range(h.domain.rank)
    ]


def subgroup_elements(gens: list[GroupElement], g: FinAbGroup, guard: int = ENUM_GUARD):
    """All elements of the subgroup generated by gens, sorted; closure walk."""
    seen = {zero(g).coords}
    frontier = [zero(g)]
    while frontier:
        nxt = []
        for x in frontier:
            for gen in gens:
                y = elem_add(g, x, gen)
                if y.coords not in seen:
                    if len(seen) >= guard:
                        raise SizeGuardExceeded("subgroup closure exceeds guard")
                    seen.add(y.coords)
                    nxt.append(y)
        frontier = nxt
    return [GroupElement(g, c) for c in sorted(seen)]


def subgroup_invariant_factors(gens: list[GroupElement], g: FinAbGroup) -> tuple[int, ...]:
    """Invariant factors of the subgroup of g generated by gens."""
    k = g.rank
    if k == 0:
        return ()
    vecs = [list(x.coords) for x in gens]
    for j in range(k):
        vecs.append([g.orders[j] if i == j else 0 for i in range(k)])
    basis = lattice_basis(vecs, k)
    rel = [[g.orders[j] if i == j else 0 for i in range(k)] for j in range(k)]
    coeffs = solve_integer([[basis[j][i] for j in range(k)] for i in range(k)], rel)
    X = [[coeffs[c][i] for c in range(len(coeffs))] for i in range(k)]
    diag, _u, _ui, _v = smith_normal_form(X, k, len(coeffs))
    return tuple(d for d in diag if d > 1)


def subquotient(
    g: FinAbGroup,
    kernel_maps: list[Homomorphism],
    image_map: Homomorphism,
    lex_guard: int = 10**4,
) -> Subquotient:
    """(∩ ker kernel_maps) / im(image_map), image containment checked.

    Transversal entries are the lexicographically least representatives of
    their cosets whenever the image subgroup is small enough to enumerate.
    """
    for h in kernel_maps:
        if h.domain != g:
            raise GroupMismatch("kernel maps must have domain g")
    if image_map.codomain != g:
        raise GroupMismatch("image map must land in g")

    img_cols = image_gens(image_map)
    for v in img_cols:
        for h in kernel_maps:
            if not hom_apply(h, v).is_zero():
                raise ImageNotInKernel(f"image generator {v} escapes a kernel map")

    k = g.rank
    if k == 0:
        return Subquotient(g, (), ())
    maps = kernel_maps if kernel_maps else [zero_hom(g, make_group([1]))]
    basis = kernel_lattice(maps)  # list of basis vectors of the kernel lattice
    im_vecs = [list(x.coords) for x in img_cols]
    for j in range(k):
        im_vecs.append([g.orders[j] if i == j else 0 for i in range(k)])
    bmat = [[basis[j][i] for j in range(k)] for i in range(k)]  # basis as columns
    coeffs = solve_integer(bmat, im_vecs)
    X = [[coeffs[c][i] for c in range(len(coeffs))] for i in range(k)]
    diag, _u, Uinv, _v = smith_normal_form(X, k, len(coeffs))
    newb = _mat_mul(bmat, Uinv)  # columns are the adapted basis
    factors, reps = [], []
    for i in range(k):
        d = diag[i]
        if d == 0:
            raise InternalDisagreement("subquotient is not finite")
        if d > 1:
            factors.append(d)
            reps.append(elem(g, [newb[r][i] for r in range(k)]))
    try:
        img_elems = subgroup_elements(img_cols, g, guard=lex_guard)
    except SizeGuardExceeded:
        img_elems = None
    if img_elems is not None:
        reps = [
            min((elem_add(g, r, w) for w in img_elems), key=lambda x: x.coords)
            for r in reps
        ]
    return Subquotient(g, tuple(factors), tuple(reps))


def invariant_factors_of_orders(orders) -> tuple[int, ...]:
    """Normalize a list of cyclic orders into invariant factors d1 | d2 | ..."""
    prime_powers: dict[int, list[int]] = {}
    for n in orders:
        n = int(n)
        if n <= 1:
            continue
        d = 2
        while d * d <= n:
            if n % d == 0:
                e = 0
                while n % d == 0:
                    n //= d
                    e += 1
                prime_powers.setdefault(d, []).append(d**e)
            d += 1
        if n > 1:
            prime_powers.setdefault(n, []).append(n)
    for p in prime_powers:
        prime_powers[p].sort(reverse=True)
    width = max((len(v) for v in prime_powers.values()), default=0)
    factors = []
    for i in range(width - 1, -1, -1):
        f = 1
        for p in prime_powers:
            if i < len(prime_powers[p]):
                f *= prime_powers[p][i]
        factors.append(f)
    return tuple(factors)
