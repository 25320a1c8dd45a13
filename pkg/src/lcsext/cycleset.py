"""The linear cycle set family H(p, nu, eta) and a generic table verifier.

H is Z_{p^eta} with the usual sum and i.j = (1 - p^nu i) j; its brace
multiplication is i*j = i + j + p^nu i j.  For p odd, or p = 2 with
(nu, eta) != (1, 2), the multiplicative group (Z_{p^eta}, *) is cyclic with
generator 1, and the discrete logarithm l(h) has a two-case closed form.
Arbitrary finite linear cycle sets are handled as dense operation tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InternalDisagreement,
    InvalidOrder,
    NotABrace,
    NotCyclic,
    OrderOverflow,
    ShapeMismatch,
    SizeGuardExceeded,
)

TABLE_GUARD = 4096


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class CycleSetParams:
    p: int
    nu: int
    eta: int

    @property
    def modulus(self) -> int:
        return self.p**self.eta


def make_params(p: int, nu: int, eta: int) -> CycleSetParams:
    if not _is_prime(p):
        raise InvalidOrder(f"p = {p} is not prime")
    if not (0 < nu <= eta <= 2 * nu):
        raise InvalidOrder(f"need 0 < nu <= eta <= 2*nu, got nu={nu}, eta={eta}")
    m = p**eta
    if m * m > 2**62:
        raise OrderOverflow(f"p^eta = {m} exceeds the exact-arithmetic bound")
    return CycleSetParams(p, nu, eta)


def is_cyclic_case(P: CycleSetParams) -> bool:
    """Whether (Z_{p^eta}, *) is cyclic."""
    return P.p != 2 or (P.nu, P.eta) != (1, 2)


def _require_cyclic(P: CycleSetParams) -> None:
    if not is_cyclic_case(P):
        raise NotCyclic("p = 2 with (nu, eta) = (1, 2) has non-cyclic (H, *)")


def binom2(k: int) -> int:
    return k * (k - 1) // 2


def h_dot(P: CycleSetParams, i: int, j: int) -> int:
    """i.j = (1 - p^nu i) j."""
    return (1 - P.p**P.nu * i) * j % P.modulus


def h_times(P: CycleSetParams, i: int, j: int) -> int:
    """Brace multiplication i*j = i + j + p^nu i j."""
    return (i + j + P.p**P.nu * i * j) % P.modulus


def times_power(P: CycleSetParams, i: int, j: int) -> int:
    """j-fold *-power of i; closed form i*j + C(j,2) p^nu i^2."""
    j = j % P.modulus
    return (i * j + binom2(j) * P.p**P.nu * i * i) % P.modulus


def times_inverse(P: CycleSetParams, i: int) -> int:
    """Inverse of i in (Z_{p^eta}, *), by scanning (desk scale)."""
    i = i % P.modulus
    for j in range(P.modulus):
        if h_times(P, i, j) == 0:
            return j
    raise InternalDisagreement(f"{i} has no *-inverse")


def l_of(P: CycleSetParams, h: int) -> int:
    """The *-logarithm: the unique l with 1^(*l) = h (cyclic case only)."""
    _require_cyclic(P)
    h = h % P.modulus
    if P.p != 2 or P.eta < 2 * P.nu:
        val = h - binom2(h) * P.p**P.nu
    else:
        # p = 2 and eta = 2*nu > 2
        val = h - binom2(h) * (2**P.nu + 2 ** (2 * P.nu - 1))
    return val % P.modulus


def ell_rep(P: CycleSetParams, u: int) -> int:
    """Canonical representative of l_of(u) in [0, p^eta)."""
    return l_of(P, u % P.modulus)


def L_of(P: CycleSetParams, l: int, lp: int) -> int:
    """The unique L with 1^(*l) + 1^(*l') = 1^(*L) (cyclic case only)."""
    _require_cyclic(P)
    if P.p != 2 or P.eta < 2 * P.nu:
        val = l + lp - l * lp * P.p**P.nu
    else:
        val = l + lp - l * lp * 2**P.nu - l * lp * 2 ** (2 * P.nu - 1)
    return val % P.modulus


def b_k(P: CycleSetParams, k: int) -> int:
    """b_k = k + C(k+1, 2) p^nu; satisfies 1^(*(k+1)) = 1 + b_k."""
    return (k + (k + 1) * k // 2 * P.p**P.nu) % P.modulus


# ---------------------------------------------------------------------------
# dense tables and the generic verifier


@dataclass(frozen=True)
class FiniteCycleSetTable:
    order: int
    add: tuple[tuple[int, ...], ...]
    dot: tuple[tuple[int, ...], ...]


def make_table(order: int, add, dot) -> FiniteCycleSetTable:
    if order < 1:
        raise InvalidOrder("table order must be >= 1")
    if order > TABLE_GUARD:
        raise SizeGuardExceeded(f"order {order} exceeds table guard {TABLE_GUARD}")
    add_t = tuple(tuple(int(v) for v in row) for row in add)
    dot_t = tuple(tuple(int(v) for v in row) for row in dot)
    for t in (add_t, dot_t):
        if len(t) != order or any(len(r) != order for r in t):
            raise ShapeMismatch("tables must be order x order")
        if any(v < 0 or v >= order for r in t for v in r):
            raise ShapeMismatch("table entries must be indices in [0, order)")
    return FiniteCycleSetTable(order, add_t, dot_t)


def params_table(P: CycleSetParams) -> FiniteCycleSetTable:
    """Dense tables of H(p, nu, eta) itself."""
    m = P.modulus
    add = [[(i + j) % m for j in range(m)] for i in range(m)]
    dot = [[h_dot(P, i, j) for j in range(m)] for i in range(m)]
    return make_table(m, add, dot)


def trivial_table(n: int) -> FiniteCycleSetTable:
    """Z_n with a.b = b."""
    add = [[(i + j) % n for j in range(n)] for i in range(n)]
    dot = [[j for j in range(n)] for _ in range(n)]
    return make_table(n, add, dot)


def verify_cycle_set(T: FiniteCycleSetTable, max_witnesses: int = 10) -> list[dict]:
    """Report every violated linear cycle set axiom (empty iff valid).

    Checked: the additive table is an abelian group with neutral 0, left
    translations of dot are bijections, both distributivity laws, and the
    cycle set identity (a.b).(a.c) = (b.a).(b.c).
    """
    n = T.order
    add = np.array(T.add, dtype=np.int64)
    dot = np.array(T.dot, dtype=np.int64)
    rng = np.arange(n)
    report: list[dict] = []
    counts: dict[str, int] = {}

    def note(kind: str, prefix: tuple, mask: np.ndarray) -> None:
        if not np.any(mask):
            return
        counts[kind] = counts.get(kind, 0) + int(np.count_nonzero(mask))
        budget = max_witnesses - sum(1 for r in report if r["kind"] == kind)
        if budget <= 0:
            return
        for w in np.argwhere(mask)[:budget]:
            report.append({"kind": kind, "at": prefix + tuple(int(v) for v in w)})

    note("add_zero", (), (add[0] != rng)[None, :] | (add[:, 0] != rng)[None, :])
    note("add_comm", (), add != add.T)
    for a in range(n):
        note("add_assoc", (a,), add[add[a]] != add[a][add])
        if not np.array_equal(np.sort(add[a]), rng):
            report.append({"kind": "add_inverse", "at": (a,)})
            counts["add_inverse"] = counts.get("add_inverse", 0) + 1
        if not np.array_equal(np.sort(dot[a]), rng):
            report.append({"kind": "left_translation", "at": (a,)})
            counts["left_translation"] = counts.get("left_translation", 0) + 1
        # a.(b+c) = a.b + a.c
        note("dot_left_add", (a,), dot[a][add] != add[dot[a][:, None], dot[a][None, :]])
        # (a+b).c = (a.b).(a.c)
        rhs = dot[dot[a][:, None], dot[a][None, :]]
        note("dot_add_left", (a,), dot[add[a]] != rhs)
        # (a.b).(a.c) = (b.a).(b.c)
        cyc_rhs = dot[dot[:, a][:, None], dot]
        note("cycle_set", (a,), rhs != cyc_rhs)
    return report


def to_brace(T: FiniteCycleSetTable) -> tuple[tuple[int, ...], ...]:
    """Multiplication table of the brace attached to a linear cycle set:
    a*b = (a-dot inverse applied to b) + a."""
    n = T.order
    mult = [[0] * n for _ in range(n)]
    for a in range(n):
        inv = [0] * n
        for b in range(n):
            inv[T.dot[a][b]] = b
        for b in range(n):
            mult[a][b] = T.add[inv[b]][a]
    return tuple(tuple(r) for r in mult)


def from_brace(mult, add) -> FiniteCycleSetTable:
    """Linear cycle set of a left brace: a.b = inv*(a) * (a+b).

    Validates that mult is a group table with neutral 0 and that
    a*(b+c) = a*b + a*c - a holds; raises NotABrace otherwise.
    """
    n = len(add)
    mult_t = tuple(tuple(int(v) for v in row) for row in mult)
    add_t = tuple(tuple(int(v) for v in row) for row in add)
    m = np.array(mult_t, dtype=np.int64)
    a_np = np.array(add_t, dtype=np.int64)
    rng = np.arange(n)
    if not (np.array_equal(m[0], rng) and np.array_equal(m[:, 0], rng)):
        raise NotABrace("0 is not a neutral element of the multiplication")
    inv = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        if not np.array_equal(np.sort(m[a]), rng):
            raise NotABrace(f"row {a} of the multiplication is not a bijection")
        inv[a] = int(np.nonzero(m[a] == 0)[0][0])
        if not np.array_equal(m[m[a]], m[a][m]):
            raise NotABrace("multiplication is not associative")
        # a*(b+c) = a*b + a*c - a
        neg_a = int(np.nonzero(a_np[a] == 0)[0][0])
        lhs = m[a][a_np]
        rhs = a_np[a_np[m[a][:, None], m[a][None, :]], neg_a]
        if not np.array_equal(lhs, rhs):
            raise NotABrace("brace compatibility fails")
    dot = [[int(m[inv[a], a_np[a, b]]) for b in range(n)] for a in range(n)]
    return make_table(n, add_t, dot)


def socle(T: FiniteCycleSetTable) -> list[int]:
    """Elements y with y.a = a for all a; verified to be a subgroup."""
    n = T.order
    members = [y for y in range(n) if all(T.dot[y][a] == a for a in range(n))]
    _check_subgroup(T, members)
    return members


def center(T: FiniteCycleSetTable) -> list[int]:
    """Socle elements y with a.y = y for all a; verified to be a subgroup."""
    members = [y for y in socle(T) if all(T.dot[a][y] == y for a in range(T.order))]
    _check_subgroup(T, members)
    return members


def _check_subgroup(T: FiniteCycleSetTable, members: list[int]) -> None:
    s = set(members)
    if 0 not in s:
        raise InternalDisagreement("socle/center must contain 0")
    for x in members:
        for y in members:
            if T.add[x][y] not in s:
                raise InternalDisagreement("socle/center is not closed under +")
