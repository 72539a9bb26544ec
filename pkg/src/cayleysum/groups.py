"""Finite groups as multiplication tables.

Element sets are Python ints used as bit sets (bit g set <=> element g is a
member); the public functions accept and return :class:`SubgroupHandle` or
plain frozensets where that reads better.

Element indexing per constructor:

* ``make_cyclic(n)``: i is the residue i mod n.
* ``make_direct_product(A, B)``: (i, j) -> i * |B| + j.
* ``make_dihedral(n)``: i -> a^i for i < n, n + i -> a^i b.
* ``make_agl1(p, k)``: (m, t) -> mi * q + ti, where mi indexes m among the
  nonzero field elements and ti indexes t among all field elements, both
  ordered by coefficient tuple (low degree first).
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .galois import FieldError, field_add, field_make, field_mul, prime_power

MAX_ORDER = 128
AGL_HARD_CAP = 4096


class GroupError(ValueError):
    pass


# --- bit set helpers ---------------------------------------------------------

def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def members_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# --- core types ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by its multiplication table.

    ``mul[g][h]`` is the index of the product gh.  Instances are validated on
    construction (Latin square, identity, inverses, and associativity when
    n <= 128) and compared by identity.
    """

    n: int
    mul: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    label: str
    meta: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], label: str, meta: dict | None = None) -> GroupTable:
        mul = tuple(tuple(int(x) for x in row) for row in table)
        n = len(mul)
        if n == 0:
            raise GroupError("empty table")
        full = set(range(n))
        for row in mul:
            if len(row) != n or set(row) != full:
                raise GroupError(f"{label}: table is not a Latin square")
        for c in range(n):
            if {mul[r][c] for r in range(n)} != full:
                raise GroupError(f"{label}: table is not a Latin square")
        identity = next((e for e in range(n) if all(mul[e][g] == g == mul[g][e] for g in range(n))), None)
        if identity is None:
            raise GroupError(f"{label}: no identity element")
        inv = tuple(mul[g].index(identity) for g in range(n))
        if n <= MAX_ORDER:
            arr = np.asarray(mul, dtype=np.int64)
            idx = np.arange(n)
            left = arr[arr[:, :, None], idx[None, None, :]]
            right = arr[idx[:, None, None], arr[None, :, :]]
            if not np.array_equal(left, right):
                raise GroupError(f"{label}: multiplication is not associative")
        return cls(n, mul, identity, inv, label, dict(meta or {}))

    @property
    def order(self) -> int:
        return self.n

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def conj(self, x: int, g: int) -> int:
        """x^g = g^-1 x g."""
        return self.mul[self.mul[self.inv[g]][x]][g]

    def power(self, g: int, e: int) -> int:
        x = self.identity
        for _ in range(e % self.element_orders[g]):
            x = self.mul[x][g]
        return x

    def left_mul_mask(self, g: int, mask: int) -> int:
        row = self.mul[g]
        return mask_of(row[h] for h in members_of(mask))

    def right_mul_mask(self, mask: int, g: int) -> int:
        mul = self.mul
        return mask_of(mul[h][g] for h in members_of(mask))

    def conj_mask(self, mask: int, g: int) -> int:
        return mask_of(self.conj(x, g) for x in members_of(mask))

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for g in range(self.n):
            k, x = 1, g
            while x != self.identity:
                x = self.mul[x][g]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.mul
        return all(mul[g][h] == mul[h][g] for g in range(self.n) for h in range(g))

    @cached_property
    def squares_mask(self) -> int:
        return mask_of(self.mul[g][g] for g in range(self.n))

    @cached_property
    def classes(self) -> ConjugacyPartition:
        return conjugacy_classes(self)

    @cached_property
    def subgroups(self) -> tuple[SubgroupHandle, ...]:
        return tuple(all_subgroups(self))

    def order_profile(self) -> dict[int, int]:
        prof: dict[int, int] = {}
        for o in self.element_orders:
            prof[o] = prof.get(o, 0) + 1
        return dict(sorted(prof.items()))

    def subgroup(self, elements: Iterable[int]) -> SubgroupHandle:
        """Wrap an explicit element set, checking that it is a subgroup."""
        m = mask_of(elements)
        if not is_subgroup_mask(self, m):
            raise GroupError(f"{sorted(members_of(m))} is not a subgroup of {self.label}")
        return SubgroupHandle(self, m)

    def generated(self, elements: Iterable[int]) -> SubgroupHandle:
        return SubgroupHandle(self, closure(self, list(elements)))

    def __repr__(self):
        return f"GroupTable({self.label}, n={self.n})"


@dataclass(frozen=True)
class SubgroupHandle:
    parent: GroupTable
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        return members_of(self.mask)

    @property
    def order(self) -> int:
        return popcount(self.mask)

    def __len__(self):
        return self.order

    def __contains__(self, g: int) -> bool:
        return bool(self.mask >> g & 1)

    def __iter__(self):
        return iter(self.members)

    def issubset(self, other: SubgroupHandle) -> bool:
        return self.mask & ~other.mask == 0

    def index(self) -> int:
        return self.parent.n // self.order

    def sort_key(self):
        return (self.order, self.members)

    def __repr__(self):
        return f"Subgroup({self.parent.label}, {list(self.members)})"


@dataclass(frozen=True)
class ConjugacyPartition:
    parent: GroupTable
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(mask_of(c) for c in self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)

    def __len__(self):
        return len(self.classes)

    def union_mask(self, class_ids: Iterable[int]) -> int:
        m = 0
        for i in class_ids:
            m |= self.masks[i]
        return m

    def class_ids_of(self, mask: int) -> tuple[int, ...] | None:
        """Class ids whose union is exactly ``mask``, or None if mask is not normal."""
        ids = sorted({self.class_of[g] for g in members_of(mask)})
        return tuple(ids) if self.union_mask(ids) == mask else None


# --- constructors ---------------------------------------------------------------

def make_cyclic(n: int) -> GroupTable:
    if not 1 <= n <= MAX_ORDER:
        raise GroupError(f"cyclic order {n} out of range 1..{MAX_ORDER}")
    return GroupTable.from_table([[(i + j) % n for j in range(n)] for i in range(n)], f"C{n}")


def make_direct_product(A: GroupTable, B: GroupTable) -> GroupTable:
    n = A.n * B.n
    if n > MAX_ORDER:
        raise GroupError(f"direct product order {n} exceeds {MAX_ORDER}")
    nb = B.n
    table = [
        [A.mul[i1][i2] * nb + B.mul[j1][j2] for i2 in range(A.n) for j2 in range(nb)]
        for i1 in range(A.n)
        for j1 in range(nb)
    ]
    return GroupTable.from_table(table, f"{A.label}x{B.label}")


def make_dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n: a^i at i, a^i b at n + i."""
    if not 1 <= n <= 32:
        raise GroupError(f"dihedral parameter {n} out of range 1..32")

    def mul(x, y):
        i, rx = x % n, x >= n
        j, ry = y % n, y >= n
        k = (i - j) % n if rx else (i + j) % n
        return k + n if rx != ry else k

    table = [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]
    return GroupTable.from_table(table, f"D{2 * n}", {"rotation": n})


def make_agl1(p: int, k: int = 1, cap: int = AGL_HARD_CAP) -> GroupTable:
    """AGL_1(p^k): pairs (m, t), m != 0, composed as (m1,t1)(m2,t2) = (m1 m2, t1 m2 + t2).

    ``meta`` records the kernel {(1, t)} and the complement {(m, 0)} as bit
    masks, plus the field specification.
    """
    try:
        F = field_make(p, k)
    except FieldError as e:
        raise GroupError(str(e)) from None
    q = F.q
    if q < 3:
        raise GroupError("AGL1(q) needs q >= 3 (complement is trivial for q = 2)")
    if q * (q - 1) > min(cap, AGL_HARD_CAP):
        raise GroupError(f"AGL1({q}) has order {q * (q - 1)} above the cap {min(cap, AGL_HARD_CAP)}")
    elems = F.elements()
    nz = F.nonzero()
    t_index = {e: i for i, e in enumerate(elems)}
    m_index = {e: i for i, e in enumerate(nz)}
    # precomputed field tables
    fmul = [[t_index[field_mul(a, b)] for b in elems] for a in elems]
    fadd = [[t_index[field_add(a, b)] for b in elems] for a in elems]
    m_to_t = [t_index[m] for m in nz]
    t_to_m = {t: i for i, t in enumerate(m_to_t)}
    pairs = [(mi, ti) for mi in range(q - 1) for ti in range(q)]

    def compose(x, y):
        m1, t1 = pairs[x]
        m2, t2 = pairs[y]
        m = t_to_m[fmul[m_to_t[m1]][m_to_t[m2]]]
        t = fadd[fmul[t1][m_to_t[m2]]][t2]
        return m * q + t

    size = len(pairs)
    table = [[compose(x, y) for y in range(size)] for x in range(size)]
    one_m = m_index[F.one]
    zero_t = t_index[F.zero]
    meta = {
        "field": F,
        "q": q,
        "kernel": mask_of(one_m * q + t for t in range(q)),
        "complement": mask_of(m * q + zero_t for m in range(q - 1)),
        "pairs": tuple(pairs),
    }
    return GroupTable.from_table(table, f"AGL1({q})", meta)


def make_agl1_q(q: int, cap: int = AGL_HARD_CAP) -> GroupTable:
    pk = prime_power(q)
    if pk is None:
        raise GroupError(f"{q} is not a prime power")
    return make_agl1(*pk, cap=cap)


# --- subgroups -----------------------------------------------------------------

def closure(G: GroupTable, gens: Sequence[int]) -> int:
    """Bit mask of the subgroup generated by ``gens``."""
    mul = G.mul
    seen = 1 << G.identity
    frontier = [G.identity]
    gens = [g for g in dict.fromkeys(gens) if g != G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            row = mul[x]
            for g in gens:
                y = row[g]
                if not seen >> y & 1:
                    seen |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return seen


def closure_mask(G: GroupTable, mask: int) -> int:
    return closure(G, members_of(mask))


def is_subgroup_mask(G: GroupTable, mask: int) -> bool:
    if not mask >> G.identity & 1:
        return False
    mem = members_of(mask)
    mul = G.mul
    return all(mask >> mul[x][y] & 1 for x in mem for y in mem)


def all_subgroups(G: GroupTable) -> list[SubgroupHandle]:
    """Every subgroup exactly once, sorted by (order, members).

    Starts from the cyclic subgroups and closes under joins with cyclic
    subgroups; every subgroup is generated by the cyclic subgroups it contains,
    so the search is complete.
    """
    if G.n > MAX_ORDER:
        raise GroupError(f"subgroup enumeration capped at order {MAX_ORDER}")
    cyclic: dict[int, int] = {}
    for g in range(G.n):
        m = closure(G, [g])
        cyclic.setdefault(m, g)
    gens: dict[int, tuple[int, ...]] = {m: (g,) for m, g in cyclic.items()}
    frontier = list(gens)
    while frontier:
        nxt = []
        for S in frontier:
            for c, g in cyclic.items():
                if c & ~S == 0:
                    continue
                J = closure(G, gens[S] + (g,))
                if J not in gens:
                    gens[J] = gens[S] + (g,)
                    nxt.append(J)
        frontier = nxt
    subs = [SubgroupHandle(G, m) for m in gens]
    subs.sort(key=SubgroupHandle.sort_key)
    return subs


def conjugacy_classes(G: GroupTable) -> ConjugacyPartition:
    class_of = [-1] * G.n
    classes = []
    for x in range(G.n):
        if class_of[x] >= 0:
            continue
        orbit = sorted({G.conj(x, g) for g in range(G.n)})
        for y in orbit:
            class_of[y] = len(classes)
        classes.append(tuple(orbit))
    # x runs upward, so classes come out sorted by minimum element
    return ConjugacyPartition(G, tuple(classes), tuple(class_of))


def centralizer(G: GroupTable, g: int) -> SubgroupHandle:
    mul = G.mul
    return SubgroupHandle(G, mask_of(h for h in range(G.n) if mul[h][g] == mul[g][h]))


def center(G: GroupTable) -> SubgroupHandle:
    m = G.full_mask
    for g in range(G.n):
        m &= centralizer(G, g).mask
    return SubgroupHandle(G, m)


def _check_member(G: GroupTable, H: SubgroupHandle) -> None:
    if H.parent is not G:
        raise GroupError(f"{H} does not belong to {G.label}")


def conjugate(G: GroupTable, H: SubgroupHandle, g: int) -> SubgroupHandle:
    _check_member(G, H)
    return SubgroupHandle(G, G.conj_mask(H.mask, g))


def is_normal(G: GroupTable, H: SubgroupHandle) -> bool:
    return all(G.conj_mask(H.mask, g) == H.mask for g in range(G.n))


def core_of(G: GroupTable, H: SubgroupHandle) -> SubgroupHandle:
    """Intersection of all conjugates of H."""
    _check_member(G, H)
    if not is_subgroup_mask(G, H.mask):
        raise GroupError(f"{H} is not a subgroup")
    m = H.mask
    for g in range(G.n):
        m &= G.conj_mask(H.mask, g)
    return SubgroupHandle(G, m)


def left_cosets(G: GroupTable, H: SubgroupHandle) -> list[int]:
    """Left cosets gH as masks, ordered by minimum element."""
    seen = 0
    out = []
    for g in range(G.n):
        if not seen >> g & 1:
            c = G.left_mul_mask(g, H.mask)
            seen |= c
            out.append(c)
    return out


def is_left_transversal(G: GroupTable, H: SubgroupHandle, T: Iterable[int]) -> bool:
    """T meets every left coset of H exactly once."""
    T = set(T)
    if len(T) * H.order != G.n:
        return False
    covered = 0
    for t in T:
        c = G.left_mul_mask(t, H.mask)
        if covered & c:
            return False
        covered |= c
    return True


def squares_in(H: SubgroupHandle) -> frozenset[int]:
    """{h^2 : h in H}, squares taken inside H."""
    mul = H.parent.mul
    return frozenset(mul[h][h] for h in H.members)


def squares_mask_in(H: SubgroupHandle) -> int:
    mul = H.parent.mul
    return mask_of(mul[h][h] for h in H.members)


def abelian_decomposition(G: GroupTable) -> tuple[SubgroupHandle, SubgroupHandle, SubgroupHandle]:
    """(Q, K, Phi(Q)): Sylow 2-subgroup, Hall 2'-subgroup, squares of Q."""
    if not G.is_abelian:
        raise GroupError(f"{G.label} is not abelian")
    orders = G.element_orders
    Q = SubgroupHandle(G, mask_of(g for g in range(G.n) if orders[g] & (orders[g] - 1) == 0))
    K = SubgroupHandle(G, mask_of(g for g in range(G.n) if orders[g] % 2 == 1))
    phi = SubgroupHandle(G, squares_mask_in(Q))
    return Q, K, phi


def product_mask(G: GroupTable, A: int, B: int) -> int:
    mul = G.mul
    return mask_of(mul[a][b] for a in members_of(A) for b in members_of(B))


# --- text format ---------------------------------------------------------------

def dump_group_table(G: GroupTable) -> str:
    lines = [str(G.n), G.label]
    lines += [" ".join(map(str, row)) for row in G.mul]
    return "\n".join(lines) + "\n"


def write_group_table(G: GroupTable, path: str | Path) -> None:
    Path(path).write_text(dump_group_table(G))


def parse_group_table(text: str) -> GroupTable:
    lines = [ln.strip() for ln in io.StringIO(text) if ln.strip()]
    if len(lines) < 2:
        raise GroupError("group table needs an order line and a label line")
    try:
        n = int(lines[0])
    except ValueError:
        raise GroupError(f"bad order line {lines[0]!r}") from None
    rows = lines[2:]
    if len(rows) != n:
        raise GroupError(f"expected {n} table rows, found {len(rows)}")
    table = [[int(x) for x in row.split()] for row in rows]
    return GroupTable.from_table(table, lines[1])


def read_group_table(path: str | Path) -> GroupTable:
    return parse_group_table(Path(path).read_text())
