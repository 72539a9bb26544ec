"""Constructions and exhaustive verifiers for abelian, dihedral and AGL_1(q) groups."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .codes import (
    PERFECT,
    TOTAL,
    CodeCertificate,
    _chunks,
    certify,
    criterion,
    definitional,
    iter_class_subsets,
    normalize_kind,
    parallel_map,
    pc_criterion,
    tpc_criterion,
)
from .graphs import (
    NormalSubset,
    build_cs_graph,
    is_connected_algebraic,
    is_connected_bfs,
    is_regular,
    is_square_free,
    normal_subset,
    normal_subset_from_elements,
    normal_subset_from_mask,
)
from .groups import (
    GroupError,
    GroupTable,
    SubgroupHandle,
    abelian_decomposition,
    closure,
    left_cosets,
    make_agl1_q,
    make_dihedral,
    mask_of,
    members_of,
    popcount,
    product_mask,
    squares_mask_in,
)


# --- diff reports -------------------------------------------------------------------

@dataclass
class DiffReport:
    """Search result versus generated family, keyed by (subgroup members, class ids)."""

    title: str
    kind: str
    matched: list[CodeCertificate]
    extra: list[CodeCertificate]
    missing: list[CodeCertificate]
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.extra and not self.missing

    def summary(self) -> dict:
        return {
            "type": "summary",
            "title": self.title,
            "kind": self.kind,
            "matched": len(self.matched),
            "extra": len(self.extra),
            "missing": len(self.missing),
            **self.info,
        }

    def records(self) -> list[dict]:
        out = [self.summary()]
        for status, certs in (("matched", self.matched), ("extra", self.extra), ("missing", self.missing)):
            for c in certs:
                out.append({"type": "certificate", "status": status, **c.to_record()})
        return out

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in self.records())

    def to_text(self) -> str:
        s = self.summary()
        lines = [f"# {self.title} [{self.kind}] matched={s['matched']} extra={s['extra']} missing={s['missing']}"]
        for k, v in self.info.items():
            lines.append(f"#   {k}: {v}")
        for status, certs in (("extra", self.extra), ("missing", self.missing)):
            lines += [f"{status:<8} {c.to_text()}" for c in certs]
        return "\n".join(lines) + "\n"


def _diff(G: GroupTable, title: str, kind: str, found: set, expected: set, info: dict) -> DiffReport:
    def certs(keys):
        return [certify(G, SubgroupHandle(G, mask_of(h)), normal_subset(G, ids), kind) for h, ids in sorted(keys)]

    return DiffReport(
        title,
        kind,
        certs(found & expected),
        certs(found - expected),
        certs(expected - found),
        info,
    )


def _search_chunk(args):
    G, subs, kind, connected_only, chunk = args
    out = []
    for ids in chunk:
        X = normal_subset(G, ids)
        graph = build_cs_graph(G, X)
        if connected_only and not is_connected_bfs(graph):
            continue
        for hmask in subs:
            if definitional(graph, hmask, kind):
                out.append((members_of(hmask), ids))
    return out


def search_admitting_pairs(
    G: GroupTable,
    kind: str,
    *,
    connected_only: bool,
    min_order: int = 1,
    include_identity: bool = False,
    jobs: int = 1,
) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (H, X) with H a code of CS(G, X), decided on the built graph only."""
    kind = normalize_kind(kind)
    subs = [H.mask for H in G.subgroups if H.order >= min_order]
    subsets = list(iter_class_subsets(G, include_identity))
    tasks = [(G, subs, kind, connected_only, c) for c in _chunks(subsets, max(jobs, 1))]
    return {pair for part in parallel_map(_search_chunk, tasks, jobs) for pair in part}


# --- abelian groups -----------------------------------------------------------------

def _require_abelian(G: GroupTable) -> None:
    if not G.is_abelian:
        raise GroupError(f"{G.label} is not abelian")


def canonical_transversal(G: GroupTable, H: SubgroupHandle) -> tuple[int, ...]:
    """Minimum element of each left coset of H."""
    return tuple(members_of(c)[0] for c in left_cosets(G, H))


def abelian_pc_construct(G: GroupTable, H: SubgroupHandle) -> NormalSubset:
    """X = T - H for the canonical transversal T; H is a perfect code of CS(G, X)."""
    _require_abelian(G)
    T = mask_of(canonical_transversal(G, H))
    return normal_subset_from_mask(G, T & ~H.mask)


def phi_q_k(G: GroupTable) -> int:
    _, K, phi = abelian_decomposition(G)
    return product_mask(G, phi.mask, K.mask)


def abelian_regular_pc_decide(G: GroupTable, H: SubgroupHandle) -> tuple[bool, NormalSubset | None]:
    """Is H a perfect code of some regular CS graph of abelian G?

    Yes iff H holds a nonsquare of G or H = Phi(Q)K.  The witness starts from
    the canonical X = T - H; if H has a nonsquare a, each square z in X is
    swapped for az, which stays in the same coset and is a nonsquare.
    """
    _require_abelian(G)
    X = abelian_pc_construct(G, H)
    sq = G.squares_mask
    nonsq = H.mask & ~sq
    if nonsq:
        a = members_of(nonsq)[0]
        Z = X.mask & sq
        W = X.mask & ~Z
        if Z:
            W |= G.left_mul_mask(a, Z)
        X = normal_subset_from_mask(G, W)
    elif H.mask != phi_q_k(G):
        return False, None
    assert pc_criterion(G, H, X) and is_square_free(G, X)
    return True, X


def stated_regular_tpc_condition(G: GroupTable, H: SubgroupHandle) -> bool:
    """The literal condition: |H| even and (H holds a nonsquare of G or H = Phi(Q)K)."""
    _require_abelian(G)
    return H.order % 2 == 0 and bool(H.mask & ~G.squares_mask or H.mask == phi_q_k(G))


def abelian_tpc_decide(G: GroupTable, H: SubgroupHandle, regular: bool = False) -> tuple[bool, NormalSubset | None]:
    """Is H a total perfect code of some (regular) CS graph of abelian G?

    Any graph: iff |H| is even; Y = X + {z} for the canonical X and the least
    nonsquare z of H (every element is central).
    Regular graph: iff H holds a nonsquare z of G.  A square-free Y must
    contain its common element with H, so z has to be a nonsquare of G and
    not merely of H; the branch H = Phi(Q)K of the literal condition
    consists of squares and never yields a regular graph.
    """
    _require_abelian(G)
    if H.order % 2:
        return False, None
    if not regular:
        X = abelian_pc_construct(G, H)
        z = members_of(H.mask & ~squares_mask_in(H))[0]
        Y = normal_subset_from_mask(G, X.mask | 1 << z)
        assert tpc_criterion(G, H, Y)
        return True, Y
    nonsq = H.mask & ~G.squares_mask
    if not nonsq:
        return False, None
    ok, X = abelian_regular_pc_decide(G, H)
    assert ok
    z = members_of(nonsq)[0]
    Y = normal_subset_from_mask(G, X.mask | 1 << z)
    assert tpc_criterion(G, H, Y) and is_square_free(G, Y)
    return True, Y


def exhaustive_regular_code(G: GroupTable, H: SubgroupHandle, kind: str) -> NormalSubset | None:
    """First square-free normal subset whose (regular) graph has H as a code, by brute force."""
    kind = normalize_kind(kind)
    target = G.n // H.order - (1 if kind == PERFECT else 0)
    P = G.classes
    # only classes avoiding the squares can appear in a square-free set
    free = [i for i, m in enumerate(P.masks) if not m & G.squares_mask]
    for bits in range(1 << len(free)):
        X = normal_subset(G, [free[j] for j in range(len(free)) if bits >> j & 1])
        if len(X) != target or not is_square_free(G, X):
            continue
        graph = build_cs_graph(G, X)
        if is_regular(graph) and definitional(graph, H, kind):
            return X
    return None


def _invariant_factor_lists(n: int, smallest: int = 1) -> list[list[int]]:
    # d1 | d2 | ... | dk with product n, all > 1
    if n == 1:
        return [[]]
    out = []
    for d in range(max(2, smallest), n + 1):
        if n % d == 0 and (smallest == 1 or d % smallest == 0):
            for rest in _invariant_factor_lists(n // d, d):
                if not rest or rest[0] % d == 0:
                    out.append([d] + rest)
    return out


def abelian_descriptors(max_order: int) -> list[str]:
    """Descriptor strings for every abelian group of order <= max_order, up to isomorphism."""
    out = []
    for n in range(1, max_order + 1):
        for fs in _invariant_factor_lists(n):
            out.append("x".join(f"C{d}" for d in fs) or "C1")
    return out


# --- dihedral groups ------------------------------------------------------------------

@dataclass(frozen=True)
class DihedralExpectation:
    n: int
    family: str
    subgroup: tuple[int, ...]
    connection: NormalSubset
    params: tuple = ()
    connected: bool = True

    @property
    def key(self):
        return (self.subgroup, self.connection.class_ids)


def inverse_closed_transversals(n: int, ell: int) -> list[frozenset[int]]:
    """Inverse-closed left transversals of <a^ell> in <a> (a of order n = 2 ell), as exponent sets."""
    out = []
    for choice in product((0, 1), repeat=ell):
        Z = frozenset(j + ell * c for j, c in enumerate(choice))
        if all((-z) % n in Z for z in Z):
            out.append(Z)
    return out


def dihedral_expected(n: int, kind: str) -> list[DihedralExpectation]:
    """Generated members of the dihedral families, each checked by the criterion.

    Rotations a^i are indices i, reflections a^i b are n + i.  Subgroups run
    over the images of the named subgroup under automorphisms fixing the
    connection set (conjugates, and for the complete bipartite graph every
    reflection subgroup).  The n = 4k + 2 family is also generated for k = 0.
    """
    kind = normalize_kind(kind)
    if not 1 <= n <= 32:
        raise GroupError(f"dihedral parameter {n} out of range 1..32")
    G = make_dihedral(n)
    refl = lambda i: n + i % n  # noqa: E731
    b_cls = {refl(i) for i in range(0, n, 2)}
    ab_cls = {refl(i) for i in range(1, n, 2)}
    out: list[DihedralExpectation] = []

    def add(family, H, elems, params=()):
        X = normal_subset_from_elements(G, elems)
        Hs = SubgroupHandle(G, mask_of(H))
        if not criterion(G, Hs, X, kind):
            raise AssertionError(f"{family} instance fails its criterion: H={sorted(H)} X={sorted(elems)}")
        out.append(DihedralExpectation(n, family, tuple(sorted(H)), X, params, is_connected_algebraic(G, X)))

    even = n % 2 == 0
    ell = n // 2
    if kind == PERFECT:
        if even:
            Z = {2 * m for m in range(1, ell)}
            for i in range(1, n, 2):
                add("Gamma0", {0, refl(i)}, b_cls | Z, (("ell", ell),))
            for i in range(0, n, 2):
                add("Gamma1", {0, refl(i)}, ab_cls | Z, (("ell", ell),))
        if n % 4 == 2:
            k = (n - 2) // 4
            for Z in inverse_closed_transversals(n, ell):
                W = set(Z) - {0, ell}
                add("Gamma", {0, ell}, b_cls | W, (("k", k), ("Z", tuple(sorted(Z))), ("class", "b")))
                add("Gamma", {0, ell}, ab_cls | W, (("k", k), ("Z", tuple(sorted(Z))), ("class", "ab")))
    else:
        for i in range(n):
            add("Knn", {0, refl(i)}, b_cls | ab_cls)
        if even:
            Zp = {2 * m + 1 for m in range(ell)}
            for i in range(0, n, 2):
                add("Gamma0'", {0, refl(i)}, b_cls | Zp, (("ell", ell),))
            for i in range(1, n, 2):
                add("Gamma1'", {0, refl(i)}, ab_cls | Zp, (("ell", ell),))
        if n % 4 == 2:
            k = (n - 2) // 4
            for Z in inverse_closed_transversals(n, ell):
                W = (set(Z) - {0, ell}) | {ell}
                add("Gamma'", {0, ell}, b_cls | W, (("k", k), ("Z", tuple(sorted(Z))), ("class", "b")))
                add("Gamma'", {0, ell}, ab_cls | W, (("k", k), ("Z", tuple(sorted(Z))), ("class", "ab")))
    out.sort(key=lambda e: (e.key, e.family, e.params))
    return out


def verify_dihedral_classification(
    n: int, kind: str, *, jobs: int = 1, include_identity: bool = False
) -> DiffReport:
    """Exhaustive search over connected CS graphs of D_2n versus the generated families.

    Perfect codes are searched among nontrivial subgroups, total codes among
    all subgroups.  Connection sets containing the identity are skipped unless
    requested.
    """
    kind = normalize_kind(kind)
    if 2 * n > 64:
        raise GroupError("exhaustive dihedral verification is capped at order 64")
    G = make_dihedral(n)
    found = search_admitting_pairs(
        G,
        kind,
        connected_only=True,
        min_order=2 if kind == PERFECT else 1,
        include_identity=include_identity,
        jobs=jobs,
    )
    exps = dihedral_expected(n, kind)
    expected = {e.key for e in exps if e.connected}
    info = {
        "group": G.label,
        "disconnected_generated": len({e.key for e in exps if not e.connected} - expected),
        "include_identity": include_identity,
    }
    return _diff(G, f"dihedral {G.label}", kind, found, expected, info)


# --- one-dimensional affine groups ------------------------------------------------------

@dataclass(frozen=True)
class AglExpectation:
    q: int
    s: int
    t: int
    c: int
    subgroup: SubgroupHandle
    reps: tuple[int, ...]
    X: NormalSubset
    Y: NormalSubset
    tpc_valid: bool


def _complement_generator(G: GroupTable) -> int:
    C = G.meta["complement"]
    return next(g for g in members_of(C) if G.element_orders[g] == popcount(C))


def _subgroup_of_order(G: GroupTable, cyclic_gen: int, order: int, t: int) -> int:
    # unique subgroup of order t in the cyclic group <cyclic_gen> of the given order
    return closure(G, [G.power(cyclic_gen, order // t)])


def agl_construct(q: int, s: int) -> AglExpectation:
    """Canonical instance of the AGL_1(q) family for q - 1 = s t, t > 1.

    c is the least-index generator of the complement {(m, 0)}; a_0 is the
    least nonsquare of <c^s> when one exists, else its least nonidentity
    element; a_1..a_{s-1} are the least elements of the other cosets of <c^s>
    in <c>.
    """
    if q < 3:
        raise GroupError("q must be at least 3")
    if s < 1 or (q - 1) % s:
        raise GroupError(f"s = {s} does not divide q - 1 = {q - 1}")
    t = (q - 1) // s
    if t <= 1:
        raise GroupError("t = (q - 1)/s must exceed 1")
    G = make_agl1_q(q)
    K, C = G.meta["kernel"], G.meta["complement"]
    one = 1 << G.identity
    c = _complement_generator(G)
    H = SubgroupHandle(G, closure(G, [G.power(c, s)]))
    nonsq = H.mask & ~one & ~squares_mask_in(H)
    a0 = members_of(nonsq or H.mask & ~one)[0]
    others = [members_of(cs)[0] for cs in left_cosets(G, H) if cs & C and not cs & H.mask]
    others = sorted(r for r in others if C >> r & 1)
    reps = (a0, *others)
    X = normal_subset_from_mask(G, G.classes.union_mask(G.classes.class_of[a] for a in others) | (K & ~one))
    Y = normal_subset_from_mask(G, G.classes.union_mask(G.classes.class_of[a] for a in reps))
    if not pc_criterion(G, H, X):
        raise AssertionError(f"AGL1({q}) s={s}: perfect-code construction failed")
    tpc_valid = bool(nonsq)
    if tpc_valid and not tpc_criterion(G, H, Y):
        raise AssertionError(f"AGL1({q}) s={s}: total-code construction failed")
    return AglExpectation(q, s, t, c, H, reps, X, Y, tpc_valid)


def complement_conjugates(G: GroupTable) -> list[int]:
    """C^x for x in the kernel, in kernel-index order."""
    return [G.conj_mask(G.meta["complement"], x) for x in members_of(G.meta["kernel"])]


def agl_expected_pairs(q: int, kind: str) -> set[tuple[tuple[int, ...], tuple[int, ...]]]:
    """The constructed family over all s, all complement conjugates and all transversal choices."""
    kind = normalize_kind(kind)
    G = make_agl1_q(q)
    K = G.meta["kernel"]
    one = 1 << G.identity
    P = G.classes
    out = set()
    for Cx in complement_conjugates(G):
        gen = next(g for g in members_of(Cx) if G.element_orders[g] == q - 1)
        for s in range(1, q - 1):
            if (q - 1) % s:
                continue
            t = (q - 1) // s
            H = SubgroupHandle(G, _subgroup_of_order(G, gen, q - 1, t))
            cosets = [members_of(cs) for cs in left_cosets(G, H) if cs & Cx == cs and cs != H.mask]
            if kind == PERFECT:
                for reps in product(*cosets):
                    m = P.union_mask(P.class_of[a] for a in reps) | (K & ~one)
                    out.add((H.members, P.class_ids_of(m)))
            elif t % 2 == 0:
                for a0 in members_of(H.mask & ~squares_mask_in(H)):
                    for reps in product(*cosets):
                        m = P.union_mask(P.class_of[a] for a in (a0, *reps))
                        out.add((H.members, P.class_ids_of(m)))
    return out


def verify_agl_classification(
    q: int, kind: str, *, jobs: int = 1, include_identity: bool = False, max_order: int = 60
) -> DiffReport:
    """Exhaustive search over all CS graphs of AGL_1(q) versus the constructed family.

    Nontrivial subgroups only.  The whole group is a perfect code of the
    empty graph; that pair is listed under ``degenerate`` in the report info
    rather than counted as extra.
    """
    kind = normalize_kind(kind)
    G = make_agl1_q(q)
    if G.n > max_order:
        raise GroupError(f"AGL1({q}) has order {G.n}, above the exhaustive cap {max_order}")
    found = search_admitting_pairs(
        G, kind, connected_only=False, min_order=2, include_identity=include_identity, jobs=jobs
    )
    whole = (tuple(range(G.n)), ())
    degenerate = sorted(p for p in found if p == whole)
    found -= set(degenerate)
    expected = agl_expected_pairs(q, kind)
    canonical = []
    for s in range(1, q - 1):
        if (q - 1) % s == 0:
            e = agl_construct(q, s)
            Z = e.X if kind == PERFECT else e.Y
            if kind == PERFECT or e.tpc_valid:
                canonical.append((e.subgroup.members, Z.class_ids))
    info = {
        "group": G.label,
        "degenerate": len(degenerate),
        "canonical_in_found": all(k in found for k in canonical),
        "include_identity": include_identity,
    }
    return _diff(G, f"affine {G.label}", kind, found, expected, info)


def frobenius_partition_check(q: int) -> bool:
    """G is the kernel together with the q complement conjugates, which meet pairwise in {1}."""
    G = make_agl1_q(q)
    one = 1 << G.identity
    K = G.meta["kernel"]
    conjs = complement_conjugates(G)
    if len(set(conjs)) != q:
        return False
    cover = K
    for Cx in conjs:
        cover |= Cx
    if cover != G.full_mask:
        return False
    return all(conjs[i] & conjs[j] == one for i in range(q) for j in range(i))


def lemma_length_check(q: int) -> bool:
    """Each nonidentity class is K - {1}, or has size q and meets every C^x once."""
    G = make_agl1_q(q)
    one = 1 << G.identity
    K = G.meta["kernel"]
    conjs = complement_conjugates(G)
    for m in G.classes.masks:
        if m & one:
            continue
        if m == K & ~one:
            continue
        if popcount(m) != q or any(popcount(m & Cx) != 1 for Cx in conjs):
            return False
    return True
