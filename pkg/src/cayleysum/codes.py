"""Subgroup perfect codes and total perfect codes in Cayley sum graphs.

Two independent routes decide every question here: the definitional checkers
work on the adjacency rows of a built graph, while the criteria only look at
cosets of H (``X + {1}`` resp. ``Y`` must be a left transversal).
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .graphs import (
    CayleySumGraph,
    NormalSubset,
    build_cs_graph,
    is_connected_algebraic,
    normal_subset,
    normal_subset_from_mask,
)
from .groups import (
    GroupError,
    GroupTable,
    SubgroupHandle,
    center,
    centralizer,
    conjugate,
    core_of,
    is_normal,
    mask_of,
    members_of,
    popcount,
    squares_mask_in,
)

PERFECT = "perfect"
TOTAL = "total-perfect"

_KIND_ALIASES = {
    "pc": PERFECT,
    "perfect": PERFECT,
    "tpc": TOTAL,
    "total": TOTAL,
    "total-perfect": TOTAL,
}

MAX_EXHAUSTIVE_CLASSES = 20


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, partial: list):
        super().__init__(message)
        self.partial = partial


class TransferPreconditionError(GroupError):
    pass


class ElementInSubgroupError(TransferPreconditionError):
    pass


class NotAnInvolutionError(TransferPreconditionError):
    pass


class NotNormalizingError(TransferPreconditionError):
    pass


def normalize_kind(kind: str) -> str:
    try:
        return _KIND_ALIASES[kind]
    except KeyError:
        raise ValueError(f"unknown code kind {kind!r}") from None


def _as_mask(C) -> int:
    if isinstance(C, int):
        return C
    if hasattr(C, "mask"):
        return C.mask
    return mask_of(C)


# --- definitional checkers -----------------------------------------------------

def is_perfect_code(graph: CayleySumGraph, C) -> bool:
    """C independent and every vertex outside C has exactly one neighbour in C."""
    cm = _as_mask(C)
    for v, row in enumerate(graph.rows):
        hits = row & cm
        if cm >> v & 1:
            if hits:
                return False
        elif hits == 0 or hits & (hits - 1):
            return False
    return True


def is_total_perfect_code(graph: CayleySumGraph, C) -> bool:
    """Every vertex has exactly one neighbour in C."""
    cm = _as_mask(C)
    for row in graph.rows:
        hits = row & cm
        if hits == 0 or hits & (hits - 1):
            return False
    return True


# --- criteria ------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _coset_labels(G: GroupTable, hmask: int) -> tuple[int, ...]:
    labels = [-1] * G.n
    hs = members_of(hmask)
    k = 0
    for g in range(G.n):
        if labels[g] < 0:
            row = G.mul[g]
            for h in hs:
                labels[row[h]] = k
            k += 1
    return tuple(labels)


def _is_transversal_mask(G: GroupTable, H: SubgroupHandle, T: int) -> bool:
    if popcount(T) * H.order != G.n:
        return False
    labels = _coset_labels(G, H.mask)
    seen = 0
    for t in members_of(T):
        bit = 1 << labels[t]
        if seen & bit:
            return False
        seen |= bit
    return True


def pc_criterion(G: GroupTable, H: SubgroupHandle, X: NormalSubset) -> bool:
    """X + {1} is a left transversal of H.

    When 1 is itself in X, H is independent only if every h in H has h^2 = 1,
    so that extra requirement is checked too.
    """
    one = 1 << G.identity
    if not _is_transversal_mask(G, H, X.mask | one):
        return False
    if X.mask & one:
        return squares_mask_in(H) == one
    return True


def tpc_criterion(G: GroupTable, H: SubgroupHandle, Y: NormalSubset) -> bool:
    """Y is a left transversal of H meeting H in a single nonsquare of H.

    With 1 in Y the matching inside H needs H & Y = {1, z} and every square
    of H inside {1, z}; Y - {z} must then be the transversal.
    """
    one = 1 << G.identity
    common = Y.mask & H.mask
    if not Y.mask & one:
        if popcount(common) != 1 or common & squares_mask_in(H):
            return False
        return _is_transversal_mask(G, H, Y.mask)
    if popcount(common) != 2:
        return False
    z = common & ~one
    return squares_mask_in(H) & ~common == 0 and _is_transversal_mask(G, H, Y.mask & ~z)


def criterion(G: GroupTable, H: SubgroupHandle, X: NormalSubset, kind: str) -> bool:
    kind = normalize_kind(kind)
    return pc_criterion(G, H, X) if kind == PERFECT else tpc_criterion(G, H, X)


def definitional(graph: CayleySumGraph, H, kind: str) -> bool:
    kind = normalize_kind(kind)
    return is_perfect_code(graph, H) if kind == PERFECT else is_total_perfect_code(graph, H)


# --- necessary conditions --------------------------------------------------------

def index_equation_holds(G: GroupTable, H: SubgroupHandle, X: NormalSubset, kind: str) -> bool:
    """The class-size equation for normal H, cleared of denominators.

    perfect: 1/|G:H| + sum 1/|C(x_i):H| = 1  <=>  |H| + sum |H| |G:C(x_i)| = |G|
    total:   sum 1/|C(y_i):H| = 1            <=>  sum |H| |G:C(y_i)| = |G|
    with x_i ranging over class representatives of X.
    """
    kind = normalize_kind(kind)
    h = H.order
    total = h if kind == PERFECT else 0
    P = G.classes
    for cid in X.class_ids:
        rep = P.classes[cid][0]
        total += h * (G.n // centralizer(G, rep).order)
    return total == G.n


def necessary_conditions(G: GroupTable, H: SubgroupHandle, X: NormalSubset, kind: str) -> list[str]:
    """Tags of the violated necessary conditions; [] when all hold.

    These conditions are derived for connection sets without the identity.
    """
    kind = normalize_kind(kind)
    out = []
    core = core_of(G, H)
    if any(core.mask & ~centralizer(G, x).mask for x in X.members):
        out.append("core-centralizer")
    normal = core.mask == H.mask
    if normal and not index_equation_holds(G, H, X, kind):
        out.append("index-equation")
    if normal and len(X) > 1 and len(X.class_ids) < 2:
        out.append("class-count")
    if kind == TOTAL:
        common = X.mask & H.mask
        if popcount(common) != 1:
            out += ["z-nonsquare", "z-central"]
        else:
            if common & squares_mask_in(H):
                out.append("z-nonsquare")
            z = members_of(common)[0]
            if H.mask & ~centralizer(G, z).mask:
                out.append("z-central")
    return out


# --- certificates ---------------------------------------------------------------

@dataclass(frozen=True)
class CodeCertificate:
    kind: str
    group: str
    subgroup: tuple[int, ...]
    classes: tuple[int, ...]
    verdict: bool
    witness: dict | None = None
    violations: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.verdict and self.violations:
            raise ValueError("a positive verdict cannot carry violations")
        if self.verdict != (self.witness is not None):
            raise ValueError("witness must be present exactly when the verdict is positive")

    def to_record(self) -> dict:
        return {
            "kind": self.kind,
            "group": self.group,
            "subgroup": list(self.subgroup),
            "classes": list(self.classes),
            "verdict": self.verdict,
            "witness": self.witness,
            "violations": list(self.violations),
        }

    @classmethod
    def from_record(cls, rec: dict) -> CodeCertificate:
        w = rec.get("witness")
        if w is not None:
            w = {k: (list(v) if isinstance(v, list) else v) for k, v in w.items()}
        return cls(
            kind=rec["kind"],
            group=rec["group"],
            subgroup=tuple(rec["subgroup"]),
            classes=tuple(rec["classes"]),
            verdict=bool(rec["verdict"]),
            witness=w,
            violations=tuple(rec.get("violations", ())),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True, separators=(",", ":"))

    def to_text(self) -> str:
        w = ""
        if self.witness:
            w = " T=" + ",".join(map(str, self.witness["transversal"]))
            if "z" in self.witness:
                w += f" z={self.witness['z']}"
        v = " violations=" + ",".join(self.violations) if self.violations else ""
        return (
            f"{self.kind:<13} {self.group:<10} H={{{','.join(map(str, self.subgroup))}}} "
            f"classes={{{','.join(map(str, self.classes))}}} {'YES' if self.verdict else 'no'}{w}{v}"
        )


def certify(G: GroupTable, H: SubgroupHandle, X: NormalSubset, kind: str) -> CodeCertificate:
    """Decide by the criterion and attach the witness or the failed conditions."""
    kind = normalize_kind(kind)
    verdict = criterion(G, H, X, kind)
    witness = None
    violations: tuple[str, ...] = ()
    if verdict:
        if kind == PERFECT:
            witness = {"transversal": list(members_of(X.mask | 1 << G.identity))}
        else:
            common = X.mask & H.mask & ~(1 << G.identity)
            z = members_of(common)[0] if common else G.identity
            witness = {"transversal": list(X.members), "z": z}
    else:
        violations = tuple(necessary_conditions(G, H, X, kind))
    return CodeCertificate(kind, G.label, H.members, X.class_ids, verdict, witness, violations)


# --- enumeration ----------------------------------------------------------------

def iter_class_subsets(G: GroupTable, include_identity: bool = True) -> Iterator[tuple[int, ...]]:
    """All class-id subsets (normal subsets of G) in lexicographic order."""
    P = G.classes
    ids = [i for i in range(len(P)) if include_identity or i != P.class_of[G.identity]]

    def rec(start, acc):
        yield tuple(acc)
        for j in range(start, len(ids)):
            acc.append(ids[j])
            yield from rec(j + 1, acc)
            acc.pop()

    yield from rec(0, [])


def forced_class_subsets(G: GroupTable, H: SubgroupHandle, kind: str) -> Iterator[tuple[int, ...]]:
    """Class-id subsets of the size a code of H forces, in lexicographic order.

    perfect: |X| = |G:H| - 1 and X disjoint from H.
    total:   |Y| = |G:H| and exactly one class meeting H, in one element.
    """
    kind = normalize_kind(kind)
    P = G.classes
    target = G.n // H.order - (1 if kind == PERFECT else 0)
    sizes = P.sizes
    meet = [popcount(m & H.mask) for m in P.masks]
    usable = [i for i in range(len(P)) if meet[i] == 0 or (kind == TOTAL and meet[i] == 1)]
    # suffix sums bound the remaining reachable size
    suffix = [0] * (len(usable) + 1)
    for j in range(len(usable) - 1, -1, -1):
        suffix[j] = suffix[j + 1] + sizes[usable[j]]
    need_hit = kind == TOTAL

    def rec(start, acc, size, hit):
        if size == target and (hit or not need_hit):
            yield tuple(acc)
        for j in range(start, len(usable)):
            if size + suffix[j] < target:
                break
            c = usable[j]
            s = size + sizes[c]
            if s > target:
                continue
            h = meet[c]
            if h and hit:
                continue
            acc.append(c)
            yield from rec(j + 1, acc, s, hit or bool(h))
            acc.pop()

    yield from rec(0, [], 0, False)


def _evaluate_chunk(args):
    G, hmask, kind, connected_only, chunk, include_false = args
    H = SubgroupHandle(G, hmask)
    out = []
    for ids in chunk:
        X = normal_subset(G, ids)
        verdict = criterion(G, H, X, kind)
        if connected_only and verdict and not is_connected_algebraic(G, X):
            continue
        if verdict or include_false:
            out.append((ids, certify(G, H, X, kind)))
    return out


def parallel_map(fn, items: list, jobs: int = 1) -> list:
    """Order-preserving map, in worker processes when jobs > 1."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as ex:
        return list(ex.map(fn, items))


def _chunks(items: list, k: int) -> list[list]:
    k = max(1, min(k, len(items)))
    step = -(-len(items) // k) if items else 1
    return [items[i : i + step] for i in range(0, len(items), step)] or [[]]


def enumerate_admitting(
    G: GroupTable,
    H: SubgroupHandle,
    kind: str,
    connected_only: bool = False,
    *,
    budget: int | None = None,
    jobs: int = 1,
    include_false: bool = False,
) -> list[tuple[NormalSubset, CodeCertificate]]:
    """Every forced-cardinality normal subset admitting H as a code, with certificates.

    Raises BudgetExceeded (carrying the partial result) when more than
    ``budget`` candidate sets would be tested, and refuses unbudgeted runs over
    more than 2**20 class subsets.
    """
    kind = normalize_kind(kind)
    if budget is None and len(G.classes) > MAX_EXHAUSTIVE_CLASSES:
        raise BudgetExceeded(f"{G.label} has {len(G.classes)} classes; supply a budget", [])
    candidates = []
    over = False
    for ids in forced_class_subsets(G, H, kind):
        if budget is not None and len(candidates) >= budget:
            over = True
            break
        candidates.append(ids)
    tasks = [(G, H.mask, kind, connected_only, c, include_false) for c in _chunks(candidates, jobs)]
    merged = [r for part in parallel_map(_evaluate_chunk, tasks, jobs) for r in part]
    merged.sort(key=lambda r: r[0])
    result = [(normal_subset(G, ids), cert) for ids, cert in merged]
    if over:
        raise BudgetExceeded(f"budget of {budget} candidate sets exhausted", result)
    return result


# --- transfer and bridge checks ---------------------------------------------------

def central_nonsquares(G: GroupTable, H: SubgroupHandle) -> tuple[int, ...]:
    return members_of(center(G).mask & H.mask & ~squares_mask_in(H))


def pc_tpc_bridge_check(G: GroupTable, H: SubgroupHandle) -> bool:
    """Constructive check of the perfect / total-perfect correspondence for normal H.

    (->) each total code Y with common element z gives a perfect code
    Y - {z} and z is a central nonsquare of H.
    (<-) each perfect code X and each central nonsquare z of H give the total
    code X + {z}.
    Constructed instances are confirmed on the built graphs.
    """
    if not is_normal(G, H):
        raise GroupError(f"{H} is not normal in {G.label}")
    Z = center(G).mask
    sq = squares_mask_in(H)
    totals = enumerate_admitting(G, H, TOTAL)
    perfects = enumerate_admitting(G, H, PERFECT)
    for Y, cert in totals:
        z = cert.witness["z"]
        if not (Z >> z & 1) or sq >> z & 1:
            return False
        X = normal_subset_from_mask(G, Y.mask & ~(1 << z))
        if not pc_criterion(G, H, X) or not is_perfect_code(build_cs_graph(G, X), H):
            return False
    zs = central_nonsquares(G, H)
    for X, _ in perfects:
        for z in zs:
            Y = normal_subset_from_mask(G, X.mask | 1 << z)
            if not tpc_criterion(G, H, Y) or not is_total_perfect_code(build_cs_graph(G, Y), H):
                return False
    # existence-level form of the correspondence
    return bool(totals) == (bool(perfects) and bool(zs))


def inner_transfer_check(G: GroupTable, H: SubgroupHandle, X: NormalSubset, kind: str = PERFECT) -> bool:
    """H is a code of CS(G, X) iff every conjugate H^g is."""
    graph = build_cs_graph(G, X)
    base = definitional(graph, H, kind)
    return all(definitional(graph, conjugate(G, H, g), kind) == base for g in range(G.n))


def coset_transfer_check(
    G: GroupTable, H: SubgroupHandle, X: NormalSubset, b: int, kind: str = PERFECT
) -> bool:
    """H is a code of CS(G, X) iff the coset Hb is, for an involution b normalizing H."""
    if b in H:
        raise ElementInSubgroupError(f"{b} lies in H; the coset is H itself")
    if G.mul[b][b] != G.identity:
        raise NotAnInvolutionError(f"{b} is not an involution")
    if G.conj_mask(H.mask, b) != H.mask:
        raise NotNormalizingError(f"{b} does not normalize H")
    graph = build_cs_graph(G, X)
    return definitional(graph, H, kind) == definitional(graph, G.right_mul_mask(H.mask, b), kind)


def subgroups_from_selector(G: GroupTable, selector: str | Iterable[int] | None) -> list[SubgroupHandle]:
    if selector is None or selector == "all":
        return list(G.subgroups)
    if isinstance(selector, str):
        selector = [int(t) for t in selector.replace(",", " ").split()]
    return [G.subgroup(selector)]
