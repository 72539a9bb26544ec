import json

import pytest
from hypothesis import given, strategies as st

from cayleysum.codes import (
    PERFECT,
    TOTAL,
    BudgetExceeded,
    CodeCertificate,
    ElementInSubgroupError,
    NotAnInvolutionError,
    NotNormalizingError,
    certify,
    coset_transfer_check,
    criterion,
    definitional,
    enumerate_admitting,
    forced_class_subsets,
    index_equation_holds,
    inner_transfer_check,
    is_perfect_code,
    is_total_perfect_code,
    iter_class_subsets,
    necessary_conditions,
    normalize_kind,
    pc_criterion,
    pc_tpc_bridge_check,
    subgroups_from_selector,
    tpc_criterion,
)
from cayleysum.corpus import ACCEPTANCE_CORPUS, parse_descriptor
from cayleysum.graphs import build_cs_graph, normal_subset, normal_subset_from_elements
from cayleysum.groups import center, centralizer, core_of, is_normal, make_cyclic, make_dihedral, mask_of

D12 = make_dihedral(6)
A3 = D12.subgroup([0, 3])
B = D12.subgroup([0, 6])
# b^G together with a^G, the perfect-code connection set for <a^3> in D12
X_58 = normal_subset(D12, [1, 4])
CORPUS = [parse_descriptor(d) for d in ACCEPTANCE_CORPUS]


def test_identity_is_perfect_code_of_complete_graph():
    for G in CORPUS:
        X = normal_subset_from_elements(G, [g for g in range(G.n) if g != G.identity])
        assert is_perfect_code(build_cs_graph(G, X), [G.identity])


def test_dihedral_perfect_code():
    assert X_58.members == (1, 5, 6, 8, 10)
    g = build_cs_graph(D12, X_58)
    assert is_perfect_code(g, A3.members)
    assert pc_criterion(D12, A3, X_58)
    Y = normal_subset(D12, [1, 3, 4])
    assert tpc_criterion(D12, A3, Y)
    assert is_total_perfect_code(build_cs_graph(D12, Y), A3.members)


def test_edge_inside_code():
    C4 = make_cyclic(4)
    g = build_cs_graph(C4, normal_subset_from_elements(C4, [1]))
    assert g.adjacent(0, 1)
    assert not is_perfect_code(g, [0, 1])


def test_knn_total_code():
    Y = normal_subset(D12, [4, 5])
    g = build_cs_graph(D12, Y)
    assert is_total_perfect_code(g, B.members)
    assert tpc_criterion(D12, B, Y)
    assert not is_total_perfect_code(g, [])


def test_criterion_examples():
    G = make_cyclic(6)
    assert pc_criterion(G, G.subgroup(range(6)), normal_subset(G, []))
    rot = D12.subgroup(range(6))
    for ids in iter_class_subsets(D12):
        X = normal_subset(D12, ids)
        if len(X) != 1:
            assert not pc_criterion(D12, rot, X)
    C9 = make_cyclic(9)
    H = C9.subgroup([0, 3, 6])
    assert not any(tpc_criterion(C9, H, normal_subset(C9, ids)) for ids in iter_class_subsets(C9))


def test_identity_in_connection_set():
    # {0,2} in C4: the graph is a perfect matching 0-2, 1-3 ... and C4 is a total code,
    # although {0,2} is not a transversal of C4
    C4 = make_cyclic(4)
    G4 = C4.subgroup(range(4))
    Y = normal_subset_from_elements(C4, [0, 2])
    g = build_cs_graph(C4, Y)
    assert is_total_perfect_code(g, range(4))
    assert tpc_criterion(C4, G4, Y)
    assert not criterion(C4, C4.subgroup([0, 2]), Y, TOTAL)


@pytest.mark.parametrize("G", CORPUS, ids=ACCEPTANCE_CORPUS)
def test_criteria_on_every_normal_subset(G):
    # not only forced cardinalities, identity included
    ncls = len(G.classes)
    subsets = list(iter_class_subsets(G)) if ncls <= 10 else [tuple(i for i in range(ncls) if k >> i & 1) for k in range(0, 1 << ncls, 61)]
    for ids in subsets:
        X = normal_subset(G, ids)
        g = build_cs_graph(G, X)
        for H in G.subgroups:
            for kind in (PERFECT, TOTAL):
                assert definitional(g, H.mask, kind) == criterion(G, H, X, kind), (H, X, kind)


def test_index_equation_regression():
    # 1/6 + 1/2 + 1/3 = 1, cleared of denominators: 2 + 2*3 + 2*2 = 12
    assert centralizer(D12, 1).order == 6 and centralizer(D12, 6).order == 4
    assert A3.order + A3.order * (12 // 4) + A3.order * (12 // 6) == 12
    assert index_equation_holds(D12, A3, X_58, PERFECT)
    assert necessary_conditions(D12, A3, X_58, PERFECT) == []


def test_necessary_conditions():
    G = make_cyclic(5)
    assert necessary_conditions(G, G.subgroup(range(5)), normal_subset(G, []), PERFECT) == []
    # <b> in D12 has core {1}, a non-normal subgroup: only core-centralizer can apply
    X = normal_subset(D12, [1, 2, 3])
    assert "index-equation" not in necessary_conditions(D12, B, X, PERFECT)
    bad = normal_subset(D12, [1])
    assert "index-equation" in necessary_conditions(D12, A3, bad, PERFECT)
    assert {"z-nonsquare", "z-central"} <= set(necessary_conditions(D12, A3, bad, TOTAL))


def test_core_outside_center_violates():
    # <a^2> in D12 is normal with core <a^2> not central; generating sets violate (a)
    H = D12.subgroup([0, 2, 4])
    assert core_of(D12, H).mask & ~center(D12).mask
    for ids in iter_class_subsets(D12):
        X = normal_subset(D12, ids)
        if len(X) and any(x >= 6 for x in X.members):
            assert "core-centralizer" in necessary_conditions(D12, H, X, PERFECT)


def test_certificate_roundtrip():
    c = certify(D12, A3, X_58, PERFECT)
    assert c.verdict and c.violations == () and c.witness == {"transversal": [0, 1, 5, 6, 8, 10]}
    assert CodeCertificate.from_record(json.loads(c.to_json())) == c
    t = certify(D12, A3, normal_subset(D12, [1, 3, 4]), TOTAL)
    assert t.witness["z"] == 3
    f = certify(D12, A3, normal_subset(D12, [1]), PERFECT)
    assert not f.verdict and f.witness is None and f.violations
    with pytest.raises(ValueError):
        CodeCertificate(PERFECT, "D12", (0, 3), (1,), True, None, ())


def test_normalize_kind():
    assert normalize_kind("pc") == PERFECT and normalize_kind("tpc") == TOTAL
    with pytest.raises(ValueError):
        normalize_kind("nope")


def test_enumerate_examples():
    found = enumerate_admitting(D12, A3, PERFECT, connected_only=True)
    assert [X.class_ids for X, _ in found] == [(1, 4), (1, 5)]
    for G in CORPUS:
        whole = G.subgroup(range(G.n))
        assert [X.class_ids for X, _ in enumerate_admitting(G, whole, PERFECT)] == [()]
    C9 = make_cyclic(9)
    assert enumerate_admitting(C9, C9.subgroup([0, 3, 6]), TOTAL) == []


def test_enumerate_budget():
    C16 = make_cyclic(16)
    H = C16.subgroup([0, 8])
    with pytest.raises(BudgetExceeded) as e:
        enumerate_admitting(C16, H, PERFECT, budget=3)
    assert len(e.value.partial) <= 3
    assert enumerate_admitting(C16, H, PERFECT, jobs=2) == enumerate_admitting(C16, H, PERFECT)


def test_forced_subsets_are_forced():
    for G in CORPUS[:24]:
        for H in G.subgroups:
            for kind, extra in ((PERFECT, 1), (TOTAL, 0)):
                for ids in forced_class_subsets(G, H, kind):
                    assert len(normal_subset(G, ids)) == G.n // H.order - extra


@pytest.mark.parametrize("G", CORPUS, ids=ACCEPTANCE_CORPUS)
def test_bridge(G):
    for H in G.subgroups:
        if is_normal(G, H):
            assert pc_tpc_bridge_check(G, H)


def test_bridge_examples():
    assert pc_tpc_bridge_check(D12, A3)
    C4 = make_cyclic(4)
    assert pc_tpc_bridge_check(C4, C4.subgroup([0, 2]))
    C9 = make_cyclic(9)
    assert pc_tpc_bridge_check(C9, C9.subgroup([0, 3, 6]))
    with pytest.raises(ValueError):
        pc_tpc_bridge_check(D12, B)


def test_total_codes_even():
    for G in CORPUS:
        for H in G.subgroups:
            if H.order % 2:
                assert enumerate_admitting(G, H, TOTAL) == []


@pytest.mark.parametrize("desc", ["D8", "D12", "D16", "AGL1(4)", "AGL1(5)", "C2xC6"])
def test_inner_transfer(desc):
    G = parse_descriptor(desc)
    for ids in iter_class_subsets(G, include_identity=False):
        X = normal_subset(G, ids)
        for H in G.subgroups:
            assert inner_transfer_check(G, H, X, PERFECT)
            assert inner_transfer_check(G, H, X, TOTAL)


@pytest.mark.parametrize("desc", ["C2xC4", "C2xC2xC2", "D8", "D12", "D16", "AGL1(5)", "C2xC6"])
def test_coset_transfer(desc):
    G = parse_descriptor(desc)
    subsets = list(iter_class_subsets(G, include_identity=False))
    for H in G.subgroups:
        for b in range(G.n):
            if b in H or G.mul[b][b] != G.identity or G.conj_mask(H.mask, b) != H.mask:
                continue
            for ids in subsets:
                X = normal_subset(G, ids)
                assert coset_transfer_check(G, H, X, b, PERFECT)
                assert coset_transfer_check(G, H, X, b, TOTAL)


def test_coset_transfer_errors():
    with pytest.raises(ElementInSubgroupError):
        coset_transfer_check(D12, A3, X_58, 3)
    with pytest.raises(NotAnInvolutionError):
        coset_transfer_check(D12, A3, X_58, 1)
    with pytest.raises(NotNormalizingError):
        coset_transfer_check(D12, B, X_58, 7)
    assert coset_transfer_check(D12, A3, X_58, 6)


def test_subgroup_selector():
    assert len(subgroups_from_selector(D12, "all")) == 16
    assert subgroups_from_selector(D12, "0,3")[0].mask == A3.mask
    with pytest.raises(ValueError):
        subgroups_from_selector(D12, "0,1")


@given(st.sampled_from(CORPUS), st.data())
def test_criterion_matches_definition(G, data):
    H = data.draw(st.sampled_from(G.subgroups))
    ids = data.draw(st.sets(st.integers(0, len(G.classes) - 1)))
    kind = data.draw(st.sampled_from([PERFECT, TOTAL]))
    X = normal_subset(G, ids)
    verdict = criterion(G, H, X, kind)
    assert verdict == definitional(build_cs_graph(G, X), H.mask, kind)
    if verdict and kind == TOTAL:
        assert H.order % 2 == 0
