"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py`` (lines printed directly).
"""

import io
import sys
import time
from contextlib import redirect_stdout

from cayleysum import classify, suites
from cayleysum.cli import main
from cayleysum.codes import PERFECT, index_equation_holds, necessary_conditions, pc_criterion
from cayleysum.corpus import ACCEPTANCE_CORPUS, parse_descriptor
from cayleysum.graphs import normal_subset

RESULTS: dict[int, tuple[bool, str, str]] = {}

NAMES = {
    1: "oracle equivalence",
    2: "connectivity equivalence",
    3: "dihedral classification",
    4: "AGL classification",
    5: "abelian decisions",
    6: "bridge and obstruction",
    7: "exact index equation",
    8: "determinism",
}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, NAMES[n], detail)


def report_lines() -> list[str]:
    return [f"criterion {n} [{'PASS' if ok else 'FAIL'}] {name}: {detail}" for n, (ok, name, detail) in sorted(RESULTS.items())]


def test_criterion_1_oracle_equivalence():
    t0 = time.perf_counter()
    res = suites.oracle_suite(ACCEPTANCE_CORPUS, jobs=1)
    dt = time.perf_counter() - t0
    ok = res.info["mismatches"] == 0 and res.info["tested"] > 0 and dt < 60
    record(1, ok, f"{res.info['tested']} triples, {res.info['mismatches']} mismatches, {dt:.1f}s (< 60s)")
    assert ok


def test_criterion_2_connectivity_equivalence():
    res = suites.connectivity_suite(ACCEPTANCE_CORPUS)
    modes = {r["group"]: r["mode"] for r in res.records if r["type"] == "group"}
    ok = res.failed == 0 and len(modes) == len(ACCEPTANCE_CORPUS)
    record(2, ok, f"{res.passed + res.failed} normal subsets, {res.failed} mismatches, "
                  f"{sum(m == 'sampled' for m in modes.values())} groups sampled")
    assert ok


def test_criterion_3_dihedral_classification():
    t0 = time.perf_counter()
    bad = []
    total = 0
    for n in range(1, 17):
        for kind in ("perfect", "total-perfect"):
            rep = classify.verify_dihedral_classification(n, kind)
            total += len(rep.matched)
            if not rep.ok:
                bad.append((n, kind, len(rep.extra), len(rep.missing)))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 120
    record(3, ok, f"2n <= 32 both kinds, {total} matched pairs, nonempty diffs {bad}, {dt:.1f}s (< 120s)")
    assert ok


def test_criterion_4_agl_classification():
    problems = []
    reported = []
    for q in (3, 4, 5, 7, 8):
        for kind in ("perfect", "total-perfect"):
            rep = classify.verify_agl_classification(q, kind)
            if rep.missing or not rep.info["canonical_in_found"]:
                problems.append(f"unsound q={q} {kind}")
            if q <= 5 and not rep.ok:
                problems.append(f"incomplete q={q} {kind}")
            if q > 5:
                reported.append(f"q={q} {kind[0]}: extra={len(rep.extra)}")
    for q in (3, 4, 5, 7, 8, 9):
        if not classify.frobenius_partition_check(q):
            problems.append(f"partition q={q}")
        if not classify.lemma_length_check(q):
            problems.append(f"class lengths q={q}")
    ok = not problems
    record(4, ok, f"q<=5 diffs empty, q in 7,8 sound ({', '.join(reported)}); partition and class-length checks q<=9; problems {problems}")
    assert ok


def test_criterion_5_abelian_decisions():
    """Constructive witness, regular decisions (literal conditions) and the even-order verdict.

    The literal regular total-code condition admits H = Phi(Q)K, which
    consists of squares; a square-free Y cannot contain its common element
    with H then.  Expected to fail on groups such as C4 with H = {0, 2}.
    """
    construct_bad = regular_pc_bad = even_bad = 0
    stated_bad = []
    for desc in classify.abelian_descriptors(16):
        G = parse_descriptor(desc)
        for H in G.subgroups:
            X = classify.abelian_pc_construct(G, H)
            if not pc_criterion(G, H, X):
                construct_bad += 1
            brute_pc = classify.exhaustive_regular_code(G, H, PERFECT) is not None
            if classify.abelian_regular_pc_decide(G, H)[0] != brute_pc:
                regular_pc_bad += 1
            brute_tpc = classify.exhaustive_regular_code(G, H, "total-perfect") is not None
            if classify.stated_regular_tpc_condition(G, H) != brute_tpc:
                stated_bad.append(f"{G.label}:{list(H.members)}")
            if classify.abelian_tpc_decide(G, H)[0] != (H.order % 2 == 0):
                even_bad += 1
    ok = not (construct_bad or regular_pc_bad or even_bad or stated_bad)
    record(5, ok, f"construct failures {construct_bad}, regular-perfect disagreements {regular_pc_bad}, "
                  f"regular-total (literal condition) disagreements {len(stated_bad)} "
                  f"e.g. {stated_bad[:3]}, even-order disagreements {even_bad}")
    assert ok


def test_abelian_regular_total_decision_corrected():
    # the shipped decision procedure (nonsquare of G in H) agrees with brute force everywhere
    for desc in classify.abelian_descriptors(16):
        G = parse_descriptor(desc)
        for H in G.subgroups:
            brute = classify.exhaustive_regular_code(G, H, "total-perfect") is not None
            assert classify.abelian_tpc_decide(G, H, regular=True)[0] == brute


def test_criterion_6_bridge_and_obstruction():
    bridge = suites.bridge_suite(ACCEPTANCE_CORPUS)
    obstruction = suites.obstruction_suite(ACCEPTANCE_CORPUS)
    ok = bridge.ok and obstruction.ok and bridge.passed > 0 and obstruction.passed > 0
    record(6, ok, f"bridge {bridge.passed}/{bridge.passed + bridge.failed} normal subgroups, "
                  f"obstruction {obstruction.passed}/{obstruction.passed + obstruction.failed} (subgroup, kind) pairs empty")
    assert ok


def test_d12_index_equation_regression():
    # 1/6 + 1/2 + 1/3 = 1, times 12: 2 + 6 + 4 = 12
    G = parse_descriptor("D12")
    H = G.subgroup([0, 3])
    X = normal_subset(G, [1, 4])
    assert index_equation_holds(G, H, X, PERFECT)
    assert necessary_conditions(G, H, X, PERFECT) == []
    assert 2 + 2 * 3 + 2 * 2 == 12


def test_criterion_7_exact_index_equation():
    res = suites.oracle_suite(ACCEPTANCE_CORPUS)
    G = parse_descriptor("D12")
    d12 = index_equation_holds(G, G.subgroup([0, 3]), normal_subset(G, [1, 4]), PERFECT)
    ok = res.info["equation_failures"] == 0 and res.info["equation_checked"] > 0 and d12
    record(7, ok, f"{res.info['equation_checked']} true certificates with normal H, "
                  f"{res.info['equation_failures']} failures; D12 1/6+1/2+1/3=1 {'holds' if d12 else 'fails'}")
    assert ok


def _capture(argv: list[str]) -> bytes:
    buf = io.StringIO()
    with redirect_stdout(buf):
        main(argv)
    return buf.getvalue().encode()


def test_criterion_8_determinism():
    commands = [
        ["search", "--group", "D16", "--kind", "both", "--format", "json-lines"],
        ["search", "--group", "AGL1(7)", "--kind", "both", "--format", "json-lines"],
        ["search", "--group", "C2xC6", "--kind", "both", "--connected-only", "--format", "text"],
        ["verify", "--suite", "dihedral", "--format", "json-lines"],
        ["verify", "--suite", "agl", "--q", "3,4,5", "--format", "json-lines"],
        ["verify", "--suite", "oracle", "--groups", "D12 AGL1(5) C2xC4", "--format", "text"],
    ]
    differing = []
    for argv in commands:
        outs = {_capture(argv + ["--jobs", j]) for j in ("1", "8", "1", "8")}
        if len(outs) != 1:
            differing.append(" ".join(argv[:3]))
    ok = not differing
    record(8, ok, f"{len(commands)} commands x jobs 1/8 twice, differing {differing}")
    assert ok


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for t in tests:
        try:
            t()
        except AssertionError:
            pass
    print("\n".join(report_lines()))
    sys.exit(0 if all(ok for ok, _, _ in RESULTS.values()) else 1)
