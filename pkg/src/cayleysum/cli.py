"""Command-line front end: ``cayleysum group-info | search | verify``.

Every flag can also be set through an environment variable named
``CAYLEYSUM_<FLAG>`` (for example ``CAYLEYSUM_JOBS=4``); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .codes import PERFECT, TOTAL, BudgetExceeded, enumerate_admitting, subgroups_from_selector
from .corpus import DescriptorError, parse_descriptor
from .groups import GroupError, center
from .suites import SUITES, run_suite

ENV_PREFIX = "CAYLEYSUM_"
KINDS = {"pc": (PERFECT,), "tpc": (TOTAL,), "both": (PERFECT, TOTAL)}

EXIT_OK, EXIT_EMPTY, EXIT_ERROR = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    subgroup: str = "all"
    kind: str = "both"
    connected_only: bool = False
    suite: str | None = None
    out: str | None = None
    format: str = "text"
    jobs: int = 1
    budget: int | None = None
    n_max: int = 16
    q: list[int] = field(default_factory=list)
    groups: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")


def _dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def _text_record(record: dict) -> str:
    return " ".join(f"{k}={_dumps(v) if isinstance(v, (list, dict)) else v}" for k, v in record.items())


class Report:
    """Collects lines and writes them once, so output is never interleaved."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []

    def record(self, record: dict, text: str | None = None) -> None:
        if self.fmt == "json-lines":
            self.lines.append(_dumps(record))
        else:
            self.lines.append(text if text is not None else _text_record(record))

    def text(self, line: str) -> None:
        if self.fmt != "json-lines":
            self.lines.append(line)

    def emit(self, out: str | None) -> None:
        body = "".join(line + "\n" for line in self.lines)
        if out:
            with open(out, "w") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)


# --- commands ---------------------------------------------------------------------

def cmd_group_info(cfg: RunConfig) -> int:
    G = parse_descriptor(cfg.group)
    P = G.classes
    rep = Report(cfg.format)
    info = {
        "type": "group",
        "group": G.label,
        "order": G.n,
        "abelian": G.is_abelian,
        "center": list(center(G).members),
        "classes": [list(c) for c in P.classes],
        "class_sizes": list(P.sizes),
        "subgroups": len(G.subgroups),
        "squares": _members(G.squares_mask),
    }
    if cfg.format == "json-lines":
        rep.record(info)
    else:
        rep.text(f"group      {G.label}")
        rep.text(f"order      {G.n}")
        rep.text(f"abelian    {'yes' if G.is_abelian else 'no'}")
        rep.text(f"center     {info['center']} (size {len(info['center'])})")
        rep.text(f"squares    {info['squares']}")
        rep.text(f"subgroups  {info['subgroups']}")
        rep.text(f"classes    {len(P.classes)}")
        for i, c in enumerate(P.classes):
            rep.text(f"  {i:>3}  size {len(c):>3}  {list(c)}")
    rep.emit(cfg.out)
    return EXIT_OK


def _members(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def cmd_search(cfg: RunConfig) -> int:
    G = parse_descriptor(cfg.group)
    subs = subgroups_from_selector(G, cfg.subgroup)
    rep = Report(cfg.format)
    count = 0
    partial = False
    for kind in KINDS[cfg.kind]:
        for H in subs:
            try:
                found = enumerate_admitting(
                    G, H, kind, cfg.connected_only, budget=cfg.budget, jobs=cfg.jobs
                )
            except BudgetExceeded as e:
                found = e.partial
                partial = True
            for _, cert in found:
                count += 1
                rep.record({"type": "certificate", **cert.to_record()}, cert.to_text())
            if partial:
                break
        if partial:
            break
    summary = {
        "type": "summary",
        "command": "search",
        "group": G.label,
        "kind": cfg.kind,
        "connected_only": cfg.connected_only,
        "subgroups": len(subs),
        "results": count,
        "partial": partial,
    }
    rep.record(summary, "# " + _text_record(summary))
    rep.emit(cfg.out)
    if partial:
        return EXIT_ERROR
    return EXIT_OK if count else EXIT_EMPTY


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.suite not in SUITES:
        raise ValueError(f"unknown suite {cfg.suite!r}; choose from {', '.join(SUITES)}")
    res = run_suite(cfg.suite, jobs=cfg.jobs, descriptors=cfg.groups or None, n_max=cfg.n_max, qs=cfg.q or None)
    rep = Report(cfg.format)
    for r in res.records:
        if cfg.format == "json-lines" or r.get("type") != "certificate" or r.get("status") != "matched":
            rep.record(r)
    summary = res.summary()
    rep.record(summary, "# " + _text_record(summary))
    rep.emit(cfg.out)
    return EXIT_OK if res.ok else EXIT_EMPTY


COMMANDS = {"group-info": cmd_group_info, "search": cmd_search, "verify": cmd_verify}


# --- argument handling -----------------------------------------------------------------

def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _env_bool(name: str) -> bool:
    return str(_env(name, "")).lower() in {"1", "true", "yes", "on"}


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json-lines"), default=_env("format", "text"))
    common.add_argument("--out", default=_env("out"), help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=int(_env("jobs", 1)), help="worker processes")

    p = argparse.ArgumentParser(prog="cayleysum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    gi = sub.add_parser("group-info", parents=[common], help="order, center, classes and squares")
    gi.add_argument("--group", default=_env("group"), required=_env("group") is None)

    s = sub.add_parser("search", parents=[common], help="enumerate connection sets admitting subgroup codes")
    s.add_argument("--group", default=_env("group"), required=_env("group") is None)
    s.add_argument("--subgroup", default=_env("subgroup", "all"), help='member list such as "0,3", or "all"')
    s.add_argument("--kind", choices=tuple(KINDS), default=_env("kind", "both"))
    s.add_argument("--connected-only", action="store_true", default=_env_bool("connected_only"))
    b = _env("budget")
    s.add_argument("--budget", type=int, default=int(b) if b else None,
                   help="maximum candidate sets tested per subgroup and kind")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, default=_env("suite"), required=_env("suite") is None)
    v.add_argument("--n-max", type=int, default=int(_env("n_max", 16)), help="largest n for the dihedral suite")
    v.add_argument("--q", type=_int_list, default=_int_list(_env("q", "")), help='field sizes, e.g. "3,4,5"')
    v.add_argument("--groups", type=lambda t: t.split(), default=(_env("groups") or "").split(),
                   help="space-separated descriptors replacing the default corpus")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(**{k: v for k, v in vars(ns).items() if v is not None or k == "budget"})


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (DescriptorError, GroupError, ValueError, OSError) as e:
        print(f"cayleysum: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
