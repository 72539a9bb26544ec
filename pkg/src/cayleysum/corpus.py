"""Group descriptor strings and the standard test corpus.

Grammar::

    group  := factor ("x" factor)*
    factor := "C" INT | "D" EVEN_INT | "AGL1(" INT ")"

``D12`` is the dihedral group of order 12.  Products are built left to right.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .groups import GroupError, GroupTable, make_agl1_q, make_cyclic, make_dihedral, make_direct_product


class DescriptorError(GroupError):
    def __init__(self, text: str, pos: int, reason: str):
        token = text[pos:].split("x")[0] or "<end>"
        super().__init__(f"{reason} at position {pos} (token {token!r}) in {text!r}")
        self.pos = pos


_FACTOR = re.compile(r"C(\d+)|D(\d+)|AGL1\((\d+)\)")


def _factor(text: str, pos: int) -> tuple[GroupTable, int]:
    m = _FACTOR.match(text, pos)
    if not m:
        raise DescriptorError(text, pos, "expected C<n>, D<2n> or AGL1(<q>)")
    try:
        if m.group(1) is not None:
            g = make_cyclic(int(m.group(1)))
        elif m.group(2) is not None:
            order = int(m.group(2))
            if order % 2 or order == 0:
                raise DescriptorError(text, pos, "dihedral order must be a positive even literal")
            g = make_dihedral(order // 2)
        else:
            g = make_agl1_q(int(m.group(3)))
    except DescriptorError:
        raise
    except GroupError as e:
        raise DescriptorError(text, pos, str(e)) from None
    return g, m.end()


@lru_cache(maxsize=None)
def parse_descriptor(text: str) -> GroupTable:
    """Build the group named by a descriptor; results are cached per string."""
    s = text.strip()
    if not s:
        raise DescriptorError(text, 0, "empty descriptor")
    g, pos = _factor(s, 0)
    while pos < len(s):
        if s[pos] != "x":
            raise DescriptorError(s, pos, "expected 'x'")
        h, pos = _factor(s, pos + 1)
        try:
            g = make_direct_product(g, h)
        except GroupError as e:
            raise DescriptorError(s, pos, str(e)) from None
    return g


ACCEPTANCE_CORPUS: tuple[str, ...] = (
    *(f"C{n}" for n in range(1, 17)),
    "C2xC2",
    "C2xC4",
    "C2xC2xC2",
    "C3xC3",
    "C2xC6",
    *(f"D{2 * n}" for n in range(1, 9)),
    "AGL1(3)",
    "AGL1(4)",
    "AGL1(5)",
    "AGL1(7)",
)


def corpus_groups(descriptors=ACCEPTANCE_CORPUS) -> list[GroupTable]:
    return [parse_descriptor(d) for d in descriptors]
