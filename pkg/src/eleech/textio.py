"""The ``a,b`` text format for vectors and matrices over Z[w].

One row per line, whitespace-separated entries, each entry ``a,b`` for
a + w b; blank lines and ``#`` comments are skipped.  Negation replaces
any overline notation on input.
"""

from __future__ import annotations

from .rings import Eis


def parse_entry(tok: str) -> Eis:
    a, b = tok.split(",")
    return Eis(int(a), int(b))


def parse_matrix(text: str):
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(tuple(parse_entry(t) for t in line.split()))
    return tuple(rows)


def format_vector(v) -> str:
    return " ".join(f"{x.a},{x.b}" for x in v)


def format_matrix(m) -> str:
    return "\n".join(format_vector(row) for row in m) + "\n"
