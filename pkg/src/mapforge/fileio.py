"""Plain-text flag file format.

Canonical form, written byte-for-byte by write_flag_text:

    rank 2
    flags 8
    r0: 1 0 3 2 5 4 7 6
    r1: 7 2 1 4 3 6 5 0
    r2: 5 4 7 6 1 0 3 2

Lines starting with '#' and blank lines are skipped on input.  Flags are
0-based.  Everything else is rejected with a line/column diagnostic.
"""

from __future__ import annotations

from .errors import FlagFileError
from .flagsys import FlagSystem, validate

__all__ = ["parse_flag_text", "write_flag_text", "read_flag_file", "write_flag_file"]


def _significant_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, raw


def _int_field(token: str, lineno: int, column: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FlagFileError(lineno, column, f"expected integer {what}, got {token!r}") from None


def parse_flag_text(text: str) -> FlagSystem:
    """Parse and validate a flag file; raises FlagFileError on bad syntax."""
    lines = list(_significant_lines(text))
    pos = 0

    def take(expect: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 1
            raise FlagFileError(last, None, f"unexpected end of file, expected {expect}")
        item = lines[pos]
        pos += 1
        return item

    lineno, raw = take("'rank <n>'")
    parts = raw.split()
    if len(parts) != 2 or parts[0] != "rank":
        raise FlagFileError(lineno, raw.index(parts[0]) + 1 if parts else 1,
                            f"expected 'rank <n>', got {raw.strip()!r}")
    rank = _int_field(parts[1], lineno, raw.index(parts[1]) + 1, "rank")
    if rank < 1:
        raise FlagFileError(lineno, raw.index(parts[1]) + 1, f"rank must be >= 1, got {rank}")

    lineno, raw = take("'flags <N>'")
    parts = raw.split()
    if len(parts) != 2 or parts[0] != "flags":
        raise FlagFileError(lineno, 1, f"expected 'flags <N>', got {raw.strip()!r}")
    count = _int_field(parts[1], lineno, raw.index(parts[1]) + 1, "flag count")
    if count < 1:
        raise FlagFileError(lineno, raw.index(parts[1]) + 1,
                            f"flag count must be >= 1, got {count}")

    connections = []
    for i in range(rank + 1):
        lineno, raw = take(f"'r{i}: ...'")
        head, sep, rest = raw.partition(":")
        if not sep or head.strip() != f"r{i}":
            raise FlagFileError(lineno, 1,
                                f"expected connection line 'r{i}: ...', got {raw.strip()!r}")
        tokens = rest.split()
        if len(tokens) != count:
            raise FlagFileError(lineno, len(head) + 2,
                                f"connection r{i} lists {len(tokens)} images, expected {count}")
        row = []
        column = len(head) + 2
        for tok in tokens:
            column = raw.index(tok, column - 1) + 1
            row.append(_int_field(tok, lineno, column, "flag image"))
            column += len(tok)
        connections.append(row)

    if pos < len(lines):
        lineno, raw = lines[pos]
        raise FlagFileError(lineno, 1, f"trailing content {raw.strip()!r}")
    return validate(rank, count, connections)


def write_flag_text(system: FlagSystem) -> str:
    """Canonical text form; parse(write(M)) round-trips byte-for-byte."""
    out = [f"rank {system.rank}", f"flags {system.flag_count}"]
    for i, conn in enumerate(system.connections):
        out.append(f"r{i}: " + " ".join(str(int(v)) for v in conn))
    return "\n".join(out) + "\n"


def read_flag_file(path: str) -> FlagSystem:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FlagFileError(None, None, f"cannot read {path}: {exc.strerror}") from None
    return parse_flag_text(text)


def write_flag_file(system: FlagSystem, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_flag_text(system))
