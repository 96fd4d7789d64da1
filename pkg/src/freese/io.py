"""Text formats: algebra files and partition literals.

Both formats are 1-indexed, matching how partitions are usually written
by hand (``|1,2|3,4|5,6|``).  Everything in memory is 0-indexed.

Algebra file::

    algebra <name>
    size <n>
    op <name> <arity>
    <n^arity integers in 1..n, row-major, any whitespace>
    endop
    end

Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import re

import numpy as np

from .algebra import Congruence, FiniteAlgebra, Operation
from .errors import DomainError, ParseError

_PARTITION_RE = re.compile(r"^\|(?:\s*\d+\s*(?:,\s*\d+\s*)*\|)*$")


def parse_partition(text: str, n: int) -> Congruence:
    """Parse ``|a,b,c|d,e|``; omitted elements are singletons."""
    s = text.strip()
    if s in ("|", "||", "0"):
        return Congruence.identity(n)
    if not _PARTITION_RE.match(s):
        raise ParseError(f"malformed partition literal {text!r}")
    blocks = []
    for chunk in s.strip("|").split("|"):
        members = [int(tok) for tok in chunk.split(",")]
        for m in members:
            if not 1 <= m <= n:
                raise ParseError(f"element {m} outside 1..{n} in {text!r}")
        blocks.append([m - 1 for m in members])
    seen = set()
    for block in blocks:
        for m in block:
            if m in seen:
                raise ParseError(f"element {m + 1} listed twice in {text!r}")
            seen.add(m)
    return Congruence.from_blocks(n, blocks)


def format_partition(theta: Congruence) -> str:
    blocks = [c for c in theta.classes() if len(c) > 1]
    if not blocks:
        return "|"
    return "|" + "|".join(",".join(str(x + 1) for x in c) for c in blocks) + "|"


def format_pair(a: int, b: int) -> str:
    return f"({a + 1},{b + 1})"


def parse_algebra(text: str) -> FiniteAlgebra:
    name = None
    size = None
    ops = []
    current = None          # [name, arity, entries, start_line]
    ended = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ended:
            raise ParseError("content after 'end'", lineno)
        words = line.split()
        if current is not None:
            if words[0] == "endop":
                ops.append(_finish_op(current, size, lineno))
                current = None
                continue
            for w in words:
                try:
                    v = int(w)
                except ValueError:
                    raise ParseError(f"expected an integer, got {w!r}", lineno) from None
                if not 1 <= v <= size:
                    raise ParseError(f"table entry {v} out of range 1..{size}", lineno)
                current[2].append(v - 1)
            continue
        kw = words[0]
        if kw == "algebra":
            if name is not None:
                raise ParseError("duplicate 'algebra' line", lineno)
            name = " ".join(words[1:]) or "A"
        elif kw == "size":
            if name is None:
                raise ParseError("'size' before 'algebra'", lineno)
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise ParseError("expected 'size <positive integer>'", lineno)
            size = int(words[1])
        elif kw == "op":
            if size is None:
                raise ParseError("'op' before 'size'", lineno)
            if len(words) != 3 or not words[2].isdigit():
                raise ParseError("expected 'op <name> <arity>'", lineno)
            current = [words[1], int(words[2]), [], lineno]
        elif kw == "end":
            ended = True
        else:
            raise ParseError(f"unexpected keyword {kw!r}", lineno)
    if current is not None:
        raise ParseError(f"operation {current[0]!r} missing 'endop'", current[3])
    if name is None or size is None:
        raise ParseError("missing 'algebra' or 'size' header")
    if not ended:
        raise ParseError("missing 'end'")
    return FiniteAlgebra(name, size, tuple(ops))


def _finish_op(current, size, lineno) -> Operation:
    name, arity, entries, start = current
    expected = size ** arity
    if len(entries) != expected:
        raise ParseError(f"operation {name!r} has {len(entries)} entries, expected {expected}",
                         lineno)
    table = np.array(entries, dtype=np.int64).reshape((size,) * arity)
    return Operation(name, arity, table)


def emit_algebra(algebra: FiniteAlgebra) -> str:
    out = [f"algebra {algebra.name}", f"size {algebra.size}"]
    for op in algebra.ops:
        out.append(f"op {op.name} {op.arity}")
        flat = (np.asarray(op.table).ravel() + 1).tolist()
        row = algebra.size if op.arity >= 1 else 1
        for i in range(0, len(flat), row):
            out.append(" ".join(str(v) for v in flat[i:i + row]))
        out.append("endop")
    out.append("end")
    return "\n".join(out) + "\n"


def read_algebra(path) -> FiniteAlgebra:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_algebra(fh.read())
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
