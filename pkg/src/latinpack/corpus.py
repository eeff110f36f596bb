"""Plain-text matrix corpora.

Each block is the order n on its own line followed by n rows of n
space-separated integers.  Blocks are separated by one blank line and lines
starting with ``#`` are comments.  A leading ``# source: ...`` comment carries
the corpus origin through a round trip.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .perm_core import Matrix

SOURCE_PREFIX = "# source: "


class CorpusError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass
class MatrixCorpus:
    matrices: list[Matrix] = field(default_factory=list)
    source: str = ""


def render_matrix(m: Matrix) -> str:
    return f"{len(m)}\n" + "".join(" ".join(map(str, row)) + "\n" for row in m)


def render_corpus(corpus: MatrixCorpus | Iterable[Matrix]) -> str:
    if not isinstance(corpus, MatrixCorpus):
        corpus = MatrixCorpus(list(corpus))
    head = f"{SOURCE_PREFIX}{corpus.source}\n" if corpus.source else ""
    return head + "\n".join(render_matrix(m) for m in corpus.matrices)


def _ints(text: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise CorpusError(lineno, f"non-integer token in {text.strip()!r}") from None


def parse_corpus(text: str) -> MatrixCorpus:
    corpus = MatrixCorpus()
    pending: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            if raw.startswith(SOURCE_PREFIX) and not corpus.matrices and not pending:
                corpus.source = raw[len(SOURCE_PREFIX):]
            continue
        if line:
            pending.append((lineno, line))
            continue
        if pending:
            corpus.matrices.append(_parse_block(pending))
            pending = []
    if pending:
        corpus.matrices.append(_parse_block(pending))
    return corpus


def _parse_block(block: list[tuple[int, str]]) -> Matrix:
    lineno, head = block[0]
    header = _ints(head, lineno)
    if len(header) != 1 or header[0] < 1:
        raise CorpusError(lineno, f"expected a positive matrix order, got {head!r}")
    n = header[0]
    body = block[1:]
    if len(body) != n:
        at = body[-1][0] if body else lineno
        raise CorpusError(at, f"matrix of order {n} has {len(body)} rows")
    rows = []
    for lineno, text in body:
        row = _ints(text, lineno)
        if len(row) != n:
            raise CorpusError(lineno, f"ragged row: {len(row)} entries, expected {n}")
        bad = [x for x in row if not 1 <= x <= n]
        if bad:
            raise CorpusError(lineno, f"entry {bad[0]} lies outside 1..{n}")
        rows.append(tuple(row))
    return tuple(rows)


def read_corpus(path: str) -> MatrixCorpus:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh.read())
