"""Dependency trees over tagged sentences, CoNLL ingestion and tree context functions.

Node 0 is a dummy root heading the syntactic root(s) of the sentence; words
are numbered 1..n in linear order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

ROOT = 0

_NEWDOC_RE = re.compile(r"^#\s*newdoc(?:\s+id\s*=\s*(.*))?$")


class ConllError(ValueError):
    """A malformed CoNLL line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class TreeError(ValueError):
    """Head assignments that do not form a single tree rooted at node 0."""


@dataclass(frozen=True)
class TaggedToken:
    index: int
    form: str
    upos: str
    head: int
    deprel: str
    lemma: str | None = None

    def __post_init__(self):
        if self.index < 1:
            raise TreeError(f"token index must be >= 1, got {self.index}")
        if self.head < 0:
            raise TreeError(f"token {self.index}: negative head {self.head}")
        if self.head == self.index:
            raise TreeError(f"token {self.index} is its own head")
        if not self.upos or not self.deprel:
            raise TreeError(f"token {self.index}: empty PoS tag or dependency type")


@dataclass(frozen=True)
class DepSentence:
    """An immutable dependency-parsed sentence.

    ``tokens[k]`` holds word ``k + 1``. Construction validates that the head
    relation is a tree rooted at node 0.
    """

    tokens: tuple[TaggedToken, ...]
    sent_id: str | None = None
    _children: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tokens = tuple(self.tokens)
        object.__setattr__(self, "tokens", tokens)
        n = len(tokens)
        label = f"sentence {self.sent_id}" if self.sent_id else "sentence"
        for k, tok in enumerate(tokens, start=1):
            if tok.index != k:
                raise TreeError(f"{label}: token indices must be contiguous 1..{n}, "
                                f"found {tok.index} at position {k}")
            if tok.head > n:
                raise TreeError(f"{label}: token {k} has head {tok.head} outside 0..{n}")
        kids: list[list[int]] = [[] for _ in range(n + 1)]
        for tok in tokens:
            kids[tok.head].append(tok.index)
        object.__setattr__(self, "_children", tuple(tuple(c) for c in kids))
        # every node must reach 0 by following heads
        state = [0] * (n + 1)  # 0 unseen, 1 on current path, 2 reaches root
        state[0] = 2
        for start in range(1, n + 1):
            path = []
            i = start
            while state[i] == 0:
                state[i] = 1
                path.append(i)
                i = tokens[i - 1].head
            if state[i] == 1:
                raise TreeError(f"{label}: cycle through token {i}")
            for j in path:
                state[j] = 2

    def __len__(self):
        return len(self.tokens)

    @property
    def nodes(self) -> range:
        return range(len(self.tokens) + 1)

    def token(self, i: int) -> TaggedToken:
        if i < 1:
            raise IndexError("node 0 has no token")
        return self.tokens[i - 1]

    def head(self, i: int) -> int | None:
        return None if i == ROOT else self.tokens[i - 1].head

    def form(self, i: int) -> str:
        return "ROOT" if i == ROOT else self.tokens[i - 1].form

    def index_of(self, form: str, occurrence: int = 1) -> int:
        """Index of the ``occurrence``-th token whose form equals ``form``."""
        seen = 0
        for tok in self.tokens:
            if tok.form == form:
                seen += 1
                if seen == occurrence:
                    return tok.index
        raise KeyError(form)

    @property
    def text(self) -> str:
        return " ".join(t.form for t in self.tokens)


def ancestor(s: DepSentence, i: int, delta: int) -> frozenset[int]:
    """The singleton holding the ``delta``-th ancestor of ``i``, or the empty set."""
    for _ in range(delta):
        if i == ROOT:
            return frozenset()
        i = s.tokens[i - 1].head
    return frozenset((i,))


def children(s: DepSentence, i: int) -> tuple[int, ...]:
    """Children of ``i`` in ascending index order."""
    return s._children[i]


def lm_branch(s: DepSentence, i: int, deprel: str) -> frozenset[int]:
    deprel = deprel.lower()
    for j in s._children[i]:
        if s.tokens[j - 1].deprel.lower() == deprel:
            return frozenset((j,))
    return frozenset()


def postorder(s: DepSentence) -> list[int]:
    """Children before heads, siblings left to right, node 0 last."""
    order: list[int] = []
    stack: list[tuple[int, int]] = [(ROOT, 0)]
    kids = s._children
    while stack:
        node, k = stack.pop()
        if k < len(kids[node]):
            stack.append((node, k + 1))
            stack.append((kids[node][k], 0))
        else:
            order.append(node)
    return order


# --------------------------------------------------------------------------
# CoNLL reading and writing


def _split_columns(line: str) -> list[str]:
    if "\t" in line:
        return line.split("\t")
    return line.split()


def _token_from_columns(cols: list[str], lineno: int) -> TaggedToken | None:
    """Build a token from one line; None for multiword ranges and empty nodes."""
    if not cols or not cols[0]:
        raise ConllError("missing ID column", lineno)
    ident = cols[0]
    if "-" in ident or "." in ident:
        return None
    if len(cols) >= 8:
        # CoNLL-X / CoNLL-U: ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL ...
        form, lemma, upos, head, deprel = cols[1], cols[2], cols[3], cols[6], cols[7]
    elif len(cols) == 6:
        form, lemma, upos, head, deprel = cols[1], cols[2], cols[3], cols[4], cols[5]
    elif len(cols) == 5:
        form, lemma, upos, head, deprel = cols[1], None, cols[2], cols[3], cols[4]
    else:
        raise ConllError(f"expected 5, 6 or at least 8 columns, got {len(cols)}", lineno)
    try:
        index = int(ident)
    except ValueError:
        raise ConllError(f"non-integer ID {ident!r}", lineno) from None
    try:
        head_idx = int(head)
    except ValueError:
        raise ConllError(f"non-integer HEAD {head!r}", lineno) from None
    if lemma in ("_", ""):
        lemma = None
    try:
        return TaggedToken(index=index, form=form, lemma=lemma, upos=upos,
                           head=head_idx, deprel=deprel)
    except TreeError as exc:
        raise TreeError(f"line {lineno}: {exc}") from None


@dataclass
class _Block:
    tokens: list[TaggedToken] = field(default_factory=list)
    first_line: int = 0
    sent_id: str | None = None
    doc_id: str | None = None


def _iter_blocks(lines: Iterable[str]) -> Iterator[_Block]:
    block = _Block()
    doc_id = None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            if block.tokens:
                yield block
            block = _Block(doc_id=doc_id)
            continue
        if line.startswith("#"):
            m = _NEWDOC_RE.match(line.strip())
            if m:
                doc_id = (m.group(1) or "").strip() or None
                block.doc_id = doc_id
            elif line.startswith("# sent_id"):
                block.sent_id = line.partition("=")[2].strip() or None
            continue
        if not block.tokens:
            block.first_line = lineno
        tok = _token_from_columns(_split_columns(line), lineno)
        if tok is not None:
            block.tokens.append(tok)
    if block.tokens:
        yield block


def _sentence(block: _Block) -> DepSentence:
    try:
        return DepSentence(tuple(block.tokens), sent_id=block.sent_id)
    except TreeError as exc:
        raise TreeError(f"sentence starting at line {block.first_line}: {exc}") from None


def parse_conll(text: str | Iterable[str]) -> list[DepSentence]:
    """Parse blank-line separated CoNLL-X/CoNLL-U blocks.

    Besides the 10-column layouts, compact 6-column (ID FORM LEMMA UPOS HEAD
    DEPREL) and 5-column (ID FORM UPOS HEAD DEPREL) lines are accepted.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    return [_sentence(b) for b in _iter_blocks(lines)]


def parse_conll_documents(text: str | Iterable[str], default_id: str = "doc1"
                          ) -> list[tuple[str, list[DepSentence]]]:
    """Group sentences into documents on ``# newdoc id = ...`` comments.

    Sentences before the first ``newdoc`` comment belong to ``default_id``.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    docs: list[tuple[str, list[DepSentence]]] = []
    current = None
    for block in _iter_blocks(lines):
        doc_id = block.doc_id or default_id
        if current is None or current != doc_id:
            docs.append((doc_id, []))
            current = doc_id
        docs[-1][1].append(_sentence(block))
    return docs


def read_conll(path) -> list[DepSentence]:
    with open(path, encoding="utf-8") as fh:
        return parse_conll(fh.read())


def serialize_conll(sentences: Iterable[DepSentence]) -> str:
    """Write sentences as 10-column CoNLL-U."""
    out = []
    for s in sentences:
        if s.sent_id:
            out.append(f"# sent_id = {s.sent_id}")
        for t in s.tokens:
            out.append("\t".join((str(t.index), t.form, t.lemma or "_", t.upos, "_", "_",
                                  str(t.head), t.deprel, "_", "_")))
        out.append("")
    return "\n".join(out) + ("\n" if out else "")
