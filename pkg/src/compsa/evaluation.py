"""Labeled corpora, accuracy and cumulative rule ablation."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .deptree import ConllError, DepSentence, TreeError, parse_conll
from .engine import NEGATIVE, POSITIVE, analyze_document
from .lexicon import LexiconBundle
from .report import align
from .ruleset import OperationSpec, builtin_universal_rules, select_rules

LABELS = {"positive": POSITIVE, "pos": POSITIVE, "negative": NEGATIVE, "neg": NEGATIVE}

# cumulative subsets; the intensification row carries the adversative rule too
ABLATION_STEPS = (
    ("baseline", ()),
    ("+negation", ("negation",)),
    ("+intensification", ("negation", "intensification", "but")),
    ("+irrealis", ("negation", "intensification", "but", "irrealis")),
)

REPORT_NOTE = "+intensification includes the adversative ('but') clause rule"


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledDocument:
    id: str
    gold: str
    sentences: tuple[DepSentence, ...]


@dataclass
class AblationReport:
    rows: dict[str, float]
    total: int

    def table(self) -> str:
        body = align([(name, f"{100 * acc:.2f}") for name, acc in self.rows.items()],
                     ("rules", "accuracy (%)"))
        return f"# {REPORT_NOTE}\n# documents: {self.total}\n{body}"

    def records(self) -> str:
        lines = [f"documents={self.total}"]
        lines += [f"{name}={acc!r}" for name, acc in self.rows.items()]
        return "\n".join(lines) + "\n"


def load_corpus(manifest) -> list[LabeledDocument]:
    """Read a tab-separated ``id, label, path`` manifest; paths are relative to it."""
    manifest = Path(manifest)
    try:
        lines = manifest.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise CorpusError(f"cannot read {manifest}: {exc.strerror or exc}") from None
    docs = []
    seen = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip() or line.startswith("#"):
            continue
        where = f"{manifest}:{lineno}"
        parts = line.split("\t") if "\t" in line else line.split()
        if len(parts) != 3:
            raise CorpusError(f"{where}: expected id, label and path")
        doc_id, label, rel = (p.strip() for p in parts)
        gold = LABELS.get(label.lower())
        if gold is None:
            raise CorpusError(f"{where}: bad label {label!r}")
        if doc_id in seen:
            raise CorpusError(f"{where}: duplicate document id {doc_id!r}")
        seen.add(doc_id)
        path = manifest.parent / rel
        try:
            text = path.read_text(encoding="utf-8")
        except OSError:
            raise CorpusError(f"{where}: missing file {path}") from None
        try:
            sentences = parse_conll(text)
        except (ConllError, TreeError) as exc:
            raise CorpusError(f"{path}: {exc}") from None
        if not sentences:
            raise CorpusError(f"{where}: {path} holds no sentences")
        docs.append(LabeledDocument(doc_id, gold, tuple(sentences)))
    return docs


def _predict(args):
    doc, rules, lex = args
    return doc.id, analyze_document(doc.sentences, rules, lex, doc.id).polarity


def predict(corpus: Sequence[LabeledDocument], rules: Iterable[OperationSpec],
            lex: LexiconBundle, jobs: int = 1) -> dict[str, str]:
    """Predicted polarity per document id."""
    rules = tuple(rules)
    work = [(doc, rules, lex) for doc in corpus]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_predict, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        results = [_predict(w) for w in work]
    return dict(sorted(results))


def evaluate(corpus: Sequence[LabeledDocument], rules: Iterable[OperationSpec],
             lex: LexiconBundle, jobs: int = 1) -> float:
    if not corpus:
        raise CorpusError("empty corpus")
    predicted = predict(corpus, rules, lex, jobs)
    correct = sum(predicted[doc.id] == doc.gold for doc in corpus)
    return correct / len(corpus)


def ablation(corpus: Sequence[LabeledDocument], lex: LexiconBundle,
             rules: Iterable[OperationSpec] | None = None, jobs: int = 1) -> AblationReport:
    """Accuracy for the cumulative rule subsets baseline, +negation,
    +intensification and +irrealis, selected by operation name."""
    if not corpus:
        raise CorpusError("empty corpus")
    rules = tuple(builtin_universal_rules(lex) if rules is None else rules)
    rows = {name: evaluate(corpus, select_rules(rules, names), lex, jobs)
            for name, names in ABLATION_STEPS}
    return AblationReport(rows, len(corpus))
