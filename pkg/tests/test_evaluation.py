import random

import pytest

from compsa.engine import analyze_document
from compsa.evaluation import (ABLATION_STEPS, CorpusError, LabeledDocument, ablation, evaluate,
                               load_corpus, predict)
from compsa.lexicon import LexiconBundle
from compsa.ruleset import builtin_universal_rules

from helpers import random_sentence, rng as make_rng


@pytest.fixture(scope="module")
def corpus(data_dir):
    return load_corpus(data_dir / "corpus" / "corpus.tsv")


def test_load_corpus(corpus):
    assert [(d.id, d.gold, len(d.sentences)) for d in corpus] == [
        ("negated", "negative", 1), ("plain", "positive", 1),
        ("contrast", "positive", 1), ("conditional", "negative", 1)]


def test_corpus_errors(tmp_path, data_dir):
    (tmp_path / "a.conll").write_text("1\tgood\tADJ\t0\troot\n")
    bad = tmp_path / "m.tsv"
    bad.write_text("a\tpositive\ta.conll\nb\tnegative\tmissing.conll\n")
    with pytest.raises(CorpusError, match=r"m.tsv:2: missing file"):
        load_corpus(bad)
    bad.write_text("a\tmeh\ta.conll\n")
    with pytest.raises(CorpusError, match=r"m.tsv:1: bad label 'meh'"):
        load_corpus(bad)
    bad.write_text("a\tpos\ta.conll\na\tneg\ta.conll\n")
    with pytest.raises(CorpusError, match="duplicate document id"):
        load_corpus(bad)
    with pytest.raises(CorpusError):
        evaluate([], (), LexiconBundle())


def test_ablation_rows(corpus, toy_lexicon):
    report = ablation(corpus, toy_lexicon)
    # each fixture document is fixed by exactly one rule family
    assert report.rows == {"baseline": 0.25, "+negation": 0.5,
                           "+intensification": 0.75, "+irrealis": 1.0}
    assert list(report.rows) == [name for name, _ in ABLATION_STEPS]
    assert report.records().splitlines()[0] == "documents=4"
    table = report.table()
    assert "adversative" in table.splitlines()[0]
    assert table.rstrip().endswith("+irrealis         100.00")


def _synthetic(seed, n=30):
    r = make_rng(seed)
    docs = []
    for k in range(n):
        sents = tuple(random_sentence(r) for _ in range(r.randint(1, 3)))
        docs.append(LabeledDocument(f"d{k:03d}", r.choice(["positive", "negative"]), sents))
    return docs


def test_accuracy_extremes(toy_lexicon):
    rules = builtin_universal_rules(toy_lexicon)
    docs = _synthetic(1)
    truth = [LabeledDocument(d.id, analyze_document(d.sentences, rules, toy_lexicon).polarity,
                             d.sentences) for d in docs]
    flipped = [LabeledDocument(d.id, "positive" if d.gold == "negative" else "negative",
                               d.sentences) for d in truth]
    assert evaluate(truth, rules, toy_lexicon) == 1.0
    assert evaluate(flipped, rules, toy_lexicon) == 0.0


def test_lexicon_free_ablation_is_flat():
    lex = LexiconBundle(negators=frozenset({"not"}), adversatives=frozenset({"but"}),
                        irrealis=frozenset({"if"}), intensifiers={"very": 0.5})
    report = ablation(_synthetic(2), lex)
    assert len(set(report.rows.values())) == 1


def test_permutation_and_jobs_invariance(toy_lexicon):
    rules = builtin_universal_rules(toy_lexicon)
    docs = _synthetic(3, n=40)
    shuffled = list(docs)
    random.Random(0).shuffle(shuffled)
    base = predict(docs, rules, toy_lexicon)
    assert predict(shuffled, rules, toy_lexicon) == base
    assert predict(docs, rules, toy_lexicon, jobs=2) == base
    assert ablation(docs, toy_lexicon).rows == ablation(shuffled, toy_lexicon, jobs=2).rows
