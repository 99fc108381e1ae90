"""Command-line interface.

    compsa analyze --lexicon LEX --input doc.conllu [--rules builtin] [--format records]
    compsa evaluate --lexicon LEX --input corpus.tsv [--ablation] [--figure out.png]
    compsa explain --lexicon LEX --input doc.conllu [--sentence 1] [--figure out.png]
    compsa validate-rules --rules rules.xml [--lexicon LEX]
    compsa emit-builtin-rules
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .deptree import ConllError, TreeError, parse_conll_documents
from .engine import analyze_document, analyze_sentence
from .evaluation import CorpusError, ablation, evaluate, load_corpus
from .lexicon import LexiconError, load_bundle
from .report import document_record, documents_table, render_trace
from .ruleset import (RuleError, builtin_universal_rules, describe, dump_rules_xml,
                      load_rules_xml, select_rules)

ERRORS = (ConllError, TreeError, LexiconError, RuleError, CorpusError, OSError)


def _rules(args, lex):
    if args.rules == "builtin":
        rules = builtin_universal_rules(lex)
    else:
        rules = load_rules_xml(args.rules, lex)
    if getattr(args, "rules_subset", None) is not None:
        rules = select_rules(rules, args.rules_subset.split(","))
    return rules


def _lexicon(args):
    if not args.lexicon:
        raise LexiconError("--lexicon is required for this command")
    return load_bundle(args.lexicon)


def _documents(paths):
    docs = []
    for p in paths:
        path = Path(p)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read {path}: {exc.strerror}") from None
        try:
            docs += parse_conll_documents(text, default_id=path.stem)
        except (ConllError, TreeError) as exc:
            raise type(exc)(f"{path}: {exc}") from None
    return docs


def cmd_analyze(args, out):
    lex = _lexicon(args)
    rules = _rules(args, lex)
    results = [analyze_document(sents, rules, lex, doc_id) for doc_id, sents in _documents(args.input)]
    if args.format == "table":
        out.write(documents_table(results))
    elif args.format == "trace":
        for doc in results:
            out.write(f"## {doc.doc_id}\n")
            for r in doc.sentences:
                out.write(render_trace(r.trace))
            out.write(document_record(doc) + "\n")
    else:
        for doc in results:
            out.write(document_record(doc) + "\n")


def cmd_evaluate(args, out):
    lex = _lexicon(args)
    corpus = []
    for p in args.input:
        corpus += load_corpus(p)
    if args.ablation:
        base = builtin_universal_rules(lex) if args.rules == "builtin" else load_rules_xml(args.rules, lex)
        report = ablation(corpus, lex, base, jobs=args.jobs)
        out.write(report.records() if args.format == "records" else report.table())
        if args.figure:
            from .plotting import plot_ablation
            plot_ablation(report, args.figure)
        return
    acc = evaluate(corpus, _rules(args, lex), lex, jobs=args.jobs)
    if args.format == "records":
        out.write(f"documents={len(corpus)}\naccuracy={acc!r}\n")
    else:
        out.write(f"documents: {len(corpus)}\naccuracy: {100 * acc:.2f}%\n")


def cmd_explain(args, out):
    lex = _lexicon(args)
    rules = _rules(args, lex)
    sentences = [s for _, sents in _documents(args.input) for s in sents]
    if not 1 <= args.sentence <= len(sentences):
        raise ConllError(f"sentence {args.sentence} out of range 1..{len(sentences)}")
    result = analyze_sentence(sentences[args.sentence - 1], rules, lex)
    out.write(render_trace(result.trace))
    out.write(f"sentence SO: {result.so:.6g}\n")
    if args.figure:
        from .plotting import plot_trace
        plot_trace(result.trace, args.figure)


def cmd_validate(args, out):
    lex = load_bundle(args.lexicon) if args.lexicon else None
    rules = builtin_universal_rules(lex) if args.rules == "builtin" else load_rules_xml(args.rules, lex)
    out.write(f"ok: {len(rules)} operations\n")
    for r in rules:
        out.write(f"  {describe(r)}\n")


def cmd_emit(args, out):
    out.write(dump_rules_xml(builtin_universal_rules()))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="compsa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs=True, fmt=("records", "table", "trace"), default="records"):
        p.add_argument("--lexicon", help="lexicon manifest (key=value lines)")
        p.add_argument("--rules", default="builtin", help="rule XML file or 'builtin'")
        if inputs:
            p.add_argument("--input", nargs="+", required=True, metavar="PATH")
        if fmt:
            p.add_argument("--format", choices=fmt, default=default)
        return p

    p = common(sub.add_parser("analyze", help="score documents"))
    p.add_argument("--rules-subset", help="comma-separated operation names to keep")
    p.set_defaults(func=cmd_analyze)

    p = common(sub.add_parser("evaluate", help="accuracy or rule ablation over labeled corpora"),
               fmt=("table", "records"), default="table")
    p.add_argument("--rules-subset", help="comma-separated operation names to keep")
    p.add_argument("--ablation", action="store_true", help="cumulative rule ablation table")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--figure", help="write the ablation chart to this image file")
    p.set_defaults(func=cmd_evaluate)

    p = common(sub.add_parser("explain", help="state-table trace for one sentence"), fmt=None)
    p.add_argument("--rules-subset", help="comma-separated operation names to keep")
    p.add_argument("--sentence", type=int, default=1, help="1-based sentence number")
    p.add_argument("--figure", help="write a per-node orientation chart to this image file")
    p.set_defaults(func=cmd_explain)

    p = common(sub.add_parser("validate-rules", help="check a rule file"), inputs=False, fmt=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("emit-builtin-rules", help="print the built-in rule pack as XML")
    p.set_defaults(func=cmd_emit)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except ERRORS as exc:
        print(f"compsa: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
