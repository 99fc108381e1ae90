"""Text renderings of analysis results: records, aligned tables and state-table traces."""

from __future__ import annotations

from typing import Iterable, Sequence

from .engine import (AnalysisTrace, DocumentResult, InstanceApplied, InstanceEnqueued,
                     InstanceExpired, Join, NodeVisited)


def format_so(x: float) -> str:
    """Up to six decimals, at least two."""
    text = f"{x:.6f}".rstrip("0")
    whole, _, frac = text.partition(".")
    text = f"{whole}.{frac.ljust(2, '0')}"
    return "0.00" if text in ("-0.00", "-0.0") else text


def document_record(doc: DocumentResult) -> str:
    sentences = ",".join(format_so(r.so) for r in doc.sentences)
    return "\t".join((doc.doc_id, format_so(doc.so), doc.polarity, sentences))


def align(rows: Sequence[Sequence[str]], header: Sequence[str] | None = None) -> str:
    rows = [list(map(str, r)) for r in rows]
    if header is not None:
        rows.insert(0, list(header))
    if not rows:
        return ""
    widths = [max(len(r[k]) for r in rows if k < len(r)) for k in range(max(map(len, rows)))]
    lines = ["  ".join(cell.ljust(widths[k]) for k, cell in enumerate(r)).rstrip() for r in rows]
    if header is not None:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def documents_table(docs: Iterable[DocumentResult]) -> str:
    rows = [(d.doc_id, format_so(d.so), d.polarity, len(d.sentences)) for d in docs]
    return align(rows, ("document", "SO", "polarity", "sentences"))


def _label(e: InstanceEnqueued) -> str:
    return f"{e.op}:{e.trigger_form}_{e.trigger}({e.remaining},{e.priority})"


def state_rows(trace: AnalysisTrace) -> list[tuple[str, ...]]:
    """One row per visited node: step, word_index, A, Q, SO before, SO after.

    A and Q show queue contents after enqueuing and before A is drained.
    """
    rows = []
    current = None
    for e in trace.events:
        if isinstance(e, NodeVisited):
            current = {"visit": e, "A": [], "Q": []}
        elif isinstance(e, InstanceEnqueued):
            current[e.queue].append(e)
        elif isinstance(e, Join):
            v = current["visit"]
            queues = {}
            for q in ("A", "Q"):
                items = sorted(current[q], key=lambda x: (-x.priority, x.seq))
                queues[q] = "[" + ", ".join(_label(x) for x in items) + "]"
            rows.append((str(len(rows) + 1), f"{v.form}_{v.node}", queues["A"], queues["Q"],
                         format_so(v.so), format_so(e.after)))
    return rows


def render_trace(trace: AnalysisTrace) -> str:
    out = [f"# {trace.sentence.text}"]
    out.append(align(state_rows(trace), ("step", "word_index", "A", "Q", "so", "so<-A")).rstrip("\n"))
    details = []
    for e in trace.events:
        if isinstance(e, InstanceApplied):
            changes = ", ".join(f"{trace.sentence.form(j)}_{j}: {format_so(b)} -> {format_so(a)}"
                                for j, b, a in e.changes)
            details.append(f"apply {e.op} (trigger {trace.sentence.form(e.trigger)}_{e.trigger}) "
                           f"at {trace.sentence.form(e.node)}_{e.node} scope={e.scope}: {changes}")
        elif isinstance(e, InstanceExpired):
            details.append(f"expire {e.op} (trigger {trace.sentence.form(e.trigger)}_{e.trigger}) "
                           f"at {trace.sentence.form(e.node)}_{e.node}: {e.reason}")
    out.extend(details)
    return "\n".join(out) + "\n"
