"""Propagation of semantic orientations up a dependency tree.

Each node is visited in postorder. Operations triggered at a node travel
upward through per-node queues until they reach their destination node,
where their scope is resolved and their transformation applied; the node
then absorbs the orientations of its children. The orientation of the dummy
root after the traversal is the sentence orientation.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .deptree import ROOT, DepSentence, children, postorder
from .lexicon import LexiconBundle, lookup_so
from .ruleset import OperationInstance, OperationSpec, apply_transform, matches, resolve_scope

POSITIVE = "positive"
NEGATIVE = "negative"


class OpQueue:
    """Priority queue of operation instances: higher priority first, then
    earlier enqueue sequence number."""

    def __init__(self):
        self._heap: list[tuple[int, int, OperationInstance]] = []

    def push(self, inst: OperationInstance):
        heapq.heappush(self._heap, (-inst.priority, inst.seq, inst))

    def pop(self) -> OperationInstance:
        return heapq.heappop(self._heap)[2]

    def ordered(self) -> list[OperationInstance]:
        return [entry[2] for entry in sorted(self._heap, key=lambda e: e[:2])]

    def __len__(self):
        return len(self._heap)

    def __bool__(self):
        return bool(self._heap)


# --------------------------------------------------------------------------
# trace events


@dataclass(frozen=True)
class NodeVisited:
    node: int
    form: str
    so: float


@dataclass(frozen=True)
class InstanceEnqueued:
    node: int
    op: str
    trigger: int
    trigger_form: str
    queue: str  # "A" or "Q"
    remaining: int
    priority: int
    seq: int


@dataclass(frozen=True)
class InstanceApplied:
    node: int
    op: str
    trigger: int
    scope: str
    changes: tuple[tuple[int, float, float], ...]  # (node, before, after)


@dataclass(frozen=True)
class InstanceExpired:
    node: int
    op: str
    trigger: int
    reason: str


@dataclass(frozen=True)
class Join:
    node: int
    before: float
    contributions: tuple[tuple[int, float], ...]
    after: float


Event = NodeVisited | InstanceEnqueued | InstanceApplied | InstanceExpired | Join


@dataclass
class AnalysisTrace:
    sentence: DepSentence
    events: list = field(default_factory=list)

    def append(self, event):
        self.events.append(event)

    def of_type(self, kind) -> list:
        return [e for e in self.events if isinstance(e, kind)]


@dataclass
class SentenceResult:
    so: float
    trace: AnalysisTrace
    state: list[float]


@dataclass
class DocumentResult:
    doc_id: str
    sentences: list[SentenceResult]
    so: float
    polarity: str


# --------------------------------------------------------------------------


def init_so(s: DepSentence, lex: LexiconBundle) -> list[float]:
    return [0.0] + [lookup_so(lex, t.form, t.upos) for t in s.tokens]


class _Analysis:
    def __init__(self, s: DepSentence, rules: Sequence[OperationSpec], lex: LexiconBundle,
                 so: list[float]):
        self.s = s
        self.rules = tuple(rules)
        self.lex = lex
        self.so = so
        self.A = [OpQueue() for _ in s.nodes]
        self.Q = [OpQueue() for _ in s.nodes]
        self.trace = AnalysisTrace(s)
        self._seq = itertools.count()

    def _push(self, i: int, inst: OperationInstance, queue: str):
        inst.seq = next(self._seq)
        (self.A if queue == "A" else self.Q)[i].push(inst)
        self.trace.append(InstanceEnqueued(
            node=i, op=inst.name, trigger=inst.trigger,
            trigger_form=self.s.form(inst.trigger), queue=queue,
            remaining=inst.remaining, priority=inst.priority, seq=inst.seq))

    def compute_node(self, i: int):
        s, so = self.s, self.so
        self.trace.append(NodeVisited(i, s.form(i), so[i]))

        if i != ROOT:
            token = s.token(i)
            for spec in self.rules:
                if not matches(spec.trigger, token, self.lex):
                    continue
                transform = spec.transform.bind(token, self.lex)
                if transform is None:
                    continue
                inst = OperationInstance(spec, transform, trigger=i, remaining=spec.delta, seq=-1)
                self._push(i, inst, "Q" if spec.delta > 0 else "A")

        for c in children(s, i):
            moving = self.Q[c].ordered()
            self.Q[c] = OpQueue()
            for inst in moving:
                inst.remaining -= 1
                self._push(i, inst, "A" if inst.remaining == 0 else "Q")

        queue = self.A[i]
        while queue:
            inst = queue.pop()
            cand, nodes = resolve_scope(inst.spec.scopes, s, i, inst.trigger, so)
            if cand is None:
                self.trace.append(InstanceExpired(i, inst.name, inst.trigger, "no scope matched"))
                continue
            changes = []
            for j in nodes:
                before = so[j]
                so[j] = apply_transform(inst.transform, before)
                changes.append((j, before, so[j]))
            self.trace.append(InstanceApplied(i, inst.name, inst.trigger, str(cand), tuple(changes)))

        before = so[i]
        contributions = tuple((c, so[c]) for c in children(s, i))
        so[i] = before + sum(v for _, v in contributions)
        self.trace.append(Join(i, before, contributions, so[i]))

    def run(self) -> SentenceResult:
        for i in postorder(self.s):
            self.compute_node(i)
        for inst in self.Q[ROOT].ordered():
            self.trace.append(InstanceExpired(ROOT, inst.name, inst.trigger, "ascended past root"))
        self.Q[ROOT] = OpQueue()
        return SentenceResult(self.so[ROOT], self.trace, self.so)


def analyze_sentence(s: DepSentence, rules: Iterable[OperationSpec], lex: LexiconBundle,
                     initial: Sequence[float] | None = None) -> SentenceResult:
    """Run the traversal over ``s``.

    ``initial`` replaces the lexicon initialisation of the per-node
    orientations (index 0 is the dummy root).
    """
    if initial is None:
        so = init_so(s, lex)
    else:
        so = [float(v) for v in initial]
        if len(so) != len(s) + 1:
            raise ValueError(f"expected {len(s) + 1} initial values, got {len(so)}")
    return _Analysis(s, tuple(rules), lex, so).run()


def polarity(so: float) -> str:
    return POSITIVE if so > 0 else NEGATIVE


def analyze_document(sentences: Sequence[DepSentence], rules: Iterable[OperationSpec],
                     lex: LexiconBundle, doc_id: str = "doc") -> DocumentResult:
    if not sentences:
        raise ValueError(f"document {doc_id!r} has no sentences")
    rules = tuple(rules)
    results = [analyze_sentence(s, rules, lex) for s in sentences]
    total = sum(r.so for r in results)
    return DocumentResult(doc_id, results, total, polarity(total))
