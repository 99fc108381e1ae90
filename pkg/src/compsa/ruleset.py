"""Compositional operations: trigger predicates, transformations, scopes and the XML rule format."""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .deptree import DepSentence, TaggedToken, children, lm_branch
from .lexicon import WORD_LISTS, LexiconBundle, lookup_beta

SHIFT = "shift"
WEIGHTING = "weighting"
FROM_LEXICON = "lexicon"

SCOPE_KINDS = ("dest", "branch", "rc", "lc", "subjr", "subjl")

BUT_BETA = -0.25
IRREALIS_BETA = -1.0


class RuleError(ValueError):
    pass


@dataclass(frozen=True)
class TransformSpec:
    """``shift`` by alpha or ``weighting`` by (1 + beta).

    ``amount`` may be :data:`FROM_LEXICON`: for weighting it is bound to the
    trigger word's intensifier weight, for shift to the bundle's negation
    shift (per-negator override or alpha).
    """

    kind: str
    amount: float | str

    def __post_init__(self):
        if self.kind not in (SHIFT, WEIGHTING):
            raise RuleError(f"unknown transformation {self.kind!r}")
        if self.amount != FROM_LEXICON:
            amount = float(self.amount)
            if amount != amount or amount in (float("inf"), float("-inf")):
                raise RuleError(f"non-finite transformation amount {self.amount!r}")
            object.__setattr__(self, "amount", amount)

    @property
    def bound(self) -> bool:
        return self.amount != FROM_LEXICON

    def bind(self, token: TaggedToken, lex: LexiconBundle) -> TransformSpec | None:
        """Resolve a lexicon-bound amount for ``token``; None if it has none."""
        if self.bound:
            return self
        if self.kind == WEIGHTING:
            beta = lookup_beta(lex, token.form)
            return None if beta is None else TransformSpec(WEIGHTING, beta)
        return TransformSpec(SHIFT, lex.shift_amount(token.form))


def apply_transform(t: TransformSpec, so: float) -> float:
    if not t.bound:
        raise RuleError("transformation amount is not bound")
    if t.kind == WEIGHTING:
        return so * (1 + t.amount)
    if so > 0:
        return so - t.amount
    if so < 0:
        return so + t.amount
    return so


@dataclass(frozen=True)
class TriggerPredicate:
    """Word form, PoS tag and dependency type constraints.

    ``forms`` holds literal words or regular expressions (whole-token,
    case-insensitive); ``form_list`` names a lexicon word list instead.
    ``None`` for ``postags`` or ``deprels`` is the wildcard.
    """

    forms: tuple[str, ...] = ()
    form_list: str | None = None
    postags: frozenset[str] | None = None
    deprels: frozenset[str] | None = None
    _patterns: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.form_list is not None and self.forms:
            raise RuleError("forms and a word list reference are mutually exclusive")
        if self.form_list is not None and self.form_list not in WORD_LISTS:
            raise RuleError(f"unknown word list {self.form_list!r}")
        object.__setattr__(self, "forms", tuple(self.forms))
        if self.postags is not None:
            object.__setattr__(self, "postags", frozenset(t.upper() for t in self.postags))
        if self.deprels is not None:
            object.__setattr__(self, "deprels", frozenset(d.lower() for d in self.deprels))
        if not self.forms and self.form_list is None and self.postags is None and self.deprels is None:
            raise RuleError("trigger must constrain at least one of forms, postags, dependency")
        patterns = []
        for f in self.forms:
            try:
                patterns.append(re.compile(f, re.IGNORECASE))
            except re.error as exc:
                raise RuleError(f"invalid form pattern {f!r}: {exc}") from None
        object.__setattr__(self, "_patterns", tuple(patterns))


def matches(trigger: TriggerPredicate, token: TaggedToken, lex: LexiconBundle) -> bool:
    if trigger.postags is not None and token.upos.upper() not in trigger.postags:
        return False
    if trigger.deprels is not None and token.deprel.lower() not in trigger.deprels:
        return False
    form = token.form.lower()
    if trigger.form_list is not None:
        words = lex.word_list(trigger.form_list)
        return words is not None and form in words
    if trigger.forms:
        return any(f.lower() == form or p.fullmatch(form)
                   for f, p in zip(trigger.forms, trigger._patterns))
    return True


@dataclass(frozen=True)
class ScopeCandidate:
    kind: str
    label: str | None = None
    n: int | None = None

    def __post_init__(self):
        if self.kind not in SCOPE_KINDS:
            raise RuleError(f"unknown scope kind {self.kind!r}")
        if self.kind == "branch":
            if not self.label:
                raise RuleError("branch scope needs a dependency type")
            object.__setattr__(self, "label", self.label.lower())
        elif self.label is not None:
            raise RuleError(f"scope {self.kind!r} takes no dependency type")
        if self.kind in ("rc", "lc"):
            if self.n is None or self.n < 1:
                raise RuleError(f"scope {self.kind!r} needs n >= 1")
        elif self.n is not None:
            raise RuleError(f"scope {self.kind!r} takes no count")

    def __str__(self):
        if self.kind == "branch":
            return f"branch:{self.label}"
        if self.kind in ("rc", "lc"):
            return f"{self.kind}:{self.n}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> ScopeCandidate:
        kind, sep, arg = text.strip().partition(":")
        kind = kind.strip().lower()
        if kind in ("rc", "lc"):
            try:
                return cls(kind, n=int(arg))
            except ValueError:
                raise RuleError(f"scope {text!r}: count must be an integer") from None
        if kind == "branch":
            return cls(kind, label=arg.strip())
        if sep:
            raise RuleError(f"scope {text!r} takes no argument")
        return cls(kind)


@dataclass(frozen=True)
class OperationSpec:
    name: str
    transform: TransformSpec
    trigger: TriggerPredicate
    delta: int
    priority: int
    scopes: tuple[ScopeCandidate, ...]

    def __post_init__(self):
        object.__setattr__(self, "scopes", tuple(self.scopes))
        if not self.scopes:
            raise RuleError(f"operation {self.name!r} has no scope")
        if self.delta < 0:
            raise RuleError(f"operation {self.name!r}: levels up must be >= 0")


@dataclass
class OperationInstance:
    """A triggered operation travelling up the tree."""

    spec: OperationSpec
    transform: TransformSpec
    trigger: int
    remaining: int
    seq: int

    @property
    def priority(self) -> int:
        return self.spec.priority

    @property
    def name(self) -> str:
        return self.spec.name


def _candidate_nodes(c: ScopeCandidate, s: DepSentence, dest: int, trigger: int,
                     so: Sequence[float]) -> tuple[int, ...]:
    if c.kind == "dest":
        return (dest,)
    if c.kind == "branch":
        return tuple(lm_branch(s, dest, c.label))
    kids = children(s, dest)
    if c.kind == "rc":
        return tuple(j for j in kids if j > trigger)[:c.n]
    if c.kind == "lc":
        left = [j for j in kids if j < trigger]
        return tuple(left[-c.n:])
    if c.kind == "subjr":
        return next(((j,) for j in kids if j > trigger and so[j] != 0), ())
    return next(((j,) for j in reversed(kids) if j < trigger and so[j] != 0), ())


def resolve_scope(scopes: Iterable[ScopeCandidate], s: DepSentence, dest: int, trigger: int,
                  so: Sequence[float]) -> tuple[ScopeCandidate | None, tuple[int, ...]]:
    """First candidate selecting at least one node with non-zero SO, and its nodes."""
    for c in scopes:
        nodes = _candidate_nodes(c, s, dest, trigger, so)
        if any(so[j] != 0 for j in nodes):
            return c, nodes
    return None, ()


# --------------------------------------------------------------------------
# built-in universal rules


def builtin_universal_rules(lex: LexiconBundle | None = None) -> tuple[OperationSpec, ...]:
    """Intensification, adversative clauses, negation and irrealis.

    When ``lex`` is given, the word lists the rules reference must be present.
    """
    if lex is not None:
        for name in WORD_LISTS:
            if name != "intensifiers" and lex.word_list(name) is None:
                raise RuleError(f"lexicon bundle lacks the {name!r} word list")
    return (
        OperationSpec(
            name="intensification",
            transform=TransformSpec(WEIGHTING, FROM_LEXICON),
            trigger=TriggerPredicate(form_list="intensifiers", postags=frozenset({"ADV", "ADJ"}),
                                     deprels=frozenset({"advmod", "amod", "nmod"})),
            delta=1, priority=3,
            scopes=(ScopeCandidate("dest"), ScopeCandidate("branch", label="acomp")),
        ),
        OperationSpec(
            name="but",
            transform=TransformSpec(WEIGHTING, BUT_BETA),
            trigger=TriggerPredicate(form_list="adversatives", postags=frozenset({"CONJ"}),
                                     deprels=frozenset({"cc"})),
            delta=1, priority=1,
            scopes=(ScopeCandidate("subjl"),),
        ),
        OperationSpec(
            name="negation",
            transform=TransformSpec(SHIFT, FROM_LEXICON),
            trigger=TriggerPredicate(form_list="negators", deprels=frozenset({"neg"})),
            delta=1, priority=2,
            scopes=(ScopeCandidate("dest"), ScopeCandidate("branch", label="attr"),
                    ScopeCandidate("branch", label="acomp"), ScopeCandidate("subjr")),
        ),
        OperationSpec(
            name="irrealis",
            transform=TransformSpec(WEIGHTING, IRREALIS_BETA),
            trigger=TriggerPredicate(form_list="irrealis", deprels=frozenset({"mark"})),
            delta=2, priority=3,
            scopes=(ScopeCandidate("dest"), ScopeCandidate("subjr")),
        ),
    )


def select_rules(rules: Iterable[OperationSpec], names: Iterable[str]) -> tuple[OperationSpec, ...]:
    """The operations of ``rules`` named in ``names``, in rule-set order."""
    rules = tuple(rules)
    wanted = {n.strip() for n in names if n.strip()}
    unknown = wanted - {r.name for r in rules}
    if unknown:
        raise RuleError(f"unknown operation(s): {', '.join(sorted(unknown))}")
    return tuple(r for r in rules if r.name in wanted)


# --------------------------------------------------------------------------
# XML format

_CHILDREN = ("forms", "postags", "dependency", "rule", "levelsup", "priority", "scope")


def _split(text: str | None) -> list[str]:
    return [p.strip() for p in (text or "").split(",") if p.strip()]


def _wildcard_set(text: str | None, where: str) -> frozenset[str] | None:
    items = _split(text)
    if not items:
        raise RuleError(f"{where}: empty value (use '*' for any)")
    if items == ["*"]:
        return None
    return frozenset(items)


def _int(el, where) -> int:
    try:
        return int((el.text or "").strip())
    except ValueError:
        raise RuleError(f"{where}: expected an integer, got {el.text!r}") from None


def _parse_operation(op: ET.Element, where: str, lex: LexiconBundle | None) -> OperationSpec:
    found = {}
    for child in op:
        if child.tag not in _CHILDREN:
            raise RuleError(f"{where}/{child.tag}: unknown element")
        if child.tag in found:
            raise RuleError(f"{where}/{child.tag}: repeated element")
        found[child.tag] = child
    for tag in _CHILDREN:
        if tag not in found:
            raise RuleError(f"{where}: missing <{tag}>")

    try:
        forms_el = found["forms"]
        list_ref = forms_el.get("list")
        if list_ref is not None:
            if list_ref not in WORD_LISTS:
                raise RuleError(f"{where}/forms: unknown word list {list_ref!r}")
            if lex is not None and lex.word_list(list_ref) is None:
                raise RuleError(f"{where}/forms: lexicon bundle lacks the {list_ref!r} word list")
            forms: list[str] = []
        else:
            forms = _split(forms_el.text)
            if forms == ["*"]:
                forms = []
        trigger = TriggerPredicate(
            forms=tuple(forms), form_list=list_ref,
            postags=_wildcard_set(found["postags"].text, f"{where}/postags"),
            deprels=_wildcard_set(found["dependency"].text, f"{where}/dependency"))
    except RuleError as exc:
        msg = str(exc)
        raise RuleError(msg if msg.startswith(where) else f"{where}: {msg}") from None

    rule = found["rule"]
    kind = rule.get("type")
    amount = rule.get("amount")
    if kind not in (SHIFT, WEIGHTING):
        raise RuleError(f"{where}/rule: type must be shift or weighting, got {kind!r}")
    if amount is None:
        raise RuleError(f"{where}/rule: missing amount")
    try:
        transform = TransformSpec(kind, FROM_LEXICON if amount.strip() == FROM_LEXICON
                                  else float(amount))
    except (ValueError, RuleError):
        raise RuleError(f"{where}/rule: bad amount {amount!r}") from None

    try:
        scopes = tuple(ScopeCandidate.parse(p) for p in _split(found["scope"].text))
    except RuleError as exc:
        raise RuleError(f"{where}/scope: {exc}") from None

    try:
        return OperationSpec(
            name=op.get("name") or where,
            transform=transform, trigger=trigger,
            delta=_int(found["levelsup"], f"{where}/levelsup"),
            priority=_int(found["priority"], f"{where}/priority"),
            scopes=scopes)
    except RuleError as exc:
        msg = str(exc)
        raise RuleError(msg if msg.startswith(where) else f"{where}: {msg}") from None


def parse_rules_xml(text: str, lex: LexiconBundle | None = None) -> tuple[OperationSpec, ...]:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise RuleError(f"malformed XML: {exc}") from None
    if root.tag != "operations":
        raise RuleError(f"root element must be <operations>, got <{root.tag}>")
    specs = []
    names = set()
    for k, op in enumerate(root, start=1):
        where = f"operations/operation[{k}]"
        if op.tag != "operation":
            raise RuleError(f"operations/{op.tag}: unknown element")
        spec = _parse_operation(op, where, lex)
        if spec.name in names:
            raise RuleError(f"{where}: duplicate operation name {spec.name!r}")
        names.add(spec.name)
        specs.append(spec)
    return tuple(specs)


def load_rules_xml(path, lex: LexiconBundle | None = None) -> tuple[OperationSpec, ...]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise RuleError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        return parse_rules_xml(text, lex)
    except RuleError as exc:
        raise RuleError(f"{path}: {exc}") from None


def _join(items: Iterable[str] | None) -> str:
    return "*" if items is None else ",".join(sorted(items))


def dump_rules_xml(specs: Iterable[OperationSpec]) -> str:
    root = ET.Element("operations")
    for spec in specs:
        op = ET.SubElement(root, "operation", name=spec.name)
        forms = ET.SubElement(op, "forms")
        if spec.trigger.form_list is not None:
            forms.set("list", spec.trigger.form_list)
        else:
            forms.text = ",".join(spec.trigger.forms) or "*"
        ET.SubElement(op, "postags").text = _join(spec.trigger.postags)
        ET.SubElement(op, "dependency").text = _join(spec.trigger.deprels)
        amount = spec.transform.amount
        ET.SubElement(op, "rule", type=spec.transform.kind,
                      amount=amount if amount == FROM_LEXICON else repr(amount))
        ET.SubElement(op, "levelsup").text = str(spec.delta)
        ET.SubElement(op, "priority").text = str(spec.priority)
        ET.SubElement(op, "scope").text = ",".join(str(c) for c in spec.scopes)
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"


def describe(spec: OperationSpec) -> str:
    t = spec.transform
    amount = "from lexicon" if not t.bound else f"{t.amount:g}"
    return (f"{spec.name}: {t.kind}({amount}) levelsup={spec.delta} "
            f"priority={spec.priority} scope={','.join(str(c) for c in spec.scopes)}")

