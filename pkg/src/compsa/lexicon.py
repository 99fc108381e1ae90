"""Subjective lexicons, intensifier weights and trigger word lists.

Two sentiment file layouts are read:

* ``socal``: one file per PoS category, ``word<TAB>score`` lines; every entry
  is qualified with the category's universal tag.
* ``sentistrength``: ``term<TAB>score`` lines, where a trailing ``*`` marks a
  stem that matches any word starting with the prefix.

A bundle is described by a manifest of ``key=value`` lines whose paths are
relative to the manifest's directory.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path

DEFAULT_ALPHA = 4.0

SOCAL_CATEGORIES = {
    "adjectives": "ADJ",
    "nouns": "NOUN",
    "verbs": "VERB",
    "adverbs": "ADV",
}

WORD_LISTS = ("negators", "intensifiers", "adversatives", "irrealis")


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class SentimentEntry:
    key: str
    so: float
    pos: str | None = None
    stem: bool = False

    def __post_init__(self):
        if not self.key:
            raise LexiconError("empty lexicon key")
        if not math.isfinite(self.so):
            raise LexiconError(f"non-finite score for {self.key!r}")


@dataclass(frozen=True)
class IntensifierEntry:
    key: str
    beta: float


@dataclass(frozen=True)
class LexiconBundle:
    """Read-only lexical resources for one analysis language.

    A word list left as ``None`` was not provided; an empty set was provided
    but is empty. ``negator_alpha`` holds per-negator shift overrides.
    """

    sentiment: tuple[SentimentEntry, ...] = ()
    intensifiers: dict[str, float] = field(default_factory=dict)
    negators: frozenset[str] | None = None
    adversatives: frozenset[str] | None = None
    irrealis: frozenset[str] | None = None
    emoticons: dict[str, float] = field(default_factory=dict)
    alpha: float = DEFAULT_ALPHA
    negator_alpha: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        exact: dict[tuple[str, str], float] = {}
        plain: dict[str, float] = {}
        stems: dict[tuple[str, str | None], float] = {}
        for e in self.sentiment:
            key = e.key.lower()
            if e.stem:
                table, k = stems, (key, e.pos)
            elif e.pos is not None:
                table, k = exact, (key, e.pos)
            else:
                table, k = plain, key
            if k in table:
                raise LexiconError(f"duplicate lexicon entry {key!r}"
                                   + (f" ({e.pos})" if e.pos else ""))
            table[k] = e.so
        object.__setattr__(self, "_exact", exact)
        object.__setattr__(self, "_plain", plain)
        object.__setattr__(self, "_stems", stems)
        # longest prefixes first; PoS-qualified before plain at equal length
        object.__setattr__(self, "_stem_order", sorted(
            stems, key=lambda kp: (-len(kp[0]), kp[1] is None, kp[1] or "")))
        object.__setattr__(self, "intensifiers",
                           {k.lower(): float(v) for k, v in self.intensifiers.items()})
        object.__setattr__(self, "negator_alpha",
                           {k.lower(): float(v) for k, v in self.negator_alpha.items()})
        for name in ("negators", "adversatives", "irrealis"):
            words = getattr(self, name)
            if words is not None:
                object.__setattr__(self, name, frozenset(w.lower() for w in words))

    def word_list(self, name: str) -> frozenset[str] | None:
        """Named trigger word list; ``intensifiers`` yields the intensifier keys."""
        if name == "intensifiers":
            return frozenset(self.intensifiers)
        if name not in WORD_LISTS:
            raise LexiconError(f"unknown word list {name!r}")
        return getattr(self, name)

    def shift_amount(self, form: str) -> float:
        return self.negator_alpha.get(form.lower(), self.alpha)


def lookup_so(lex: LexiconBundle, form: str, upos: str | None) -> float:
    """Semantic orientation of a word, 0 when it is not in the lexicon.

    Precedence: (form, PoS) entry, plain entry, longest matching stem,
    emoticon (case-sensitive), then 0.
    """
    key = form.lower()
    if upos is not None:
        so = lex._exact.get((key, upos))
        if so is not None:
            return so
    so = lex._plain.get(key)
    if so is not None:
        return so
    for prefix, pos in lex._stem_order:
        if (pos is None or pos == upos) and key.startswith(prefix):
            return lex._stems[(prefix, pos)]
    return lex.emoticons.get(form, 0.0)


def lookup_beta(lex: LexiconBundle, form: str) -> float | None:
    return lex.intensifiers.get(form.lower())


# --------------------------------------------------------------------------
# file loading


def _read_lines(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read().splitlines()
    except OSError as exc:
        raise LexiconError(f"cannot read {path}: {exc.strerror or exc}") from None


def _key_value_lines(path):
    """Yield ``(lineno, key, number)`` from ``key<TAB>number`` lines."""
    for lineno, line in enumerate(_read_lines(path), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if "\t" in line:
            key, _, value = line.rstrip().rpartition("\t")
        else:
            parts = line.rsplit(None, 1)
            if len(parts) != 2:
                raise LexiconError(f"{path}:{lineno}: expected a term and a score")
            key, value = parts
        key = key.strip()
        if not key:
            raise LexiconError(f"{path}:{lineno}: empty term")
        try:
            number = float(value)
        except ValueError:
            raise LexiconError(f"{path}:{lineno}: non-numeric score {value.strip()!r}") from None
        if not math.isfinite(number):
            raise LexiconError(f"{path}:{lineno}: non-finite score {value.strip()!r}")
        yield lineno, key, number


def load_sentiment_lexicon(path, format: str = "sentistrength",
                           pos: str | None = None) -> list[SentimentEntry]:
    """Read sentiment entries from one file.

    For ``socal`` files the PoS qualifier is ``pos`` or, when omitted, is
    inferred from a category name (adj, noun, verb, adv) in the file name.
    """
    if format not in ("socal", "sentistrength"):
        raise LexiconError(f"unknown lexicon format {format!r}")
    if format == "socal" and pos is None:
        pos = _infer_category(path)
    if format == "sentistrength":
        pos = None
    entries = []
    seen = set()
    for lineno, key, so in _key_value_lines(path):
        key = key.lower()
        stem = key.endswith("*") and len(key) > 1
        if stem:
            key = key[:-1]
        k = (key, pos, stem)
        if k in seen:
            raise LexiconError(f"{path}:{lineno}: duplicate entry {key!r}")
        seen.add(k)
        entries.append(SentimentEntry(key=key, so=so, pos=pos, stem=stem))
    return entries


def _infer_category(path) -> str:
    name = Path(path).name.lower()
    for prefix, tag in (("adj", "ADJ"), ("adv", "ADV"), ("noun", "NOUN"), ("verb", "VERB")):
        if prefix in name:
            return tag
    raise LexiconError(f"cannot infer PoS category from file name {name!r}")


def load_intensifiers(path) -> list[IntensifierEntry]:
    seen = set()
    out = []
    for lineno, key, beta in _key_value_lines(path):
        key = key.lower()
        if key in seen:
            raise LexiconError(f"{path}:{lineno}: duplicate intensifier {key!r}")
        seen.add(key)
        out.append(IntensifierEntry(key, beta))
    return out


def load_word_list(path) -> tuple[frozenset[str], dict[str, float]]:
    """One term per line; an optional second tab-separated column is a number
    attached to the term (used for per-negator shift amounts)."""
    words = set()
    amounts = {}
    for lineno, line in enumerate(_read_lines(path), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        term, _, rest = line.strip().partition("\t")
        term = term.strip().lower()
        words.add(term)
        if rest.strip():
            try:
                amounts[term] = float(rest)
            except ValueError:
                raise LexiconError(f"{path}:{lineno}: non-numeric value {rest.strip()!r}") from None
    return frozenset(words), amounts


def load_emoticons(path) -> dict[str, float]:
    out = {}
    for lineno, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        term, _, value = line.rstrip("\n").partition("\t")
        term = term.strip()
        try:
            out[term] = float(value)
        except ValueError:
            raise LexiconError(f"{path}:{lineno}: non-numeric emoticon score {value.strip()!r}") from None
    return out


def _parse_manifest(path) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for lineno, line in enumerate(_read_lines(path), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise LexiconError(f"{path}:{lineno}: expected key=value")
        out.setdefault(key.strip(), []).extend(
            v.strip() for v in value.split(",") if v.strip())
    return out


def load_bundle(manifest) -> LexiconBundle:
    """Load a bundle from a manifest.

    Recognised keys: ``adjectives``, ``nouns``, ``verbs``, ``adverbs``
    (socal files), ``sentiment.<UPOS>`` (socal file for any tag),
    ``sentistrength``, ``intensifiers``, ``negators``, ``adversatives``,
    ``irrealis``, ``emoticons`` and ``alpha``. Values may be comma-separated.
    """
    base = Path(manifest).parent
    conf = _parse_manifest(manifest)

    def paths(key):
        return [base / p for p in conf.get(key, [])]

    entries: list[SentimentEntry] = []
    for key in conf:
        if key in SOCAL_CATEGORIES:
            for p in paths(key):
                entries += load_sentiment_lexicon(p, "socal", SOCAL_CATEGORIES[key])
        elif key.startswith("sentiment."):
            tag = key.partition(".")[2]
            for p in paths(key):
                entries += load_sentiment_lexicon(p, "socal", tag)
        elif key == "sentistrength":
            for p in paths(key):
                entries += load_sentiment_lexicon(p, "sentistrength")
        elif key not in WORD_LISTS + ("emoticons", "alpha"):
            raise LexiconError(f"{manifest}: unknown manifest key {key!r}")

    intensifiers: dict[str, float] = {}
    for p in paths("intensifiers"):
        for e in load_intensifiers(p):
            if e.key in intensifiers:
                raise LexiconError(f"{p}: duplicate intensifier {e.key!r}")
            intensifiers[e.key] = e.beta

    lists: dict[str, frozenset[str] | None] = {}
    negator_alpha: dict[str, float] = {}
    for name in ("negators", "adversatives", "irrealis"):
        if name not in conf:
            lists[name] = None
            continue
        words: set[str] = set()
        for p in paths(name):
            w, amounts = load_word_list(p)
            words |= w
            if name == "negators":
                negator_alpha.update(amounts)
        lists[name] = frozenset(words)

    emoticons: dict[str, float] = {}
    for p in paths("emoticons"):
        emoticons.update(load_emoticons(p))

    alpha = DEFAULT_ALPHA
    if "alpha" in conf:
        try:
            alpha = float(conf["alpha"][-1])
        except ValueError:
            raise LexiconError(f"{manifest}: non-numeric alpha {conf['alpha'][-1]!r}") from None

    return LexiconBundle(sentiment=tuple(entries), intensifiers=intensifiers,
                         emoticons=emoticons, alpha=alpha, negator_alpha=negator_alpha,
                         **lists)


def _fmt(x: float) -> str:
    return repr(float(x))


def dump_bundle(lex: LexiconBundle, directory) -> Path:
    """Write ``lex`` in canonical form under ``directory``; returns the manifest path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = []
    by_pos: dict[str | None, list[SentimentEntry]] = {}
    for e in lex.sentiment:
        by_pos.setdefault(e.pos, []).append(e)
    for pos in sorted(by_pos, key=lambda p: (p is None, p or "")):
        name = "sentistrength.txt" if pos is None else f"sentiment_{pos}.txt"
        rows = sorted(by_pos[pos], key=lambda e: (e.key, e.stem))
        _write(directory / name,
               [f"{e.key.lower()}{'*' if e.stem else ''}\t{_fmt(e.so)}" for e in rows])
        manifest.append(("sentistrength" if pos is None else f"sentiment.{pos}", name))
    _write(directory / "intensifiers.txt",
           [f"{k}\t{_fmt(v)}" for k, v in sorted(lex.intensifiers.items())])
    manifest.append(("intensifiers", "intensifiers.txt"))
    for name in ("negators", "adversatives", "irrealis"):
        words = getattr(lex, name)
        if words is None:
            continue
        rows = []
        for w in sorted(words):
            amount = lex.negator_alpha.get(w) if name == "negators" else None
            rows.append(w if amount is None else f"{w}\t{_fmt(amount)}")
        _write(directory / f"{name}.txt", rows)
        manifest.append((name, f"{name}.txt"))
    if lex.emoticons:
        _write(directory / "emoticons.txt",
               [f"{k}\t{_fmt(v)}" for k, v in sorted(lex.emoticons.items())])
        manifest.append(("emoticons", "emoticons.txt"))
    manifest.append(("alpha", _fmt(lex.alpha)))
    path = directory / "lexicon.manifest"
    _write(path, [f"{k}={v}" for k, v in manifest])
    return path


def _write(path, lines):
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write("".join(line + "\n" for line in lines))
    os.replace(tmp, path)
