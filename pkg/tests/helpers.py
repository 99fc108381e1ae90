"""Random trees and sentences for property tests."""

import random

from compsa.deptree import DepSentence, TaggedToken

UPOS = ("NOUN", "VERB", "ADJ", "ADV", "PRON", "CONJ", "DET", "ADP", ".")
DEPRELS = ("nsubj", "dobj", "attr", "acomp", "amod", "advmod", "conj", "prep", "det", "p")

# (forms, tags, deprels) of the built-in rule triggers
TRIGGER_SHAPES = {
    "intensification": (("very", "really", "somewhat", "huge"), ("ADV", "ADJ"),
                        ("advmod", "amod", "nmod")),
    "but": (("but",), ("CONJ",), ("cc",)),
    "negation": (("not", "n't", "never"), UPOS, ("neg",)),
    "irrealis": (("if", "would"), UPOS, ("mark",)),
}


def random_heads(rng, n):
    """Head array (index 0 unused) of a uniformly shuffled random tree on 1..n."""
    order = list(range(1, n + 1))
    rng.shuffle(order)
    heads = [None] * (n + 1)
    placed = [0]
    for node in order:
        heads[node] = rng.choice(placed)
        placed.append(node)
    return heads


def sentence_from_heads(heads, forms=None, upos=None, deprels=None):
    n = len(heads) - 1
    return DepSentence(tuple(
        TaggedToken(index=i,
                    form=forms[i] if forms else f"w{i}",
                    upos=upos[i] if upos else "X",
                    head=heads[i],
                    deprel=deprels[i] if deprels else "dep")
        for i in range(1, n + 1)))


def random_sentence(rng, max_words=9, max_triggers=4):
    """A random tree whose words are either plain or shaped like a built-in trigger."""
    n = rng.randint(1, max_words)
    heads = random_heads(rng, n)
    forms = [None] + [f"w{i}" for i in range(1, n + 1)]
    upos = [None] + [rng.choice(UPOS) for _ in range(n)]
    deprels = [None] + [rng.choice(DEPRELS) for _ in range(n)]
    k = rng.randint(0, min(max_triggers, n))
    for i in rng.sample(range(1, n + 1), k):
        f, t, d = TRIGGER_SHAPES[rng.choice(sorted(TRIGGER_SHAPES))]
        forms[i], upos[i], deprels[i] = rng.choice(f), rng.choice(t), rng.choice(d)
    return sentence_from_heads(heads, forms, upos, deprels)


def all_head_arrays(n):
    """Every head array on words 1..n forming a tree under node 0."""
    def rec(i, heads):
        if i > n:
            if _is_tree(heads):
                yield list(heads)
            return
        for h in range(0, n + 1):
            if h != i:
                heads[i] = h
                yield from rec(i + 1, heads)
    yield from rec(1, [None] * (n + 1))


def _is_tree(heads):
    for start in range(1, len(heads)):
        seen = set()
        i = start
        while i != 0:
            if i in seen:
                return False
            seen.add(i)
            i = heads[i]
    return True


def rng(seed=0):
    return random.Random(seed)


# acceptance verdicts, printed in the terminal summary by conftest
ACCEPTANCE: list[str] = []
