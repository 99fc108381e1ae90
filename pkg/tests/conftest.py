from pathlib import Path

import pytest

from compsa.deptree import parse_conll
from compsa.lexicon import LexiconBundle, SentimentEntry, load_bundle

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def running_example():
    return parse_conll((DATA / "running_example.conllu").read_text())[0]


@pytest.fixture(scope="session")
def toy_lexicon():
    return load_bundle(DATA / "lexicon" / "lexicon.manifest")


@pytest.fixture(scope="session")
def example_lexicon():
    """Exactly the values the worked example needs."""
    return LexiconBundle(
        sentiment=(SentimentEntry("handsome", 4.0, pos="ADJ"),
                   SentimentEntry("like", 1.0, pos="VERB")),
        intensifiers={"very": 0.25, "really": 0.15},
        negators=frozenset({"not"}),
        adversatives=frozenset({"but"}),
        irrealis=frozenset({"if"}),
        alpha=4.0,
    )


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
