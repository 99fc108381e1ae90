import io

import pytest

from compsa.cli import main


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def lexicon(data_dir):
    return str(data_dir / "lexicon" / "lexicon.manifest")


def test_analyze_records(data_dir, lexicon):
    code, out = run(["analyze", "--lexicon", lexicon, "--input", str(data_dir / "running_example.conllu")])
    assert code == 0
    assert out == "running_example\t1.90\tpositive\t1.90\n"


def test_analyze_table_and_trace(data_dir, lexicon):
    path = str(data_dir / "running_example.conllu")
    code, out = run(["analyze", "--lexicon", lexicon, "--input", path, "--format", "table"])
    assert code == 0 and "running_example" in out and "1.90" in out
    code, out = run(["analyze", "--lexicon", lexicon, "--input", path, "--format", "trace"])
    assert code == 0 and out.startswith("## running_example\n")


def test_rules_subset(data_dir, lexicon):
    path = str(data_dir / "running_example.conllu")
    code, out = run(["analyze", "--lexicon", lexicon, "--input", path, "--rules-subset", "negation"])
    # handsome 4 -> 0 under negation alone, like stays 1
    assert code == 0 and out.split("\t")[1] == "1.00"


def test_explain(data_dir, lexicon):
    code, out = run(["explain", "--lexicon", lexicon, "--input", str(data_dir / "running_example.conllu")])
    assert code == 0
    assert "[negation:not_3(0,2), but:but_7(0,1)]" in out
    assert out.endswith("sentence SO: 1.9\n")


def test_emit_then_validate(tmp_path):
    code, xml = run(["emit-builtin-rules"])
    assert code == 0
    p = tmp_path / "rules.xml"
    p.write_text(xml)
    code, out = run(["validate-rules", "--rules", str(p)])
    assert code == 0
    assert out.splitlines()[0] == "ok: 4 operations"


def test_evaluate(data_dir, lexicon, tmp_path):
    corpus = str(data_dir / "corpus" / "corpus.tsv")
    code, out = run(["evaluate", "--lexicon", lexicon, "--input", corpus])
    assert (code, out) == (0, "documents: 4\naccuracy: 100.00%\n")
    fig = tmp_path / "ablation.png"
    code, out = run(["evaluate", "--lexicon", lexicon, "--input", corpus, "--ablation",
                     "--format", "records", "--figure", str(fig)])
    assert code == 0
    assert out.splitlines()[1:] == ["baseline=0.25", "+negation=0.5",
                                    "+intensification=0.75", "+irrealis=1.0"]
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_explain_figure(data_dir, lexicon, tmp_path):
    fig = tmp_path / "trace.svg"
    code, _ = run(["explain", "--lexicon", lexicon, "--input", str(data_dir / "running_example.conllu"),
                   "--figure", str(fig)])
    assert code == 0 and "<svg" in fig.read_text()


def test_errors_exit_nonzero(tmp_path, lexicon, capsys):
    bad = tmp_path / "bad.conll"
    bad.write_text("1\ta\tX\t2\tdep\n2\tb\tX\t1\tdep\n")
    code, out = run(["analyze", "--lexicon", lexicon, "--input", str(bad)])
    assert (code, out) == (1, "")
    assert "cycle" in capsys.readouterr().err
    rules = tmp_path / "r.xml"
    rules.write_text("<operations><operation/></operations>")
    code, _ = run(["validate-rules", "--rules", str(rules)])
    assert code == 1
    assert "compsa: error:" in capsys.readouterr().err
    code, _ = run(["analyze", "--input", str(tmp_path / "nope.conll")])
    assert code == 1


def test_failed_figure_leaves_no_file(data_dir, lexicon, tmp_path):
    target = tmp_path / "missing_dir" / "trace.png"
    code, _ = run(["explain", "--lexicon", lexicon, "--input", str(data_dir / "running_example.conllu"),
                   "--figure", str(target)])
    assert code == 1
    assert not target.exists()
