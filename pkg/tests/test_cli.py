import pytest

from scoreinfo.classify import LabeledScore
from scoreinfo.cli import main
from scoreinfo.corpus import write_corpus
from scoreinfo.synthetic import synthetic_corpus


@pytest.fixture
def small_manifest(tmp_path):
    corpus = synthetic_corpus(composers=3, per_composer=3, length=300, seed=4)
    return write_corpus(corpus, tmp_path / "corpus"), corpus


def test_encode(tmp_path, capsys):
    score = tmp_path / "s.txt"
    score.write_text("steps 2\nnote 1 23 1\n")
    out = tmp_path / "s.bits"
    assert main(["encode", str(score), "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "176"
    text = out.read_text().strip()
    assert text.index("1") == 90 and text.count("1") == 1


def test_encode_empty_score(tmp_path):
    score = tmp_path / "empty.txt"
    score.write_text("steps 1\n")
    assert main(["encode", str(score)]) == 0
    assert (tmp_path / "empty.bits").read_text().strip() == "0" * 88


def test_encode_malformed(tmp_path, capsys):
    score = tmp_path / "bad.txt"
    score.write_text("steps 2\nnote 0 200 1\n")
    assert main(["encode", str(score)]) == 2
    assert "pitch 200" in capsys.readouterr().err


def test_infoq_five_classes(tmp_path, capsys):
    corpus = synthetic_corpus(composers=5, per_composer=2, length=200, seed=9)
    manifest = write_corpus(corpus, tmp_path / "c")
    query = tmp_path / "q.txt"
    query.write_text(corpus[0].text)
    assert main(["infoq", str(query), str(manifest)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 6
    assert lines[-1].startswith("predicted ")
    label, value = lines[0].split()
    assert label == "comp1" and len(value.split(".")[1]) == 6


def test_infoq_paper_style_and_single_class(tmp_path, capsys):
    items = [LabeledScore("x1", "solo", "0110" * 20), LabeledScore("x2", "solo", "0011" * 20)]
    manifest = write_corpus(items, tmp_path / "c")
    query = tmp_path / "q.txt"
    query.write_text("0110" * 10)
    assert main(["infoq", str(query), str(manifest), "--paper-style"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[-1] == "predicted solo"
    assert lines[0].split()[1].isdigit()


def test_infoq_rejects_bad_query(small_manifest, tmp_path):
    manifest, _ = small_manifest
    query = tmp_path / "q.txt"
    query.write_text("01201\n")
    assert main(["infoq", str(query), str(manifest)]) == 2


def test_index_then_infoq_from_saved(small_manifest, tmp_path, capsys):
    manifest, corpus = small_manifest
    out = tmp_path / "idx"
    assert main(["index", str(manifest), "--out", str(out)]) == 0
    assert sorted(p.name for p in out.iterdir()) == ["comp1.sqix", "comp2.sqix", "comp3.sqix"]
    query = tmp_path / "q.txt"
    query.write_text(corpus[4].text)
    capsys.readouterr()
    assert main(["infoq", str(query), "--index-dir", str(out)]) == 0
    from_index = capsys.readouterr().out
    assert main(["infoq", str(query), str(manifest)]) == 0
    assert capsys.readouterr().out == from_index


def test_cdm_command(tmp_path, capsys):
    x, y = tmp_path / "x", tmp_path / "y"
    x.write_text("01" * 50)
    y.write_text("0011" * 25)
    assert main(["cdm", str(x), str(y), "--backend", "identity"]) == 0
    assert capsys.readouterr().out.strip() == "1.000000"
    assert main(["cdm", str(x), str(y), "--backend", "identity", "--offset", "500"]) == 2
    assert main(["cdm", str(x), str(y), "--backend", "external"]) == 2


def test_cdm_external_failure_exit_3(tmp_path):
    x = tmp_path / "x"
    x.write_text("0101")
    cmd = "false {in}"
    assert main(["cdm", str(x), str(x), "--backend", "external", "--external-cmd", cmd]) == 3


def test_classify_both_methods(small_manifest, tmp_path, capsys):
    manifest, corpus = small_manifest
    query = tmp_path / "q.txt"
    query.write_text(corpus[0].text)
    assert main(["classify", str(query), str(manifest)]) == 0
    assert capsys.readouterr().out.split()[0] == "q"
    assert main(["classify", str(query), str(manifest), "--method", "cdm", "--k", "1"]) == 0
    qid, predicted = capsys.readouterr().out.split()[:2]
    assert qid == "q" and predicted in {"comp1", "comp2", "comp3"}


def test_evaluate_two_methods(small_manifest, tmp_path):
    manifest, corpus = small_manifest
    out = tmp_path / "report.txt"
    argv = ["evaluate", str(manifest), "--method", "infoq", "--method", "cdm", "--out", str(out)]
    assert main(argv) == 0
    lines = out.read_text().splitlines()
    rows = [ln for ln in lines if ln.split()[0] in {c.id for c in corpus}]
    assert len(rows) == 2 * len(corpus)
    assert lines[-4].startswith("# contingency infoq cdm")
    assert sum(map(int, lines[-3].split())) == len(corpus)
    assert lines[-2] == "# mcnemar statistic p_chi2 p_exact"


def test_evaluate_singleton_class(tmp_path, capsys):
    items = [LabeledScore("a1", "A", "0101"), LabeledScore("a2", "A", "0110"), LabeledScore("b1", "B", "0011")]
    manifest = write_corpus(items, tmp_path / "c")
    assert main(["evaluate", str(manifest)]) == 2
    assert "B" in capsys.readouterr().err


def test_mcnemar_command(capsys):
    assert main(["mcnemar", "38", "17", "3", "17"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[1] == "38 17 3 17"
    assert out[3].startswith("8.450000 0.00365")


def test_bench_bad_parameters():
    assert main(["bench", "--n", "0"]) == 2
    assert main(["bench", "--g", "5,x"]) == 2


def test_bench_table(capsys):
    assert main(["bench", "--l", "200", "--c", "2", "--g", "2,4,8", "--n", "1", "--backend", "identity"]) == 0
    lines = capsys.readouterr().out.splitlines()
    body = lines[2:]
    assert len(body) == 6
    assert [ln.split()[0] for ln in body].count("infoq") == 3
    assert [int(ln.split()[1]) for ln in body if ln.startswith("cdm")] == [2, 4, 8]


def test_missing_command_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
