import pytest

from collatz2.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_query(capsys):
    code, out, err = run(capsys, "query", "4", "--max", "10")
    assert code == 0 and err == ""
    assert out.splitlines() == ["touch=7", "level=3", "s=2", "e=0", "max=16"]


def test_query_help_mentions_discrepancy(capsys):
    code, out, _ = run(capsys, "query", "--help")
    assert code == 0
    assert "s(4) = 3" in out and "s(4) = 2" in out


def test_query_from_export(capsys, tmp_path):
    path = tmp_path / "l.csv"
    assert run(capsys, "build", "--max", "10", "--out", str(path))[0] == 0
    code, out, _ = run(capsys, "query", "4", "--in", str(path))
    assert code == 0 and "touch=7" in out.splitlines()


def test_query_out_of_range(capsys):
    code, _, err = run(capsys, "query", "11", "--max", "10")
    assert code == 2 and err


def test_flag_errors(capsys):
    assert run(capsys, "build")[0] == 2
    assert run(capsys, "build", "--max", "0")[0] == 2
    assert run(capsys, "nope")[0] == 2
    assert run(capsys, "cycle-bounds")[0] == 2
    assert run(capsys, "cycle-bounds", "--odd-steps", "1", "--level-size", "4")[0] == 2
    assert run(capsys, "stats", "--max", "10", "--checkpoints", "100")[0] == 2
    assert run(capsys, "verify", "--max", "10", "--lemmas", "12")[0] == 2
    assert run(capsys, "build", "--max", "10", "--out", "x.jsonl", "--format", "jsonl")[0] == 2


def test_build_jsonl(capsys, tmp_path):
    path = tmp_path / "l.jsonl"
    code, out, _ = run(capsys, "build", "--max", "7", "--retain", "--out", str(path),
                       "--format", "jsonl")
    assert code == 0 and "written=5" in out.splitlines()


def test_engine_error_exit_1(capsys):
    code, out, err = run(capsys, "build", "--max", "27", "--budget", "10")
    assert code == 1 and out == "" and "27" in err


def test_verify(capsys):
    code, out, err = run(capsys, "verify", "--max", "2000")
    assert code == 0 and err == ""
    assert "lemma 1: ok" in out and "lemma 9: reported" in out


def test_stats_stdout_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "stats", "--max", "7", "--checkpoints", "1,7")
    assert code == 0
    assert out.splitlines()[-1] == "7,5,2,0.714286,19,52,2.714286"
    path = tmp_path / "s.csv"
    code, out, _ = run(capsys, "stats", "--max", "7", "--checkpoints", "7", "--out", str(path))
    assert code == 0 and path.read_text().endswith("7,5,2,0.714286,19,52,2.714286\n")


def test_collatz3(capsys):
    code, out, _ = run(capsys, "collatz3", "--max", "1000")
    assert code == 0 and out.strip() == "agree=true"


@pytest.mark.parametrize("argv, lines", [
    (["--odd-steps", "1"], ["sum_k_min=2"]),
    (["--odd-steps", "5"], ["sum_k_min=8"]),
    (["--level-size", "100"], ["p_max=38", "q_min=62"]),
])
def test_cycle_bounds(capsys, argv, lines):
    code, out, _ = run(capsys, "cycle-bounds", *argv)
    assert code == 0 and out.splitlines() == lines


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "crosscheck")
    assert code == 0 and "checked=21" in out
