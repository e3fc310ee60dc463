from pathlib import Path

import pytest

from ncsos_workbench.main import main


def test_normalize_writes_normal_form(tmp_path: Path) -> None:
    out = tmp_path / "nf.txt"
    assert main(["normalize", "z[0,0] x[0,0]", "--out", str(out)]) == 0
    assert out.read_text() == "J x[0,0] z[0,0]\n"


def test_normalize_free_product(tmp_path: Path) -> None:
    out = tmp_path / "nf.txt"
    assert main(["normalize", "a b b a c", "--builtin", "z2", "--out", str(out)]) == 0
    assert out.read_text() == "c\n"


def test_parse_error_exit_code(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["normalize", "x[0,"]) == 2
    err = capsys.readouterr().err
    assert "parse error" in err
    assert "^" in err


@pytest.mark.parametrize("word,outcome", [("S x[0,0] S~ x[0,1]", "trivial"), ("S T S~", "nontrivial")])
def test_word_problem(word: str, outcome: str, tmp_path: Path) -> None:
    out = tmp_path / "wp.txt"
    assert main(["wp", word, "--out", str(out)]) == 0
    assert f" {outcome} " in out.read_text()


def test_decompose_then_verify(tmp_path: Path) -> None:
    path = tmp_path / "key.decomp"
    assert main(["decompose-key", "--m", "1", "--n", "0", "--out", str(path)]) == 0
    assert main(["verify-decomp", str(path)]) == 0

    target = tmp_path / "key.decomp.target"
    target.write_text(target.read_text() + "1 : 1\n")
    assert main(["verify-decomp", str(path)]) == 1


def test_decompose_rejects_halted_step() -> None:
    assert main(["decompose-key", "--tm", "halt_immediately", "--m", "1", "--n", "1"]) == 2


def test_sos_writes_certificate(tmp_path: Path) -> None:
    out = tmp_path / "cert.txt"
    assert main(["sos", "3 : 1\n2 : x", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("[basis]")
    assert "status = certified" in text


def test_sos_infeasible_still_succeeds(tmp_path: Path) -> None:
    poly = tmp_path / "f.poly"
    poly.write_text("1 : x\n-1 : 1\n")
    out = tmp_path / "cert.txt"
    assert main(["sos", str(poly), "--quotient", "commutative", "--degree", "0", "--out", str(out)]) == 0
    assert "status = infeasible" in out.read_text()


def test_eval_halting() -> None:
    assert main(["eval-halting", "--tm", "halt_immediately", "--m", "1"]) == 0


def test_eval_halting_needs_halting_machine() -> None:
    assert main(["eval-halting", "--tm", "loop_forever", "--budget", "16"]) == 3


def test_pipeline_report_is_reproducible(tmp_path: Path) -> None:
    first, second = tmp_path / "a.txt", tmp_path / "b.txt"
    args = ["pipeline", "--tm", "loop_forever", "--horizon", "2", "--budget", "16"]
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second)]) == 0
    assert first.read_text() == second.read_text()
    assert "key relation n=1" in first.read_text()


def test_selftest_small(tmp_path: Path) -> None:
    out = tmp_path / "selftest.txt"
    assert main(["selftest", "normalform", "--fraction", "0.001", "--out", str(out)]) == 0
    assert "seed = 0" in out.read_text()


def test_unknown_suite() -> None:
    assert main(["selftest", "nope"]) == 2


def test_unknown_workflow() -> None:
    with pytest.raises(SystemExit):
        main(["nope"])
