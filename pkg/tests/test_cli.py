import json
import subprocess
import sys

import pytest

from deltalens.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_builtins(capsys):
    code, out, err = run(
        ["validate", "interval", "id:walking-iso", "free-lens:id:interval"], capsys
    )
    assert code == 0
    assert out.count("ok:") == 3


def test_unknown_reference_is_an_input_error(capsys):
    code, out, err = run(["validate", "no-such-entry"], capsys)
    assert code == 2
    assert "unknown" in err


def test_validate_reports_violations(tmp_path, capsys):
    payload = {
        "objects": ["x"],
        "morphisms": [{"id": "1_x", "src": "x", "tgt": "x"}],
        "identities": {"x": "1_x"},
        "compose": [],
    }
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(payload))
    code, out, err = run(["validate", str(p)], capsys)
    assert code == 1
    assert "missing-composite" in out


def test_jf_and_factorise_write_canonical_files(tmp_path, capsys):
    out_j = tmp_path / "jf.json"
    code, out, _ = run(["jf", "id:interval", "--out", str(out_j)], capsys)
    assert code == 0
    assert "3 objects, 4 morphisms" in out
    first = out_j.read_bytes()
    code, _, _ = run(["jf", "id:interval", "--out", str(out_j)], capsys)
    assert code == 0
    assert out_j.read_bytes() == first

    out_e = tmp_path / "e.json"
    out_m = tmp_path / "m.json"
    code, _, _ = run(
        ["factorise", "iota:interval", "--out-e", str(out_e), "--out-m", str(out_m)],
        capsys,
    )
    assert code == 0
    code, out, _ = run(["validate", str(out_e), str(out_m)], capsys)
    assert code == 0


def test_free_lens_command(tmp_path, capsys):
    out_l = tmp_path / "lens.json"
    code, out, _ = run(["free-lens", "id:interval", "--out", str(out_l)], capsys)
    assert code == 0
    assert "3 objects, 5 morphisms" in out
    code, out, _ = run(["validate", str(out_l)], capsys)
    assert code == 0


def test_lift_modes_and_failure(capsys):
    code, out, _ = run(
        ["lift", "--left", "s:id:interval", "--right", "t:id:interval",
         "--top", "s:id:interval", "--bottom", "t:id:interval"],
        capsys,
    )
    assert code == 0
    assert "diagonal objects" in out

    code, _, err = run(
        ["lift", "--left", "iota:interval", "--right", "id:interval",
         "--top", "iota:interval", "--bottom", "id:interval"],
        capsys,
    )
    assert code == 1

    code, out, _ = run(
        ["lift", "--coalgebra", "cofree:id:interval",
         "--lens", "free-lens:id:interval",
         "--top", "lf:id:interval", "--bottom", "rf:id:interval"],
        capsys,
    )
    assert code == 0


def test_enumerate_command(tmp_path, capsys):
    code, out, _ = run(["enumerate", "dofs", "walking-iso", "walking-iso"], capsys)
    assert code == 0
    assert "dofs: 2" in out
    out_dir = tmp_path / "found"
    code, out, _ = run(
        ["enumerate", "lenses", "id:terminal", "--out", str(out_dir)], capsys
    )
    assert code == 0
    assert (out_dir / "lenses-0.json").exists()


def test_laws_subset_runs_only_requested_families(capsys):
    code, out, _ = run(["laws", "--families", "factorisation"], capsys)
    assert code == 0
    lines = [l for l in out.splitlines() if " cases, " in l]
    assert len(lines) == 1 and lines[0].startswith("factorisation:")
    assert "suite: ok" in out


def test_laws_rejects_unknown_family(capsys):
    code, _, err = run(["laws", "--families", "nonsense"], capsys)
    assert code == 2


def test_laws_reports_broken_corpus_entries(tmp_path, capsys):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    (corpus / "junk.json").write_text("{nope")
    payload = {
        "objects": ["x"],
        "morphisms": [{"id": "1_x", "src": "x", "tgt": "x"}],
        "identities": {"x": "1_x"},
        "compose": [],
    }
    (corpus / "lawless.json").write_text(json.dumps(payload))
    code, out, _ = run(
        ["--corpus", str(corpus), "laws", "--families", "fixtures"], capsys
    )
    assert code == 1
    assert "FAIL fixtures junk" in out
    assert "FAIL fixtures lawless" in out
    assert "missing-composite" in out


def test_seed_only_shuffles_execution_order(capsys):
    code1, out1, _ = run(["laws", "--families", "fixtures,coalgebra", "--seed", "1"], capsys)
    code2, out2, _ = run(["laws", "--families", "fixtures,coalgebra", "--seed", "7"], capsys)
    assert code1 == code2 == 0
    assert out1 == out2


def test_export_dot_output(capsys):
    code, out, _ = run(["export-dot", "interval"], capsys)
    assert code == 0
    assert out.count("->") == 1

    code, out, _ = run(["export-dot", "free-lens:id:interval"], capsys)
    assert code == 0
    assert "penwidth" in out

    code, out, _ = run(["export-dot", "ef:id:interval"], capsys)
    assert code == 0
    assert len([l for l in out.splitlines() if '";' in l]) == 3
    assert out.count("->") == 2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "deltalens.cli", "validate", "terminal"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "ok: terminal" in proc.stdout
