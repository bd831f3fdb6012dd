import json

import pytest

from surfmcg import cli, mcg
from surfmcg.atlas import SurfaceSpec


def run(capsys, *argv):
    code = cli.main(["--format", "machine", *argv])
    out = capsys.readouterr().out.strip().splitlines()[-1]
    return code, json.loads(out)


def test_verify_builtins(capsys):
    assert run(capsys, "verify", "builtin:W2:2")[0] == 0
    assert run(capsys, "verify", "builtin:4bdry:1")[0] == 0


def test_malformed_file_exit_3(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("not a factorization\n")
    code, rep = run(capsys, "verify", str(p))
    assert code == 3 and rep["status"] == "error"
    assert run(capsys, "verify", str(tmp_path / "missing.txt"))[0] == 3


def test_emit_then_verify(tmp_path, capsys):
    p = tmp_path / "w.txt"
    assert run(capsys, "emit", "W2:3", "-o", str(p))[0] == 0
    code, rep = run(capsys, "verify", str(p))
    assert code == 0 and rep["tokens"] == 16


def test_mutated_file_fails(tmp_path, capsys):
    p = tmp_path / "w.txt"
    run(capsys, "emit", "W2:2", "-o", str(p))
    lines = p.read_text().splitlines()
    p.write_text("\n".join(lines[:1] + lines[2:]) + "\n")
    assert run(capsys, "verify", str(p))[0] == 1


def test_pi1_targets(capsys):
    code, rep = run(capsys, "pi1", "builtin:free:1", "--target", "free(1)")
    assert code == 0 and rep["verdict"] == "free(1) confirmed"
    code, rep = run(capsys, "pi1", "builtin:w1sub:1,2", "--target", "Z+Z/2")
    assert code == 0 and rep["abelianization"] == "Z + Z/2"
    code, rep = run(capsys, "pi1", "builtin:empty:2", "--target", "surface(2)")
    assert code == 0


def test_pipeline_z2(tmp_path, capsys):
    p = tmp_path / "g.txt"
    p.write_text("gens x\nx^2\n")
    code, rep = run(capsys, "pipeline", str(p), "--target", "finite(2)")
    assert code == 0 and rep["abelianization"] == "Z/2" and rep["sections"] == [[1, -1], [2, -1]]


def test_hurwitz(capsys):
    code, rep = run(capsys, "hurwitz", "gurtas:3,1")
    assert code == 0 and rep["matches_target"]


def test_loops(tmp_path, capsys):
    p = tmp_path / "r.txt"
    p.write_text("a2 a1 a2^2 a5^-1 a4^-3\na3^-1 a2^-1\n")
    code, rep = run(capsys, "loops", "--gens", "5", "--relators", str(p))
    assert code == 0 and len(rep["loops"]) == 2


def test_substitute(tmp_path, capsys):
    p = tmp_path / "s.txt"
    code, rep = run(capsys, "substitute", "W2:6", "--eta", "V1:6,1,2", "--phi", "T[b:2]", "-o", str(p))
    assert code == 0 and rep["tokens"] == 46
    assert run(capsys, "verify", str(p))[0] == 0


def test_replay_is_byte_identical(capsys):
    cli.main(["--seed", "3", "pi1", "builtin:w1sub:1,3", "--target", "Z+Z/3"])
    a = capsys.readouterr().out
    cli.main(["--seed", "3", "pi1", "builtin:w1sub:1,3", "--target", "Z+Z/3"])
    assert capsys.readouterr().out == a


def test_mapping_class_expressions():
    s = SurfaceSpec(2, 1)
    f = cli.parse_mapping_class("T[a:1]; T[b:1]^-1", s)
    # the first term acts first
    assert mcg.equal(f, mcg.compose(mcg.twist("b:1", s, -1), mcg.twist("a:1", s)))
    c = cli.parse_mapping_class("conj(T[a:1], T[b:1])", s)
    assert mcg.equal(c, mcg.image_twist(mcg.twist("a:1", s), mcg.atlas.atlas_curve("b:1", s)))
    ch = cli.parse_mapping_class("chain(A:1..A:2)", s)
    assert mcg.equal(ch, mcg.twist("c:1", s))
    with pytest.raises(cli.InputError):
        cli.parse_mapping_class("bogus", s)
