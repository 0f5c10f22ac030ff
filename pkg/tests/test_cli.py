import io
import json
from contextlib import redirect_stdout

from divalg.cli import main
from divalg.dissident import DissidentMap
from divalg.exact import Matrix
from divalg.octonion import OCTONION_TABLE
from divalg.serialize import canonical_json, map_to_json, plain_matrix_to_json, triple_to_json


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def run_json(*argv):
    code, out = run_cli(*argv)
    return code, json.loads(out)


def test_degree_cross7():
    code, report = run_json("degree", "--builtin", "cross7",
                            "--trials", "50", "--samples", "16")
    assert code == 0
    assert report["degree"] == 1
    assert report["dissidence"]["counterexample"] is None
    assert report["verification"]["all_pass"]
    assert report["version"] and report["seed"] == 0
    assert report["budgets"] == {"max_degree": 5, "samples": 16, "trials": 50}


def test_degree_random_quadruple():
    code, report = run_json("degree", "--quadruple", "random", "--seed", "7",
                            "--trials", "30", "--samples", "16")
    assert code == 0
    assert report["degree"] == 1


def test_degree_parse_error(tmp_path):
    bad = tmp_path / "malformed.json"
    bad.write_text("{not json", encoding="utf-8")
    code, report = run_json("degree", "--input", str(bad))
    assert code == 2
    assert "parse error" in report["error"]


def test_degree_not_dissident_exits_3(tmp_path):
    zero = DissidentMap(3, [[[0] * 3 for _ in range(3)] for _ in range(3)])
    path = tmp_path / "zero.json"
    path.write_text(canonical_json(map_to_json(zero)), encoding="utf-8")
    code, report = run_json("degree", "--input", str(path), "--trials", "5")
    assert code == 3
    assert report["dissidence"]["counterexample"] is not None


def test_lift_emits_lifting(tmp_path):
    out = tmp_path / "phi.json"
    code, report = run_json("lift", "--builtin", "cross3", "--trials", "20",
                            "--samples", "8", "--emit", str(out))
    assert code == 0
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["kind"] == "lifting" and doc["degree"] == 1
    assert report["lifting"] == doc


def test_check_quadratic_and_division():
    code, report = run_json("check", "--what", "quadratic", "--builtin", "octonions")
    assert code == 0 and report["pass"]
    code, report = run_json("check", "--what", "division", "--builtin", "octonions",
                            "--trials", "100")
    assert code == 0 and report["pass"]


def test_check_dissident_failure(tmp_path):
    zero = DissidentMap(3, [[[0] * 3 for _ in range(3)] for _ in range(3)])
    path = tmp_path / "zero.json"
    path.write_text(canonical_json(map_to_json(zero)), encoding="utf-8")
    code, report = run_json("check", "--what", "dissident", "--input", str(path),
                            "--trials", "5")
    assert code == 1
    assert report["counterexample"] is not None


def test_check_g2(tmp_path):
    minus = tmp_path / "minusI.json"
    minus.write_text(
        canonical_json(plain_matrix_to_json(Matrix.identity(7).scale(-1))),
        encoding="utf-8",
    )
    code, report = run_json("check", "--what", "g2", "--matrix", str(minus))
    assert code == 1 and not report["pass"]

    eye = tmp_path / "I.json"
    eye.write_text(canonical_json(plain_matrix_to_json(Matrix.identity(7))),
                   encoding="utf-8")
    code, report = run_json("check", "--what", "g2", "--matrix", str(eye))
    assert code == 0 and report["pass"]


def test_build_then_recover_roundtrip(tmp_path):
    alg_path = tmp_path / "alg.json"
    code, _ = run_json("build", "--builtin", "cross7", "--emit", str(alg_path))
    assert code == 0
    code, report = run_json("recover", "--input", str(alg_path))
    assert code == 0
    assert report["result"] == triple_to_json(
        __import__("divalg.builtins", fromlist=["cross7_triple"]).cross7_triple()
    )


def test_roundtrip_command():
    code, report = run_json("roundtrip", "--builtin", "cross7")
    assert code == 0 and report["match"]
    code, report = run_json("roundtrip", "--quadruple", "random", "--seed", "3")
    assert code == 0 and report["match"]


def test_morphism_command(tmp_path):
    from divalg.octonion import extend_quaternion_automorphism, rotation_from_quaternion
    from divalg.dissident import MatrixQuadruple, quadruple_to_triple, random_quadruple
    from divalg.serialize import triple_to_json as t2j

    s = extend_quaternion_automorphism(rotation_from_quaternion((1, 0, 1, 0)))
    q = random_quadruple(4)
    conj = MatrixQuadruple(s * q.a * s.transpose(), s * q.b * s.transpose(),
                           s * q.c * s.transpose(), s * q.d * s.transpose())
    src = tmp_path / "src.json"
    dst = tmp_path / "dst.json"
    fmat = tmp_path / "S.json"
    src.write_text(canonical_json(t2j(quadruple_to_triple(q))), encoding="utf-8")
    dst.write_text(canonical_json(t2j(quadruple_to_triple(conj))), encoding="utf-8")
    fmat.write_text(canonical_json(plain_matrix_to_json(s)), encoding="utf-8")
    code, report = run_json("morphism", "--kind", "triple", "--src", str(src),
                            "--dst", str(dst), "--f", str(fmat))
    assert code == 0 and report["pass"]
    # identity fails between the two conjugated triples
    eye = tmp_path / "I.json"
    eye.write_text(canonical_json(plain_matrix_to_json(Matrix.identity(7))),
                   encoding="utf-8")
    code, report = run_json("morphism", "--kind", "triple", "--src", str(src),
                            "--dst", str(dst), "--f", str(eye))
    assert code == 1 and not report["pass"]


def test_table_dump_golden():
    code, report = run_json("table-dump", "--builtin", "octonions")
    assert code == 0
    tensor = report["result"]["tensor"]
    assert report["result"]["dim"] == 8
    for i in range(8):
        for j in range(8):
            for k in range(8):
                assert int(tensor[i][j][k]) == OCTONION_TABLE[i][j][k]
    assert tensor[1][2][3] == "1" and tensor[2][1][3] == "-1"


def test_reports_are_byte_identical():
    _, first = run_cli("degree", "--builtin", "cross3", "--seed", "5",
                       "--trials", "25", "--samples", "8")
    _, second = run_cli("degree", "--builtin", "cross3", "--seed", "5",
                        "--trials", "25", "--samples", "8")
    assert first == second
    _, third = run_cli("check", "--what", "division", "--builtin", "quaternions",
                       "--trials", "40", "--seed", "9")
    _, fourth = run_cli("check", "--what", "division", "--builtin", "quaternions",
                        "--trials", "40", "--seed", "9")
    assert third == fourth


def test_json_out_writes_same_bytes(tmp_path):
    out = tmp_path / "report.json"
    _, stdout = run_cli("check", "--what", "quadratic", "--builtin", "quaternions",
                        "--json-out", str(out))
    assert out.read_text(encoding="utf-8") == stdout


def test_input_source_exclusivity():
    code, report = run_json("degree", "--builtin", "cross3", "--quadruple", "random")
    assert code == 2


def test_solver_error_exit_codes(monkeypatch):
    # these paths only fire on solver-bug signals, so they are driven directly
    import divalg.cli as cli
    from divalg.lifting import AmbiguousKernel, NoLiftingFound

    def raise_ambiguous(*args, **kwargs):
        raise AmbiguousKernel("two validated solutions")

    monkeypatch.setattr(cli, "solve_lifting_scan", raise_ambiguous)
    code, report = run_json("degree", "--builtin", "cross3", "--trials", "5")
    assert code == 4 and "two validated" in report["error"]

    def raise_none(*args, **kwargs):
        raise NoLiftingFound("nothing up to degree 5")

    monkeypatch.setattr(cli, "solve_lifting_scan", raise_none)
    code, report = run_json("degree", "--builtin", "cross3", "--trials", "5")
    assert code == 3

    from divalg.lifting import Lifting

    def fake_even(*args, **kwargs):
        comps = []
        from divalg.poly import HomogeneousPoly

        x = [HomogeneousPoly.variable(7, i) for i in range(7)]
        comps = [x[i] * x[(i + 1) % 7] for i in range(7)]
        return Lifting(7, 2, comps), [{"degree": 2, "rows": 0, "cols": 0,
                                       "kernel_dim": 1, "validated": 1}]

    monkeypatch.setattr(cli, "solve_lifting_scan", fake_even)
    code, report = run_json("degree", "--builtin", "cross7", "--trials", "5",
                            "--samples", "4")
    assert code == 5 and "parity" in report["error"]
