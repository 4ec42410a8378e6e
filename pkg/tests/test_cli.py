import json
import subprocess
import sys

import pytest

from lyubeznik.cli import main

BAD_B = "ring: x,y,z,u,v; y*u, y*z*v, x*z*v, x*z*u"
NONSTANDARD = "ring: x1,x2,x3,y1,y2,y3,z1,z2,z3; x1*x2*y3, x1*x2*z3, x1*y2*z3, x1*z2*z3, y1*y2*y3, y1*y2*z3, y1*z2*z3"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


def test_table_of_a_hyperplane(capsys):
    res = run_json(capsys, "table", "x", "--ring", "x,y")
    assert res["result"]["table"] == [[0, 0], [0, 1]]
    assert res["ring"] == ["x", "y"] and res["char"] == 0


def test_table_nonstandard(capsys):
    code, out, _ = run(capsys, "table", NONSTANDARD)
    assert code == 0
    lines = out.splitlines()
    assert "d = 7" in lines[0]
    assert lines[-1] == "7 | · · · · · · · 2"
    assert lines[-3] == "5 | · · · · · · 1 ·"


def test_minimalization_does_not_change_the_table(capsys):
    a = run_json(capsys, "table", "x*y, x")["result"]
    b = run_json(capsys, "table", "x", "--ring", "x,y")["result"]
    assert a == b


def test_localize(capsys):
    assert run_json(capsys, "localize", BAD_B, "--at", "x,y,u,v")["result"]["table"][2][2] == 2
    full = run_json(capsys, "localize", BAD_B, "--at", "x,y,z,u,v")["result"]
    assert full["table"] == run_json(capsys, "table", BAD_B)["result"]["table"]
    code, _, err = run(capsys, "localize", BAD_B, "--at", "x")
    assert code == 2 and "does not contain" in err


def test_polarize(capsys):
    code, out, _ = run(capsys, "polarize", "x^2")
    assert code == 0
    assert out.splitlines() == ["x_1_1*x_1_2", "h = 1"]


def test_hhgraph(capsys):
    code, out, _ = run(capsys, "hhgraph", BAD_B)
    assert out.strip() == "components: 1"
    code, out, _ = run(capsys, "hhgraph", BAD_B, "--dot", "--at", "x,y,u,v")
    assert out.startswith("graph HH {") and out.count("label") == 2


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "x")
    assert (code, out.strip()) == (0, "1")


def test_gamma_and_genlyu(capsys):
    res = run_json(capsys, "gamma", "x*z, x*w, y*z, y*w", "--ring", "x,y,z,w")["result"]
    assert res["genlyu"][2] == 2 and res["gamma"][2][2] == 2
    assert run_json(capsys, "genlyu", "x", "--ring", "x,y")["result"]["genlyu"] == [0, 1]


def test_char_flag(capsys):
    rp2 = "ring: a,b,c,d,e,f; a*b*e, a*b*f, a*c*d, a*c*f, a*d*e, b*c*d, b*c*e, b*d*f, c*e*f, d*e*f"
    t0 = run_json(capsys, "table", rp2)["result"]
    t2 = run_json(capsys, "table", rp2, "--char", "2")["result"]
    assert t0["trivial"] and not t2["trivial"]


def test_json_roundtrip(capsys, tmp_path):
    first = run(capsys, "table", "x*y^2, y*z", "--char", "3", "--json")[1]
    second = run(capsys, "table", first, "--json")[1]
    assert first == second
    path = tmp_path / "in.json"
    path.write_text(first)
    assert run(capsys, "table", "--file", str(path), "--json")[1] == first


def test_file_input(capsys, tmp_path):
    path = tmp_path / "ideal.txt"
    path.write_text("ring: x, y; x*y\n")
    assert run_json(capsys, "table", "--file", str(path))["result"]["d"] == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "1"],
        ["table", "x y"],
        ["table", "x*q", "--ring", "x,y"],
        ["table"],
        ["table", "x", "--file", "/nonexistent"],
        ["table", "{not json"],
        ["table", ", ".join(f"v{i}" for i in range(21))],
    ],
)
def test_user_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_bad_characteristic_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["table", "x", "--char", "4"])
    assert info.value.code == 2


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "1", "--count", "3", "--chars", "0,2")
    assert code == 0 and out.strip().endswith("all checks passed")
    res = json.loads(run(capsys, "verify", "--count", "0", "--no-goldens", "--json")[1])
    assert res["result"]["passed"] and res["result"]["reports"] == []


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lyubeznik", "bound", "x*y"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "1"
