import json
import os

import jsonschema
import pytest

from newton_contact.cli import main
from newton_contact.fixtures import FIXTURES
from newton_contact.report import load_schema, schema_names

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")
SURFACES = ["cusp-surface", "star-surface", "octic-surface", "shear-surface"]


def golden_cases():
    cases = []
    for name, fx in sorted(FIXTURES.items()):
        cases.append((name, "polyhedron", []))
        if name in SURFACES:
            cases.append((name, "type", []))
        else:
            cases.append((name, "nondegen", ["--assert-psh"] if name == "reinhardt-two-facets" else []))
    cases.append(("shear-surface", "improve", ["--iterate"]))
    cases.append(("quartic-quadratic", "classify", []))
    cases.append(("shear", "oracle", ["--max-exp", "3"]))
    cases.append(("odd-vertex", "faces", []))
    return cases


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def check_schema(doc, command):
    jsonschema.validate(doc, load_schema("envelope"))
    jsonschema.validate(doc["result"], load_schema(command))


@pytest.mark.parametrize("name,command,extra", golden_cases(),
                         ids=[f"{c[1]}-{c[0]}" for c in golden_cases()])
def test_golden(name, command, extra, capsys):
    code, out, err = run([command, "-e", FIXTURES[name].text, *extra], capsys)
    assert code == 0, err
    check_schema(json.loads(out), command)
    path = os.path.join(GOLDEN, f"{command}-{name}.json")
    if os.environ.get("NEWTON_CONTACT_REGEN_GOLDEN"):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(out)
    with open(path, encoding="utf-8") as fh:
        assert out == fh.read()


def test_golden_values_for_the_star_surface():
    with open(os.path.join(GOLDEN, "type-star-surface.json"), encoding="utf-8") as fh:
        doc = json.load(fh)
    t = doc["result"]["type"]
    assert t["rho1"] == 10 and t["delta1"] is None and t["delta1_lb"] == 10
    assert t["verdict"]["status"] == "Degenerate" and t["best_curve"] == "(t, t, 0)"
    assert doc["manifest"]["permutation"] is not None


def test_every_command_output_validates(tmp_path, capsys):
    f = tmp_path / "f.txt"
    f.write_text("# the odd-vertex example\n" + FIXTURES["odd-vertex"].text + "\n")
    runs = {
        "parse": [], "polyhedron": [], "diagram": ["--csv", str(tmp_path / "d.csv")], "rho": [], "faces": [],
        "part": ["--face", "0,4;2,1"], "contact": ["--curve", "(t^2, t^3)"], "nondegen": [], "classify": [],
    }
    for command, extra in runs.items():
        code, out, err = run([command, "-f", str(f), *extra], capsys)
        assert code == 0, (command, err)
        check_schema(json.loads(out), command)
    for command, extra in {"type": [], "normalize": [], "improve": []}.items():
        code, out, err = run([command, "-e", FIXTURES["shear-surface"].text, *extra], capsys)
        assert code == 0, (command, err)
        check_schema(json.loads(out), command)
    assert set(schema_names()) >= set(runs) | {"type", "normalize", "improve", "oracle", "selftest", "envelope"}


def test_identical_inputs_give_identical_bytes(capsys):
    args = ["type", "-e", FIXTURES["star-surface"].text]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b


def test_diagram_files_and_digests(tmp_path, capsys):
    svg, csv = tmp_path / "d.svg", tmp_path / "d.csv"
    code, out, _ = run(["diagram", "-e", FIXTURES["odd-vertex"].text, "--svg", str(svg), "--csv", str(csv)], capsys)
    assert code == 0
    doc = json.loads(out)
    kinds = {o["kind"]: o for o in doc["manifest"]["outputs"]}
    assert set(kinds) == {"svg", "csv"}
    text = svg.read_text()
    assert text.startswith("<?xml") and "<svg" in text and "rho1=4" in text
    rows = csv.read_text().splitlines()
    assert rows[0] == "kind,dim,normal,level,regular,vertices"
    assert "facet,1,3 2,8,0,0 4;2 1" in rows
    first = svg.read_bytes()
    run(["diagram", "-e", FIXTURES["odd-vertex"].text, "--svg", str(svg)], capsys)
    assert svg.read_bytes() == first


def test_diagram_needs_two_variables(tmp_path, capsys):
    code, _, err = run(["diagram", "-e", "|z1|^2 + |z2|^2 + |z3|^2", "--svg", str(tmp_path / "x.svg")], capsys)
    assert code == 1 and "two variables" in err


def test_output_file(tmp_path, capsys):
    out = tmp_path / "o.json"
    code, printed, _ = run(["rho", "-e", "|z1|^2 + |z2|^6", "-o", str(out)], capsys)
    assert code == 0 and printed == ""
    assert json.loads(out.read_text())["result"]["rho1"] == 6


def test_text_mode(capsys):
    code, out, _ = run(["contact", "-e", "|z1^3 - z2^2|^2", "--curve", "(t^2, t^3)", "--text"], capsys)
    assert code == 0 and "O = inf" in out


def test_exit_codes(capsys):
    assert run(["parse", "-e", "|z1|^2 +"], capsys)[0] == 1
    assert run(["frobnicate"], capsys)[0] == 1
    assert run(["contact", "-e", "|z1|^2"], capsys)[0] == 1
    assert run(["normalize", "-e", "|z1|^2 + |z2|^2"], capsys)[0] == 1
    assert run(["parse"], capsys)[0] == 1
    assert run(["--version"], capsys)[0] == 0


def test_unknown_verdict_exit_code(capsys):
    # x^2 - 4xy + y^2 vanishes only at the irrational ratio x/y = 2 + sqrt(3),
    # so no exact witness exists and no certificate applies
    code, out, _ = run(["nondegen", "-e", "|z1|^4 + |z2|^4 - 4*|z1*z2|^2"], capsys)
    assert code == 2
    assert json.loads(out)["result"]["status"] == "Unknown"


def test_parse_error_points_at_the_problem(capsys):
    code, _, err = run(["parse", "-e", "|z1| ^^ 2"], capsys)
    assert code == 1 and "^" in err


def test_selftest(capsys):
    code, out, _ = run(["selftest", "--text"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 13 and all(line.startswith("PASS") for line in lines)
