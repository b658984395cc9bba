import json
import subprocess
import sys
from pathlib import Path

import pytest

from toposhull.cli import main
from toposhull.errors import InputSyntaxError, UnknownReference, ValidationError
from toposhull.monoid import idempotent_monoid
from toposhull.mset import EquivariantMap
from toposhull.samples import monoid_pool
from toposhull.textio import format_map, format_monoid, format_mset, parse

DATA = Path(__file__).resolve().parent.parent / "data"

MONOID = """\
monoid E
elements 1 e
unit 1
table
1 e
e e
"""


def run_cli(*argv, stdin=None):
    proc = subprocess.run([sys.executable, "-m", "toposhull", *argv], input=stdin,
                          capture_output=True, text=True, timeout=60)
    return proc.returncode, proc.stdout, proc.stderr


# ---------------------------------------------------------------- parsing

def test_parse_monoid():
    ws = parse(MONOID)
    M = ws.monoids["E"]
    assert M == idempotent_monoid()


def test_unit_need_not_come_first():
    ws = parse("monoid N\nelements e 1\nunit 1\ntable\ne e\ne 1\n")
    M = ws.monoids["N"]
    assert M.elements[M.identity] == "1"


def test_wrong_arity_row_has_position():
    text = MONOID + "mset A over E\nelements a b\naction\na b\nb\n"
    with pytest.raises(InputSyntaxError) as exc:
        parse(text, "x.txt")
    err = exc.value
    # a short row is reported just past its last token
    assert (err.line, err.col) == (11, 2)
    assert "x.txt:11:2" in str(err)


def test_bad_label_in_table():
    with pytest.raises(InputSyntaxError) as exc:
        parse("monoid E\nelements 1 e\nunit 1\ntable\n1 e\ne z\n")
    assert (exc.value.line, exc.value.col) == (6, 3)


def test_undeclared_monoid():
    with pytest.raises(UnknownReference) as exc:
        parse("mset A over Q\nelements a\naction\na\n")
    assert exc.value.name == "Q"


def test_undeclared_mset_in_map():
    with pytest.raises(UnknownReference):
        parse(MONOID + "map f from A to A\n")


def test_validation_errors_are_delegated():
    with pytest.raises(ValidationError) as exc:
        parse(MONOID + "mset A over E\nelements a b\naction\na b\nb a\n", "bad.txt")
    assert "bad.txt:7" in str(exc.value) and "ActionLawViolation" in str(exc.value)
    # (a*a)*b = b*b = a but a*(a*b) = a*a = b
    with pytest.raises(ValidationError) as exc:
        parse("monoid P\nelements 1 a b\nunit 1\ntable\n1 a b\na b a\nb a a\n")
    assert "NotAssociative" in str(exc.value)


def test_non_equivariant_map_rejected():
    text = MONOID + "mset A over E\nelements a b\naction\na b\nb b\nmap f from A to A\na -> a\nb -> a\n"
    with pytest.raises(ValidationError):
        parse(text)


def test_missing_map_assignment():
    text = MONOID + "mset A over E\nelements a b\naction\na b\nb b\nmap f from A to A\na -> b\n"
    with pytest.raises(InputSyntaxError) as exc:
        parse(text)
    assert "missing b" in str(exc.value)


def test_empty_mset():
    ws = parse(MONOID + "mset Z over E\nelements\n")
    assert ws.msets["Z"].size == 0


def test_comments_ignored():
    ws = parse("# hi\nmonoid E  # trailing\nelements 1 e\nunit 1\ntable\n1 e # row\ne e\n")
    assert ws.monoids["E"].size == 2


def test_round_trip_formatting(object_pool):
    for name, A in object_pool:
        M = A.monoid
        text = format_monoid("M", M) + "\n" + format_mset("A", A, "M")
        ws = parse(text)
        assert ws.monoids["M"] == M and ws.msets["A"] == A
    for M in monoid_pool().values():
        assert parse(format_monoid("M", M)).monoids["M"] == M


def test_map_round_trip(idem_A):
    f = EquivariantMap(idem_A, idem_A, [1, 1])
    text = format_monoid("E", idem_A.monoid) + format_mset("A", idem_A, "E") + format_map("f", f, "A", "A")
    assert parse(text).maps["f"] == f


def test_data_files_parse():
    for path in sorted(DATA.glob("*.txt")):
        ws = parse(path.read_text(), str(path))
        assert ws.monoids


# ---------------------------------------------------------------- commands (in process)

def _json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out else None


def test_validate(capsys):
    code, rep = _json(capsys, "validate", str(DATA / "idempotent.txt"))
    assert code == 0 and rep["command"] == "validate"
    assert set(rep) == {"command", "inputs", "result", "witnesses"}


def test_omega_definitions(capsys):
    code, rep = _json(capsys, "omega", str(DATA / "idempotent.txt"), "E")
    assert code == 0
    assert "I0" in rep["result"]["entities"] and "# I1 =" in rep["result"]["entities"]


def test_hull_both_on_empty_finset(capsys):
    code, rep = _json(capsys, "hull", str(DATA / "finset.txt"), "Empty", "--method", "both")
    assert code == 0
    assert rep["result"]["subobject"]["size"] == 1 == rep["result"]["quotient"]["size"]
    assert rep["result"]["agree"] is True


def test_injective_terminal(capsys):
    code, rep = _json(capsys, "injective", str(DATA / "finset.txt"), "Point")
    assert code == 0 and rep["witnesses"]["retraction"]


def test_injective_empty_is_false(capsys):
    code, rep = _json(capsys, "injective", str(DATA / "finset.txt"), "Empty")
    assert code == 1 and rep["witnesses"]


def test_essential_singleton_is_false(capsys):
    code, rep = _json(capsys, "essential", str(DATA / "finset.txt"), "single")
    assert code == 1
    assert rep["result"]["essential"] is False
    assert sorted(rep["witnesses"]["pair"]) == ["false", "true"]


def test_other_commands(capsys):
    f = str(DATA / "idempotent.txt")
    c = str(DATA / "cyclic.txt")
    assert main(["hom", f, "A", "A"]) == 0
    assert main(["exp", f, "A", "Fix"]) == 0
    assert main(["product", f, "A", "A"]) == 0
    assert main(["quotients", f, "A"]) == 0
    assert main(["subobjects", f, "A"]) == 0
    assert main(["iso", f, "A", "Fix"]) == 1
    assert main(["invert", c, "flip"]) == 0
    assert main(["invert", f, "collapse"]) == 1
    assert main(["sb", c, "f", "g"]) == 0
    capsys.readouterr()


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("monoid E\nelements 1 e\nunit 1\ntable\n1 e\n")
    assert main(["validate", str(bad)]) == 2
    assert main(["validate", str(tmp_path / "missing.txt")]) == 2
    assert main(["hom", str(DATA / "idempotent.txt"), "A", "Nope"]) == 2
    assert main(["hull", str(DATA / "idempotent.txt"), "Omega", "--max-frontier", "5"]) == 3
    assert main(["nonsense"]) == 2
    capsys.readouterr()


def test_quiet(capsys):
    assert main(["validate", str(DATA / "finset.txt"), "--quiet"]) == 0
    assert capsys.readouterr().out == ""


def test_stdin_and_subprocess():
    code, out, _ = run_cli("validate", "-", stdin=(DATA / "finset.txt").read_text())
    assert code == 0 and out.startswith("ok")


def test_json_reruns_are_byte_identical():
    argv = ("hull", str(DATA / "idempotent.txt"), "A", "--method", "both", "--format", "json")
    first = run_cli(*argv)
    second = run_cli(*argv)
    assert first[0] == 0 and first[1] == second[1]
