import json

import pytest

from invhol import catalog, io
from invhol.cli import main
from invhol.errors import ParseError


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("tables")
    zoo = catalog.standard_examples()
    paths = {}
    for name in ["Z2", "Z3", "I2", "chain2", "clifford4"]:
        p = d / f"{name.lower()}.json"
        io.write_semigroup(p, zoo[name])
        paths[name] = str(p)
    return d, paths


def test_verify_valid_file(files, capsys):
    _, paths = files
    assert main(["verify", paths["I2"]]) == 0
    out = capsys.readouterr().out
    assert "table_is_inverse_semigroup" in out
    assert "overall: pass" in out


def test_verify_bad_table_exits_1(files, capsys):
    d, _ = files
    bad = d / "bad.json"
    bad.write_text('{"names": ["a", "b"], "mul": [[1, 1], [0, 0]]}\n')
    assert main(["verify", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "witness" in out


def test_verify_empty_file_exits_2(files, capsys):
    d, _ = files
    empty = d / "empty.json"
    empty.write_text("")
    assert main(["verify", str(empty)]) == 2
    assert "error" in capsys.readouterr().err


def test_verify_corrupted_groupoid_exits_1(files, capsys, tmp_path):
    _, paths = files
    from invhol import groupoid as gp

    G = gp.esn_forward(io.read_semigroup(paths["I2"]))
    obj = io.groupoid_to_dict(G)
    # erase the mirrored pair of a strict comparison between non-self-inverse
    # arrows, so order-compatibility of inversion breaks
    strict = next(
        [a, b] for [a, b] in obj["leq"]
        if [a, b] != [G.inv[a], G.inv[b]] and [G.inv[a], G.inv[b]] in obj["leq"]
    )
    obj["leq"].remove([G.inv[strict[0]], G.inv[strict[1]]])
    bad = tmp_path / "badg.json"
    io._dump(obj, bad)
    assert main(["verify", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "[FAIL] OG1_inversion_ordered" in out


def test_budget_exhaustion_exits_3(files, capsys):
    _, paths = files
    assert main(["hol", paths["I2"], "--budget", "5"]) == 3
    err = capsys.readouterr().err
    assert "budget" in err


def test_hol_counts(files, capsys):
    _, paths = files
    assert main(["hol", paths["Z3"]]) == 0
    out = capsys.readouterr().out
    assert "premorphisms: 3" in out
    assert "holomorph_pairs: 9" in out
    assert "holomorph_units: 6" in out


def test_hol_dump(files, capsys, tmp_path):
    _, paths = files
    dump = tmp_path / "hol.json"
    assert main(["hol", paths["Z2"], "--dump", str(dump)]) == 0
    obj = json.loads(dump.read_text())
    assert len(obj["elements"]) == 4
    assert set(obj["elements"][0]) == {"alpha", "tau"}


def test_sha_counts(files, capsys):
    _, paths = files
    assert main(["sha", paths["Z3"]]) == 0
    out = capsys.readouterr().out
    assert "heap_monoid_size: 9" in out


def test_esn_round_trip_and_flows(files, capsys, tmp_path):
    _, paths = files
    gpath = tmp_path / "i2g.json"
    assert main(["esn", paths["I2"], "--dump", str(gpath)]) == 0
    capsys.readouterr()
    assert main(["verify", str(gpath)]) == 0
    capsys.readouterr()
    assert main(["flows", str(gpath)]) == 0
    out = capsys.readouterr().out
    assert "flows: 8" in out


def test_flows_accepts_semigroup(files, capsys):
    _, paths = files
    assert main(["flows", paths["chain2"]]) == 0
    out = capsys.readouterr().out
    assert "ordered_flows: 1" in out


def test_poly_expression(capsys):
    assert main(["poly", "(ab)^-1 a * b^-1 1", "--alphabet", "2"]) == 0
    out = capsys.readouterr().out
    assert "value: 0" in out


def test_poly_expression_parse_error(capsys):
    assert main(["poly", "(ab", "--alphabet", "2"]) == 2
    assert "error" in capsys.readouterr().err


def test_poly_checks(capsys):
    assert main(["poly", "--check", "bicyclic", "--maxlen", "2"]) == 0
    out = capsys.readouterr().out
    assert "bicyclic" in out


def test_poly_endo_sweep(capsys):
    assert main(["poly", "--check", "endo", "--maxlen", "2"]) == 0
    out = capsys.readouterr().out
    assert "49 letter maps" in out


def test_jobs_flag(files, capsys):
    _, paths = files
    assert main(["hol", paths["Z3"], "--jobs", "2"]) == 0
    out = capsys.readouterr().out
    assert "premorphisms: 3" in out


def test_jobs_must_be_positive(files, capsys):
    _, paths = files
    assert main(["hol", paths["Z3"], "--jobs", "0"]) == 2


def test_poly_heap_check_reports_failure(capsys):
    # the constant-pair boundary line is an honest failure; exit code 1
    assert main(["poly", "--check", "heap", "--maxlen", "2"]) == 1
    out = capsys.readouterr().out
    assert "constant_pair_zero_iff_w_eq_s_eq_t" in out


def test_json_format_mirrors_text(files, capsys):
    _, paths = files
    assert main(["hol", paths["Z2"], "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["counts"]["premorphisms"] == 2
    assert obj["counts"]["holomorph_units"] == 2
    assert obj["ok"] is True
    assert obj["seed"] == 0
    names = {s["title"] for s in obj["sections"]}
    assert any("interchange" in t for t in names)


def test_reports_are_deterministic(files, capsys):
    _, paths = files
    main(["hol", paths["clifford4"]])
    first = capsys.readouterr().out
    main(["hol", paths["clifford4"]])
    second = capsys.readouterr().out
    assert first == second


def test_semigroup_file_round_trip_is_byte_exact(files, tmp_path):
    _, paths = files
    S = io.read_semigroup(paths["I2"])
    again = tmp_path / "again.json"
    io.write_semigroup(again, S)
    assert again.read_bytes() == open(paths["I2"], "rb").read()


def test_file_has_no_trailing_whitespace(files):
    _, paths = files
    for p in paths.values():
        for line in open(p, "rb").read().split(b"\n"):
            assert line == line.rstrip()


def test_read_semigroup_validates_stated_identity(tmp_path):
    p = tmp_path / "wrong.json"
    p.write_text('{"names": ["0", "1"], "mul": [[0, 1], [1, 0]], "identity": 1}\n')
    with pytest.raises(ParseError):
        io.read_semigroup(p)


def test_theta_round_trip(tmp_path):
    p = tmp_path / "theta.json"
    io.write_theta(p, (0, 2, 1))
    assert io.read_theta(p) == (0, 2, 1)
