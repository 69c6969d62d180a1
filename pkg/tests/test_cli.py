import json

from equitoric import fileio
from equitoric.cli import Report, main
from conftest import DATA_DIR

FANS = DATA_DIR / "fans"
BUNDLES = DATA_DIR / "bundles"
REPS = DATA_DIR / "reps"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


# ---------------------------------------------------------------------------
# fan check
# ---------------------------------------------------------------------------


def test_fan_check_p2(capsys):
    code, out, _ = run(capsys, "fan", "check", FANS / "p2.json")
    assert code == 0
    assert "smooth: yes" in out
    assert "complete: yes" in out


def test_fan_check_all_good_fans(capsys):
    for name in ("p1", "p2", "p3", "p1xp1", "hirzebruch_f0", "hirzebruch_f1",
                 "hirzebruch_f2", "hirzebruch_f3"):
        code, out, _ = run(capsys, "fan", "check", FANS / f"{name}.json")
        assert code == 0, name
        assert "complete: yes" in out, name


def test_fan_check_singular(capsys):
    code, out, _ = run(capsys, "fan", "check", FANS / "singular.json")
    assert code == 1
    assert "smooth: no" in out
    assert "invariant factor 2" in out


def test_fan_check_quadrant_incomplete_but_passes(capsys):
    # completeness is reported but not required for exit 0
    code, out, _ = run(capsys, "fan", "check", FANS / "quadrant.json")
    assert code == 0
    assert "complete: no" in out
    assert "unmatched" in out


def test_fan_check_truncated_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "rays": [[1, 0]')
    code, _, err = run(capsys, "fan", "check", bad)
    assert code == 2
    assert "parse error" in err


def test_fan_check_rejects_floats(tmp_path, capsys):
    bad = tmp_path / "floaty.json"
    bad.write_text('{"dim": 1, "rays": [[1.0], [-1]], "max_cones": [[0], [1]]}')
    code, _, err = run(capsys, "fan", "check", bad)
    assert code == 2
    assert "exact integer" in err


def test_fan_check_machine_round_trip(capsys):
    code, out, _ = run(capsys, "fan", "check", FANS / "p2.json", "--format", "machine")
    assert code == 0
    obj = json.loads(out)
    report = Report.from_json(obj)
    assert report.status == "pass"
    assert report.to_json() == obj


def test_fan_check_seed_determinism(capsys):
    a = run(capsys, "fan", "check", FANS / "p1xp1.json", "--seed", "99")
    b = run(capsys, "fan", "check", FANS / "p1xp1.json", "--seed", "99")
    assert a == b


# ---------------------------------------------------------------------------
# bundle validate
# ---------------------------------------------------------------------------


def test_bundle_validate_trivial(capsys):
    code, out, _ = run(capsys, "bundle", "validate", BUNDLES / "p2_trivial.json")
    assert code == 0
    assert "satisfied" in out


def test_bundle_validate_counterexample(capsys):
    code, out, _ = run(capsys, "bundle", "validate", BUNDLES / "p2_invalid.json")
    assert code == 1
    assert "cones (0, 1) block 0" in out
    assert "pairs to -1" in out


def test_bundle_validate_singular_fan_is_input_error(capsys):
    code, _, err = run(capsys, "bundle", "validate", BUNDLES / "singular_fan_bundle.json")
    assert code == 2
    assert "invalid fan" in err


def test_bundle_validate_machine_failure(capsys):
    code, out, _ = run(
        capsys, "bundle", "validate", BUNDLES / "p2_invalid.json",
        "--format", "machine",
    )
    assert code == 1
    report = Report.from_json(json.loads(out))
    assert report.status == "fail"
    assert report.findings[0]["kind"] == "extension_violation"


# ---------------------------------------------------------------------------
# from-rays / to-rays
# ---------------------------------------------------------------------------


def test_from_rays_inline_p1(tmp_path, capsys):
    out_path = tmp_path / "o1.bundle.json"
    code, _, _ = run(
        capsys, "bundle", "from-rays", FANS / "p1.json", "1", "0",
        "--output", out_path,
    )
    assert code == 0
    data = fileio.load_bundle(out_path)
    assert data.chars == (((1,),), ((0,),))


def test_from_rays_arity_error(tmp_path, capsys):
    code, _, err = run(
        capsys, "bundle", "from-rays", FANS / "p1.json", "1", "0", "1",
        "--output", tmp_path / "x.json",
    )
    assert code == 2
    assert "expected 2 values" in err


def test_from_rays_incomplete_fan(tmp_path, capsys):
    code, _, err = run(
        capsys, "bundle", "from-rays", FANS / "quadrant.json", "1", "0",
        "--output", tmp_path / "x.json",
    )
    assert code == 1
    assert "fan not complete" in err


def test_rays_file_round_trip(tmp_path, capsys):
    # write a ray-value file in canonical serialization, build the bundle,
    # recover the rays: bytes equal
    fan_obj = fileio.fan_to_obj(fileio.load_fan(FANS / "p2.json"))
    rays_path = tmp_path / "vals.json"
    fileio.write_json(
        rays_path,
        {"fan": fan_obj, "blocks": 2, "ray_values": [[1, 0], [0, -2], [3, 1]]},
    )
    bundle_path = tmp_path / "vals.bundle.json"
    code, _, _ = run(capsys, "bundle", "from-rays", rays_path, "--output", bundle_path)
    assert code == 0
    back_path = tmp_path / "back.json"
    code, _, _ = run(capsys, "bundle", "to-rays", bundle_path, "--output", back_path)
    assert code == 0
    assert back_path.read_bytes() == rays_path.read_bytes()


def test_to_rays_all_zero(tmp_path, capsys):
    out_path = tmp_path / "trivial.rays.json"
    code, _, _ = run(capsys, "bundle", "to-rays", BUNDLES / "p2_trivial.json",
                     "--output", out_path)
    assert code == 0
    rv = fileio.load_ray_values(out_path)
    assert rv.values == ((0,), (0,), (0,))


# ---------------------------------------------------------------------------
# isom / cocycle
# ---------------------------------------------------------------------------


def test_isom_self(capsys):
    code, out, _ = run(
        capsys, "bundle", "isom", BUNDLES / "p1_oneone.json", BUNDLES / "p1_oneone.json"
    )
    assert code == 0
    assert "isomorphic" in out


def test_isom_distinct(tmp_path, capsys):
    other = tmp_path / "other.json"
    obj = json.loads((BUNDLES / "p1_oneone.json").read_text())
    obj["fan"] = json.loads((FANS / "p1.json").read_text())
    obj["chars"] = {"0": [[0]], "1": [[1]]}
    fileio.write_json(other, obj)
    code, out, _ = run(capsys, "bundle", "isom", BUNDLES / "p1_oneone.json", other)
    assert code == 1
    assert "not isomorphic" in out


def test_isom_incomparable(capsys):
    code, _, err = run(
        capsys, "bundle", "isom", BUNDLES / "p1_oneone.json", BUNDLES / "p2_trivial.json"
    )
    assert code == 1
    assert "incomparable" in err


def test_cocycle_writes_and_verifies(tmp_path, capsys):
    out_path = tmp_path / "c.json"
    code, out, _ = run(capsys, "bundle", "cocycle", BUNDLES / "p1_oneone.json",
                       "--output", out_path)
    assert code == 0
    obj = json.loads(out_path.read_text())
    coc = fileio.cocycle_from_obj(obj, base_dir=tmp_path)
    assert coc.entries[(1, 0)] == ((-1,),)
    # file round trip: serialize the parsed object back identically
    assert fileio.cocycle_to_obj(coc) == obj


def test_cocycle_rejects_invalid_bundle(tmp_path, capsys):
    code, _, err = run(capsys, "bundle", "cocycle", BUNDLES / "p2_invalid.json",
                       "--output", tmp_path / "c.json")
    assert code == 1
    assert "extension condition fails" in err


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def test_classify_p2(capsys):
    code, out, _ = run(capsys, "classify", FANS / "p2.json", "3")
    assert code == 0
    assert "ℤ^9" in out


def test_classify_quadrant_fails(capsys):
    code, _, err = run(capsys, "classify", FANS / "quadrant.json", "1")
    assert code == 1
    assert "fan not complete" in err


# ---------------------------------------------------------------------------
# rep split
# ---------------------------------------------------------------------------


def test_rep_split_conjugated(tmp_path, capsys):
    out_path = tmp_path / "s.json"
    code, out, _ = run(capsys, "rep", "split", REPS / "conjugated_2x2.json",
                       "--output", out_path)
    assert code == 0
    assert "[[1, 1], [0, 1]]" in out
    obj = json.loads(out_path.read_text())
    js = fileio.joint_split_from_obj(obj)
    assert js.classes == ((((1, 0),), 1), (((1, 1),), 1))
    assert fileio.joint_split_to_obj(js) == obj


def test_rep_split_with_fan(tmp_path, capsys):
    out_path = tmp_path / "b.json"
    code, _, _ = run(capsys, "rep", "split", REPS / "p1_pair.json",
                     "--fan", FANS / "p1.json", "--output", out_path)
    assert code == 0
    data = fileio.load_bundle(out_path)
    assert data.chars == (((1,),), ((0,),))


def test_rep_split_list_without_fan(tmp_path, capsys):
    out_path = tmp_path / "s.json"
    code, out, _ = run(capsys, "rep", "split", REPS / "p1_pair.json",
                       "--output", out_path)
    assert code == 0
    js = fileio.joint_split_from_obj(json.loads(out_path.read_text()))
    assert js.classes == ((((1,), (0,)), 1),)
    assert js.diagonals == (((1,),), ((0,),))


def test_rep_split_machine_format(tmp_path, capsys):
    code, out, _ = run(capsys, "rep", "split", REPS / "conjugated_2x2.json",
                       "--output", tmp_path / "s.json", "--format", "machine")
    assert code == 0
    report = Report.from_json(json.loads(out))
    assert report.status == "pass"
    assert report.data["conjugator"] == [[1, 1], [0, 1]]


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------


def test_report_round_trip():
    r = Report(status="fail", summary="s", findings=[{"kind": "x", "cone": 1}],
               data={"a": [1, 2]})
    assert Report.from_json(json.loads(json.dumps(r.to_json()))) == r
    assert r.exit_code == 1
