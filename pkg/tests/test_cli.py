import json

import pytest

from quadgenus.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_prints_summary(capsys):
    code, out, _ = run(capsys, "build", "K(4,4) x C(6)")
    assert code == 0
    assert "n=48" in out and "m=144" in out and "bipartite=True" in out


def test_build_writes_graph_and_manifest(capsys, tmp_path):
    out_dir = tmp_path / "g"
    code, _, _ = run(capsys, "build", "Q(2,4)", "--out", str(out_dir))
    assert code == 0
    data = json.loads((out_dir / "graph.json").read_text())
    assert data["n"] == 64 and len(data["edges"]) == 256
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert "graph.json" in manifest["outputs"]
    assert manifest["command"] == "build"


def test_build_invalid_parameter_exit_code(capsys):
    code, _, err = run(capsys, "build", "C(5)")
    assert code == 3 and "error" in err


def test_build_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "build", "K(4,4) %% C(6)")
    assert code == 2 and "offset" in err


def test_embed_writes_verifiable_artifacts(capsys, tmp_path):
    out_dir = tmp_path / "e"
    code, out, _ = run(capsys, "embed", "K(4,4) x C(6)", "--out",
                       str(out_dir))
    assert code == 0 and "genus=13" in out and "minimal=True" in out
    for name in ("embedding.json", "certificate.json", "handles.json",
                 "manifest.json"):
        assert (out_dir / name).exists()
    cert = json.loads((out_dir / "certificate.json").read_text())
    assert cert["genus"] == 13 and cert["quadrilateral"]
    handles = json.loads((out_dir / "handles.json").read_text())["handles"]
    assert len(handles) == 6 * 2  # six links, two handles each

    code, out, _ = run(capsys, "verify", str(out_dir))
    assert code == 0 and "certificate-match" in out


def test_embed_records_factor_permutation(capsys, tmp_path):
    out_dir = tmp_path / "e"
    code, _, _ = run(capsys, "embed", "C(4) x K(4,4)", "--out", str(out_dir))
    assert code == 0
    manifest = json.loads((out_dir / "manifest.json").read_text())
    assert manifest["parameters"]["normalized"] == "Q(1,4) x C(4)"
    assert manifest["parameters"]["factor_order"] == [1, 0]


def test_embed_unsupported_family_exit_code(capsys):
    code, _, err = run(capsys, "embed", "P(4)xP(4)")
    assert code == 4 and "error" in err


def test_verify_detects_tampering(capsys, tmp_path):
    out_dir = tmp_path / "e"
    run(capsys, "embed", "K(2,2) x C(4)", "--out", str(out_dir))
    emb = json.loads((out_dir / "embedding.json").read_text())
    # transpose one rotation: still a valid rotation system, new genus
    rot = emb["rotation"][0]
    rot[0], rot[1] = rot[1], rot[0]
    (out_dir / "embedding.json").write_text(json.dumps(emb))
    code, _, err = run(capsys, "verify", str(out_dir))
    assert code == 5 and "mismatch" in err


def test_verify_standalone_embedding_file(capsys, tmp_path):
    # hand-written square on the sphere
    path = tmp_path / "c4.json"
    path.write_text(json.dumps({
        "graph": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]},
        "rotation": [[1, 3], [0, 2], [1, 3], [0, 2]]}))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0 and "genus=0" in out


def test_verify_rejects_broken_rotation(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "graph": {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [0, 3]]},
        "rotation": [[1, 1], [0, 2], [1, 3], [0, 2]]}))
    code, _, _ = run(capsys, "verify", str(path))
    assert code == 3


def test_faces_summary_and_json(capsys, tmp_path):
    out_dir = tmp_path / "e"
    run(capsys, "embed", "K(4,4)", "--out", str(out_dir))
    code, out, _ = run(capsys, "faces", str(out_dir / "embedding.json"))
    assert code == 0 and "8 faces" in out and "4-gon" in out
    code, out, _ = run(capsys, "faces", str(out_dir / "embedding.json"),
                       "--json")
    payload = json.loads(out)
    assert payload["count"] == 8 and payload["lengths"] == {"4": 8}


def test_genus_command(capsys):
    code, out, _ = run(capsys, "genus", "--formula", "main_cycles",
                       "--params", '{"i": 1, "r": 2, "m_list": [2, 2]}')
    assert code == 0
    payload = json.loads(out)
    assert payload["genus"] == 65


def test_genus_unknown_formula(capsys):
    code, _, err = run(capsys, "genus", "--formula", "nope", "--params",
                       "{}")
    assert code == 3 and "unknown formula" in err


def test_genus_bad_params_json(capsys):
    code, _, _ = run(capsys, "genus", "--formula", "ringel", "--params",
                     "{r: 2}")
    assert code == 2


def test_genus_wrong_arity(capsys):
    code, _, _ = run(capsys, "genus", "--formula", "ringel", "--params",
                     '{"z": 2}')
    assert code == 3


def test_oracle_exhaustive_and_artifacts(capsys, tmp_path):
    gdir = tmp_path / "g"
    run(capsys, "build", "K(3,3)", "--out", str(gdir))
    odir = tmp_path / "o"
    code, out, _ = run(capsys, "oracle", str(gdir / "graph.json"),
                       "--out", str(odir))
    assert code == 0 and "best_genus=1" in out and "exhaustive" in out
    payload = json.loads((odir / "oracle.json").read_text())
    assert payload["best_genus"] == 1 and payload["exhaustive"]
    assert (odir / "witness.json").exists()
    code, out, _ = run(capsys, "verify", str(odir / "witness.json"))
    assert code == 0 and "genus=1" in out


def test_oracle_budget_fallback_is_stochastic(capsys, tmp_path):
    gdir = tmp_path / "g"
    run(capsys, "build", "K(4,4)", "--out", str(gdir))
    # the cap is far below the 839808-system rotation space, forcing the
    # stochastic fallback, yet roomy enough to reach the torus witness
    code, out, _ = run(capsys, "oracle", str(gdir / "graph.json"),
                       "--budget", "20000", "--target", "1", "--seed", "3")
    assert code == 0 and "stochastic" in out and "best_genus=1" in out


def test_oracle_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "oracle", str(tmp_path / "absent.json"))
    assert code == 3


def test_faces_rejects_directory_path(capsys, tmp_path):
    # the faces command wants the embedding file itself, not the output
    # directory that holds it
    code, _, err = run(capsys, "faces", str(tmp_path))
    assert code == 3 and "cannot read" in err


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
