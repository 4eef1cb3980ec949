import json
import os


from ruledcodes.cli import main


def write_config(tmp_path, name="cfg.json", **overrides):
    cfg = {
        "field": {"p": 5, "m": 1},
        "curve": {"kind": "elliptic", "coefficients": [0, 0, 0, 0, 1]},
        "surface": {"variant": "decomposable",
                    "delta": [{"degree": 2, "index": 0}]},
        "code": {"a": 1, "beta": [{"degree": 3, "index": 0}]},
    }
    cfg.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def build(tmp_path, **overrides):
    cfg = write_config(tmp_path, **overrides)
    out = str(tmp_path / "out")
    rc = main(["build", "--config", cfg, "--out-dir", out])
    assert rc == 0
    return out


def test_build_decomposable_demo(tmp_path, capsys):
    out = build(tmp_path)
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["family"] == "decomposable_surface"
    assert report["n"] == 36
    assert report["k_exact"] == 4
    assert report["d_exact"] == 15
    assert report["bound"]["d_lower"] == 15
    assert report["griesmer"]["holds"]
    gen = (tmp_path / "out" / "generator.txt").read_text().strip().split("\n")
    assert gen[0] == "4 36 5"
    pts = (tmp_path / "out" / "points.txt").read_text().strip().split("\n")
    assert len(pts) == 36
    table = capsys.readouterr().out
    assert "decomposable_surface" in table and "k_exact" in table


def test_build_elm_demo(tmp_path):
    surface = {"variant": "elm",
               "center": {"degree": 2, "base_index": 0, "fiber_index": 0}}
    out = build(tmp_path, surface=surface)
    report = json.loads((tmp_path / "out" / "report.json").read_text())
    assert report["family"] == "elm_surface"
    assert report["k_exact"] == 4
    assert report["bound"]["d_lower"] == 18
    assert report["d_exact"] >= 18


def test_build_is_deterministic(tmp_path):
    cfg = write_config(tmp_path)
    out1, out2 = str(tmp_path / "o1"), str(tmp_path / "o2")
    assert main(["build", "--config", cfg, "--out-dir", out1]) == 0
    assert main(["build", "--config", cfg, "--out-dir", out2]) == 0
    for name in ("generator.txt", "points.txt", "report.json", "table.csv"):
        a = open(os.path.join(out1, name), "rb").read()
        b = open(os.path.join(out2, name), "rb").read()
        assert a == b


def test_build_singular_curve_exit2(tmp_path, capsys):
    cfg = write_config(tmp_path, curve={"kind": "elliptic",
                                        "coefficients": [0, 0, 0, 0, 0]})
    rc = main(["build", "--config", cfg])
    assert rc == 2
    assert "discriminant" in capsys.readouterr().err


def test_build_malformed_config_field_message(tmp_path, capsys):
    cfg = write_config(tmp_path, field={"p": 5})
    rc = main(["build", "--config", cfg])
    assert rc == 2
    assert "config.field.m" in capsys.readouterr().err


def test_verify_pass(tmp_path, capsys):
    out = build(tmp_path)
    rc = main(["verify", os.path.join(out, "generator.txt"),
               "--report", os.path.join(out, "report.json")])
    assert rc == 0
    assert "PASS" in capsys.readouterr().out


def corrupt_one_entry(matrix_path):
    """Change one generator entry so a minimum-weight codeword drops below
    the recorded distance."""
    import itertools
    from ruledcodes.gf import field_create

    lines = open(matrix_path).read().strip().split("\n")
    k, n, q = (int(t) for t in lines[0].split())
    spec = field_create(q, 1) if q in (2, 3, 5, 7) else None
    rows = [[int(t) for t in line.split()] for line in lines[1:]]
    best = None
    for msg in itertools.product(range(q), repeat=k):
        if not any(msg):
            continue
        word = [0] * n
        for m, row in zip(msg, rows):
            if m:
                word = [spec.add_i(w, spec.mul_i(m, v)) for w, v in zip(word, row)]
        wt = sum(1 for w in word if w)
        if best is None or wt < best[0]:
            best = (wt, msg, word)
    _, msg, word = best
    j = next(i for i, v in enumerate(word) if v)
    i = next(i for i, m in enumerate(msg) if m)
    # shift G[i][j] so the chosen codeword becomes zero at column j
    delta = spec.mul_i(spec.neg_i(word[j]), spec.inv_i(msg[i]))
    rows[i][j] = spec.add_i(rows[i][j], delta)
    with open(matrix_path, "w") as fh:
        fh.write(lines[0] + "\n")
        for row in rows:
            fh.write(" ".join(str(v) for v in row) + "\n")


def test_verify_detects_corruption_exit1(tmp_path, capsys):
    out = build(tmp_path)
    corrupt_one_entry(os.path.join(out, "generator.txt"))
    rc = main(["verify", os.path.join(out, "generator.txt"),
               "--report", os.path.join(out, "report.json")])
    assert rc == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_prs_mds(tmp_path, capsys):
    # PRS(2) over F_4 via a handwritten matrix file and report
    from ruledcodes.gf import field_create
    from ruledcodes.codes import build_prs, write_matrix
    code = build_prs(field_create(2, 2), 2)
    mpath = tmp_path / "prs.txt"
    write_matrix(code, mpath)
    report = {"family": "prs", "n": 5, "k_exact": 3, "d_exact": 3,
              "bound": {"valid": True, "k_lower": 3, "d_lower": 3}}
    rpath = tmp_path / "prs_report.json"
    rpath.write_text(json.dumps(report))
    assert main(["verify", str(mpath), "--report", str(rpath)]) == 0


def test_segre_certification(tmp_path, capsys):
    surface = {"variant": "elm",
               "center": {"degree": 2, "base_index": 0, "fiber_index": 0}}
    cfg = write_config(tmp_path, surface=surface)
    rc = main(["segre", "--config", cfg])
    assert rc == 0
    out = capsys.readouterr().out
    assert "s_a >= 2" in out and "s_a <= 2" in out
    assert "certified: s_a = 2" in out


def test_segre_decomposable_exact(tmp_path, capsys):
    surface = {"variant": "decomposable",
               "delta": [{"degree": 3, "index": 0}]}
    cfg = write_config(tmp_path, surface=surface)
    rc = main(["segre", "--config", cfg])
    assert rc == 0
    assert "(-3, -3)" in capsys.readouterr().out


def test_segre_p1_hirzebruch_note(tmp_path, capsys):
    cfg = write_config(tmp_path,
                       curve={"kind": "p1"},
                       surface={"variant": "decomposable",
                                "delta": [{"degree": 2, "index": 0}]})
    rc = main(["segre", "--config", cfg])
    assert rc == 0
    assert "Hirzebruch" in capsys.readouterr().out


def test_asymptotics_q16(tmp_path, capsys):
    out = str(tmp_path / "asym")
    rc = main(["asymptotics", "--q", "16", "--A", "3", "--samples", "80",
               "--out-dir", out])
    assert rc == 0
    assert (tmp_path / "asym" / "product_envelope.csv").exists()
    assert (tmp_path / "asym" / "ruled_optimized.csv").exists()
    assert (tmp_path / "asym" / "dominance.csv").exists()
    assert "exceeds the product envelope" in capsys.readouterr().out


def test_asymptotics_q49_discrepancy_note(tmp_path, capsys):
    out = str(tmp_path / "asym49")
    rc = main(["asymptotics", "--q", "49", "--A", "6", "--samples", "60",
               "--out-dir", out])
    assert rc == 0
    assert "figure" in capsys.readouterr().out


def test_asymptotics_A_too_small(tmp_path, capsys):
    rc = main(["asymptotics", "--q", "16", "--A", "1.5",
               "--out-dir", str(tmp_path)])
    assert rc == 2
    assert "A must exceed 2" in capsys.readouterr().err


def test_recover_export(tmp_path):
    cfg = write_config(
        tmp_path,
        code={"a": 1, "beta": [{"degree": 2, "index": 1, "multiplicity": 2}]})
    out = str(tmp_path / "recovery.json")
    rc = main(["recover", "--config", cfg, "--out", out])
    assert rc == 0
    records = json.loads(open(out).read())
    assert len(records) == 36 * 2
    assert set(records[0]) == {"target", "helpers", "coefficients"}


def test_recover_refuses_rank_deficient(tmp_path, capsys):
    cfg = write_config(tmp_path)  # b = 3: one rank-deficient fiber
    rc = main(["recover", "--config", cfg, "--out", str(tmp_path / "r.json")])
    assert rc == 1
    assert "rank" in capsys.readouterr().err
