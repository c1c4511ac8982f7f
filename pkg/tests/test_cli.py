from __future__ import annotations

import json

import pytest

from lightspan import harness
from lightspan.cli import main
from lightspan.graph import read_graph
from lightspan.spanner import greedy_spanner

TRIANGLE = "3 3\n0 1 1\n1 2 1\n0 2 1\n"


@pytest.fixture
def kpath(tmp_path):
    g, d = tmp_path / "g.txt", tmp_path / "d.txt"
    assert main(["pathdec", "gen", "--n", "12", "--pw", "2", "--seed", "3", "--graph-out", str(g), "--dec-out", str(d)]) == 0
    return g, d


def write(tmp_path, name: str, text: str) -> str:
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestSpanner:
    def test_build_writes_header(self, tmp_path, capsys):
        src = write(tmp_path, "g.txt", TRIANGLE)
        out = tmp_path / "s.txt"
        assert main(["spanner", "build", "--eps", "1/2", "--in", src, "--out", str(out)]) == 0
        text = out.read_text()
        assert text.startswith("# eps 1/2\n3 3\n")
        assert "kept 3 of 3" in capsys.readouterr().err

    def test_build_to_stdout(self, tmp_path, capsys):
        src = write(tmp_path, "g.txt", TRIANGLE)
        assert main(["spanner", "build", "--eps", "2", "--in", src]) == 0
        assert capsys.readouterr().out.splitlines()[1] == "3 2"

    @pytest.mark.parametrize("eps", ["0", "-1", "x"])
    def test_bad_eps(self, tmp_path, eps):
        src = write(tmp_path, "g.txt", TRIANGLE)
        assert main(["spanner", "build", "--eps", eps, "--in", src]) == 2

    def test_missing_file(self, tmp_path, capsys):
        assert main(["spanner", "build", "--eps", "1", "--in", str(tmp_path / "none")]) == 2
        assert "none" in capsys.readouterr().err

    def test_malformed_graph(self, tmp_path):
        src = write(tmp_path, "g.txt", "3 2\n0 1 1\n")
        assert main(["spanner", "build", "--eps", "1", "--in", src]) == 2

    def test_missing_argument(self):
        with pytest.raises(SystemExit) as exc:
            main(["spanner", "build", "--eps", "1"])
        assert exc.value.code == 2


class TestPathdec:
    def test_validate(self, kpath, capsys):
        g, d = kpath
        assert main(["pathdec", "validate", "--graph", str(g), "--dec", str(d)]) == 0
        assert capsys.readouterr().out.strip() == "valid"

    def test_validate_rejects(self, tmp_path, capsys):
        g = write(tmp_path, "g.txt", "3 2\n0 1 1\n1 2 1\n")
        d = write(tmp_path, "d.txt", "0 1\n2\n1 2\n")
        assert main(["pathdec", "validate", "--graph", g, "--dec", d]) == 1
        assert "invalid" in capsys.readouterr().out

    def test_smooth(self, tmp_path):
        g = write(tmp_path, "g.txt", "4 4\n0 1 1\n1 2 1\n0 2 1\n2 3 1\n")
        d = write(tmp_path, "d.txt", "0 1 2\n2 3\n")
        out = tmp_path / "s.txt"
        assert main(["pathdec", "smooth", "--graph", g, "--dec", d, "--out", str(out)]) == 0
        bags = [line.split() for line in out.read_text().splitlines()]
        assert all(len(b) == 3 for b in bags)

    def test_gen_is_deterministic(self, tmp_path, kpath):
        g2, d2 = tmp_path / "g2.txt", tmp_path / "d2.txt"
        main(["pathdec", "gen", "--n", "12", "--pw", "2", "--seed", "3", "--graph-out", str(g2), "--dec-out", str(d2)])
        assert g2.read_text() == kpath[0].read_text() and d2.read_text() == kpath[1].read_text()

    def test_gen_too_small(self, tmp_path):
        args = ["pathdec", "gen", "--n", "2", "--pw", "3", "--graph-out", str(tmp_path / "g"), "--dec-out", str(tmp_path / "d")]
        assert main(args) == 2


class TestCharge:
    def test_verify_accepts(self, tmp_path, capsys):
        s = write(tmp_path, "s.txt", "# eps 1/2\n" + TRIANGLE)
        c = write(tmp_path, "c.txt", "0 2 : 0 1 1 2\n")
        assert main(["charge", "verify", "--spanner", s, "--scheme", c, "--k", "1"]) == 0
        assert "certificate: w(S) = 3 <= 3 * 2" in capsys.readouterr().out

    def test_verify_rejects_weak(self, tmp_path, capsys):
        s = write(tmp_path, "s.txt", TRIANGLE)
        c = write(tmp_path, "c.txt", "0 2 : 0 1 1 2\n")
        assert main(["charge", "verify", "--spanner", s, "--scheme", c, "--k", "1", "--eps", "3/2"]) == 1
        assert "REJECTED" in capsys.readouterr().out

    def test_verify_needs_eps(self, tmp_path):
        s = write(tmp_path, "s.txt", TRIANGLE)
        c = write(tmp_path, "c.txt", "0 2 : 0 1 1 2\n")
        assert main(["charge", "verify", "--spanner", s, "--scheme", c, "--k", "1"]) == 2

    def test_structural_error_is_failure(self, tmp_path):
        s = write(tmp_path, "s.txt", "# eps 1\n" + TRIANGLE)
        c = write(tmp_path, "c.txt", "0 2 : 1 2 0 1\n")
        assert main(["charge", "verify", "--spanner", s, "--scheme", c, "--k", "1"]) == 1

    def test_outerplanar_then_verify(self, tmp_path, capsys):
        g = write(tmp_path, "g.txt", "5 7\n0 1 2\n1 2 2\n2 3 2\n3 4 2\n0 4 2\n0 2 3\n0 3 3\n")
        s = tmp_path / "s.txt"
        assert main(["spanner", "build", "--eps", "1/2", "--in", g, "--out", str(s)]) == 0
        order = write(tmp_path, "order.txt", "0 1 2 3 4\n")
        c = tmp_path / "c.txt"
        assert main(["charge", "outerplanar", "--spanner", str(s), "--order", order, "--out", str(c)]) == 0
        assert main(["charge", "verify", "--spanner", str(s), "--scheme", str(c), "--k", "1"]) == 0

    def test_outerplanar_bad_order(self, tmp_path):
        s = write(tmp_path, "s.txt", "# eps 1\n" + TRIANGLE)
        order = write(tmp_path, "order.txt", "0 1 x\n")
        assert main(["charge", "outerplanar", "--spanner", s, "--order", order]) == 2

    def test_strengthen(self, tmp_path, capsys):
        s = write(tmp_path, "s.txt", "# eps 1/2\n4 4\n0 1 1\n1 2 1\n2 3 1\n0 3 2\n")
        host = write(tmp_path, "h.txt", "4 6\n0 1 1\n1 2 1\n2 3 1\n0 3 2\n0 2 2\n1 3 2\n")
        weak = write(tmp_path, "w.txt", "0 2 : 0 1 1 2\n1 3 : 1 2 2 3\n0 3 : 0 2 2 3\n")
        assert main(["charge", "strengthen", "--spanner", s, "--supergraph", host, "--scheme", weak]) == 0
        assert capsys.readouterr().out == "0 3 : 0 1 1 2 2 3\n"


class TestForest:
    def test_build_scheme(self, kpath, tmp_path, capsys):
        g, d = kpath
        out = tmp_path / "scheme.txt"
        assert main(["forest", "build", "--graph", str(g), "--dec", str(d), "--eps", "1/2", "--check", "--out", str(out)]) == 0
        err = capsys.readouterr().err
        assert "pw=2 k=16" in err and "acyclic=True" in err
        spanner = tmp_path / "s.txt"
        assert main(["spanner", "build", "--eps", "1/2", "--in", str(g), "--out", str(spanner)]) == 0
        assert main(["charge", "verify", "--spanner", str(spanner), "--scheme", str(out), "--k", "16"]) == 0
        s = greedy_spanner(read_graph(g), "1/2")
        assert len(out.read_text().splitlines()) == len(s.edges) - 11

    def test_audit_lines(self, kpath, tmp_path, capsys):
        g, d = kpath
        audit = tmp_path / "audit.jsonl"
        code = main(["forest", "build", "--graph", str(g), "--dec", str(d), "--eps", "1", "--audit", "--audit-out", str(audit), "--out", str(tmp_path / "c")])
        recs = [json.loads(line) for line in audit.read_text().splitlines()]
        assert len(recs) == 11
        assert set(recs[0]) >= {"edge", "triangles", "pseudo_triangles", "total_charges", "flags"}
        # an audit flag turns into a nonzero exit
        assert code == (1 if any(r["flags"] for r in recs) else 0)

    def test_bad_decomposition(self, tmp_path):
        g = write(tmp_path, "g.txt", TRIANGLE)
        d = write(tmp_path, "d.txt", "0 1\n1 2\n")
        assert main(["forest", "build", "--graph", g, "--dec", d, "--eps", "1"]) == 2


class TestRunReport:
    def test_run_and_report(self, tmp_path, capsys):
        cfg = write(tmp_path, "sweep.cfg", "family = kpath\nn = 10\npw = 2 3\neps = 1/2\nseeds = 0 1\n")
        csv = tmp_path / "r.csv"
        assert main(["run", "--config", cfg, "--out", str(csv)]) == 0
        assert "4 rows" in capsys.readouterr().out
        assert main(["report", "--in", str(csv)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3 and lines[1].startswith("kpath")

    def test_run_failure_exits_nonzero(self, tmp_path, monkeypatch, capsys):
        class Broken:
            ok = False

        monkeypatch.setattr(harness, "verify_stretch", lambda g, s: Broken())
        cfg = write(tmp_path, "sweep.cfg", "family = random\nn = 8\neps = 1\nseeds = 0\n")
        csv = tmp_path / "r.csv"
        assert main(["run", "--config", cfg, "--out", str(csv)]) == 1
        assert "FAILED" in capsys.readouterr().out
        assert main(["report", "--in", str(csv)]) == 1

    def test_bad_config(self, tmp_path):
        cfg = write(tmp_path, "sweep.cfg", "family = kpath\nn = 10\npw = 2\neps =\nseeds = 0\n")
        assert main(["run", "--config", cfg]) == 2

    def test_bad_report_input(self, tmp_path):
        assert main(["report", "--in", write(tmp_path, "r.csv", "a,b\n")]) == 2
