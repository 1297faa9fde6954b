from __future__ import annotations

import json

import pytest

from linarb.cli import main
from linarb.coloring import parse_coloring, validate
from linarb.graphs import encode_graph6, format_rotation_system, parse_graph6
from linarb.instances import complete_graph, dodecahedron, icosahedron, wheel


@pytest.fixture()
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


class TestCheck:
    def test_low_sum_family_exit_zero(self, workdir, capsys):
        code, report = run(capsys, "check", "C1", "--workers", "1")
        assert code == 0
        assert [r["verdict"] for r in report["results"]] == ["reducible"] * 5
        assert report["manifest"]["command"] == "check"

    def test_two_leaves_exit_two(self, workdir, capsys):
        code, report = run(capsys, "check", "C3", "--workers", "1")
        assert code == 2
        assert report["results"][0]["verdict"] == "not-reducible"
        assert "witness" in report["results"][0]

    def test_config_file_with_witness(self, workdir, capsys):
        path = write(
            workdir / "edge-9-2.json",
            json.dumps(
                {
                    "name": "edge-9-2",
                    "vertices": [{"id": 0, "bound": 9}, {"id": 1, "bound": 2}],
                    "edges": [[0, 1]],
                    "anchor": [0, 1],
                }
            ),
        )
        code, report = run(capsys, "check", path, "--workers", "1")
        assert code == 2
        assert report["results"][0]["witness"] == {
            "multisets": {"0": [1, 1, 2, 2, 3, 3, 4, 4], "1": [0]},
            "paths": [],
        }

    def test_unknown_configuration(self, workdir, capsys):
        assert main(["check", "C99"]) == 5

    def test_malformed_json(self, workdir, capsys):
        path = write(workdir / "broken.json", "{not json")
        assert main(["check", path]) == 5

    def test_byte_determinism(self, workdir, capsys):
        def one():
            code, report = run(capsys, "check", "C1(4,6)", "--workers", "1")
            for r in report["results"]:
                r.pop("seconds")
            return json.dumps(report, sort_keys=True)

        assert one() == one()

    def test_workers_env_override(self, workdir, capsys, monkeypatch):
        monkeypatch.setenv("LINARB_WORKERS", "1")
        code, report = run(capsys, "check", "C1(1,9)", "--workers", "7")
        assert code == 0
        assert report["manifest"]["options"]["workers"] == 1

    def test_budget_and_resume(self, workdir, capsys):
        cp = str(workdir / "cp.json")
        code, report = run(
            capsys, "check", "C2(3)", "--workers", "1",
            "--time-budget", "0.02", "--checkpoint", cp,
        )
        assert code == 3
        assert report["status"] == "time-budget-exhausted"
        code, resumed = run(capsys, "check", "C2(3)", "--workers", "1", "--resume", cp)
        assert code == 0
        code, direct = run(capsys, "check", "C2(3)", "--workers", "1")
        a = resumed["results"][0]
        b = direct["results"][0]
        a.pop("seconds"), b.pop("seconds")
        assert a == b


class TestPartitionCommand:
    def test_k4_roundtrip(self, workdir, capsys):
        g6 = write(workdir / "k4.g6", encode_graph6(complete_graph(4)) + "\n")
        out = str(workdir / "k4.col")
        code, report = run(capsys, "partition", g6, out)
        assert code == 0 and report["valid"]
        coloring = parse_coloring((workdir / "k4.col").read_text())
        assert validate(complete_graph(4), coloring) == []
        code, report = run(capsys, "validate", g6, out)
        assert code == 0

    def test_degree_cap_exit_four(self, workdir, capsys):
        g6 = write(workdir / "w10.g6", encode_graph6(wheel(10)) + "\n")
        assert main(["partition", g6, str(workdir / "w10.col")]) == 4

    def test_garbage_exit_five(self, workdir, capsys):
        path = write(workdir / "junk.g6", "\x01\x02 not graph6\n")
        assert main(["partition", path, str(workdir / "junk.col")]) == 5

    def test_missing_file_exit_five(self, workdir):
        assert main(["partition", "nope.g6", "out.col"]) == 5

    def test_trace_written(self, workdir, capsys):
        g6 = write(workdir / "k4.g6", encode_graph6(complete_graph(4)))
        trace_path = str(workdir / "trace.json")
        code, _ = run(capsys, "partition", g6, str(workdir / "k4.col"), "--trace", trace_path)
        assert code == 0
        trace = json.loads((workdir / "trace.json").read_text())
        assert isinstance(trace, list)


class TestValidateCommand:
    def test_monochromatic_triangle_exit_one(self, workdir, capsys):
        from linarb.instances import cycle_graph

        g6 = write(workdir / "c3.g6", encode_graph6(cycle_graph(3)))
        col = write(workdir / "bad.col", "0 1 1\n1 2 1\n0 2 1\n")
        code, report = run(capsys, "validate", g6, col)
        assert code == 1
        assert any("cycle" in v for v in report["violations"])

    def test_missing_edge_exit_five(self, workdir):
        from linarb.instances import cycle_graph

        g6 = write(workdir / "c3.g6", encode_graph6(cycle_graph(3)))
        col = write(workdir / "short.col", "0 1 1\n1 2 2\n")
        assert main(["validate", g6, col]) == 5

    def test_custom_spec(self, workdir, capsys):
        from linarb.instances import path_graph

        g6 = write(workdir / "p3.g6", encode_graph6(path_graph(3)))
        col = write(workdir / "p3.col", "0 1 1\n1 2 1\n")
        code, _ = run(capsys, "validate", g6, col, "--forests", "1", "--matchings", "1")
        assert code == 0


class TestAuditCommand:
    def test_icosahedron(self, workdir, capsys):
        rot = write(workdir / "ico.rot", format_rotation_system(icosahedron()))
        code, report = run(capsys, "audit", rot)
        assert code == 0
        assert report["total_final"] == "-8"
        assert len(report["negatives"]) == 20
        assert report["configurations"] == ["C1(5,5)"]

    def test_dodecahedron_conservation(self, workdir, capsys):
        rot = write(workdir / "dod.rot", format_rotation_system(dodecahedron()))
        code, report = run(capsys, "audit", rot)
        assert code == 0
        assert report["total_initial"] == "-8" and report["total_final"] == "-8"

    def test_transfers_flag(self, workdir, capsys):
        rot = write(workdir / "ico.rot", format_rotation_system(icosahedron()))
        code, report = run(capsys, "audit", rot, "--transfers")
        assert code == 0 and len(report["transfers"]) > 0

    def test_malformed_rotation_exit_five(self, workdir):
        rot = write(workdir / "bad.rot", "0: 1\n1:\n")
        assert main(["audit", rot]) == 5

    def test_disconnected_exit_five(self, workdir):
        rot = write(workdir / "disc.rot", "0: 1\n1: 0\n2: 3\n3: 2\n")
        assert main(["audit", rot]) == 5


class TestOracleCommand:
    def test_subdivided_k4_unsatisfiable(self, workdir, capsys):
        from linarb.instances import subdivided_k4

        g6 = write(workdir / "sk4.g6", encode_graph6(subdivided_k4()))
        code, report = run(
            capsys, "oracle", g6, "--forests", "1", "--matchings", "1"
        )
        assert code == 1
        assert report["satisfiable"] is False

    def test_k4_default_spec(self, workdir, capsys):
        g6 = write(workdir / "k4.g6", encode_graph6(complete_graph(4)))
        code, report = run(capsys, "oracle", g6)
        assert code == 0 and report["satisfiable"]

    def test_guard_exit_five(self, workdir, capsys):
        g6 = write(workdir / "k8.g6", encode_graph6(complete_graph(8)))
        assert main(["oracle", g6, "--max-edges", "10"]) == 5


class TestOutFile:
    def test_report_written_to_path(self, workdir, capsys):
        code, _ = run(capsys, "check", "C1(1,9)", "--workers", "1",
                      "--out", str(workdir / "r.json"))
        report = json.loads((workdir / "r.json").read_text())
        assert report["results"][0]["verdict"] == "reducible"
