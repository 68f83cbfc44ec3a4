import io
import json
import os

import pytest

import totmatch as t
from totmatch.cli import main, resolve_instance
from totmatch.errors import FixtureMissingError


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def csv_rows(text):
    lines = [l for l in text.strip().splitlines() if l]
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


class TestResolveInstance:
    def test_named(self):
        g = resolve_instance("cycle(5)")
        assert g.n == 5

    def test_file(self, tmp_path):
        path = str(tmp_path / "g.dimacs")
        t.save_dimacs(t.named_graph("petersen"), path)
        assert resolve_instance(path).m == 15

    def test_fixture_directory(self, tmp_path):
        t.save_dimacs(t.named_graph("petersen"), str(tmp_path / "pete.dimacs"))
        g = resolve_instance("pete", instances=str(tmp_path))
        assert g.m == 15

    def test_missing(self, tmp_path):
        with pytest.raises(FixtureMissingError):
            resolve_instance("graph_6630", instances=str(tmp_path))


class TestGenAndConvert:
    def test_gen_cubic(self, tmp_path, capsys):
        out_dir = str(tmp_path / "inst")
        code, _ = run_cli(
            ["gen", "--kind", "cubic", "--n", "10", "--seeds", "1,2", "--out", out_dir],
            capsys,
        )
        assert code == 0
        files = sorted(os.listdir(out_dir))
        assert files == ["cubic_n10_s1.dimacs", "cubic_n10_s2.dimacs"]
        g = t.load_dimacs(os.path.join(out_dir, files[0]))
        assert all(g.degree(v) == 3 for v in range(10))

    def test_gen_deterministic(self, tmp_path, capsys):
        a, b = str(tmp_path / "a"), str(tmp_path / "b")
        for out_dir in (a, b):
            run_cli(
                ["gen", "--kind", "gnp", "--n", "12", "--p", "0.3", "--seeds", "7",
                 "--out", out_dir],
                capsys,
            )
        fa = open(os.path.join(a, os.listdir(a)[0])).read()
        fb = open(os.path.join(b, os.listdir(b)[0])).read()
        assert fa == fb

    def test_convert_round_trip(self, tmp_path, capsys):
        src = str(tmp_path / "pete.dimacs")
        t.save_dimacs(t.named_graph("petersen"), src)
        g6 = str(tmp_path / "pete.g6")
        code, _ = run_cli(["convert", src, g6, "--to", "graph6"], capsys)
        assert code == 0
        back = str(tmp_path / "back.dimacs")
        code, _ = run_cli(["convert", g6, back, "--to", "dimacs"], capsys)
        assert code == 0
        g = t.load_dimacs(back)
        assert sorted(g.edges) == sorted(t.named_graph("petersen").edges)


class TestColoringCommand:
    def test_c5_and_petersen(self, capsys):
        code, out = run_cli(
            ["coloring", "-i", "cycle(5)", "-i", "petersen", "--no-runtime"], capsys
        )
        assert code == 0
        rows = csv_rows(out)
        assert [r["name"] for r in rows] == ["cycle(5)", "petersen"]
        assert rows[0]["LP"] == "3.00" and rows[0]["SCLP"] == "3.3333"
        assert rows[1]["LP"] == "4.00" and rows[1]["SCLP"] == "4.0000"

    def test_mip_column(self, capsys):
        code, out = run_cli(
            ["coloring", "-i", "cycle(5)", "--mip", "--no-runtime"], capsys
        )
        rows = csv_rows(out)
        assert rows[0]["chiT"] == "4" and rows[0]["type"] == "Type-2"

    def test_coloring_out_writes_files(self, tmp_path, capsys):
        out_dir = str(tmp_path / "colorings")
        code, _ = run_cli(
            ["coloring", "-i", "cycle(5)", "--mip", "--coloring-out", out_dir,
             "--no-runtime"],
            capsys,
        )
        assert code == 0
        lines = open(os.path.join(out_dir, "cycle(5).coloring")).read().splitlines()
        assert len(lines) == 10 and lines[0].startswith("v 0 ")

    def test_missing_instance_skipped(self, capsys, tmp_path):
        with pytest.warns(UserWarning):
            code, out = run_cli(
                ["coloring", "-i", "cycle(4)", "-i", "graph_9999",
                 "--instances", str(tmp_path), "--no-runtime"],
                capsys,
            )
        assert code == 0
        assert len(csv_rows(out)) == 1

    def test_byte_identical_without_runtime(self, capsys):
        _, out1 = run_cli(["coloring", "-i", "cycle(5)", "--no-runtime"], capsys)
        _, out2 = run_cli(["coloring", "-i", "cycle(5)", "--no-runtime"], capsys)
        assert out1 == out2

    def test_markdown_format(self, capsys):
        code, out = run_cli(
            ["coloring", "-i", "cycle(4)", "--format", "markdown", "--no-runtime"],
            capsys,
        )
        assert code == 0 and out.startswith("| name |")

    def test_output_file_and_jobs(self, tmp_path, capsys):
        path = str(tmp_path / "table.csv")
        code, _ = run_cli(
            ["coloring", "-i", "cycle(5)", "-i", "cycle(4)", "--jobs", "2",
             "--output", path, "--no-runtime"],
            capsys,
        )
        assert code == 0
        rows = csv_rows(open(path).read())
        assert [r["name"] for r in rows] == ["cycle(5)", "cycle(4)"]


class TestMatchingCommand:
    def test_family_sets(self, capsys):
        code, out = run_cli(
            ["matching", "-i", "cycle(5)", "--families", "basic/cycle",
             "--no-runtime"],
            capsys,
        )
        assert code == 0
        rows = csv_rows(out)
        assert [r["families"] for r in rows] == ["basic", "cycle"]
        assert rows[0]["bound"] == "3.3333" and rows[1]["bound"] == "3.0000"
        assert rows[0]["nuT"] == "3" and rows[1]["gap"] == "0.00"
        assert rows[0]["nu"] == "2" and rows[0]["alpha"] == "2"

    def test_unknown_family_set(self, capsys):
        code, _ = run_cli(
            ["matching", "-i", "cycle(5)", "--families", "quantum"], capsys
        )
        assert code == 2

    def test_config_file_flags_win(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"families": "basic", "runtime": False}))
        code, out = run_cli(
            ["--config", str(cfg), "matching", "-i", "cycle(4)"], capsys
        )
        rows = csv_rows(out)
        assert [r["families"] for r in rows] == ["basic"]
        code, out = run_cli(
            ["--config", str(cfg), "matching", "-i", "cycle(4)",
             "--families", "cycle"],
            capsys,
        )
        rows = csv_rows(out)
        assert [r["families"] for r in rows] == ["cycle"]


class TestFacetsCommand:
    def test_battery_passes(self, capsys):
        code, out = run_cli(["facets"], capsys)
        assert code == 0
        assert "battery: all passed" in out
        assert "valid, not facet" in out  # odd-clique informational line


class TestInstanceDirEnv:
    def test_env_var_override(self, tmp_path, monkeypatch, capsys):
        t.save_dimacs(t.named_graph("cycle(6)"), str(tmp_path / "hex.dimacs"))
        monkeypatch.setenv("TOTMATCH_INSTANCES", str(tmp_path))
        code, out = run_cli(["coloring", "-i", "hex", "--no-runtime"], capsys)
        assert code == 0
        assert csv_rows(out)[0]["name"] == "hex"
