import json

import pytest

from horokit.cli import build_parser, config_from_args, main, sibling
from horokit.config import CounterexampleRunConfig, RenderConfig


def lines(path) -> list:
    return path.read_text().splitlines()


class TestArguments:
    def test_render_flags_become_a_construction(self):
        args = build_parser().parse_args(["render", "--variant", "opposite", "--n-max", "4", "--schedule", "geometric"])
        config = config_from_args(args)
        assert isinstance(config, RenderConfig)
        assert config.counterexample.variant == "opposite"
        assert config.counterexample.n_max == 4
        assert config.counterexample.schedule.kind == "geometric"

    def test_schedule_flags(self):
        args = build_parser().parse_args(["counterexample", "--schedule", "custom", "--radii", "1", "2", "--n-max", "2"])
        config = config_from_args(args)
        assert isinstance(config, CounterexampleRunConfig)
        assert config.schedule.radii == [1.0, 2.0]

    def test_sibling_paths(self):
        assert sibling("out/report.csv", "census") == "out/report_census.csv"
        assert sibling(None, "census") is None

    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestSubcommands:
    def test_flow(self, tmp_path):
        out = tmp_path / "flow.csv"
        assert main(["flow", "--samples", "20", "--out", str(out)]) == 0
        rows = lines(out)
        assert rows[0] == "t,s,residual"
        assert len(rows) == 21

    def test_flow_is_seeded(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["flow", "--samples", "10", "--seed", "5", "--out", str(a)])
        main(["flow", "--samples", "10", "--seed", "5", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_schottky(self, spec_file, capsys):
        assert main(["schottky", "--spec", str(spec_file)]) == 0
        assert "certified for 2 generator(s)" in capsys.readouterr().out

    def test_schottky_violation(self, overlapping_file, tmp_path, capsys):
        out = tmp_path / "violations.csv"
        assert main(["schottky", "--spec", str(overlapping_file), "--out", str(out)]) == 1
        assert "violation: pair 1" in capsys.readouterr().out
        assert lines(out)[0] == "pair,other,condition,detail,witness_x,witness_y"

    def test_orbit_to_stdout(self, spec_file, capsys):
        assert main(["orbit", "--spec", str(spec_file), "--max-word-len", "1"]) == 0
        rows = capsys.readouterr().out.splitlines()
        assert rows[0] == "word,length,x,y"
        assert len(rows) == 6

    def test_census(self, spec_file, tmp_path):
        out = tmp_path / "census.csv"
        assert main(["census", "--spec", str(spec_file), "--D", "0", "1", "--out", str(out)]) == 0
        rows = lines(out)
        assert rows[0].startswith("n_truncation,max_len,D,R,plus_count,minus_count")
        assert len(rows) == 3
        assert all(row.startswith("2,2,") for row in rows[1:])

    def test_counterexample_report_carries_the_census(self, tmp_path):
        out = tmp_path / "report.csv"
        argv = ["counterexample", "--n-max", "4", "--D", "0.5", "--R", "2", "--max-word-len", "1", "--out", str(out)]
        assert main(argv) == 0
        header, *rows = [row.split(",") for row in lines(out)]
        assert header[:3] == ["n", "x_n", "r_n"]
        assert header[-11:] == [
            "n_truncation", "max_len", "D", "R", "plus_count", "minus_count",
            "horoball_count", "tie_count", "n_points", "status", "attained_depth",
        ]
        assert len(rows) == 4
        for row in rows:
            record = dict(zip(header, row))
            assert (record["n_truncation"], record["max_len"], record["D"], record["R"]) == ("4", "1", "0.5", "2")
            assert record["minus_count"] == "0"
            assert record["n_points"] == "9"
            assert record["status"] == "withheld-depth"

    def test_counterexample_with_census(self, tmp_path):
        out = tmp_path / "report.csv"
        assert main(["counterexample", "--n-max", "6", "--census-n", "3", "--out", str(out)]) == 0
        assert len(lines(out)) == 7
        census = lines(tmp_path / "report_census.csv")
        assert census[0].startswith("n_truncation,max_len,D,R,plus_count,minus_count")
        assert census[0].endswith("status,attained_depth")
        assert census[1].startswith("3,2,1,1,")
        assert len(census) == 2

    def test_lemmas(self, tmp_path):
        out = tmp_path / "inner.csv"
        assert main(["lemmas", "--which", "inner", "--samples", "20", "--out", str(out)]) == 0
        assert len(lines(out)) == 2

    def test_render(self, tmp_path):
        out = tmp_path / "scene.svg"
        assert main(["render", "--variant", "tangent", "--n-max", "3", "--out", str(out)]) == 0
        assert out.read_text().startswith("<svg")


class TestFailures:
    def test_schema_error_exits_one(self, spec_file):
        assert main(["orbit", "--spec", str(spec_file), "--max-word-len", "-1"]) == 1

    def test_missing_spec(self, tmp_path):
        assert main(["orbit", "--spec", str(tmp_path / "absent.json")]) == 1

    def test_failed_construction(self):
        assert main(["counterexample", "--variant", "opposite", "--schedule", "custom", "--radii", "1", "0.1", "--n-max", "2"]) == 1

    def test_config_file(self, spec_file, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"subcommand": "orbit", "spec_path": str(spec_file), "max_word_len": 1}))
        assert main(["orbit", "--config", str(path)]) == 0
        assert main(["flow", "--config", str(path)]) == 1
