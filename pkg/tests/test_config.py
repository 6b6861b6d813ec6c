import json
import math

import pytest

from horokit.config import (
    CounterexampleConfig,
    FlowConfig,
    LemmasConfig,
    OrbitConfig,
    Schedule,
    format_loc,
    load_settings,
    parse_config,
    parse_spec_file,
    validate_config,
)
from horokit.errors import ConfigError, SchemaViolation

CIRCLES = {"plus": {"center": 3.0, "radius": 1.0}, "minus": {"center": -3.0, "radius": 1.0}}


def violation_fields(data: dict) -> list:
    with pytest.raises(SchemaViolation) as info:
        validate_config(data)
    return [field for field, _ in info.value.errors]


class TestDefaults:
    def test_flow_defaults(self):
        config = validate_config({"subcommand": "flow"})
        assert isinstance(config, FlowConfig)
        assert config.samples == 10_000
        assert config.out is None

    def test_lemma_angles(self):
        config = LemmasConfig()
        assert config.which == "thin"
        assert config.alpha0 == [math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2]

    def test_counterexample_defaults(self):
        config = CounterexampleConfig()
        assert (config.variant, config.schedule.kind, config.n_max, config.fill_holes) == ("tangent", "linear", 10, False)

    def test_schedules(self):
        assert Schedule().radius(7) == 7.0
        assert Schedule(kind="geometric", alpha=3.0).radius(2) == 9.0
        assert Schedule(kind="custom", radii=[0.5, 2.0]).radius(2) == 2.0
        with pytest.raises(ValueError):
            Schedule(kind="custom", radii=[0.5]).radius(2)


class TestViolations:
    def test_unknown_subcommand(self):
        assert violation_fields({"subcommand": "plot"}) == ["subcommand"]
        assert violation_fields({}) == ["subcommand"]

    def test_nested_field_path(self):
        pair = {"plus": {"center": 3.0, "radius": 1.0}, "minus": {"center": -3.0, "radius": -1.0}, "derive": {}}
        assert "pairs[0].minus.radius" in violation_fields({"subcommand": "orbit", "pairs": [pair]})

    def test_schedule_ratio(self):
        fields = violation_fields({"subcommand": "counterexample", "schedule": {"kind": "geometric", "alpha": 1.0}})
        assert "schedule.alpha" in fields

    def test_pair_needs_exactly_one_source(self):
        assert violation_fields({"subcommand": "orbit", "pairs": [CIRCLES]}) == ["pairs[0]"]
        both = {**CIRCLES, "matrix": [1.0, 0.0, 0.0, 1.0], "derive": {}}
        assert violation_fields({"subcommand": "orbit", "pairs": [both]}) == ["pairs[0]"]

    def test_derive_needs_both_endpoints(self):
        pair = {**CIRCLES, "derive": {"p": 2.0}}
        assert violation_fields({"subcommand": "orbit", "pairs": [pair]}) == ["pairs[0].derive"]

    def test_matrix_determinant(self):
        pair = {**CIRCLES, "matrix": [1.0, 2.0, 3.0, 4.0]}
        assert violation_fields({"subcommand": "orbit", "pairs": [pair]}) == ["pairs[0].matrix"]

    def test_group_source_required(self):
        assert violation_fields({"subcommand": "orbit"}) == ["<root>"]

    def test_unknown_keys_rejected(self):
        assert "samplez" in violation_fields({"subcommand": "flow", "samplez": 3})

    def test_short_custom_schedule(self):
        fields = violation_fields({"subcommand": "counterexample", "n_max": 3, "schedule": {"kind": "custom", "radii": [1.0]}})
        assert fields == ["<root>"]

    def test_output_must_not_overwrite_the_spec(self, tmp_path):
        path = str(tmp_path / "group.json")
        assert violation_fields({"subcommand": "orbit", "spec_path": path, "out": path}) == ["<root>"]


class TestFiles:
    def test_parse_config(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"subcommand": "orbit", "pairs": [{**CIRCLES, "derive": {}}], "max_word_len": 3}))
        config = parse_config(path)
        assert isinstance(config, OrbitConfig)
        assert config.max_word_len == 3
        assert config.pairs[0].derive.p is None

    def test_boundary_values(self, spec_file):
        model = parse_spec_file(spec_file)
        assert model.pairs[0].derive.p == pytest.approx(2 * math.sqrt(2))

    def test_infinity_spelling(self):
        pair = {**CIRCLES, "derive": {"p": "inf", "q": 0.0}}
        config = validate_config({"subcommand": "orbit", "pairs": [pair]})
        assert config.pairs[0].derive.p == math.inf

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            parse_config(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(SchemaViolation) as info:
            parse_config(path)
        assert info.value.field == "<root>"

    def test_format_loc(self):
        assert format_loc(("pairs", 0, "minus", "radius")) == "pairs[0].minus.radius"
        assert format_loc(()) == "<root>"


class TestSettings:
    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("HOROKIT_TOL", "1e-6")
        monkeypatch.setenv("HOROKIT_LOG_LEVEL", "debug")
        monkeypatch.setenv("HOROKIT_SEED", "7")
        settings = load_settings()
        assert settings.tol == 1e-6
        assert settings.log_level == "DEBUG"
        assert settings.seed == 7

    def test_defaults(self, monkeypatch):
        for name in ("HOROKIT_TOL", "HOROKIT_MAX_REDUCE_STEPS", "HOROKIT_LOG_LEVEL", "HOROKIT_SEED"):
            monkeypatch.delenv(name, raising=False)
        settings = load_settings()
        assert (settings.tol, settings.max_reduce_steps, settings.seed) == (1e-9, 10_000, 42)
