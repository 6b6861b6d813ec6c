import json

import pytest

from horokit.config import CounterexampleConfig, SchottkySpecModel
from horokit.schottky import spec_from_model

TWO_PAIRS = {
    "pairs": [
        {
            "plus": {"center": 3.0, "radius": 1.0},
            "minus": {"center": -3.0, "radius": 1.0},
            "derive": {"p": 2.8284271247461903, "q": -2.8284271247461903},
        },
        {
            "plus": {"center": 8.0, "radius": 1.0},
            "minus": {"center": -8.0, "radius": 1.0},
            "derive": {},
        },
    ]
}

OVERLAPPING = {
    "pairs": [
        TWO_PAIRS["pairs"][0],
        {
            "plus": {"center": 3.5, "radius": 1.0},
            "minus": {"center": 10.0, "radius": 1.0},
            "derive": {},
        },
    ]
}


@pytest.fixture
def two_pair_spec():
    return spec_from_model(SchottkySpecModel.model_validate(TWO_PAIRS))


@pytest.fixture
def overlapping_spec():
    return spec_from_model(SchottkySpecModel.model_validate(OVERLAPPING))


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "group.json"
    path.write_text(json.dumps(TWO_PAIRS), encoding="utf-8")
    return path


@pytest.fixture
def overlapping_file(tmp_path):
    path = tmp_path / "overlapping.json"
    path.write_text(json.dumps(OVERLAPPING), encoding="utf-8")
    return path


@pytest.fixture
def tangent_linear():
    return CounterexampleConfig(variant="tangent", n_max=5)
