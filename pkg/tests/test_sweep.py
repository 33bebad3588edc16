import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xychain import (CSV_HEADER, Representation, RunConfig,
                     config_from_mapping, format_value, iter_records,
                     load_config, run_sweep, snapshot)

SMALL = dict(n_sites=6, polarized_node=2, inverse_temperature=3.0,
             pairs="neighbors:1", t_min=0.0, t_max=5.0, steps=7)


def run_to_string(tmp_path, **kwargs):
    out = tmp_path / "sweep.csv"
    config = RunConfig(out=str(out), **kwargs)
    rows = run_sweep(config)
    text = out.read_text()
    assert rows == text.count("\n") - 1
    return text


def test_format_value_basics():
    assert format_value(0.0) == "0"
    assert format_value(-0.0) == "0"
    assert format_value(1.0) == "1"
    assert format_value(1 / 3) == "0.333333333333"
    assert format_value(2.5e-13) == "2.5e-13"


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-1e3, max_value=1e3,
                 allow_nan=False, allow_infinity=False))
def test_format_value_round_trip(x):
    parsed = float(format_value(x))
    assert parsed == pytest.approx(x, rel=1e-11, abs=1e-300)


def test_header_and_row_shape(tmp_path):
    text = run_to_string(tmp_path, **SMALL)
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 1 + 3 * 5 * 7   # reps * pairs * steps
    first = lines[1].split(",")
    assert first[:3] == ["beta", "1", "2"]
    assert len(first) == len(CSV_HEADER.split(","))


def test_output_is_deterministic(tmp_path):
    a = run_to_string(tmp_path, **SMALL)
    b = run_to_string(tmp_path, **SMALL)
    assert a == b


def test_worker_count_does_not_change_bytes(tmp_path):
    serial = run_to_string(tmp_path, **SMALL)
    parallel = run_to_string(tmp_path, workers=3, **SMALL)
    assert serial == parallel


def test_rows_sorted_by_representation_pair_time(tmp_path):
    text = run_to_string(tmp_path, **SMALL)
    keys = []
    for line in text.splitlines()[1:]:
        rep, n, m, t = line.split(",")[:4]
        keys.append((rep, int(n), int(m), float(t)))
    assert keys == sorted(keys)


def test_beta_rows_are_time_independent(tmp_path):
    text = run_to_string(tmp_path, **SMALL)
    values = set()
    for line in text.splitlines()[1:]:
        cells = line.split(",")
        if cells[0] != "beta" or (cells[1], cells[2]) != ("1", "2"):
            continue
        values.add(",".join(cells[4:]))
    assert len(values) == 1


def test_iter_records_agrees_with_csv(tmp_path):
    # scalar and vectorized routes sum in different orders, so the values
    # agree to roundoff, not to the last printed digit
    text = run_to_string(tmp_path, **SMALL)
    config = RunConfig(**SMALL)
    lines = iter(text.splitlines()[1:])
    for record in iter_records(config):
        cells = next(lines).split(",")
        assert cells[0] == record.representation
        assert (int(cells[1]), int(cells[2])) == (record.n, record.m)
        assert float(cells[3]) == pytest.approx(record.time, rel=1e-11,
                                                abs=1e-11)
        for cell, value in zip(cells[4:], [
                record.concurrence, record.discord, record.discord_a,
                record.discord_b, record.classical_b, record.mutual_info,
                record.geometric_discord]):
            assert float(cell) == pytest.approx(value, abs=1e-12)
    assert next(lines, None) is None


def test_snapshot_covers_all_pairs_at_one_time():
    config = RunConfig(n_sites=5, polarized_node=1, inverse_temperature=2.0,
                       pairs="all", steps=1, t_max=0.0)
    records = snapshot(config, t=1.25)
    assert len(records) == 3 * 10
    assert all(r.time == 1.25 for r in records)
    reps = [r.representation for r in records]
    assert reps == sorted(reps)


def test_resolve_pairs_selectors():
    config = RunConfig(n_sites=6, pairs="all")
    assert len(config.resolve_pairs()) == 15
    config = RunConfig(n_sites=6, pairs="neighbors:2")
    assert config.resolve_pairs() == [(1, 3), (2, 4), (3, 5), (4, 6)]
    config = RunConfig(n_sites=6, pairs=((3, 5), (1, 2), (3, 5)))
    assert config.resolve_pairs() == [(1, 2), (3, 5)]


@pytest.mark.parametrize("kwargs", [
    {"steps": 0},
    {"steps": 1, "t_min": 0.0, "t_max": 2.0},
    {"t_min": -1.0},
    {"t_min": 5.0, "t_max": 1.0},
    {"workers": 0},
    {"zero_epsilon": 0.0},
    {"representations": ()},
    {"pairs": "every"},
    {"pairs": "neighbors:0"},
    {"pairs": "neighbors:21"},
    {"pairs": ((1, 1),)},
    {"pairs": ((0, 3),)},
    {"n_sites": 1},
])
def test_config_rejects_bad_values(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


def test_config_from_mapping_parses_and_rejects():
    config = config_from_mapping({
        "n_sites": 9,
        "inverse_temperature": "inf",
        "representations": ["c", "beta"],
        "pairs": [[1, 2], [4, 8]],
    })
    assert config.inverse_temperature == math.inf
    assert Representation.C in config.representations
    assert config.resolve_pairs() == [(1, 2), (4, 8)]
    with pytest.raises(ValueError):
        config_from_mapping({"n_sites": 9, "temperature": 1.0})


def test_load_config_round_trip(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"n_sites": 7, "steps": 3, "t_max": 2.0,
                                "pairs": "neighbors:3"}))
    config = load_config(str(path))
    assert config.n_sites == 7
    assert config.steps == 3
    assert np.allclose(config.time_grid(), [0.0, 1.0, 2.0])
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    with pytest.raises(ValueError):
        load_config(str(bad))


def test_single_step_grid_is_one_instant():
    config = RunConfig(steps=1, t_min=2.5, t_max=2.5)
    assert config.time_grid().tolist() == [2.5]
