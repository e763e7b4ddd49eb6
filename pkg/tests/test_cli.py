"""Command line behavior: exit codes, overrides, output handling."""

import json

import pytest

from hmimo import DegenerateGeometryError
from hmimo.cli import EXIT_CONFIG, EXIT_DEGENERATE, EXIT_IO, EXIT_OK, main

DESK_POINT = {
    "experiment": "single-point",
    "tx_grid": [9, 9],
    "rx_grid": [5, 5],
    "spacing_lambda": 0.05,
    "d0_range_lambda": [1.0],
}


@pytest.fixture
def point_config(tmp_path):
    path = tmp_path / "point.json"
    path.write_text(json.dumps(DESK_POINT), encoding="utf-8")
    return str(path)


def _distance_config(tmp_path, **extra):
    payload = {
        "experiment": "distance",
        "tx_grid": [9, 9],
        "rx_grid": [5, 5],
        "spacing_lambda": 0.05,
        "d0_range_lambda": {"start": 0.5, "stop": 1.5, "step": 0.5},
    }
    payload.update(extra)
    path = tmp_path / "distance.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_point_run_writes_csv(point_config, tmp_path):
    out = tmp_path / "row.csv"
    assert main(["point", "--config", point_config, "--output", str(out)]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").strip().split("\n")
    assert len(lines) == 2
    assert lines[0].startswith("x_value,d_R_lambda,d0_lambda,")
    assert lines[1].split(",")[0] == "1.0"


def test_point_run_defaults_to_stdout(point_config, capsys):
    assert main(["point", "--config", point_config, "--variants", "OCM"]) == EXIT_OK
    text = capsys.readouterr().out
    assert text.startswith("x_value,")
    assert "nmse" not in text


def test_dump_singular_values_adds_columns(point_config, capsys):
    code = main(["point", "--config", point_config, "--variants", "OCM",
                 "--dump-singular-values", "2"])
    assert code == EXIT_OK
    header = capsys.readouterr().out.split("\n", 1)[0]
    assert header.endswith("sv1_OCM,sv2_OCM")


def test_json_format_flag(point_config, tmp_path):
    out = tmp_path / "row.json"
    code = main(["point", "--config", point_config, "--format", "json",
                 "--output", str(out)])
    assert code == EXIT_OK
    payload = json.loads(out.read_text(encoding="utf-8"))
    assert payload[0]["x_value"] == 1.0


def test_snr_override_changes_capacity(point_config, tmp_path):
    low = tmp_path / "low.csv"
    high = tmp_path / "high.csv"
    assert main(["point", "--config", point_config, "--output", str(low),
                 "--snr-db", "0"]) == EXIT_OK
    assert main(["point", "--config", point_config, "--output", str(high),
                 "--snr-db", "20"]) == EXIT_OK
    header = low.read_text().split("\n")[0].split(",")
    cap_col = header.index("capacity_OCM")
    low_cap = float(low.read_text().split("\n")[1].split(",")[cap_col])
    high_cap = float(high.read_text().split("\n")[1].split(",")[cap_col])
    assert high_cap > low_cap


def test_distance_sweep_with_workers(tmp_path):
    config = _distance_config(tmp_path)
    serial = tmp_path / "serial.csv"
    threaded = tmp_path / "threaded.csv"
    assert main(["sweep-distance", "--config", config, "--output", str(serial)]) == EXIT_OK
    assert main(["sweep-distance", "--config", config, "--output", str(threaded),
                 "--workers", "4"]) == EXIT_OK
    assert serial.read_bytes() == threaded.read_bytes()


def test_element_sweep_subcommand(tmp_path):
    payload = {
        "experiment": "tx-elements",
        "rx_grid": [5, 5],
        "spacing_lambda": 0.05,
        "d0_range_lambda": [1.0],
        "n_list": [5, 9],
        "variants": ["OCM"],
    }
    config = tmp_path / "elements.json"
    config.write_text(json.dumps(payload), encoding="utf-8")
    out = tmp_path / "elements.csv"
    assert main(["sweep-elements", "--config", str(config), "--output", str(out)]) == EXIT_OK
    lines = out.read_text(encoding="utf-8").strip().split("\n")
    assert [line.split(",")[0] for line in lines[1:]] == ["25", "81"]


def test_variants_without_reference_fail_validation(point_config):
    assert main(["point", "--config", point_config, "--variants", "PSCM"]) == EXIT_CONFIG


def test_unknown_config_key_fails_validation(tmp_path):
    bad = dict(DESK_POINT, spacing=0.05)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad), encoding="utf-8")
    assert main(["point", "--config", str(path)]) == EXIT_CONFIG


def test_config_experiment_must_match_subcommand(point_config):
    assert main(["sweep-distance", "--config", point_config]) == EXIT_CONFIG


def test_invalid_json_fails_validation(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{oops", encoding="utf-8")
    assert main(["point", "--config", str(path)]) == EXIT_CONFIG


def test_missing_config_is_an_io_error():
    assert main(["point", "--config", "/no/such/file.json"]) == EXIT_IO


def test_unwritable_output_is_an_io_error(point_config):
    code = main(["point", "--config", point_config, "--variants", "OCM",
                 "--output", "/no/such/dir/out.csv"])
    assert code == EXIT_IO


def test_degenerate_geometry_exit_code(monkeypatch, tmp_path):
    config = _distance_config(tmp_path)

    def explode(spec, workers=1):
        raise DegenerateGeometryError("projection factor is not positive")

    monkeypatch.setattr("hmimo.cli.run_distance_sweep", explode)
    assert main(["sweep-distance", "--config", config]) == EXIT_DEGENERATE
