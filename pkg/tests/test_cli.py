import json

import numpy as np
import pytest

from sensa.campaign import Campaign, init_campaign, CampaignConfig
from sensa.cli import main
from sensa.estimators import indices_from_csv


@pytest.fixture()
def config_file(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"m": 3, "n": 3, "batch_size": 5,
                                "evaluator": "synthetic"}))
    return str(path)


def test_run_then_indices_round_trip(tmp_path, config_file, capsys):
    state = str(tmp_path / "state.json")
    assert main(["run", "--config", config_file, "--state", state,
                 "--batches", "2"]) == 0
    out = capsys.readouterr().out
    assert "batches=2" in out and "evaluations=50" in out

    csv_path = str(tmp_path / "indices.csv")
    assert main(["indices", "--state", state, "--out", csv_path]) == 0
    with open(csv_path) as fh:
        text = fh.read()
    assert text.splitlines()[0] == "output,input,S,T,V,biased"
    campaign = Campaign.load(state)
    idx = indices_from_csv(text)
    ref = campaign.indices()
    assert np.array_equal(idx.S, ref.S, equal_nan=True)
    assert np.array_equal(idx.V, ref.V)


def test_run_zero_batches_is_a_no_op(tmp_path, config_file, capsys):
    state = str(tmp_path / "state.json")
    assert main(["run", "--config", config_file, "--state", state,
                 "--batches", "0"]) == 0
    assert "batches=0" in capsys.readouterr().out
    assert Campaign.load(state).blocks == []


def test_run_resumes_saved_state(tmp_path, config_file, capsys):
    state = str(tmp_path / "state.json")
    main(["run", "--config", config_file, "--state", state, "--batches", "1"])
    capsys.readouterr()
    assert main(["run", "--state", state, "--batches", "1"]) == 0
    assert "batches=2" in capsys.readouterr().out


def test_indices_on_empty_campaign_fails(tmp_path, config_file, capsys):
    state = str(tmp_path / "state.json")
    main(["run", "--config", config_file, "--state", state, "--batches", "0"])
    capsys.readouterr()
    assert main(["indices", "--state", state]) == 1
    assert "insufficient data" in capsys.readouterr().err


def test_missing_state_file_is_an_error(tmp_path, capsys):
    assert main(["indices", "--state", str(tmp_path / "absent.json")]) == 1
    assert "error:" in capsys.readouterr().err


def test_run_without_config_or_state_fails(capsys):
    assert main(["run", "--batches", "1"]) == 1
    assert "need --config" in capsys.readouterr().err


def test_density_export(tmp_path, config_file, capsys):
    state = str(tmp_path / "state.json")
    main(["run", "--config", config_file, "--state", state, "--batches", "2"])
    capsys.readouterr()
    assert main(["density", "--state", state, "--dim", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    d = payload["density"]
    assert d["dimension"] == 1 and d["output"] is None
    assert d["alpha"] == 2.0 and d["epsilon"] == 1e-4
    assert len(d["breakpoints"]) == len(d["values"]) + 1
    mass = np.sum(np.array(d["values"]) * np.diff(d["breakpoints"]))
    assert mass == pytest.approx(1.0, rel=1e-9)
    c = payload["cumulative"]
    assert c["cumulative"][0] == 0.0 and c["cumulative"][-1] == 1.0

    out_path = str(tmp_path / "tau.json")
    assert main(["density", "--state", state, "--dim", "3",
                 "--output", "1", "--out", out_path]) == 0
    with open(out_path) as fh:
        per_output = json.load(fh)
    assert per_output["density"]["output"] == 1


def test_density_failure_modes(tmp_path, config_file, capsys):
    state = str(tmp_path / "state.json")
    main(["run", "--config", config_file, "--state", state, "--batches", "1"])
    capsys.readouterr()
    assert main(["density", "--state", state, "--dim", "9"]) == 1
    assert "out of range" in capsys.readouterr().err
    # inert pair: with few rows output 3 never responds to input 2, and
    # an all-zero density is an error, not a silent uniform
    assert main(["density", "--state", state, "--dim", "2", "--output", "3"]) == 1
    assert "error:" in capsys.readouterr().err


def test_bootstrap_export(tmp_path, config_file, capsys):
    state = str(tmp_path / "state.json")
    main(["run", "--config", config_file, "--state", state, "--batches", "2"])
    capsys.readouterr()
    assert main(["bootstrap", "--state", state, "--dim", "1", "--output", "2",
                 "-R", "7", "--seed", "3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dimension"] == 1 and payload["output"] == 2
    assert len(payload["replicates"]) == 7
    for rep in payload["replicates"]:
        assert len(rep["breakpoints"]) == len(rep["cumulative"])


def test_demo_eval_reference_point(capsys):
    assert main(["demo", "eval", "--x", "0.1,0.2,0.3", "--times", "0,5,10"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    parsed = {}
    for line in lines:
        parts = line.split()
        parsed[float(parts[0])] = np.array([float(v) for v in parts[1:]])
    assert np.max(np.abs(parsed[0.0] - [-0.1900320, 0.5144967, 0.4093612])) < 1e-4
    assert np.max(np.abs(parsed[5.0] - [-0.1478757, 0.5489932, 0.3864914])) < 5e-3
    assert np.max(np.abs(parsed[10.0] - [-0.1024813, 0.5854096, 0.3659173])) < 5e-3


def test_demo_eval_rejects_bad_times(capsys):
    assert main(["demo", "eval", "--x", "0.1,0.2,0.3", "--times", "5,1"]) == 1
    assert "error:" in capsys.readouterr().err


def test_ingest_command(tmp_path, config_file, capsys):
    # produce a log with one campaign, ingest it into another
    donor_state = str(tmp_path / "donor.json")
    log = str(tmp_path / "eval.jsonl")
    main(["run", "--config", config_file, "--state", donor_state,
          "--batches", "1", "--log", log])
    receiver = init_campaign(CampaignConfig(m=3, n=3, batch_size=5))
    receiver_state = str(tmp_path / "receiver.json")
    receiver.save(receiver_state)
    capsys.readouterr()
    assert main(["ingest", "--state", receiver_state, "--log", log]) == 0
    assert "ingested 5 blocks" in capsys.readouterr().out
    merged = Campaign.load(receiver_state)
    assert merged.ingested_count == 5
    assert merged.total_evaluations() == 25
    # ingesting the same log again collides on row indices
    assert main(["ingest", "--state", receiver_state, "--log", log]) == 1


def test_state_is_saved_after_each_batch(tmp_path, config_file, capsys):
    state = str(tmp_path / "state.json")
    main(["run", "--config", config_file, "--state", state, "--batches", "3"])
    capsys.readouterr()
    campaign = Campaign.load(state)
    assert campaign.batches_completed == 3
    assert campaign.version == 1 + 2 * 3
