import json
import math
import pathlib

import pytest

moirl = pytest.importorskip("moirl")

ROOT = pathlib.Path(__file__).resolve().parents[2]


def test_build_env_matches_fixture():
    mdp = moirl.build_env("thermostat2d")
    assert mdp.num_objectives == 2
    assert mdp == moirl.load_mdp(str(ROOT / "fixtures" / "thermostat2d.json"))
    assert moirl.mdp_from_json(mdp.to_json()) == mdp


def test_unknown_env_is_a_value_error():
    with pytest.raises(ValueError):
        moirl.build_env("mars")


def test_solve_and_evaluate_agree():
    mdp = moirl.build_env("thermostat3d")
    sol = moirl.solve_scalarized(mdp, [1.0, 1.0, 1.0])
    assert sol["vector_return"] == pytest.approx(moirl.evaluate_policy(mdp, sol["policy"]))
    scaled = moirl.solve_scalarized(mdp, [7.0, 7.0, 7.0])
    assert scaled["policy"] == sol["policy"]


def test_preference_complement():
    p = moirl.preference_probability([0.6, 0.8], [1.0, 0.2], [0.3, 0.9], 5.0)
    q = moirl.preference_probability([0.6, 0.8], [0.3, 0.9], [1.0, 0.2], 5.0)
    assert p + q == 1.0


def test_dataset_fit_and_cone():
    mdp = moirl.build_env("thermostat2d")
    truth = [0.3 / math.hypot(0.3, 0.7), 0.7 / math.hypot(0.3, 0.7)]
    data = moirl.generate_dataset(mdp, truth, eta=5.0, num_pairs=200, seed=1)
    assert len(data) == 200
    assert set(data.labels) <= {0, 1}
    assert moirl.PreferenceDataset.from_text(data.to_text()) == data
    fit = moirl.fit_direction(data, seed=1)
    assert moirl.angular_distance(fit["direction"], truth) < 0.3
    cone = moirl.estimate_cone(data, num_bootstrap=8, seed=2)
    assert 1 <= len(cone["directions"]) <= 8
    assert cone["hull_rays"]


def test_pareto_front():
    pts = [[1.0, 0.0], [0.5, 0.5], [0.4, 0.4], [0.0, 1.0], [1.0, 0.0]]
    assert moirl.pareto_front(pts) == [[1.0, 0.0], [0.5, 0.5], [0.0, 1.0]]
    assert moirl.dominates([0.5, 0.5], [0.4, 0.4])


def test_run_experiment_from_shipped_config():
    config = json.loads((ROOT / "configs" / "thermostat2d.json").read_text())
    config["seeds"] = [0, 1, 2]
    result = moirl.run_experiment(config)
    assert len(result["seeds"]) == 3
    assert all(s["ok"] for s in result["seeds"])
    summary = result["summary"]
    assert summary["config"] == moirl.resolve_config(config)
    assert summary["metrics"]["cosine_similarity"]["mean"] > 0.9
    again = moirl.run_experiment(config)
    assert again["seeds"] == result["seeds"]


def test_bad_config_is_a_value_error():
    with pytest.raises(ValueError):
        moirl.run_experiment({"env": "thermostat2d", "seeds": []})
