"""场景解析测试"""

import copy
import json

import pytest

from src.devices import CustomTF, VSM
from src.exceptions import ScenarioError
from src.scenario import load_scenario, parse_scenario

BASE = {
    "name": "two_node",
    "network": {"n": 2, "rho": 0.1, "v0": [1.0, 1.0], "lines": [{"i": 1, "j": 2, "b": 5.0}]},
    "devices": [
        {"bus": 1, "kind": "vsm", "params": {"M": 10.0, "D_d": 30.0}},
        {"bus": 2, "num": [1.0], "den": [30.0, 10.0]},
    ],
    "limits": {"eps_f": 0.01},
    "experiments": [{"type": "step", "bus": 2, "magnitude": 0.1, "T": 10.0, "h": 0.001}],
}


def scenario_dict(**overrides):
    data = copy.deepcopy(BASE)
    data.update(overrides)
    return data


def error_path(data) -> str:
    with pytest.raises(ScenarioError) as err:
        parse_scenario(data)
    return err.value.path


def test_parse_basic():
    scenario = parse_scenario(scenario_dict())
    assert scenario.name == "two_node"
    assert [e.label for e in scenario.entries] == ["vsm@bus1", "tf@bus2"]
    assert isinstance(scenario.entries[0].device, VSM)
    assert isinstance(scenario.entries[1].device, CustomTF)
    assert scenario.entries[0].tf == scenario.entries[1].tf
    assert scenario.limits.eps_f == 0.01
    assert scenario.experiments[0].T == 10.0
    assert len(scenario.bus_devices("pf")) == 2


def test_defaults_recorded():
    scenario = parse_scenario(scenario_dict())
    applied = scenario.defaults_applied
    assert applied["devices[1].channel"] == "pf"
    assert applied["limits.rho_f"] == 5.0
    assert applied["f_base"] == 50.0
    assert applied["grid.points_per_decade"] == 60
    assert "limits.eps_f" not in applied
    assert "eps_f" not in scenario.toolkit_defaults
    assert "rho_f" in scenario.toolkit_defaults


def test_device_params_filled_from_defaults():
    data = scenario_dict()
    data["devices"][0] = {"bus": 1, "kind": "vsm", "params": {"M": 8.0}}
    scenario = parse_scenario(data)
    assert scenario.entries[0].device.D_d == 30.0
    assert scenario.defaults_applied["devices[0].params.D_d"] == 30.0


def test_missing_den():
    data = scenario_dict()
    data["devices"][1] = {"bus": 2, "num": [1.0]}
    assert error_path(data) == "devices[1].den"


def test_unknown_kind():
    data = scenario_dict()
    data["devices"][0]["kind"] = "pll"
    assert error_path(data) == "devices[0].kind"


def test_channel_mismatch():
    data = scenario_dict()
    data["devices"][0]["channel"] = "qv"
    assert error_path(data) == "devices[0].channel"


def test_bus_out_of_range():
    data = scenario_dict()
    data["devices"][1]["bus"] = 3
    assert error_path(data) == "devices[1].bus"


def test_duplicate_bus_channel():
    data = scenario_dict()
    data["devices"][1]["bus"] = 1
    assert error_path(data) == "devices[1]"


def test_unknown_limit():
    assert error_path(scenario_dict(limits={"eps": 0.1})) == "limits"


def test_invalid_network():
    assert error_path(scenario_dict(network={"n": 2, "lines": [{"i": 1, "j": 1, "b": 5.0}]})) \
        == "network"
    data = scenario_dict()
    del data["network"]
    assert error_path(data) == "network"


def test_grid_override():
    scenario = parse_scenario(scenario_dict(), grid_ppd=10)
    assert scenario.grid.points_per_decade == 10
    assert "grid.points_per_decade" not in scenario.defaults_applied


def test_default_experiment():
    data = scenario_dict()
    del data["experiments"]
    scenario = parse_scenario(data)
    step = scenario.experiments[0]
    assert (step.bus, step.magnitude, step.channel) == (2, 0.1, "pf")
    assert "experiments" in scenario.defaults_applied


def test_invalid_experiment():
    assert error_path(scenario_dict(experiments=[{"type": "ramp", "bus": 1}])) \
        == "experiments[0].type"
    assert error_path(scenario_dict(experiments=[{"bus": 1, "channel": "dq"}])) \
        == "experiments[0].channel"
    assert error_path(scenario_dict(experiments=[{"bus": 1, "T": 1.0, "h": 2.0}])) \
        == "experiments[0]"


def test_qv_experiment_magnitude_default():
    scenario = parse_scenario(scenario_dict(experiments=[{"bus": 1, "channel": "qv"}]))
    assert scenario.experiments[0].magnitude == 0.1
    assert scenario.defaults_applied["experiments[0].magnitude"] == 0.1


def test_bus_devices_missing_channel():
    scenario = parse_scenario(scenario_dict())
    with pytest.raises(ScenarioError):
        scenario.bus_devices("qv")


def test_load_scenario(scenarios_dir, tmp_path):
    scenario = load_scenario(scenarios_dir / "qv_filtered.json")
    assert scenario.name == "qv_filtered"
    assert len(scenario.channel_entries("qv")) == 2

    with pytest.raises(ScenarioError):
        load_scenario(tmp_path / "absent.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{ not json", encoding="utf-8")
    with pytest.raises(ScenarioError):
        load_scenario(broken)


def test_round_trip_through_dict():
    scenario = parse_scenario(scenario_dict())
    again = parse_scenario(json.loads(json.dumps(scenario.to_dict())))
    assert [e.tf for e in again.entries] == [e.tf for e in scenario.entries]
    assert again.limits == scenario.limits
