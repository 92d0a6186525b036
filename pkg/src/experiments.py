#!/usr/bin/env python3
"""
阶跃实验
Step Experiments

场景中的阶跃实验与两节点参考实验:
- 实验 1: 母线 1 理想 VSC，母线 2 被测设备
- 实验 2: 两条母线均为被测设备
扰动均为母线 2 处 0.1 p.u. 阶跃
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from .config import config
from .engines import (
    ClosedLoopModel, TimeSeries, assemble_pf_loop, assemble_qv_loop, average_mode_response,
    local_voltage_response, step_response, time_metrics,
)
from .exceptions import NGGCError, ScenarioError
from .models import CertLimits, StepMetrics, json_safe
from .scenario import Scenario, StepExperiment, parse_scenario

logger = logging.getLogger(__name__)

REFERENCE_DUTS = [f"DUT {k}" for k in range(1, 8)]

# 各时域指标依赖的限值字段，用于 --strict
METRIC_LIMITS: Dict[str, Dict[str, List[str]]] = {
    'pf': {
        'nadir': ['df_max'],
        'f_ss': ['df_ss_max'],
        'rocof_max': ['rocof_max'],
        'damping_ratio': ['zeta_min'],
    },
    'qv': {
        'nadir': ['dv_max'],
        'f_ss': ['dv_ss_max'],
        'damping_ratio': ['zeta_min'],
    },
}


@dataclass
class StepResult:
    """单个阶跃实验的闭环模型、轨迹、指标与限值判定"""
    index: int
    experiment: StepExperiment
    model: ClosedLoopModel
    series: TimeSeries
    metrics: StepMetrics
    approximation: Optional[TimeSeries] = None
    approximation_deviation: Optional[float] = None
    verdicts: Dict[str, bool] = field(default_factory=dict)

    def default_dependent(self, toolkit_defaults: Sequence[str]) -> List[str]:
        """判定依赖工具箱默认限值的指标"""
        defaults = set(toolkit_defaults)
        limits = METRIC_LIMITS[self.experiment.channel]
        return [name for name in self.verdicts if defaults & set(limits.get(name, []))]

    def passed(self, strict: bool = False, toolkit_defaults: Sequence[str] = ()) -> bool:
        if not all(self.verdicts.values()):
            return False
        if strict and self.default_dependent(toolkit_defaults):
            return False
        return True

    def timeseries_frame(self, f_base: float) -> pd.DataFrame:
        """轨迹表，附近似响应列"""
        frame = self.series.to_frame(f_base)
        if self.approximation is not None:
            y = self.approximation.outputs[:, 0]
            if self.experiment.channel == "pf":
                frame['f_avg_mode_hz'] = y * f_base
            else:
                frame[f"v_bus_{self.experiment.bus}_local_pu"] = y
        return frame

    def to_record(self) -> dict:
        """指标表中的一行"""
        step = self.experiment
        record = {
            'step': self.index,
            'channel': step.channel,
            'bus': step.bus,
            'magnitude': step.magnitude,
        }
        record.update(self.metrics.to_dict())
        record['avg_mode_deviation_hz'] = (
            self.approximation_deviation if step.channel == "pf" else None
        )
        record['local_deviation_pu'] = (
            self.approximation_deviation if step.channel == "qv" else None
        )
        for name, ok in self.verdicts.items():
            record[f"{name}_ok"] = ok
        record['passed'] = self.passed()
        return json_safe(record)


def assemble_loop(scenario: Scenario, channel: str) -> ClosedLoopModel:
    """按场景装配某通道闭环"""
    devices = scenario.bus_devices(channel)
    if channel == "pf":
        return assemble_pf_loop(devices, scenario.network)
    return assemble_qv_loop(devices, scenario.network)


def judge_metrics(metrics: StepMetrics, channel: str, limits: CertLimits) -> Dict[str, bool]:
    """时域指标对照限值；无振荡模态时阻尼判定视为通过"""
    zeta = metrics.damping_ratio
    damping_ok = zeta is None or zeta >= limits.zeta_min
    if channel == "pf":
        return {
            'nadir': metrics.nadir <= limits.df_max,
            'f_ss': abs(metrics.f_ss) <= limits.df_ss_max,
            'rocof_max': metrics.rocof_max <= limits.rocof_max,
            'damping_ratio': damping_ok,
        }
    return {
        'nadir': metrics.nadir <= limits.dv_max,
        'f_ss': abs(metrics.f_ss) <= limits.dv_ss_max,
        'damping_ratio': damping_ok,
    }


def _approximation(model: ClosedLoopModel, series: TimeSeries, step: StepExperiment,
                   f_base: float):
    """pf: 平均模态近似；qv: 局部电压近似。失败时仅记录警告"""
    try:
        if step.channel == "pf":
            approx = average_mode_response(model, step.bus, step.magnitude, step.T, step.h)
            exact = series.average
            scale = f_base
        else:
            approx = local_voltage_response(model, step.bus, step.magnitude, step.T, step.h)
            exact = series.output(f"v_bus_{step.bus}")
            scale = 1.0
    except NGGCError as e:
        logger.warning(f"近似响应不可用: {e}")
        return None, None
    deviation = float(np.max(np.abs(exact - approx.outputs[:, 0]))) * scale
    return approx, deviation


def run_step(scenario: Scenario, step: StepExperiment, index: int = 1) -> StepResult:
    """
    运行单个阶跃实验

    Raises:
        ScenarioError: 某母线缺少该通道设备
        StepTooCoarse / IllPosedLoop: 闭环无法仿真
    """
    f_base = scenario.limits.f_base
    model = assemble_loop(scenario, step.channel)
    series = step_response(model, step.bus, step.magnitude, step.T, step.h)
    metrics = time_metrics(series, model, f_base)
    approx, deviation = _approximation(model, series, step, f_base)
    verdicts = judge_metrics(metrics, step.channel, scenario.limits)
    logger.info(
        f"阶跃 {index} ({step.channel}, 母线 {step.bus}): 最大偏差 {metrics.nadir:.4g} {metrics.unit}, "
        f"稳态 {metrics.f_ss:.4g} {metrics.unit}"
    )
    return StepResult(index, step, model, series, metrics, approx, deviation, verdicts)


def run_scenario_steps(scenario: Scenario) -> List[StepResult]:
    """依次运行场景中全部阶跃实验"""
    return [run_step(scenario, step, k) for k, step in enumerate(scenario.experiments, start=1)]


def reference_scenario_dict(dut: str, experiment: int) -> dict:
    """两节点参考实验的场景字典"""
    fleet = config.reference_fleet
    if dut not in fleet or dut == "ideal VSC":
        raise ScenarioError("devices", f"未知被测设备 {dut!r}，可选 {REFERENCE_DUTS}")
    if experiment not in (1, 2):
        raise ScenarioError("experiment", f"实验编号必须是 1 或 2: {experiment!r}")

    net = config.reference_network
    first = "ideal VSC" if experiment == 1 else dut
    devices = []
    for bus, label in ((1, first), (2, dut)):
        entry = fleet[label]
        devices.append({
            'label': label,
            'bus': bus,
            'kind': entry['kind'],
            'params': dict(entry['params']),
        })
    return {
        'name': f"exp{experiment}_{dut.replace(' ', '').lower()}",
        'f_base': config.f_base,
        'network': {k: net[k] for k in ('n', 'rho', 'v0', 'lines')},
        'devices': devices,
        'experiments': [{
            'type': 'step',
            'bus': int(net.get('step_bus', 2)),
            'channel': 'pf',
            'magnitude': config.limits['dp_step'],
            'T': config.sim_T,
            'h': config.sim_h,
        }],
    }


def two_node_scenario(dut: str, experiment: int) -> Scenario:
    """两节点参考实验场景"""
    data = reference_scenario_dict(dut, experiment)
    return parse_scenario(data, name=data['name'])


def run_experiment(dut: str, experiment: int) -> StepResult:
    """运行两节点参考实验"""
    scenario = two_node_scenario(dut, experiment)
    logger.info(f"实验 {experiment}: {dut}")
    return run_step(scenario, scenario.experiments[0], 1)
