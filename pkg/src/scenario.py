#!/usr/bin/env python3
"""
场景文件
Scenario Files

JSON 场景: 网络、各母线设备、限值、频率网格与阶跃实验。
缺省字段由配置填充，并逐项记录在 defaults_applied 中供清单回显。
"""

import json
import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .config import config
from .certify import FleetEntry
from .devices import CustomTF, build_device, device_defaults, get_device
from .exceptions import DeviceParamsError, NetworkSpecError, ScenarioError
from .models import CertLimits, FrequencyGrid
from .network import NetworkSpec
from .tf_core import RationalTF

logger = logging.getLogger(__name__)


@dataclass
class StepExperiment:
    """阶跃实验"""
    bus: int
    magnitude: float
    channel: str = "pf"
    T: float = 30.0
    h: float = 1e-3

    def to_dict(self) -> dict:
        return {'type': 'step', 'bus': self.bus, 'magnitude': self.magnitude,
                'channel': self.channel, 'T': self.T, 'h': self.h}


@dataclass
class Scenario:
    """解析后的场景"""
    name: str
    network: NetworkSpec
    entries: List[FleetEntry]
    limits: CertLimits
    grid: FrequencyGrid
    experiments: List[StepExperiment]
    defaults_applied: Dict[str, Any] = field(default_factory=dict)
    toolkit_defaults: List[str] = field(default_factory=list)

    def channel_entries(self, channel: str) -> List[FleetEntry]:
        return [e for e in self.entries if e.channel == channel]

    def bus_devices(self, channel: str) -> List[RationalTF]:
        """按母线顺序排列的某通道设备，每条母线必须恰有一台"""
        by_bus = {e.bus: e.tf for e in self.channel_entries(channel)}
        missing = [i for i in range(1, self.network.n + 1) if i not in by_bus]
        if missing:
            raise ScenarioError("devices", f"母线 {missing} 缺少 {channel} 通道设备，无法装配闭环")
        return [by_bus[i] for i in range(1, self.network.n + 1)]

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'f_base': self.limits.f_base,
            'network': self.network.to_dict(),
            'devices': [_entry_to_dict(e) for e in self.entries],
            'limits': {k: v for k, v in self.limits.to_dict().items() if k != 'f_base'},
            'grid': self.grid.to_dict(),
            'experiments': [s.to_dict() for s in self.experiments],
        }


def _entry_to_dict(entry: FleetEntry) -> dict:
    data = {'label': entry.label, 'bus': entry.bus, 'channel': entry.channel}
    if isinstance(entry.device, CustomTF):
        data.update(entry.device.params)
    elif entry.device is not None:
        data.update(kind=entry.device.kind, params=entry.device.params)
    return data


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(path, f"必须是数值: {value!r}")
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(path, f"必须是整数: {value!r}")
    return value


class _Parser:
    """逐字段解析并记录缺省值"""

    def __init__(self):
        self.defaults: Dict[str, Any] = {}

    def default(self, path: str, value: Any) -> Any:
        self.defaults[path] = value
        return value

    def network(self, data: Dict[str, Any]) -> NetworkSpec:
        if 'network' not in data:
            raise ScenarioError("network", "缺少字段")
        raw = data['network']
        if not isinstance(raw, dict):
            raise ScenarioError("network", "必须是对象")
        try:
            spec = NetworkSpec.from_dict(raw)
        except NetworkSpecError as e:
            raise ScenarioError("network", str(e)) from e
        if 'rho' not in raw:
            self.default("network.rho", spec.rho)
        if 'v0' not in raw:
            self.default("network.v0", list(spec.v0))
        return spec

    def device(self, raw: Any, k: int, n: int) -> FleetEntry:
        path = f"devices[{k}]"
        if not isinstance(raw, dict):
            raise ScenarioError(path, "必须是对象")
        if 'bus' not in raw:
            raise ScenarioError(f"{path}.bus", "缺少字段")
        bus = _integer(raw['bus'], f"{path}.bus")
        if not (1 <= bus <= n):
            raise ScenarioError(f"{path}.bus", f"母线编号 {bus} 超出 1..{n}")

        if 'kind' in raw:
            kind = raw['kind']
            try:
                cls = get_device(kind)
            except DeviceParamsError as e:
                raise ScenarioError(f"{path}.kind", str(e)) from e
            params = raw.get('params', {})
            if not isinstance(params, dict):
                raise ScenarioError(f"{path}.params", "必须是对象")
            params = dict(params)
            for name, value in device_defaults(kind).items():
                if name not in params:
                    params[name] = self.default(f"{path}.params.{name}", value)
            try:
                device = build_device(kind, params)
            except DeviceParamsError as e:
                raise ScenarioError(f"{path}.params", str(e)) from e
            channel = raw.get('channel', cls.channel)
            if channel != cls.channel:
                raise ScenarioError(f"{path}.channel", f"{kind} 属于 {cls.channel} 通道")
        elif 'num' in raw or 'den' in raw:
            for key in ('num', 'den'):
                if key not in raw:
                    raise ScenarioError(f"{path}.{key}", "缺少字段")
            channel = raw.get('channel')
            if channel is None:
                channel = self.default(f"{path}.channel", "pf")
            try:
                device = CustomTF(raw['num'], raw['den'], channel)
            except DeviceParamsError as e:
                raise ScenarioError(path, str(e)) from e
            kind = "tf"
        else:
            raise ScenarioError(path, "需要 kind 或 {num, den}")

        label = raw.get('label') or f"{kind}@bus{bus}"
        return FleetEntry(str(label), bus, channel, device.transfer(), device)

    def limits(self, data: Dict[str, Any]) -> Tuple[CertLimits, List[str]]:
        raw = data.get('limits', {})
        if not isinstance(raw, dict):
            raise ScenarioError("limits", "必须是对象")
        known = {f.name for f in fields(CertLimits)} - {'f_base'}
        unknown = set(raw) - known
        if unknown:
            raise ScenarioError("limits", f"未知限值 {sorted(unknown)}")
        values = {k: _number(v, f"limits.{k}") for k, v in raw.items()}
        for key, value in config.limits.items():
            if key in known and key not in values:
                values[key] = self.default(f"limits.{key}", value)
        if 'f_base' in data:
            values['f_base'] = _number(data['f_base'], "f_base")
        else:
            values['f_base'] = self.default("f_base", config.f_base)
        try:
            limits = CertLimits(**values)
        except ValueError as e:
            raise ScenarioError("limits", str(e)) from e
        toolkit = [k for k in config.toolkit_defaults if k not in raw]
        return limits, toolkit

    def grid(self, data: Dict[str, Any], grid_ppd: Optional[int]) -> FrequencyGrid:
        raw = data.get('grid', {})
        if not isinstance(raw, dict):
            raise ScenarioError("grid", "必须是对象")
        known = {f.name for f in fields(FrequencyGrid)}
        unknown = set(raw) - known
        if unknown:
            raise ScenarioError("grid", f"未知字段 {sorted(unknown)}")
        values = dict(raw)
        for key, value in config.grid.items():
            if key not in values:
                values[key] = self.default(f"grid.{key}", value)
        if grid_ppd is not None:
            values['points_per_decade'] = grid_ppd
            self.defaults.pop("grid.points_per_decade", None)
        try:
            return FrequencyGrid(**values)
        except (TypeError, ValueError) as e:
            raise ScenarioError("grid", str(e)) from e

    def experiments(self, data: Dict[str, Any], limits: CertLimits,
                    network: NetworkSpec) -> List[StepExperiment]:
        raw = data.get('experiments')
        if raw is None:
            bus = min(int(config.get('reference_network.step_bus', 1)), network.n)
            step = StepExperiment(bus, limits.dp_step, "pf", config.sim_T, config.sim_h)
            self.default("experiments", [step.to_dict()])
            return [step]
        if not isinstance(raw, list):
            raise ScenarioError("experiments", "必须是数组")
        steps = []
        for k, item in enumerate(raw):
            path = f"experiments[{k}]"
            if not isinstance(item, dict):
                raise ScenarioError(path, "必须是对象")
            kind = item.get('type', 'step')
            if kind != 'step':
                raise ScenarioError(f"{path}.type", f"不支持的实验类型 {kind!r}")
            if 'bus' not in item:
                raise ScenarioError(f"{path}.bus", "缺少字段")
            bus = _integer(item['bus'], f"{path}.bus")
            if not (1 <= bus <= network.n):
                raise ScenarioError(f"{path}.bus", f"母线编号 {bus} 超出 1..{network.n}")
            channel = item.get('channel')
            if channel is None:
                channel = self.default(f"{path}.channel", "pf")
            if channel not in ("pf", "qv"):
                raise ScenarioError(f"{path}.channel", f"必须是 pf 或 qv: {channel!r}")
            if 'magnitude' in item:
                magnitude = _number(item['magnitude'], f"{path}.magnitude")
            else:
                magnitude = limits.dp_step if channel == "pf" else limits.dq_step
                self.default(f"{path}.magnitude", magnitude)
            T = _number(item['T'], f"{path}.T") if 'T' in item else \
                self.default(f"{path}.T", config.sim_T)
            h = _number(item['h'], f"{path}.h") if 'h' in item else \
                self.default(f"{path}.h", config.sim_h)
            if T <= 0 or h <= 0 or h > T:
                raise ScenarioError(path, f"仿真时长/步长不合法: T={T}, h={h}")
            steps.append(StepExperiment(bus, magnitude, channel, T, h))
        return steps


def parse_scenario(data: Any, name: str = "scenario", grid_ppd: int = None) -> Scenario:
    """
    解析场景字典

    Raises:
        ScenarioError: 字段不合法，path 指向出错位置
    """
    if not isinstance(data, dict):
        raise ScenarioError("$", "场景必须是 JSON 对象")
    parser = _Parser()

    network = parser.network(data)

    raw_devices = data.get('devices')
    if not isinstance(raw_devices, list) or not raw_devices:
        raise ScenarioError("devices", "必须是非空数组")
    entries = [parser.device(raw, k, network.n) for k, raw in enumerate(raw_devices)]
    seen = set()
    for k, entry in enumerate(entries):
        key = (entry.bus, entry.channel)
        if key in seen:
            raise ScenarioError(f"devices[{k}]", f"母线 {entry.bus} 的 {entry.channel} 通道设备重复")
        seen.add(key)

    limits, toolkit = parser.limits(data)
    grid = parser.grid(data, grid_ppd)
    experiments = parser.experiments(data, limits, network)

    scenario_name = data.get('name', name)
    if parser.defaults:
        logger.info(f"场景 {scenario_name}: {len(parser.defaults)} 个字段使用默认值")
    return Scenario(str(scenario_name), network, entries, limits, grid, experiments,
                    parser.defaults, toolkit)


def load_scenario(path: str, grid_ppd: int = None) -> Scenario:
    """读取 JSON 场景文件"""
    path = Path(path)
    if not path.exists():
        raise ScenarioError(str(path), "场景文件不存在")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ScenarioError(str(path), f"JSON 解析失败: {e}") from e
    return parse_scenario(data, name=path.stem, grid_ppd=grid_ppd)
