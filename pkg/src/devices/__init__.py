#!/usr/bin/env python3
"""
设备库
Device Library

每种设备一个参数类，按 kind 注册
"""

from dataclasses import fields
from typing import Any, Dict, List, Type

from ..config import config
from ..exceptions import DeviceParamsError
from ..tf_core import RationalTF
from .base import DeviceModel
from .custom import CustomTF
from .droop import Droop, VOC
from .reactive import FilteredQDroop, StaticQDroop
from .second_order_droop import SecondOrderDroop
from .synchronous import SGHydro, SGNonReheat, SGReheat
from .vsm import VSM

# 设备注册表
DEVICES: Dict[str, Type[DeviceModel]] = {
    'droop': Droop,
    'voc': VOC,
    'vsm': VSM,
    'sodroop': SecondOrderDroop,
    'sg_nonreheat': SGNonReheat,
    'sg_reheat': SGReheat,
    'sg_hydro': SGHydro,
    'qdroop_static': StaticQDroop,
    'qdroop_filtered': FilteredQDroop,
}


def get_device(kind: str) -> Type[DeviceModel]:
    """获取设备参数类"""
    if kind not in DEVICES:
        raise DeviceParamsError(f"未知设备类型: {kind!r}，可选 {list_devices()}")
    return DEVICES[kind]


def list_devices() -> List[str]:
    """列出所有设备类型"""
    return list(DEVICES.keys())


def build_device(kind: str, params: Dict[str, Any]) -> DeviceModel:
    """由 kind 与参数字典构造设备，参数必须完整"""
    cls = get_device(kind)
    names = [f.name for f in fields(cls)]
    unknown = set(params) - set(names)
    if unknown:
        raise DeviceParamsError(f"{kind} 不接受参数 {sorted(unknown)}，可用 {names}")
    missing = [name for name in names if name not in params]
    if missing:
        raise DeviceParamsError(f"{kind} 缺少参数 {missing}")
    for name, value in params.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise DeviceParamsError(f"{kind}.{name} 必须是数值: {value!r}")
    return cls(**{k: float(v) for k, v in params.items()})


def device_defaults(kind: str) -> Dict[str, float]:
    """配置中该类设备的默认参数（取参考设备库中第一个同类条目）"""
    get_device(kind)
    for entries in (config.reference_fleet, config.qv_fleet):
        for entry in entries.values():
            if entry.get('kind') == kind:
                return dict(entry.get('params', {}))
    return {}


def pf_transfer(device: DeviceModel) -> RationalTF:
    """频率-有功通道传递函数"""
    if device.channel != "pf":
        raise DeviceParamsError(f"{device.kind} 不是 pf 通道设备")
    return device.transfer()


def qv_transfer(device: DeviceModel) -> RationalTF:
    """电压-无功通道传递函数"""
    if device.channel != "qv":
        raise DeviceParamsError(f"{device.kind} 不是 qv 通道设备")
    return device.transfer()


def prime_mover(device: DeviceModel) -> RationalTF:
    """同步机调速器-原动机通路 G(s)"""
    if not isinstance(device, (SGNonReheat, SGReheat, SGHydro)):
        raise DeviceParamsError(f"{device.kind} 没有原动机通路")
    return device.prime_mover()


def reference_fleet() -> Dict[str, DeviceModel]:
    """参考设备库: "ideal VSC" 与 "DUT 1" … "DUT 7" """
    return {
        label: build_device(entry['kind'], entry['params'])
        for label, entry in config.reference_fleet.items()
    }


def qv_fleet() -> Dict[str, DeviceModel]:
    return {
        label: build_device(entry['kind'], entry['params'])
        for label, entry in config.qv_fleet.items()
    }
