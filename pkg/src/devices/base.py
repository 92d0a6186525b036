#!/usr/bin/env python3
"""
设备模型基类
Device Model Base
"""

import math
from abc import ABC, abstractmethod
from dataclasses import asdict
from typing import ClassVar, Iterable

from ..exceptions import DeviceParamsError
from ..tf_core import RationalTF


class DeviceModel(ABC):
    """
    设备参数基类
    子类为 dataclass，kind 为注册名，channel 为 "pf" 或 "qv"
    """

    kind: ClassVar[str] = ""
    channel: ClassVar[str] = "pf"

    @abstractmethod
    def transfer(self) -> RationalTF:
        """设备传递函数 D(s)"""
        pass

    def _require_positive(self, names: Iterable[str]):
        for name in names:
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DeviceParamsError(f"{self.kind}.{name} 必须为正数: {value!r}")

    def _require_nonnegative(self, names: Iterable[str]):
        for name in names:
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                raise DeviceParamsError(f"{self.kind}.{name} 不能为负: {value!r}")

    @property
    def params(self) -> dict:
        return asdict(self)

    def to_dict(self) -> dict:
        return {'kind': self.kind, 'channel': self.channel, 'params': self.params}
