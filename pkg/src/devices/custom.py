#!/usr/bin/env python3
"""
直接给定系数的传递函数
Raw Transfer-Function Descriptor
"""

from dataclasses import dataclass, field
from typing import List

from ..exceptions import DeviceParamsError
from ..tf_core import RationalTF
from .base import DeviceModel


@dataclass
class CustomTF(DeviceModel):
    """{num, den} 升幂系数"""
    num: List[float]
    den: List[float]
    channel: str = "pf"
    kind = "tf"

    def __post_init__(self):
        if self.channel not in ("pf", "qv"):
            raise DeviceParamsError(f"channel 必须是 pf 或 qv: {self.channel!r}")
        for name in ('num', 'den'):
            coeffs = getattr(self, name)
            if not isinstance(coeffs, (list, tuple)) or not coeffs:
                raise DeviceParamsError(f"{name} 必须是非空系数数组")
            if not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in coeffs):
                raise DeviceParamsError(f"{name} 只能包含数值: {coeffs!r}")
        self.num = [float(c) for c in self.num]
        self.den = [float(c) for c in self.den]
        try:
            self._tf = RationalTF(self.num, self.den)
        except ValueError as e:
            raise DeviceParamsError(str(e)) from e

    @property
    def params(self) -> dict:
        return {'num': list(self.num), 'den': list(self.den)}

    def transfer(self) -> RationalTF:
        return self._tf
