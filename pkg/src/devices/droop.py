#!/usr/bin/env python3
"""
下垂控制与虚拟振荡器
Droop / Virtual Oscillator Control
"""

from dataclasses import dataclass

from ..tf_core import RationalTF
from .base import DeviceModel


@dataclass
class Droop(DeviceModel):
    """纯下垂 D(s) = d_p"""
    d_p: float
    kind = "droop"

    def __post_init__(self):
        self._require_positive(['d_p'])

    def transfer(self) -> RationalTF:
        return RationalTF.constant(self.d_p)


@dataclass
class VOC(Droop):
    """虚拟振荡器，线性化后与下垂相同"""
    kind = "voc"
