#!/usr/bin/env python3
"""
无功-电压下垂
Reactive-Power / Voltage Droop
"""

from dataclasses import dataclass

from ..tf_core import RationalTF
from .base import DeviceModel


@dataclass
class StaticQDroop(DeviceModel):
    """D^qv(s) = d_q"""
    d_q: float
    kind = "qdroop_static"
    channel = "qv"

    def __post_init__(self):
        self._require_positive(['d_q'])

    def transfer(self) -> RationalTF:
        return RationalTF.constant(self.d_q)


@dataclass
class FilteredQDroop(DeviceModel):
    """D^qv(s) = d_q/(1 + T_v·s)"""
    d_q: float
    T_v: float
    kind = "qdroop_filtered"
    channel = "qv"

    def __post_init__(self):
        self._require_positive(['d_q', 'T_v'])

    def transfer(self) -> RationalTF:
        return RationalTF([self.d_q], [1.0, self.T_v])
