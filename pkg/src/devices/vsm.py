#!/usr/bin/env python3
"""
虚拟同步机
Virtual Synchronous Machine
"""

from dataclasses import dataclass

from ..tf_core import RationalTF
from .base import DeviceModel


@dataclass
class VSM(DeviceModel):
    """D(s) = 1/(M·s + D_d)"""
    M: float
    D_d: float
    kind = "vsm"

    def __post_init__(self):
        self._require_positive(['M', 'D_d'])

    def transfer(self) -> RationalTF:
        return RationalTF([1.0], [self.D_d, self.M])
