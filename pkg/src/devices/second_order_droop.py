#!/usr/bin/env python3
"""
二阶滤波下垂
Second-Order Filtered Droop
"""

from dataclasses import dataclass

from ..tf_core import RationalTF
from .base import DeviceModel


@dataclass
class SecondOrderDroop(DeviceModel):
    """D(s) = d_p·ω_n² / (s² + 2ζω_n·s + ω_n²)"""
    d_p: float
    omega_n: float
    zeta: float
    kind = "sodroop"

    def __post_init__(self):
        self._require_positive(['d_p', 'omega_n', 'zeta'])

    def transfer(self) -> RationalTF:
        wn2 = self.omega_n ** 2
        return RationalTF([self.d_p * wn2], [wn2, 2 * self.zeta * self.omega_n, 1.0])
