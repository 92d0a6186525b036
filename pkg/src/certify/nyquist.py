#!/usr/bin/env python3
"""
Nyquist 轨迹
Nyquist Locus
"""

from dataclasses import dataclass, field
from typing import List

import numpy as np
import pandas as pd

from ..models import FrequencyGrid
from ..tf_core import RationalTF, frequency_response


@dataclass
class NyquistLocus:
    """网格上的 D(jω)，jω 轴极点处的频率记入 skipped"""
    omega: np.ndarray
    values: np.ndarray
    skipped: List[float] = field(default_factory=list)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            'omega': self.omega,
            're': self.values.real,
            'im': self.values.imag,
        })


def nyquist_locus(tf: RationalTF, grid: FrequencyGrid) -> NyquistLocus:
    """D(jω) 在 ω ≥ 0 网格上的取值"""
    omegas = grid.points()
    values = frequency_response(tf, omegas, skip_axis_poles=True)
    ok = ~np.isnan(values)
    return NyquistLocus(omegas[ok], values[ok], [float(w) for w in omegas[~ok]])
