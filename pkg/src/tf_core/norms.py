#!/usr/bin/env python3
"""
H∞ 范数
H-infinity Norm (grid search + golden-section refinement)
"""

import logging
import math
from typing import Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from ..exceptions import UnstableSystem
from ..models import FrequencyGrid
from .rational import (
    RationalTF, eval_response, frequency_response, is_stable, relative_degree,
)

logger = logging.getLogger(__name__)


def _grid_points(grid: Union[FrequencyGrid, np.ndarray]) -> np.ndarray:
    if isinstance(grid, FrequencyGrid):
        return grid.points()
    return np.sort(np.asarray(grid, dtype=float))


def hinf_norm(tf: RationalTF, grid: Union[FrequencyGrid, np.ndarray]) -> Tuple[float, float]:
    """
    sup_ω |D(jω)| 及其所在频率

    先在网格上取最大值，再在最大点两侧相邻网格之间做黄金分割细化；
    细化结果只会增大或保持网格值。

    Returns:
        (范数值, 取得该值的 ω)；非正则传递函数返回 (inf, inf)，
        双正则且高频极限最大时 ω 为 inf

    Raises:
        UnstableSystem: 存在实部 ≥ −stab_tol 的极点
    """
    if relative_degree(tf) < 0:
        return math.inf, math.inf
    if not is_stable(tf).stable:
        raise UnstableSystem(f"不稳定传递函数的 H∞ 范数无定义: {tf}")

    omegas = _grid_points(grid)
    magnitudes = np.abs(frequency_response(tf, omegas))
    k = int(np.argmax(magnitudes))
    best, best_omega = float(magnitudes[k]), float(omegas[k])

    # 双正则时 ω→∞ 的极限值
    if relative_degree(tf) == 0 and abs(tf.num.lead) > best:
        best, best_omega = abs(tf.num.lead), math.inf

    if 0 < k < len(omegas) - 1:
        try:
            result = minimize_scalar(
                lambda w: -abs(eval_response(tf, w)),
                bracket=(omegas[k - 1], omegas[k], omegas[k + 1]),
                method='golden',
            )
            if float(-result.fun) > best:
                best, best_omega = float(-result.fun), float(result.x)
        except ValueError:
            # 相邻点幅值相等时不构成有效区间，保留网格值
            logger.debug(f"H∞ 细化跳过: ω≈{omegas[k]:.4g} 处区间无效")

    return best, best_omega
