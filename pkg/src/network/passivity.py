#!/usr/bin/env python3
"""
移位网络无源性校验
Shifted-Network Passivity Check
"""

import logging
from dataclasses import dataclass, asdict
from typing import Union

import numpy as np

from ..config import config
from ..models import FrequencyGrid, json_safe
from .matrices import shifted_network
from .spec import NetworkSpec

logger = logging.getLogger(__name__)


@dataclass
class PassivityReport:
    """移位网络 Hermitian 部分的最小特征值"""
    min_eigenvalue: float
    worst_omega: float
    qv_min_eigenvalue: float
    passive: bool

    def __iter__(self):
        # 兼容 (min_eigenvalue, worst_omega) 解包
        yield self.min_eigenvalue
        yield self.worst_omega

    def to_dict(self) -> dict:
        return json_safe(asdict(self))


def _herm_min(block: np.ndarray) -> float:
    if block.size == 0:
        return np.inf
    return float(np.linalg.eigvalsh((block + block.conj().T) / 2)[0])


def verify_shifted_passivity(spec: NetworkSpec,
                             grid: Union[FrequencyGrid, np.ndarray] = None) -> PassivityReport:
    """
    在网格 (ω > 0) 上计算 λ_min(½(N′(jω) + N′(jω)ᴴ))

    N′ 为块对角，按块分别求特征值；pf 块的 Hermitian 部分恒为零矩阵。
    """
    grid = grid if grid is not None else FrequencyGrid.from_config()
    omegas = grid.points() if isinstance(grid, FrequencyGrid) else np.asarray(grid, dtype=float)
    omegas = omegas[omegas > 0]
    if omegas.size == 0:
        raise ValueError("无源性校验需要至少一个正频率点")

    n = spec.n
    worst = np.inf
    worst_omega = float(omegas[0])
    qv_min = np.inf
    for omega in omegas:
        N = shifted_network(spec, omega)
        pf_min = _herm_min(N[:n, :n])
        qv = _herm_min(N[n:, n:])
        qv_min = min(qv_min, qv)
        value = min(pf_min, qv)
        if value < worst:
            worst = value
            worst_omega = float(omega)

    passive = worst >= -config.passivity_tol
    if not passive:
        logger.warning(f"移位网络无源性不成立: λ_min={worst:.3e} @ ω={worst_omega:.4g} rad/s")
    return PassivityReport(float(worst), worst_omega, float(qv_min), bool(passive))
