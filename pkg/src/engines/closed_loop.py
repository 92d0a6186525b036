#!/usr/bin/env python3
"""
闭环模型装配
Closed-Loop Assembly

pf 通道: 设备输出 y = D(u)，u = p + Δp_d，f = −y，θ' = f，p = Lθ。
网络部分 N^fp = L/s 严格正则，不存在代数环。

qv 通道: u = q + Δq_d，v = −y，q = M·v，代数环 (I + M·D_ff) 需可逆。
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.linalg import block_diag

from ..exceptions import IllPosedLoop, Indeterminate, ZeroNumerator
from ..network import NetworkSpec, build_fp_laplacian, build_vq_matrix
from ..tf_core import (
    Polynomial, RationalTF, StateSpace, coincident_roots, dc_gain, to_statespace,
)

logger = logging.getLogger(__name__)

# 代数环矩阵条件数上限
ILL_POSED_COND = 1e12


@dataclass
class ClosedLoopModel:
    """
    闭环状态空间模型
    输入: 各母线扰动 (第 k 列对应母线 k+1)
    输出: 各母线频率/电压偏差，最后一行为母线平均值
    """
    channel: str
    ss: StateSpace
    devices: List[RationalTF]
    network: NetworkSpec
    structural_zero_count: int
    output_names: List[str] = field(default_factory=list)

    @property
    def n_buses(self) -> int:
        return self.network.n

    def input_column(self, bus: int) -> int:
        if not (1 <= bus <= self.n_buses):
            raise ValueError(f"母线编号 {bus} 超出 1..{self.n_buses}")
        return bus - 1

    def eigenvalues(self) -> np.ndarray:
        return self.ss.eigenvalues()

    def non_structural_eigenvalues(self) -> np.ndarray:
        """去掉模最小的 structural_zero_count 个特征值（每个连通分量一个零模态）"""
        eig = self.eigenvalues()
        order = np.argsort(np.abs(eig), kind='stable')
        return np.sort_complex(eig[order[self.structural_zero_count:]])

    def predicted_steady_state(self, bus: int, magnitude: float) -> Optional[np.ndarray]:
        """
        阶跃扰动下各母线输出的稳态预测 (p.u.)

        pf: 扰动所在连通分量内 Δf* = −Δp / Σ_i D_i(0)⁻¹，其余分量为 0
        qv: 求解 A·x = −B·u

        Returns:
            各母线稳态值；无法预测时返回 None
        """
        k = self.input_column(bus)
        if self.channel == "pf":
            _, labels = self.network.components()
            members = np.nonzero(labels == labels[k])[0]
            inverse_sum = 0.0
            for i in members:
                try:
                    gain = dc_gain(self.devices[i])
                except Indeterminate:
                    return None
                inverse_sum += np.inf if gain == 0 else 1.0 / gain
            result = np.zeros(self.n_buses)
            if inverse_sum == 0:
                return None
            if np.isfinite(inverse_sum):
                result[members] = -magnitude / inverse_sum
            return result

        A, B, C, D = self.ss.A, self.ss.B, self.ss.C, self.ss.Dff
        try:
            x = np.linalg.solve(A, -B[:, k] * magnitude) if A.size else np.zeros(0)
        except np.linalg.LinAlgError:
            return None
        y = C @ x + D[:, k] * magnitude
        return y[:self.n_buses]


def average_mode(devices: List[RationalTF]) -> RationalTF:
    """
    平均模态 D_avg = (Σ_i D_i⁻¹)⁻¹

    全部相同时直接返回 num/n，避免多项式运算引入舍入
    """
    if not devices:
        raise ValueError("设备列表为空")
    for d in devices:
        if d.num.is_zero:
            raise ZeroNumerator(f"设备分子为零，无法求平均模态: {d}")

    n = len(devices)
    if all(d == devices[0] for d in devices[1:]):
        first = devices[0]
        return RationalTF(first.num / n, first.den)

    num = Polynomial([1.0])
    for d in devices:
        num = num * d.num
    den = Polynomial([0.0])
    for i, d in enumerate(devices):
        term = d.den
        for j, other in enumerate(devices):
            if j != i:
                term = term * other.num
        den = den + term
    result = RationalTF(num, den)
    coincident_roots(result)
    return result


def _realize(devices: List[RationalTF]):
    """逐台可控标准型实现并拼成块对角"""
    realizations = [to_statespace(d) for d in devices]
    A_d = block_diag(*[r.A for r in realizations])
    B_d = block_diag(*[r.B for r in realizations])
    C_d = block_diag(*[r.C for r in realizations])
    D_d = np.diag([r.Dff[0, 0] for r in realizations])
    n_states = sum(r.n_states for r in realizations)
    A_d = A_d.reshape(n_states, n_states)
    B_d = B_d.reshape(n_states, len(devices))
    C_d = C_d.reshape(len(devices), n_states)
    return A_d, B_d, C_d, D_d


def _with_average(C: np.ndarray, D: np.ndarray):
    """追加母线平均输出行"""
    return (np.vstack([C, C.mean(axis=0, keepdims=True)]),
            np.vstack([D, D.mean(axis=0, keepdims=True)]))


def assemble_pf_loop(devices: List[RationalTF], network: NetworkSpec) -> ClosedLoopModel:
    """
    频率-有功闭环

    状态 [x_d; θ]:
        x_d' = A_d x_d + B_d (Lθ + Δp_d)
        θ'   = −C_d x_d − D_d (Lθ + Δp_d)
    """
    n = network.n
    if len(devices) != n:
        raise ValueError(f"设备数 {len(devices)} 与母线数 {n} 不一致")

    A_d, B_d, C_d, D_d = _realize(devices)
    L = build_fp_laplacian(network)

    A = np.block([[A_d, B_d @ L], [-C_d, -D_d @ L]])
    B = np.vstack([B_d, -D_d])
    C, D = _with_average(np.hstack([-C_d, -D_d @ L]), -D_d)

    count, _ = network.components()
    names = [f"f_bus_{i + 1}" for i in range(n)] + ["f_avg"]
    logger.info(f"pf 闭环装配完成: {n} 母线, {A.shape[0]} 状态, {count} 个结构零模态")
    return ClosedLoopModel("pf", StateSpace(A, B, C, D), list(devices), network, count, names)


def assemble_qv_loop(devices: List[RationalTF], network: NetworkSpec) -> ClosedLoopModel:
    """
    电压-无功闭环

    (I + M·D_d) u = −M·C_d x + Δq_d

    Raises:
        IllPosedLoop: I + M·D_d 奇异或严重病态
    """
    n = network.n
    if len(devices) != n:
        raise ValueError(f"设备数 {len(devices)} 与母线数 {n} 不一致")

    A_d, B_d, C_d, D_d = _realize(devices)
    M = build_vq_matrix(network)
    W = np.eye(n) + M @ D_d
    if np.linalg.cond(W) > ILL_POSED_COND:
        raise IllPosedLoop("I + M·D_ff 奇异，qv 代数环不可解")

    W_inv = np.linalg.solve(W, np.eye(n))
    K = W_inv @ M
    A = A_d - B_d @ K @ C_d
    B = B_d @ W_inv
    C, D = _with_average(-(C_d - D_d @ K @ C_d), -(D_d @ W_inv))

    names = [f"v_bus_{i + 1}" for i in range(n)] + ["v_avg"]
    logger.info(f"qv 闭环装配完成: {n} 母线, {A.shape[0]} 状态")
    return ClosedLoopModel("qv", StateSpace(A, B, C, D), list(devices), network, 0, names)
