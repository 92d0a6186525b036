#!/usr/bin/env python3
"""
阶跃响应仿真与时域指标
Step-Response Simulation and Time-Domain Metrics

定步长 RK4；对线性时不变系统，阶跃输入下 RK4 一步等价于
增广矩阵 [[A, b], [0, 0]] 的四阶 Taylor 多项式传播。
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
import pandas as pd

from ..config import config
from ..exceptions import StepTooCoarse
from ..models import StepMetrics
from ..tf_core import RationalTF, to_statespace
from .closed_loop import ClosedLoopModel, average_mode

logger = logging.getLogger(__name__)


@dataclass
class TimeSeries:
    """
    仿真轨迹 (p.u.)
    outputs 每列对应 output_names 中的一项，最后一列为母线平均值
    """
    t: np.ndarray
    outputs: np.ndarray
    derivatives: np.ndarray
    output_names: List[str]
    channel: str
    bus: int
    magnitude: float
    h: float

    @property
    def average(self) -> np.ndarray:
        return self.outputs[:, -1]

    @property
    def average_derivative(self) -> np.ndarray:
        return self.derivatives[:, -1]

    def output(self, name: str) -> np.ndarray:
        return self.outputs[:, self.output_names.index(name)]

    def to_frame(self, f_base: float = None) -> pd.DataFrame:
        """列顺序 t, 平均值, 各母线, 平均值导数；pf 换算为 Hz 与 Hz/s，qv 保持 p.u."""
        if self.channel == "pf":
            scale = config.f_base if f_base is None else f_base
            suffix, rate = "hz", "rocof_hz_s"
        else:
            scale, suffix, rate = 1.0, "pu", "dv_dt_pu_s"
        order = [len(self.output_names) - 1] + list(range(len(self.output_names) - 1))
        columns = {'t': self.t}
        for k in order:
            columns[f"{self.output_names[k]}_{suffix}"] = self.outputs[:, k] * scale
        columns[rate] = self.average_derivative * scale
        return pd.DataFrame(columns)


def _rk4_propagators(A: np.ndarray, b: np.ndarray, h: float):
    """RK4 一步: x⁺ = Φ x + γ"""
    n = A.shape[0]
    aug = np.zeros((n + 1, n + 1))
    aug[:n, :n] = A
    aug[:n, n] = b
    M = h * aug
    M2 = M @ M
    M3 = M2 @ M
    P = np.eye(n + 1) + M + M2 / 2 + M3 / 6 + M3 @ M / 24
    return P[:n, :n], P[:n, n]


def _integrate(A: np.ndarray, b: np.ndarray, C: np.ndarray, d: np.ndarray,
               T: float, h: float, substeps: int = 1):
    """零初值、常值输入下的轨迹与输出导数；substeps > 1 时每个输出步内做多次 RK4"""
    steps = int(round(T / h))
    t = np.arange(steps + 1) * h
    n = A.shape[0]
    X = np.zeros((steps + 1, n))
    if n:
        Phi, gamma = _rk4_propagators(A, b, h / substeps)
        if substeps > 1:
            Phi_k, gamma_k = np.eye(n), np.zeros(n)
            for _ in range(substeps):
                gamma_k = Phi @ gamma_k + gamma
                Phi_k = Phi @ Phi_k
            Phi, gamma = Phi_k, gamma_k
        x = np.zeros(n)
        for k in range(steps):
            x = Phi @ x + gamma
            X[k + 1] = x
    Y = X @ C.T + d
    Ydot = (X @ A.T + b) @ C.T if n else np.zeros_like(Y)
    return t, Y, Ydot


def _check_step(model_eigs: np.ndarray, h: float):
    if model_eigs.size == 0:
        return
    fastest = float(np.max(np.abs(model_eigs)))
    if fastest == 0:
        return
    h_max = config.max_step_factor / fastest
    if h > h_max:
        raise StepTooCoarse(h, h_max)


def step_response(model: ClosedLoopModel, bus: int, magnitude: float,
                  T: float = None, h: float = None) -> TimeSeries:
    """
    母线 bus 处幅值 magnitude 的阶跃扰动响应

    Args:
        model: 闭环模型
        bus: 扰动母线 (1 起始)
        magnitude: 阶跃幅值 (p.u.)
        T: 仿真时长 (s)
        h: 步长 (s)

    Raises:
        StepTooCoarse: h > 0.2/|λ_max|
    """
    T = config.sim_T if T is None else float(T)
    h = config.sim_h if h is None else float(h)
    if T <= 0 or h <= 0 or h > T:
        raise ValueError(f"仿真时长/步长不合法: T={T}, h={h}")

    k = model.input_column(bus)
    ss = model.ss
    _check_step(model.eigenvalues(), h)

    slow = model.non_structural_eigenvalues()
    slow = slow[np.abs(slow.real) > 0]
    if slow.size:
        horizon = config.min_horizon_factor / float(np.min(np.abs(slow.real)))
        if T < horizon:
            logger.warning(f"仿真时长 T={T:g} s 短于 5 个最慢时间常数 ({horizon:.3g} s)")

    t, Y, Ydot = _integrate(ss.A, ss.B[:, k] * magnitude, ss.C, ss.Dff[:, k] * magnitude, T, h)
    logger.info(f"{model.channel} 阶跃仿真完成: 母线 {bus}, 幅值 {magnitude:g}, {len(t)} 个采样点")
    return TimeSeries(t, Y, Ydot, list(model.output_names), model.channel, bus, magnitude, h)


def _single_response(tf: RationalTF, magnitude: float, T: float, h: float,
                     name: str, channel: str, bus: int) -> TimeSeries:
    """单个传递函数 −D·u 的阶跃响应"""
    ss = to_statespace(tf)
    # 近似传递函数可能含闭环中不存在的快极点，按需细分步长
    eig = ss.eigenvalues()
    fastest = float(np.max(np.abs(eig))) if eig.size else 0.0
    substeps = max(1, math.ceil(h * fastest / config.max_step_factor))
    t, Y, Ydot = _integrate(ss.A, ss.B[:, 0] * magnitude, -ss.C, -ss.Dff[:, 0] * magnitude,
                           T, h, substeps)
    return TimeSeries(t, Y, Ydot, [name], channel, bus, magnitude, h)


def average_mode_response(model: ClosedLoopModel, bus: int, magnitude: float,
                          T: float = None, h: float = None) -> TimeSeries:
    """平均模态近似 Δf_avg ≈ −D_avg·Δp 的阶跃响应，D_avg = (Σ D_i⁻¹)⁻¹"""
    if model.channel != "pf":
        raise ValueError("平均模态近似只适用于 pf 闭环")
    T = config.sim_T if T is None else float(T)
    h = config.sim_h if h is None else float(h)
    d_avg = average_mode(model.devices)
    return _single_response(d_avg, magnitude, T, h, "f_avg_mode", "pf", bus)


def local_voltage_response(model: ClosedLoopModel, bus: int, magnitude: float,
                           T: float = None, h: float = None) -> TimeSeries:
    """qv 局部近似 Δv_i ≈ −D_i^qv·Δq_d,i"""
    if model.channel != "qv":
        raise ValueError("局部电压近似只适用于 qv 闭环")
    T = config.sim_T if T is None else float(T)
    h = config.sim_h if h is None else float(h)
    k = model.input_column(bus)
    return _single_response(model.devices[k], magnitude, T, h,
                            f"v_bus_{bus}_local", "qv", bus)


def dominant_damping(eigenvalues: np.ndarray) -> Optional[float]:
    """
    主导复共轭对的阻尼比 ζ = −Re λ/|λ|
    主导对取实部最大（衰减最慢）的一对；无复特征值时返回 None
    """
    eig = np.asarray(eigenvalues, dtype=complex)
    complex_eig = eig[np.abs(eig.imag) > 1e-9 * np.maximum(1.0, np.abs(eig))]
    if complex_eig.size == 0:
        return None
    dominant = complex_eig[np.argmax(complex_eig.real)]
    return float(-dominant.real / abs(dominant))


def _settle_time(t: np.ndarray, y: np.ndarray, target: float, band: float) -> Optional[float]:
    """|y − target| 最后一次离开 band 的时刻（线性插值）"""
    error = np.abs(y - target)
    outside = np.nonzero(error > band)[0]
    if outside.size == 0:
        return 0.0
    last = int(outside[-1])
    if last == len(t) - 1:
        return None
    e0, e1 = error[last], error[last + 1]
    fraction = (e0 - band) / (e0 - e1) if e0 != e1 else 1.0
    return float(t[last] + fraction * (t[last + 1] - t[last]))


def time_metrics(ts: TimeSeries, model: ClosedLoopModel, f_base: float = None) -> StepMetrics:
    """
    时域指标: 最大偏差、稳态偏差、RoCoF、主导阻尼比、调节时间

    pf 通道以 Hz 与 Hz/s 报告，qv 通道以 p.u. 报告
    """
    f_base = config.f_base if f_base is None else f_base
    scale = f_base if ts.channel == "pf" else 1.0
    unit = "Hz" if ts.channel == "pf" else "p.u."
    y = ts.average
    ydot = ts.average_derivative

    abs_y = np.abs(y)
    k = int(np.argmax(abs_y))
    nadir = float(abs_y[k]) * scale
    t_nadir = float(ts.t[k])

    tail = ts.t >= ts.t[-1] - config.tail_fraction * ts.t[-1]
    steady = float(np.mean(y[tail]))

    peak = float(np.max(abs_y))
    initial_jump = bool(abs(y[0]) > 1e-12 * max(1.0, peak))
    rocof = math.inf if initial_jump else float(np.max(np.abs(ydot))) * scale

    if peak == 0:
        settle = 0.0
    else:
        reference = abs(steady) if steady != 0 else peak
        settle = _settle_time(ts.t, y, steady, config.settle_band * reference)

    predicted = model.predicted_steady_state(ts.bus, ts.magnitude)
    converged = None
    predicted_avg = None
    if predicted is not None:
        predicted_avg = float(np.mean(predicted))
        converged = bool(abs(steady - predicted_avg)
                         <= config.dc_check_rtol * abs(predicted_avg) + 1e-12)
        if not converged:
            logger.warning(
                f"稳态未收敛: 仿真 {steady * scale:.6g} {unit}, 预测 {predicted_avg * scale:.6g} {unit}"
            )

    return StepMetrics(
        nadir=nadir,
        t_nadir=t_nadir,
        f_ss=steady * scale,
        rocof_max=rocof,
        damping_ratio=dominant_damping(model.non_structural_eigenvalues()),
        settle_time=settle,
        initial_jump=initial_jump,
        converged=converged,
        predicted_f_ss=None if predicted_avg is None else predicted_avg * scale,
        unit=unit,
    )
