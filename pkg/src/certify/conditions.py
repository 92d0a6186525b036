#!/usr/bin/env python3
"""
频域认证条件
Frequency-Domain Certification Conditions

pf 通道 (1-i)…(1-viii)，qv 通道 (2-i)…(2-vi)。
每项条件给出 通过/不通过、带符号裕度（正为满足）与最差频率。
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from ..config import config
from ..exceptions import DegenerateLoop, Indeterminate, MissingShift, UnstableSystem
from ..models import CertLimits, ConditionResult, FrequencyGrid
from ..tf_core import (
    RationalTF, dc_gain, feedback_transform, frequency_response, hf_derivative_limit,
    hinf_norm, is_stable, is_strictly_proper, relative_degree,
)

logger = logging.getLogger(__name__)

PF_CONDITIONS = ['1-i', '1-ii', '1-iii', '1-iv', '1-v', '1-vi', '1-vii', '1-viii']
QV_CONDITIONS = ['2-i', '2-ii', '2-iii', '2-iv', '2-v', '2-vi']

# 相位扇区 [−π/2, π/6]
PHASE_LO = -math.pi / 2
PHASE_HI = math.pi / 6


class _Locus:
    """网格上的 D(jω)，jω 轴极点与零幅值点单独记录"""

    def __init__(self, tf: RationalTF, omegas: np.ndarray):
        self.omegas = omegas
        self.values = frequency_response(tf, omegas, skip_axis_poles=True)
        self.axis_poles = omegas[np.isnan(self.values)]
        mags = np.abs(self.values)
        self.usable = np.isfinite(self.values) & (mags > config.magnitude_floor)
        self.tiny = omegas[np.isfinite(self.values) & (mags <= config.magnitude_floor)]

    def notes(self, skip_tiny: bool = True) -> List[str]:
        notes = []
        if self.axis_poles.size:
            notes.append(f"jω 轴极点处跳过 {self.axis_poles.size} 个频率点 (PoleOnAxis)")
        if skip_tiny and self.tiny.size:
            notes.append(f"|D| 低于 {config.magnitude_floor:g} 的 {self.tiny.size} 个频率点已跳过")
        return notes


def _min_over(locus: _Locus, values: np.ndarray) -> Tuple[float, Optional[float]]:
    """usable 点上的最小值及其频率"""
    if not np.any(locus.usable):
        return -math.inf, None
    masked = np.where(locus.usable, values, np.inf)
    k = int(np.argmin(masked))
    return float(masked[k]), float(locus.omegas[k])


def _stability(condition: str, tf: RationalTF) -> ConditionResult:
    """严格正则且稳定"""
    if not is_strictly_proper(tf):
        margin = float(relative_degree(tf) - 1)
        return ConditionResult(condition, False, margin, notes=["非严格正则"])
    stab = is_stable(tf)
    margin = -stab.margin - config.stab_tol
    return ConditionResult(condition, bool(stab.stable), margin, value=stab.margin,
                           bound=-config.stab_tol)


def _strict_positive_real(condition: str, locus: _Locus) -> ConditionResult:
    """Re[D(jω)] > 0，裕度取 Re[D]/|D| 的最小值（尺度无关）"""
    with np.errstate(divide="ignore", invalid="ignore"):
        cosine = np.real(locus.values) / np.abs(locus.values)
    margin, worst = _min_over(locus, cosine)
    notes = locus.notes()
    if worst is None:
        notes.append("没有可用频率点")
    return ConditionResult(condition, margin > config.strict_tol, margin, worst,
                           value=margin, bound=0.0, notes=notes)


def _phase_sector(condition: str, locus: _Locus) -> ConditionResult:
    """∠D(jω) ∈ [−π/2, π/6]，裕度为到扇区边界的最小角距离"""
    angles = np.angle(locus.values)
    inside = (angles >= PHASE_LO) & (angles <= PHASE_HI)
    distance_inside = np.minimum(angles - PHASE_LO, PHASE_HI - angles)
    two_pi = 2 * math.pi
    distance_outside = -np.minimum(np.mod(angles - PHASE_HI, two_pi),
                                   np.mod(PHASE_LO - angles, two_pi))
    margins = np.where(inside, distance_inside, distance_outside)
    margin, worst = _min_over(locus, margins)
    notes = locus.notes()
    value = None
    if worst is not None:
        value = float(angles[locus.omegas == worst][0])
    return ConditionResult(condition, margin >= 0, margin, worst, value=value, notes=notes)


def _high_frequency_gain(condition: str, tf: RationalTF, omegas: np.ndarray,
                         omega_bw: float, eps: float) -> ConditionResult:
    """ω ≥ ω_bw 上 |D(jω)| ≤ ε，含 ω→∞ 极限"""
    band = np.concatenate(([omega_bw], omegas[omegas >= omega_bw]))
    values = frequency_response(tf, band, skip_axis_poles=True)
    notes = []
    if np.any(np.isnan(values)):
        notes.append("ω ≥ ω_bw 范围内存在 jω 轴极点")
        return ConditionResult(condition, False, -math.inf,
                               float(band[np.argmax(np.isnan(values))]), bound=eps, notes=notes)
    mags = np.abs(values)
    k = int(np.argmax(mags))
    worst_value, worst_omega = float(mags[k]), float(band[k])

    r = relative_degree(tf)
    limit = 0.0 if (r > 0 or tf.num.is_zero) else (abs(tf.num.lead) if r == 0 else math.inf)
    if limit > worst_value:
        worst_value, worst_omega = limit, math.inf
    margin = eps - worst_value
    return ConditionResult(condition, margin >= 0, margin, worst_omega,
                           value=worst_value, bound=eps, notes=notes)


def _hinf_bound(condition: str, tf: RationalTF, grid: FrequencyGrid,
                bound: float) -> ConditionResult:
    notes = []
    try:
        value, worst = hinf_norm(tf, grid)
    except UnstableSystem:
        value, worst = math.inf, None
        notes.append("不稳定，H∞ 范数无界")
    margin = bound - value
    if not math.isfinite(value):
        worst = None
        if not notes:
            notes.append("非正则，H∞ 范数无界")
    return ConditionResult(condition, margin >= 0, margin, worst,
                           value=value, bound=bound, notes=notes)


def _dc_bound(condition: str, tf: RationalTF, bound: float) -> ConditionResult:
    try:
        value = abs(dc_gain(tf))
    except Indeterminate:
        return ConditionResult(condition, False, -math.inf, 0.0, bound=bound,
                               notes=["D(0) 为 0/0 型 (Indeterminate)"])
    margin = bound - value
    return ConditionResult(condition, margin >= 0, margin, 0.0, value=value, bound=bound)


def _inverse_real_part(condition: str, locus: _Locus, bound: float,
                       strict: bool = False) -> ConditionResult:
    """min Re[D⁻¹(jω)] 与 bound 比较；Re[D⁻¹] = Re[D]/|D|²"""
    with np.errstate(divide="ignore", invalid="ignore"):
        inverse_real = np.real(locus.values) / np.abs(locus.values) ** 2
    minimum, worst = _min_over(locus, inverse_real)
    margin = minimum - bound
    notes = locus.notes()
    if worst is None:
        notes.append("没有可用频率点")
    passed = margin > config.strict_tol if strict else margin >= 0
    return ConditionResult(condition, passed, margin, worst,
                           value=minimum, bound=bound, notes=notes)


def certify_pf(tf: RationalTF, limits: CertLimits, grid: FrequencyGrid) -> List[ConditionResult]:
    """
    频率-有功通道认证 (1-i)…(1-viii)

    Args:
        tf: 设备传递函数 D^fp
        limits: 认证限值
        grid: 频率网格

    Returns:
        8 项 ConditionResult，顺序与 PF_CONDITIONS 一致
    """
    omegas = grid.points()
    locus = _Locus(tf, omegas)

    results = [
        _stability('1-i', tf),
        _strict_positive_real('1-ii', locus),
        _phase_sector('1-iii', locus),
        _high_frequency_gain('1-iv', tf, omegas, limits.omega_bw, limits.eps_f),
        _hinf_bound('1-v', tf, grid, limits.hinf_bound_f),
        _dc_bound('1-vi', tf, limits.dc_bound_f),
    ]

    hf = hf_derivative_limit(tf)
    margin = limits.hf_bound_f - hf
    results.append(ConditionResult('1-vii', margin >= 0, margin, math.inf,
                                   value=hf, bound=limits.hf_bound_f))

    results.append(_inverse_real_part('1-viii', locus, limits.rho_f))
    return results


def shifted_qv_transfer(tf: RationalTF, c: float) -> RationalTF:
    """环路移位后的 qv 动态 D′ = D/(1 − c·D)"""
    return feedback_transform(tf, c)


def certify_qv(tf: RationalTF, limits: CertLimits, grid: FrequencyGrid,
               c: Optional[float]) -> List[ConditionResult]:
    """
    电压-无功通道认证 (2-i)…(2-vi)

    Args:
        c: 设备所在母线的环路移位 c_i

    Raises:
        MissingShift: 未给出 c_i
    """
    if c is None:
        raise MissingShift("qv 认证需要母线环路移位 c_i")

    omegas = grid.points()
    locus = _Locus(tf, omegas)

    results = [
        _stability('2-i', tf),
        _inverse_real_part('2-ii', locus, float(c), strict=True),
        _high_frequency_gain('2-iii', tf, omegas, limits.omega_bw, limits.eps_v),
        _hinf_bound('2-iv', tf, grid, limits.hinf_bound_v),
        _dc_bound('2-v', tf, limits.dc_bound_v),
        _inverse_real_part('2-vi', locus, limits.rho_v),
    ]

    try:
        shifted = shifted_qv_transfer(tf, float(c))
        if not is_stable(shifted).stable:
            results[1].notes.append("环路移位后的 D′ 不稳定")
    except DegenerateLoop as e:
        results[1].notes.append(f"环路移位失败: {e}")
    return results
