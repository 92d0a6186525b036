#!/usr/bin/env python3
"""
数据类定义
Data Classes
"""

import math
from dataclasses import dataclass, asdict, field, fields
from typing import Any, Dict, List, Optional

import numpy as np

from .config import config


def json_safe(value: Any) -> Any:
    """把非有限浮点数编码为字符串，numpy 标量转为 Python 标量"""
    if isinstance(value, dict):
        return {k: json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, complex):
        return [json_safe(value.real), json_safe(value.imag)]
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
    return value


@dataclass
class CertLimits:
    """
    认证限值
    频率类限值以 Hz 给出，内部按 f_base 换算为标幺值
    """
    df_max: float = 0.8
    df_ss_max: float = 0.2
    rocof_max: float = 2.0
    dp_step: float = 0.1
    eps_f: float = 5e-3
    omega_bw: float = 2 * math.pi * 5
    rho_f: float = 5.0
    dv_max: float = 0.1
    dv_ss_max: float = 0.05
    dq_step: float = 0.1
    eps_v: float = 5e-3
    rho_v: float = 5.0
    nadir_factor: float = 2.5
    zeta_min: float = 0.05
    f_base: float = 50.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not math.isfinite(value):
                raise ValueError(f"限值 {f.name} 必须为有限数: {value}")
            if f.name in ('rho_f', 'rho_v', 'zeta_min'):
                if value < 0:
                    raise ValueError(f"限值 {f.name} 不能为负: {value}")
            elif value <= 0:
                raise ValueError(f"限值 {f.name} 必须为正: {value}")

    @classmethod
    def from_config(cls, overrides: Dict[str, float] = None) -> 'CertLimits':
        """从配置文件读取默认限值，overrides 覆盖个别字段"""
        values = config.limits
        values['f_base'] = config.f_base
        if overrides:
            values.update(overrides)
        known = {f.name for f in fields(cls)}
        return cls(**{k: float(v) for k, v in values.items() if k in known})

    # ============ pf 标幺值界 ============
    @property
    def hinf_bound_f(self) -> float:
        """(1-v) 的 H∞ 界"""
        return self.df_max / (self.f_base * self.nadir_factor * self.dp_step)

    @property
    def dc_bound_f(self) -> float:
        """(1-vi) 的直流增益界"""
        return self.df_ss_max / (self.f_base * self.dp_step)

    @property
    def hf_bound_f(self) -> float:
        """(1-vii) 的高频导数界"""
        return self.rocof_max / (self.f_base * self.dp_step)

    # ============ qv 标幺值界 ============
    @property
    def hinf_bound_v(self) -> float:
        return self.dv_max / (self.nadir_factor * self.dq_step)

    @property
    def dc_bound_v(self) -> float:
        return self.dv_ss_max / self.dq_step

    def to_dict(self) -> dict:
        return json_safe(asdict(self))


@dataclass
class FrequencyGrid:
    """对数频率网格，可选包含 ω=0"""
    omega_min: float = 1e-3
    omega_max: float = 1e4
    points_per_decade: int = 60
    include_zero: bool = True

    def __post_init__(self):
        if not (self.omega_min > 0 and self.omega_max > self.omega_min):
            raise ValueError(
                f"频率网格范围不合法: [{self.omega_min}, {self.omega_max}]"
            )
        if int(self.points_per_decade) < 1:
            raise ValueError(f"每十倍频程点数至少为 1: {self.points_per_decade}")
        self.points_per_decade = int(self.points_per_decade)

    @classmethod
    def from_config(cls, overrides: Dict[str, Any] = None) -> 'FrequencyGrid':
        values = config.grid
        if overrides:
            values.update(overrides)
        return cls(**values)

    def points(self) -> np.ndarray:
        """网格点 (rad/s)，升序"""
        decades = math.log10(self.omega_max) - math.log10(self.omega_min)
        count = max(2, int(round(decades * self.points_per_decade)) + 1)
        omegas = np.logspace(math.log10(self.omega_min), math.log10(self.omega_max), count)
        if self.include_zero:
            omegas = np.concatenate(([0.0], omegas))
        return omegas

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class ConditionResult:
    """单项认证条件的判定结果"""
    condition: str
    passed: bool
    margin: float
    worst_omega: Optional[float] = None
    value: Optional[float] = None
    bound: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    @property
    def symbol(self) -> str:
        return "✓" if self.passed else "×"

    def to_dict(self) -> dict:
        return json_safe(asdict(self))


@dataclass
class StepMetrics:
    """阶跃响应指标，qv 通道中 nadir 与 f_ss 为电压偏差 (p.u.)"""
    nadir: float
    t_nadir: float
    f_ss: float
    rocof_max: float
    damping_ratio: Optional[float]
    settle_time: Optional[float]
    initial_jump: bool = False
    converged: Optional[bool] = None
    predicted_f_ss: Optional[float] = None
    unit: str = "Hz"

    def to_dict(self) -> dict:
        return json_safe(asdict(self))
