#!/usr/bin/env python3
"""
有理传递函数
Rational Transfer Functions

D(s) = num(s) / den(s)，分母首一，系数升幂。
不做零极点自动约分，重合根只给出诊断。
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Tuple, Union

import numpy as np

from ..config import config
from ..exceptions import (
    DegenerateLoop, Indeterminate, PoleOnAxis, ZeroNumerator,
)
from .polynomial import Polynomial

logger = logging.getLogger(__name__)

PolyLike = Union[Polynomial, Iterable[float]]


@dataclass(frozen=True, eq=False)
class RationalTF:
    """有理传递函数（规范形：分母首一）"""
    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        num = self.num if isinstance(self.num, Polynomial) else Polynomial(self.num)
        den = self.den if isinstance(self.den, Polynomial) else Polynomial(self.den)
        if den.is_zero:
            raise ValueError("分母不能为零多项式")
        lead = den.lead
        if lead != 1.0:
            num = num / lead
            den = den / lead
        object.__setattr__(self, 'num', num)
        object.__setattr__(self, 'den', den)

    @classmethod
    def constant(cls, gain: float) -> 'RationalTF':
        return cls(Polynomial([gain]), Polynomial([1.0]))

    def __call__(self, s: complex) -> complex:
        """在任意复数点求值，不做 jω 轴检查"""
        return self.num(s) / self.den(s)

    def scaled(self, k: float) -> 'RationalTF':
        return RationalTF(self.num * k, self.den)

    def inverse(self) -> 'RationalTF':
        """D⁻¹ = den/num"""
        if self.num.is_zero:
            raise ZeroNumerator("分子为零多项式，传递函数不可求逆")
        return RationalTF(self.den, self.num)

    def to_dict(self) -> dict:
        return {'num': self.num.coeffs.tolist(), 'den': self.den.coeffs.tolist()}

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalTF):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RationalTF(num={self.num.coeffs.tolist()}, den={self.den.coeffs.tolist()})"


class Stability(NamedTuple):
    """稳定性判定: stable 与最大极点实部"""
    stable: bool
    margin: float


def _axis_threshold(tf: RationalTF) -> float:
    return config.axis_tol * tf.den.scale


def eval_response(tf: RationalTF, omega: float) -> complex:
    """
    计算 D(jω)

    Raises:
        PoleOnAxis: |den(jω)| 低于相对容差
    """
    s = 1j * float(omega)
    den_value = tf.den(s)
    if abs(den_value) < _axis_threshold(tf):
        raise PoleOnAxis(float(omega))
    return complex(tf.num(s) / den_value)


def frequency_response(tf: RationalTF, omegas, skip_axis_poles: bool = False) -> np.ndarray:
    """
    向量化的 D(jω)

    Args:
        tf: 传递函数
        omegas: 频率点 (rad/s)
        skip_axis_poles: 为 True 时 jω 轴极点处返回 NaN 而不抛异常

    Returns:
        复数数组
    """
    omegas = np.asarray(omegas, dtype=float)
    s = 1j * omegas
    den_values = tf.den(s)
    on_axis = np.abs(den_values) < _axis_threshold(tf)
    if np.any(on_axis) and not skip_axis_poles:
        raise PoleOnAxis(float(omegas[np.argmax(on_axis)]))
    values = np.full(omegas.shape, np.nan + 1j * np.nan, dtype=complex)
    ok = ~on_axis
    values[ok] = tf.num(s[ok]) / den_values[ok]
    return values


def poles(tf: RationalTF) -> np.ndarray:
    return tf.den.roots()


def zeros(tf: RationalTF) -> np.ndarray:
    if tf.num.is_zero:
        return np.zeros(0, dtype=complex)
    return tf.num.roots()


def is_stable(tf: RationalTF) -> Stability:
    """所有极点实部 < −stab_tol；无极点时裕度为 −inf"""
    p = poles(tf)
    margin = float(np.max(p.real)) if p.size else -math.inf
    return Stability(margin < -config.stab_tol, margin)


def relative_degree(tf: RationalTF) -> int:
    if tf.num.is_zero:
        return tf.den.degree
    return tf.den.degree - tf.num.degree


def is_strictly_proper(tf: RationalTF) -> bool:
    return tf.num.is_zero or relative_degree(tf) >= 1


def hf_derivative_limit(tf: RationalTF) -> float:
    """
    lim_{ω→∞} |jω·D(jω)|

    相对阶 1 时为首项系数之比（分母首一），
    相对阶 ≥2 为 0，双正则或非正则为 inf
    """
    if tf.num.is_zero:
        return 0.0
    r = relative_degree(tf)
    if r <= 0:
        return math.inf
    if r == 1:
        return abs(tf.num.lead)
    return 0.0


def dc_gain(tf: RationalTF) -> float:
    """
    D(0)

    Raises:
        Indeterminate: 分子分母在 s=0 同时为零
    """
    den0 = float(tf.den.coeffs[0])
    num0 = float(tf.num.coeffs[0])
    if abs(den0) <= _axis_threshold(tf):
        if tf.num.is_zero or abs(num0) <= config.axis_tol * tf.num.scale:
            raise Indeterminate("D(0) 为 0/0 型")
        return math.inf
    return num0 / den0


def feedback_transform(tf: RationalTF, c: float) -> RationalTF:
    """
    环路移位 D' = D / (1 − c·D) = num / (den − c·num)

    Raises:
        DegenerateLoop: 新分母恒为零
    """
    scale = max(tf.den.scale, abs(c) * tf.num.scale)
    new_den = Polynomial((tf.den - tf.num * c).coeffs, scale=scale)
    if new_den.is_zero:
        raise DegenerateLoop(f"c={c:g} 使 den − c·num 恒为零")
    return RationalTF(tf.num, new_den)


def coincident_roots(tf: RationalTF, tol: float = None) -> List[Tuple[complex, complex]]:
    """距离小于 tol 的 (极点, 零点) 对，仅作诊断"""
    tol = config.coincident_tol if tol is None else tol
    pairs = []
    for z in zeros(tf):
        for p in poles(tf):
            if abs(p - z) < tol:
                pairs.append((complex(p), complex(z)))
    if pairs:
        logger.warning(f"传递函数存在 {len(pairs)} 对重合零极点，未约分: {tf}")
    return pairs
