#!/usr/bin/env python3
"""
实系数多项式
Real Polynomial (ascending coefficients)
"""

from typing import Iterable, Union

import numpy as np
from numpy.polynomial import polynomial as P

from ..config import config

Number = Union[int, float]


def _trim(coeffs: np.ndarray, tol: float, scale: float = None) -> np.ndarray:
    """去掉 |c| ≤ tol·scale 的最高次项，scale 缺省为最大系数模"""
    if scale is None:
        scale = float(np.max(np.abs(coeffs))) if coeffs.size else 0.0
    if scale == 0.0:
        return np.zeros(1)
    significant = np.nonzero(np.abs(coeffs) > tol * scale)[0]
    if significant.size == 0:
        return np.zeros(1)
    return coeffs[:significant[-1] + 1].copy()


class Polynomial:
    """
    实系数多项式，系数按升幂排列: c0 + c1·s + c2·s² + ...
    构造时修剪尾部可忽略系数，零多项式表示为 [0.0]
    """

    __slots__ = ('_coeffs',)
    __array_ufunc__ = None

    def __init__(self, coeffs: Iterable[Number], scale: float = None):
        arr = np.atleast_1d(np.asarray(coeffs, dtype=float))
        if arr.ndim != 1:
            raise ValueError("多项式系数必须是一维序列")
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"多项式系数必须为有限数: {arr.tolist()}")
        if arr.size == 0:
            arr = np.zeros(1)
        trimmed = _trim(arr, config.trim_tol, scale)
        trimmed.setflags(write=False)
        self._coeffs = trimmed

    @classmethod
    def from_factors(cls, *factors: Iterable[Number]) -> 'Polynomial':
        """多个因子的乘积，如 from_factors([1, Tg], [1, Tch])"""
        result = np.ones(1)
        for factor in factors:
            result = P.polymul(result, np.asarray(factor, dtype=float))
        return cls(result)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        return self._coeffs.size - 1

    @property
    def lead(self) -> float:
        return float(self._coeffs[-1])

    @property
    def is_zero(self) -> bool:
        return self._coeffs.size == 1 and self._coeffs[0] == 0.0

    @property
    def scale(self) -> float:
        """最大系数模"""
        return float(np.max(np.abs(self._coeffs)))

    def __call__(self, x):
        return P.polyval(x, self._coeffs)

    def roots(self) -> np.ndarray:
        """伴随矩阵特征值求根，按 (实部, 虚部) 排序"""
        if self.degree < 1:
            return np.zeros(0, dtype=complex)
        return np.sort_complex(P.polyroots(self._coeffs))

    # ============ 运算 ============
    def __add__(self, other) -> 'Polynomial':
        other = _as_poly(other)
        return Polynomial(P.polyadd(self._coeffs, other._coeffs))

    __radd__ = __add__

    def __sub__(self, other) -> 'Polynomial':
        other = _as_poly(other)
        return Polynomial(P.polysub(self._coeffs, other._coeffs))

    def __rsub__(self, other) -> 'Polynomial':
        return _as_poly(other) - self

    def __mul__(self, other) -> 'Polynomial':
        if isinstance(other, Polynomial):
            return Polynomial(P.polymul(self._coeffs, other._coeffs))
        return Polynomial(self._coeffs * float(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> 'Polynomial':
        return Polynomial(self._coeffs / float(other))

    def __neg__(self) -> 'Polynomial':
        return Polynomial(-self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self):
        return hash(self._coeffs.tobytes())

    def __repr__(self) -> str:
        return f"Polynomial({self._coeffs.tolist()})"


def _as_poly(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial([float(value)])
