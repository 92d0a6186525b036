#!/usr/bin/env python3
"""
状态空间实现
State-Space Realization
"""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ImproperSystem
from .rational import RationalTF, relative_degree


@dataclass
class StateSpace:
    """ẋ = A x + B u,  y = C x + Dff u"""
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    Dff: np.ndarray

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=float)
        self.B = np.asarray(self.B, dtype=float)
        self.C = np.asarray(self.C, dtype=float)
        self.Dff = np.atleast_2d(np.asarray(self.Dff, dtype=float))
        if self.A.ndim != 2 or self.B.ndim != 2 or self.C.ndim != 2:
            raise ValueError("A、B、C 必须是二维数组")
        n = self.A.shape[0]
        if self.A.shape != (n, n) or self.B.shape[0] != n or self.C.shape[1] != n:
            raise ValueError(
                f"状态空间维数不一致: A{self.A.shape} B{self.B.shape} C{self.C.shape}"
            )
        if self.Dff.shape != (self.C.shape[0], self.B.shape[1]):
            raise ValueError(f"直通矩阵维数不一致: Dff{self.Dff.shape}")

    @property
    def n_states(self) -> int:
        return self.A.shape[0]

    def eigenvalues(self) -> np.ndarray:
        if self.n_states == 0:
            return np.zeros(0, dtype=complex)
        return np.sort_complex(np.linalg.eigvals(self.A))

    def response(self, omega: float) -> np.ndarray:
        """C (jωI − A)⁻¹ B + Dff"""
        if self.n_states == 0:
            return self.Dff.astype(complex)
        resolvent = np.linalg.solve(1j * omega * np.eye(self.n_states) - self.A, self.B)
        return self.C @ resolvent + self.Dff


def to_statespace(tf: RationalTF) -> StateSpace:
    """
    可控标准型实现

    Raises:
        ImproperSystem: 分子次数高于分母
    """
    if relative_degree(tf) < 0:
        raise ImproperSystem(f"非正则传递函数无法实现: {tf}")

    n = tf.den.degree
    a = tf.den.coeffs
    b = np.zeros(n + 1)
    if not tf.num.is_zero:
        b[:tf.num.coeffs.size] = tf.num.coeffs

    d = b[n]
    c = b[:n] - d * a[:n]

    A = np.zeros((n, n))
    if n > 0:
        A[np.arange(n - 1), np.arange(1, n)] = 1.0
        A[n - 1, :] = -a[:n]
    B = np.zeros((n, 1))
    if n > 0:
        B[n - 1, 0] = 1.0
    C = c.reshape(1, n)
    return StateSpace(A, B, C, np.array([[d]]))
