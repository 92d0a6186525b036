#!/usr/bin/env python3
"""
同步发电机（摇摆方程 + 调速器 + 原动机）
Synchronous Generators

    D(s) = 1 / (2H·s + K_D + G(s)/R)

G(s) 为调速器-原动机通路，G(0) = 1。
"""

from abc import abstractmethod
from dataclasses import dataclass

from ..exceptions import DeviceParamsError
from ..tf_core import Polynomial, RationalTF
from .base import DeviceModel


class _SynchronousMachine(DeviceModel):
    """同步机公共部分: 摇摆方程与一次调频闭环"""

    @abstractmethod
    def prime_mover(self) -> RationalTF:
        """调速器-原动机通路 G(s)"""
        pass

    def transfer(self) -> RationalTF:
        g = self.prime_mover()
        swing = Polynomial([self.K_D, 2 * self.H])
        return RationalTF(g.den, swing * g.den + g.num * (1.0 / self.R))

    def _check_common(self):
        self._require_positive(['H', 'R', 'T_g'])
        self._require_nonnegative(['K_D'])


@dataclass
class SGNonReheat(_SynchronousMachine):
    """非再热汽轮机: G = 1/((1+sT_g)(1+sT_ch))"""
    H: float
    K_D: float
    R: float
    T_g: float
    T_ch: float
    kind = "sg_nonreheat"

    def __post_init__(self):
        self._check_common()
        self._require_positive(['T_ch'])

    def prime_mover(self) -> RationalTF:
        return RationalTF([1.0], Polynomial.from_factors([1, self.T_g], [1, self.T_ch]))


@dataclass
class SGReheat(_SynchronousMachine):
    """再热汽轮机: G = (1+sF_hp·T_rh)/((1+sT_g)(1+sT_ch)(1+sT_rh))"""
    H: float
    K_D: float
    R: float
    T_g: float
    T_ch: float
    T_rh: float
    F_hp: float
    kind = "sg_reheat"

    def __post_init__(self):
        self._check_common()
        self._require_positive(['T_ch', 'T_rh', 'F_hp'])
        if self.F_hp > 1:
            raise DeviceParamsError(f"sg_reheat.F_hp 必须在 (0, 1] 内: {self.F_hp}")

    def prime_mover(self) -> RationalTF:
        return RationalTF(
            [1.0, self.F_hp * self.T_rh],
            Polynomial.from_factors([1, self.T_g], [1, self.T_ch], [1, self.T_rh]),
        )


@dataclass
class SGHydro(_SynchronousMachine):
    """
    水轮机: 暂态下垂补偿 (1+sT_r)/(1+s(R_t/R)T_r)
    与水锤效应 (1−sT_w)/(1+0.5sT_w)，分子含右半平面零点 1/T_w
    """
    H: float
    K_D: float
    R: float
    T_g: float
    T_w: float
    R_t: float
    T_r: float
    kind = "sg_hydro"

    def __post_init__(self):
        self._check_common()
        self._require_positive(['T_w', 'R_t', 'T_r'])

    def prime_mover(self) -> RationalTF:
        return RationalTF(
            Polynomial.from_factors([1, self.T_r], [1, -self.T_w]),
            Polynomial.from_factors(
                [1, self.T_g], [1, self.R_t / self.R * self.T_r], [1, 0.5 * self.T_w]
            ),
        )
