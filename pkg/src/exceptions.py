#!/usr/bin/env python3
"""
异常定义
Toolkit Errors

判定结果（条件不满足、无源性不成立等）通过结果对象返回，
只有无法给出结果的情形才抛出异常。
"""


class NGGCError(Exception):
    """工具箱异常基类"""


class PoleOnAxis(NGGCError):
    """在 jω 轴极点处求值"""

    def __init__(self, omega: float):
        self.omega = omega
        super().__init__(f"传递函数在 ω={omega:g} rad/s 处有 jω 轴极点")


class Indeterminate(NGGCError):
    """0/0 型，不做自动约分"""


class UnstableSystem(NGGCError):
    """不稳定系统的 H∞ 范数无定义"""


class ImproperSystem(NGGCError):
    """分子次数高于分母次数"""


class DegenerateLoop(NGGCError):
    """反馈变换后分母恒为零"""


class ZeroNumerator(NGGCError):
    """分子恒为零，无法求逆"""


class IllPosedLoop(NGGCError):
    """闭环代数环不可解 (I + N·D_ff 奇异)"""


class StepTooCoarse(NGGCError):
    """积分步长相对最快模态过大"""

    def __init__(self, h: float, h_max: float):
        self.h = h
        self.h_max = h_max
        super().__init__(f"步长 h={h:g} s 超过上限 {h_max:g} s (0.2/|λ_max|)")


class MissingShift(NGGCError):
    """qv 认证缺少母线环路移位 c_i"""


class NetworkSpecError(NGGCError, ValueError):
    """网络描述不合法"""


class DeviceParamsError(NGGCError, ValueError):
    """设备参数不合法"""


class ScenarioError(NGGCError, ValueError):
    """场景文件不合法，path 指向出错字段"""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
