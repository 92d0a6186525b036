#!/usr/bin/env python3
"""
认证包络几何
Certification Envelope Geometry

把各项频域条件表示为复平面上的区域，供绘图或导出。
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np
import pandas as pd

from ..exceptions import MissingShift
from ..models import CertLimits
from .conditions import PHASE_HI, PHASE_LO


@dataclass
class HalfPlane:
    """{z : Re(conj(normal)·z) > offset}，strict=False 时含边界"""
    condition: str
    normal: complex
    offset: float
    strict: bool = True
    scope: str = "all ω"
    kind = "half_plane"

    def contains(self, z: complex) -> bool:
        value = (np.conj(self.normal) * z).real
        return bool(value > self.offset if self.strict else value >= self.offset)


@dataclass
class Wedge:
    """{z : angle_lo ≤ ∠z ≤ angle_hi}"""
    condition: str
    angle_lo: float
    angle_hi: float
    scope: str = "all ω"
    kind = "wedge"

    def contains(self, z: complex) -> bool:
        angle = np.angle(z)
        return bool(self.angle_lo <= angle <= self.angle_hi)


@dataclass
class Disc:
    """{z : |z − center| ≤ radius}，strict=True 时为开圆盘"""
    condition: str
    center: complex
    radius: float
    strict: bool = False
    scope: str = "all ω"
    kind = "disc"

    def contains(self, z: complex) -> bool:
        distance = abs(z - self.center)
        return bool(distance < self.radius if self.strict else distance <= self.radius)


Primitive = Union[HalfPlane, Wedge, Disc]


@dataclass
class EnvelopeGeometry:
    """某一通道的全部包络图元"""
    channel: str
    primitives: List[Primitive]

    def by_kind(self, kind: str) -> List[Primitive]:
        return [p for p in self.primitives if p.kind == kind]

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for p in self.primitives:
            row = {
                'condition': p.condition, 'kind': p.kind, 'scope': p.scope,
                'center_re': None, 'center_im': None, 'radius': None,
                'angle_lo': None, 'angle_hi': None,
                'normal_re': None, 'normal_im': None, 'offset': None,
            }
            if isinstance(p, Disc):
                row.update(center_re=p.center.real, center_im=p.center.imag, radius=p.radius)
            elif isinstance(p, Wedge):
                row.update(angle_lo=p.angle_lo, angle_hi=p.angle_hi)
            else:
                row.update(normal_re=p.normal.real, normal_im=p.normal.imag, offset=p.offset)
            rows.append(row)
        return pd.DataFrame(rows)


def _osp_region(condition: str, rho: float) -> Primitive:
    """Re[D] ≥ ρ|D|²：ρ>0 为圆心 1/(2ρ)、半径 1/(2ρ) 的闭圆盘，ρ=0 退化为闭右半平面"""
    if rho == 0:
        return HalfPlane(condition, 1 + 0j, 0.0, strict=False)
    r = 1.0 / (2 * rho)
    return Disc(condition, complex(r, 0.0), r)


def envelope_geometry(limits: CertLimits, channel: str = "pf",
                      c: Optional[float] = None) -> EnvelopeGeometry:
    """
    认证条件对应的复平面区域

    Args:
        limits: 认证限值
        channel: "pf" 或 "qv"
        c: qv 通道母线环路移位 c_i

    Raises:
        MissingShift: qv 通道未给出 c_i
    """
    above_bw = f"ω ≥ {limits.omega_bw:.6g}"
    if channel == "pf":
        return EnvelopeGeometry("pf", [
            HalfPlane('1-ii', 1 + 0j, 0.0, strict=True),
            Wedge('1-iii', PHASE_LO, PHASE_HI),
            Disc('1-iv', 0j, limits.eps_f, scope=above_bw),
            Disc('1-v', 0j, limits.hinf_bound_f),
            Disc('1-vi', 0j, limits.dc_bound_f, scope="ω = 0"),
            _osp_region('1-viii', limits.rho_f),
        ])
    if channel != "qv":
        raise ValueError(f"未知通道: {channel!r}")
    if c is None:
        raise MissingShift("qv 包络需要母线环路移位 c_i")
    if c < 0:
        raise ValueError(f"环路移位 c_i 不能为负: {c}")
    if c == 0:
        shift_region = HalfPlane('2-ii', 1 + 0j, 0.0, strict=True)
    else:
        r = 1.0 / (2 * c)
        shift_region = Disc('2-ii', complex(r, 0.0), r, strict=True)
    return EnvelopeGeometry("qv", [
        shift_region,
        Disc('2-iii', 0j, limits.eps_v, scope=above_bw),
        Disc('2-iv', 0j, limits.hinf_bound_v),
        Disc('2-v', 0j, limits.dc_bound_v, scope="ω = 0"),
        _osp_region('2-vi', limits.rho_v),
    ])
