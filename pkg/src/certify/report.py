#!/usr/bin/env python3
"""
合规报告
Compliance Report
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from ..models import CertLimits, ConditionResult, FrequencyGrid, json_safe
from ..network import NetworkSpec, PassivityReport, compute_gamma, verify_shifted_passivity
from ..tf_core import RationalTF
from .conditions import PF_CONDITIONS, QV_CONDITIONS, certify_pf, certify_qv

logger = logging.getLogger(__name__)

# 各条件依赖的限值字段，用于 --strict
CONDITION_LIMITS: Dict[str, List[str]] = {
    '1-iv': ['eps_f', 'omega_bw'],
    '1-v': ['df_max', 'dp_step', 'nadir_factor'],
    '1-vi': ['df_ss_max', 'dp_step'],
    '1-vii': ['rocof_max', 'dp_step'],
    '1-viii': ['rho_f'],
    '2-iii': ['eps_v', 'omega_bw'],
    '2-iv': ['dv_max', 'dq_step', 'nadir_factor'],
    '2-v': ['dv_ss_max', 'dq_step'],
    '2-vi': ['rho_v'],
}

# 稳定性证书所需条件
STABILITY_CONDITIONS = {'1-i', '1-ii', '2-i', '2-ii'}


@dataclass
class FleetEntry:
    """待认证设备: 标签、母线、通道与传递函数"""
    label: str
    bus: int
    channel: str
    tf: RationalTF
    device: Any = None


@dataclass
class DeviceCompliance:
    """单台设备的认证结果"""
    label: str
    bus: int
    channel: str
    results: List[ConditionResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def result(self, condition: str) -> ConditionResult:
        for r in self.results:
            if r.condition == condition:
                return r
        raise KeyError(condition)

    @property
    def pattern(self) -> Tuple[bool, ...]:
        return tuple(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            'label': self.label,
            'bus': self.bus,
            'channel': self.channel,
            'results': [r.to_dict() for r in self.results],
        }


@dataclass
class ComplianceReport:
    """全部设备的认证结果与网络无源性"""
    devices: List[DeviceCompliance]
    limits: CertLimits
    grid: FrequencyGrid
    passivity: Optional[PassivityReport] = None
    stability_established: bool = False
    toolkit_defaults: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def default_dependent(self) -> List[Tuple[str, str]]:
        """判定依赖工具箱默认限值的 (设备, 条件)"""
        defaults = set(self.toolkit_defaults)
        pairs = []
        for dev in self.devices:
            for r in dev.results:
                if defaults & set(CONDITION_LIMITS.get(r.condition, [])):
                    pairs.append((dev.label, r.condition))
        return pairs

    def all_passed(self, strict: bool = False) -> bool:
        if not all(dev.passed for dev in self.devices):
            return False
        if strict and self.default_dependent():
            return False
        return True

    def to_frame(self) -> pd.DataFrame:
        """每台设备每项条件一行"""
        rows = []
        for dev in self.devices:
            for r in dev.results:
                rows.append({
                    'device': dev.label,
                    'bus': dev.bus,
                    'channel': dev.channel,
                    'condition': r.condition,
                    'passed': r.passed,
                    'margin': r.margin,
                    'worst_omega': r.worst_omega,
                    'value': r.value,
                    'bound': r.bound,
                    'notes': '; '.join(r.notes),
                })
        columns = ['device', 'bus', 'channel', 'condition', 'passed', 'margin',
                   'worst_omega', 'value', 'bound', 'notes']
        return pd.DataFrame(rows, columns=columns)

    def _symbol_table(self, channel: str, conditions: List[str]) -> Optional[pd.DataFrame]:
        devices = [d for d in self.devices if d.channel == channel]
        if not devices:
            return None
        rows = []
        for dev in devices:
            row = {'device': dev.label, 'bus': dev.bus}
            for r in dev.results:
                row[r.condition] = r.symbol
            rows.append(row)
        return pd.DataFrame(rows, columns=['device', 'bus'] + conditions)

    def _margin_table(self, channel: str, conditions: List[str]) -> Optional[pd.DataFrame]:
        devices = [d for d in self.devices if d.channel == channel]
        if not devices:
            return None
        rows = []
        for dev in devices:
            row = {'device': dev.label}
            for r in dev.results:
                row[r.condition] = f"{r.margin:+.3g}"
            rows.append(row)
        return pd.DataFrame(rows, columns=['device'] + conditions)

    def render_table(self) -> str:
        """人读的 ✓/× 表格"""
        defaults = set(self.toolkit_defaults)
        limits = self.limits.to_dict()
        lines = ["=" * 60, "NGGC 合规报告", "=" * 60]
        marked = [f"{k}={v:g}{'*' if k in defaults else ''}" for k, v in limits.items()]
        lines.append("限值: " + ", ".join(marked))
        if defaults:
            lines.append("(* 为工具箱默认值，非并网导则数值)")
        lines.append(
            f"频率网格: [{self.grid.omega_min:g}, {self.grid.omega_max:g}] rad/s, "
            f"{self.grid.points_per_decade} 点/十倍频程"
        )

        for channel, conditions, title in (("pf", PF_CONDITIONS, "频率-有功通道 (pf)"),
                                           ("qv", QV_CONDITIONS, "电压-无功通道 (qv)")):
            table = self._symbol_table(channel, conditions)
            if table is None:
                continue
            lines.append("-" * 60)
            lines.append(title)
            lines.append(table.to_string(index=False))
            lines.append("裕度:")
            lines.append(self._margin_table(channel, conditions).to_string(index=False))

        lines.append("-" * 60)
        if self.passivity is not None:
            p = self.passivity
            lines.append(
                f"移位网络无源性: λ_min={p.min_eigenvalue:.3e} @ ω={p.worst_omega:.4g} rad/s, "
                f"qv 块 λ_min={p.qv_min_eigenvalue:.3e} -> {'成立' if p.passive else '不成立'}"
            )
        lines.append(f"稳定性证书: {'已建立' if self.stability_established else '未建立'}")
        for note in self.notes:
            lines.append(f"注: {note}")
        lines.append("=" * 60)
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return json_safe({
            'devices': [d.to_dict() for d in self.devices],
            'limits': self.limits.to_dict(),
            'grid': self.grid.to_dict(),
            'passivity': self.passivity.to_dict() if self.passivity else None,
            'stability_established': self.stability_established,
            'toolkit_defaults': list(self.toolkit_defaults),
            'notes': list(self.notes),
        })


def certify_fleet(entries: List[FleetEntry], network: Optional[NetworkSpec],
                  limits: CertLimits, grid: FrequencyGrid,
                  toolkit_defaults: List[str] = None) -> ComplianceReport:
    """
    认证全部设备并校验移位网络无源性

    Args:
        entries: 待认证设备
        network: 网络描述，qv 认证与无源性校验需要
        limits: 认证限值
        grid: 频率网格
        toolkit_defaults: 由工具箱默认值填充的限值字段

    Returns:
        ComplianceReport
    """
    gamma = compute_gamma(network) if network is not None else None
    devices = []
    for entry in entries:
        if entry.channel == "pf":
            results = certify_pf(entry.tf, limits, grid)
        else:
            c = float(gamma[entry.bus - 1]) if gamma is not None else None
            results = certify_qv(entry.tf, limits, grid, c)
        devices.append(DeviceCompliance(entry.label, entry.bus, entry.channel, results))
        failed = [r.condition for r in results if not r.passed]
        logger.info(f"{entry.label} (母线 {entry.bus}, {entry.channel}): "
                    f"{'全部通过' if not failed else '未通过 ' + ', '.join(failed)}")

    notes = []
    if not any(entry.channel == "qv" for entry in entries):
        notes.append("未给出 qv 通道设备，已跳过 qv 认证")
    passivity = None
    if network is not None:
        passivity = verify_shifted_passivity(network, grid)
        if not passivity.passive:
            notes.append("移位网络无源性不成立，稳定性证书降级为未建立")
    else:
        notes.append("未给出网络，无法校验移位网络无源性")

    stability = bool(passivity is not None and passivity.passive) and all(
        r.passed for dev in devices for r in dev.results if r.condition in STABILITY_CONDITIONS
    )
    return ComplianceReport(devices, limits, grid, passivity, stability,
                            list(toolkit_defaults or []), notes)
